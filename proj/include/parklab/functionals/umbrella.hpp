// Copyright 2026 The parklab Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Paired comparison of S(D_R, xi^{D_R}) / |D_R| and S(D_R, xi) / |D_R|.

#ifndef PARKLAB_FUNCTIONALS_UMBRELLA_HPP_
#define PARKLAB_FUNCTIONALS_UMBRELLA_HPP_

#include <cmath>
#include <cstdint>
#include <vector>

#include "parklab/functionals/evaluate.hpp"
#include "parklab/geom/parallel.hpp"
#include "parklab/geom/stats.hpp"
#include "parklab/parking/experiments.hpp"

namespace parklab {

struct UmbrellaOptions {
  DomainKind kind = DomainKind::kBox;
  double rho0 = 0.5;
  // Negative selects DefaultPad(rho0).
  double pad = -1.0;
  unsigned threads = 1;
};

struct UmbrellaSample {
  std::size_t replicate = 0;
  double R = 0.0;
  double volume = 0.0;
  std::uint64_t finite_count = 0;
  std::uint64_t coupled_count = 0;
  // Per-volume values.
  double finite_value = 0.0;
  double coupled_value = 0.0;
  bool exact = true;
};

struct UmbrellaRow {
  double R = 0.0;
  std::size_t replicates = 0;
  double finite_mean = 0.0;
  double finite_stderr = 0.0;
  double coupled_mean = 0.0;
  double coupled_stderr = 0.0;
  double diff_mean = 0.0;
  double diff_stderr = 0.0;
  double median_abs_diff = 0.0;
};

template <std::size_t D>
UmbrellaSample UmbrellaReplicate(const FunctionalSpec& spec, double R, std::size_t rep,
                                 std::uint64_t master, const UmbrellaOptions& opt) {
  const Domain<D> dom = Domain<D>::Make(opt.kind, R);
  const std::uint64_t seed = ReplicateSeed(master, rep);
  const double pad = opt.pad < 0.0 ? DefaultPad(opt.rho0) : opt.pad;
  const auto fin = ParkToSaturation(dom, opt.rho0, seed).accepted.points;
  const auto inf = ParkCoupledInfinite(dom, pad, opt.rho0, seed).accepted.points;
  UmbrellaSample s;
  s.replicate = rep;
  s.R = R;
  s.volume = dom.Volume();
  s.finite_count = fin.size();
  s.coupled_count = inf.size();
  const auto a = EvaluateOn(spec, fin, dom);
  const auto b = EvaluateOn(spec, inf, dom);
  s.finite_value = a.value / s.volume;
  s.coupled_value = b.value / s.volume;
  s.exact = a.exact && b.exact;
  return s;
}

/// Samples ordered by (R, replicate). Replicate i uses the same space-time
/// process for both point sources and every R.
template <std::size_t D>
std::vector<UmbrellaSample> UmbrellaSamples(const FunctionalSpec& spec, const std::vector<double>& Rs,
                                            std::size_t reps, std::uint64_t master,
                                            const UmbrellaOptions& opt) {
  RequireIncreasing(Rs, "R");
  std::vector<UmbrellaSample> out(Rs.size() * reps);
  ParallelFor(out.size(), opt.threads, [&](std::size_t i) {
    out[i] = UmbrellaReplicate<D>(spec, Rs[i / reps], i % reps, master, opt);
  });
  return out;
}

inline std::vector<UmbrellaRow> SummarizeUmbrella(const std::vector<UmbrellaSample>& samples) {
  std::vector<UmbrellaRow> rows;
  for (std::size_t i = 0; i < samples.size();) {
    std::vector<double> a, b, d, ad;
    std::size_t j = i;
    for (; j < samples.size() && samples[j].R == samples[i].R; ++j) {
      a.push_back(samples[j].finite_value);
      b.push_back(samples[j].coupled_value);
      d.push_back(samples[j].finite_value - samples[j].coupled_value);
      ad.push_back(std::abs(d.back()));
    }
    rows.push_back({samples[i].R, a.size(), stats::Mean(a), stats::StdError(a), stats::Mean(b),
                    stats::StdError(b), stats::Mean(d), stats::StdError(d), stats::Median(ad)});
    i = j;
  }
  return rows;
}

}  // namespace parklab

#endif  // PARKLAB_FUNCTIONALS_UMBRELLA_HPP_
