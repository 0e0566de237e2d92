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

// Monte Carlo drivers for the parking measure: jamming densities,
// stabilization radii and a rotational exchangeability test.

#ifndef PARKLAB_PARKING_EXPERIMENTS_HPP_
#define PARKLAB_PARKING_EXPERIMENTS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "parklab/geom/domain.hpp"
#include "parklab/geom/keyed_rng.hpp"
#include "parklab/geom/parallel.hpp"
#include "parklab/geom/stats.hpp"
#include "parklab/parking/saturation.hpp"

namespace parklab {

// Seed of replicate `rep` under a master seed. Replicates sharing an index
// share the underlying space-time process across every R.
constexpr std::uint64_t ReplicateSeed(std::uint64_t master, std::uint64_t rep) {
  return HashCombine(master, rep);
}

inline void RequireIncreasing(const std::vector<double>& v, const std::string& name) {
  if (v.empty()) throw Error(name + " list is empty");
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] > v[i - 1])) throw Error(name + " list must be strictly increasing");
}

// Default padding for whole-space approximations.
inline double DefaultPad(double rho0) { return 20.0 * 2.0 * rho0; }

struct JammingOptions {
  DomainKind kind = DomainKind::kBox;
  double rho0 = 0.5;
  // Negative selects DefaultPad(rho0).
  double pad = -1.0;
  // Also evaluate the padded whole-space approximation.
  bool coupled = true;
  unsigned threads = 1;
};

struct JammingSample {
  std::size_t replicate = 0;
  double R = 0.0;
  std::uint64_t count = 0;
  double density = 0.0;
  double saturation_time = 0.0;
  bool certified = false;
  std::uint64_t coupled_count = 0;
  double coupled_density = 0.0;
};

struct JammingRow {
  double R = 0.0;
  std::size_t replicates = 0;
  double mean = 0.0;
  double stderr_ = 0.0;
  double coupled_mean = 0.0;
  double coupled_stderr = 0.0;
};

template <std::size_t D>
JammingSample JammingReplicate(double R, std::size_t rep, std::uint64_t master,
                               const JammingOptions& opt) {
  const Domain<D> dom = Domain<D>::Make(opt.kind, R);
  const std::uint64_t seed = ReplicateSeed(master, rep);
  JammingSample s;
  s.replicate = rep;
  s.R = R;
  const auto res = ParkToSaturation(dom, opt.rho0, seed);
  s.count = res.accepted.points.size();
  s.density = static_cast<double>(s.count) / dom.Volume();
  s.saturation_time = res.saturation_time;
  s.certified = res.certificate.certified;
  if (opt.coupled) {
    const double pad = opt.pad < 0.0 ? DefaultPad(opt.rho0) : opt.pad;
    const auto inf = ParkCoupledInfinite(dom, pad, opt.rho0, seed);
    s.coupled_count = inf.accepted.points.size();
    s.coupled_density = static_cast<double>(s.coupled_count) / dom.Volume();
    s.certified = s.certified && inf.certificate.certified;
  }
  return s;
}

/// Per-replicate jamming densities count / |D_R| for every R, ordered by
/// (R, replicate).
template <std::size_t D>
std::vector<JammingSample> JammingSamples(const std::vector<double>& Rs, std::size_t reps,
                                          std::uint64_t master, const JammingOptions& opt) {
  RequireIncreasing(Rs, "R");
  if (!(opt.rho0 > 0.0)) throw Error("rho0 must be positive");
  std::vector<JammingSample> out(Rs.size() * reps);
  ParallelFor(out.size(), opt.threads, [&](std::size_t i) {
    out[i] = JammingReplicate<D>(Rs[i / reps], i % reps, master, opt);
  });
  return out;
}

inline std::vector<JammingRow> SummarizeJamming(const std::vector<JammingSample>& samples) {
  std::vector<JammingRow> rows;
  for (std::size_t i = 0; i < samples.size();) {
    std::size_t j = i;
    std::vector<double> a, b;
    while (j < samples.size() && samples[j].R == samples[i].R) {
      a.push_back(samples[j].density);
      b.push_back(samples[j].coupled_density);
      ++j;
    }
    rows.push_back({samples[i].R, a.size(), stats::Mean(a), stats::StdError(a), stats::Mean(b),
                    stats::StdError(b)});
    i = j;
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Stabilization radius.

struct StabilizationSample {
  double r = 0.0;
  std::vector<double> grid;
  // Smallest grid R from which xi^{Q_R} ∩ Q_r stays the same up to the end
  // of the grid.
  double radius = 0.0;
  std::size_t index = 0;
  // True when the estimate sits on the last grid value, so nothing confirms
  // it; the true radius may be larger.
  bool censored = false;
};

// Sorted points of xi^{Q_R} ∩ Q_r.
template <std::size_t D>
PointSet<D> WindowOfFiniteBox(double R, double r, double rho0, std::uint64_t seed) {
  auto pts = Restrict(ParkToSaturation(Domain<D>::Box(R), rho0, seed).accepted.points,
                      Domain<D>::Box(r));
  std::sort(pts.begin(), pts.end(), LexLess<D>);
  return pts;
}

template <std::size_t D>
StabilizationSample SampleStabilization(double r, const std::vector<double>& grid, double rho0,
                                        std::uint64_t seed) {
  RequireIncreasing(grid, "R grid");
  if (!(grid.front() >= r)) throw Error("R grid must start at or above the window size");
  std::vector<PointSet<D>> windows;
  windows.reserve(grid.size());
  for (double R : grid) windows.push_back(WindowOfFiniteBox<D>(R, r, rho0, seed));
  std::size_t k = grid.size() - 1;
  while (k > 0 && windows[k - 1] == windows.back()) --k;
  StabilizationSample s;
  s.r = r;
  s.grid = grid;
  s.index = k;
  s.radius = grid[k];
  s.censored = k + 1 == grid.size();
  return s;
}

struct SurvivalPoint {
  double t = 0.0;
  double survival = 0.0;
};

struct StabilizationTail {
  std::vector<StabilizationSample> samples;
  // Empirical P(R_S > t) on the grid; censored samples count as exceeding
  // every t.
  std::vector<SurvivalPoint> survival;
  // Least-squares fit of log survival against t over the points with
  // positive survival below the last grid value.
  stats::LineFit fit;
  std::size_t censored = 0;
};

inline StabilizationTail SummarizeStabilization(std::vector<StabilizationSample> samples) {
  StabilizationTail tail;
  tail.samples = std::move(samples);
  if (tail.samples.empty()) return tail;
  const auto& grid = tail.samples.front().grid;
  const double n = static_cast<double>(tail.samples.size());
  for (const auto& s : tail.samples) tail.censored += s.censored;
  std::vector<double> x, y;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    std::size_t above = 0;
    for (const auto& s : tail.samples) above += (s.censored || s.radius > grid[g]);
    const double surv = static_cast<double>(above) / n;
    tail.survival.push_back({grid[g], surv});
    if (surv > 0.0 && g + 1 < grid.size()) {
      x.push_back(grid[g]);
      y.push_back(std::log(surv));
    }
  }
  tail.fit = stats::FitLine(x, y);
  return tail;
}

template <std::size_t D>
StabilizationTail EstimateStabilizationTail(double rho0, double r, const std::vector<double>& grid,
                                            std::size_t reps, std::uint64_t master,
                                            unsigned threads = 1) {
  RequireIncreasing(grid, "R grid");
  std::vector<StabilizationSample> samples(reps);
  ParallelFor(reps, threads, [&](std::size_t i) {
    samples[i] = SampleStabilization<D>(r, grid, rho0, ReplicateSeed(master, i));
  });
  return SummarizeStabilization(std::move(samples));
}

// ---------------------------------------------------------------------------
// Rotational exchangeability of sector counts (planar).

struct SectorTest {
  // counts[rep][k]: points of xi in sector k of the annulus.
  std::vector<std::vector<std::uint64_t>> counts;
  double statistic = 0.0;
  double p_value = 1.0;
};

namespace detail {

inline double SectorStatistic(const std::vector<std::vector<std::uint64_t>>& counts,
                              const std::vector<std::size_t>& shift,
                              const std::vector<bool>& flip) {
  const std::size_t K = counts.front().size();
  std::vector<double> tot(K, 0.0);
  for (std::size_t r = 0; r < counts.size(); ++r)
    for (std::size_t k = 0; k < K; ++k) {
      const std::size_t j = flip[r] ? (K - k) % K : k;
      tot[(j + shift[r]) % K] += static_cast<double>(counts[r][k]);
    }
  double m = 0.0;
  for (double t : tot) m += t;
  m /= static_cast<double>(K);
  double s = 0.0;
  for (double t : tot) s += (t - m) * (t - m);
  return s;
}

}  // namespace detail

/// Counts of xi in K congruent sectors of the annulus r_in <= |x| < r_out,
/// over independent replicates. Under isotropy the count vector of each
/// replicate is invariant in law under the dihedral group of the sectors, so
/// the spread of the sector totals is compared with its randomization
/// distribution over that group.
inline SectorTest SectorIsotropyTest(double rho0, double r_in, double r_out, std::size_t sectors,
                                     std::size_t reps, std::uint64_t master, double pad,
                                     std::size_t permutations = 999, unsigned threads = 1) {
  if (sectors < 2 || reps == 0) throw Error("need at least two sectors and one replicate");
  if (!(0.0 <= r_in && r_in < r_out)) throw Error("annulus radii must satisfy 0 <= r_in < r_out");
  SectorTest out;
  out.counts.assign(reps, std::vector<std::uint64_t>(sectors, 0));
  ParallelFor(reps, threads, [&](std::size_t i) {
    const auto res =
        ParkCoupledInfinite(Domain<2>::Box(r_out), pad, rho0, ReplicateSeed(master, i));
    for (const auto& p : res.accepted.points) {
      const double rr = std::hypot(p[0], p[1]);
      if (rr < r_in || rr >= r_out) continue;
      double a = std::atan2(p[1], p[0]);
      if (a < 0.0) a += 2.0 * std::numbers::pi;
      auto k = static_cast<std::size_t>(a / (2.0 * std::numbers::pi) * static_cast<double>(sectors));
      ++out.counts[i][std::min(k, sectors - 1)];
    }
  });
  std::vector<std::size_t> shift(reps, 0);
  std::vector<bool> flip(reps, false);
  out.statistic = detail::SectorStatistic(out.counts, shift, flip);
  KeyedRng rng(master, {0x736563746f72ULL, 0, 0});
  std::size_t extreme = 0;
  for (std::size_t b = 0; b < permutations; ++b) {
    for (std::size_t r = 0; r < reps; ++r) {
      shift[r] = rng() % sectors;
      flip[r] = rng() & 1U;
    }
    extreme += detail::SectorStatistic(out.counts, shift, flip) >= out.statistic;
  }
  out.p_value = static_cast<double>(1 + extreme) / static_cast<double>(1 + permutations);
  return out;
}

}  // namespace parklab

#endif  // PARKLAB_PARKING_EXPERIMENTS_HPP_
