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

// Empirical discrete Poincare constant on parking networks.
//
// For fields w vanishing outside the interior region, the ratio
//
//   sum_x eps^2 |w(x)|^p  /  sum_edges eps^2 |(w(y) - w(x)) / |y - x||^p
//
// is maximized over random trial fields. A uniform constant shows up as a
// maximum that stays bounded as R grows with eps = 1 / R.

#ifndef PARKLAB_RUBBER_POINCARE_HPP_
#define PARKLAB_RUBBER_POINCARE_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "parklab/delaunay/triangulation.hpp"
#include "parklab/geom/keyed_rng.hpp"
#include "parklab/geom/parallel.hpp"
#include "parklab/parking/experiments.hpp"
#include "parklab/rubber/energy.hpp"

namespace parklab::rubber {

enum class TrialField { kNoise, kModes, kSpike, kBump };

inline std::string ToString(TrialField k) {
  switch (k) {
    case TrialField::kNoise: return "noise";
    case TrialField::kModes: return "modes";
    case TrialField::kSpike: return "spike";
    case TrialField::kBump: return "bump";
  }
  return "?";
}

/// Ratio for one field; 0 when both sides vanish.
inline double PoincareRatio(const EnergyTerms& terms, std::span<const Vec2> w, double p) {
  EnergyModel m{"poincare", p, 0.0, 0.0};
  std::vector<double> lhs;
  for (std::size_t i = 0; i < terms.vertex_count; ++i)
    if (terms.used[i]) lhs.push_back(terms.eps * terms.eps * std::pow(Norm(w[i]), p));
  const double a = PairwiseSum(lhs);
  const double b = AssembleEnergy(terms, m, w);
  if (a == 0.0) return 0.0;
  return b > 0.0 ? a / b : INFINITY;
}

struct PoincareResult {
  std::size_t trials = 0;
  std::size_t interior = 0;
  double max_ratio = 0.0;
  TrialField argmax = TrialField::kNoise;
};

inline constexpr std::uint64_t kPoincareTag = 0x7275622d706f696eULL;

/// Random fields supported in the domain eroded by `layer`; trial t has
/// kind t mod 4. The box domain is assumed centered at the origin.
inline PoincareResult PoincareCheck(const Triangulation& tri, const Domain<2>& domain, double layer,
                                    std::size_t trials, std::uint64_t seed, double p = 2.0,
                                    double eps = 1.0) {
  const EnergyTerms terms = CompileEnergy(tri, domain, EnergyModel{"poincare", p, 0.0, 0.0}, eps);
  const Domain<2> inner = domain.Eroded(layer);
  const double a = inner.scale() - inner.erosion();
  std::vector<std::uint32_t> in;
  for (std::size_t i = 0; i < tri.points.size(); ++i)
    if (terms.used[i] && inner.Contains(tri.points[i])) in.push_back(static_cast<std::uint32_t>(i));

  PoincareResult res;
  res.trials = trials;
  res.interior = in.size();
  if (in.empty()) return res;
  std::vector<Vec2> w(tri.points.size());
  for (std::size_t t = 0; t < trials; ++t) {
    KeyedRng rng(seed, {kPoincareTag, static_cast<std::uint64_t>(t), 0});
    auto sym = [&] { return 2.0 * rng.Uniform() - 1.0; };
    const auto kind = static_cast<TrialField>(t % 4);
    std::fill(w.begin(), w.end(), Vec2{});
    switch (kind) {
      case TrialField::kNoise:
        for (auto i : in) w[i] = {sym(), sym()};
        break;
      case TrialField::kModes: {
        const int modes = 1 + static_cast<int>(rng() % 3);
        for (int k = 0; k < modes; ++k) {
          const int m = 1 + static_cast<int>(rng() % 3), n = 1 + static_cast<int>(rng() % 3);
          const Vec2 c{sym(), sym()};
          for (auto i : in) {
            const auto& x = tri.points[i];
            const double s = std::sin(m * std::numbers::pi * (x[0] + a) / (2.0 * a)) *
                             std::sin(n * std::numbers::pi * (x[1] + a) / (2.0 * a));
            w[i] = w[i] + s * c;
          }
        }
        break;
      }
      case TrialField::kSpike: {
        const double h = std::exp(std::log(0.1) + std::log(100.0) * rng.Uniform());
        w[in[rng() % in.size()]] = {h * sym(), h * sym()};
        break;
      }
      case TrialField::kBump: {
        const Vec2 c{a * sym(), a * sym()};
        const double r = a * (0.1 + 0.4 * rng.Uniform());
        const Vec2 v{sym(), sym()};
        for (auto i : in) {
          const double d = Dist(tri.points[i], c) / r;
          if (d < 1.0) w[i] = std::pow(std::cos(0.5 * std::numbers::pi * d), 2) * v;
        }
        break;
      }
    }
    const double q = PoincareRatio(terms, w, p);
    if (q > res.max_ratio) {
      res.max_ratio = q;
      res.argmax = kind;
    }
  }
  return res;
}

struct PoincareRow {
  double R = 0.0;
  std::size_t vertices = 0;
  PoincareResult result;
};

struct PoincareOptions {
  double rho0 = 0.5;
  double p = 2.0;
  unsigned threads = 1;
};

/// Parking network of Q_R rescaled by eps = 1 / R into (-1, 1)^2, with a
/// field-free layer of width 2 rho2 (before rescaling).
inline std::vector<PoincareRow> DiscretePoincareCheck(const std::vector<double>& Rs,
                                                      std::size_t trials, std::uint64_t master,
                                                      const PoincareOptions& opt = {}) {
  RequireIncreasing(Rs, "R");
  if (!(opt.rho0 > 0.0)) throw Error("rho0 must be positive");
  std::vector<PoincareRow> rows(Rs.size());
  ParallelFor(Rs.size(), opt.threads, [&](std::size_t k) {
    const double R = Rs[k], eps = 1.0 / R;
    const std::uint64_t seed = ReplicateSeed(master, 0);
    auto pts = ParkToSaturation(Domain<2>::Box(R), opt.rho0, seed).accepted.points;
    std::sort(pts.begin(), pts.end(), LexLess<2>);
    for (auto& x : pts) x = eps * x;
    const Triangulation tri = Triangulate(pts);
    rows[k].R = R;
    rows[k].vertices = pts.size();
    rows[k].result = PoincareCheck(tri, Domain<2>::Box(1.0), 4.0 * opt.rho0 * eps, trials,
                                   ReplicateSeed(master, 1), opt.p, eps);
  });
  return rows;
}

}  // namespace parklab::rubber

#endif  // PARKLAB_RUBBER_POINCARE_HPP_
