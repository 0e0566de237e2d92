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

// Empirical checks of the structural axioms behind the umbrella theorem:
// almost subadditivity, superadditivity of the boundary partner over
// rectangle bisections, smoothness, and closeness of S and its partner.

#ifndef PARKLAB_FUNCTIONALS_PROPERTIES_HPP_
#define PARKLAB_FUNCTIONALS_PROPERTIES_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "parklab/functionals/evaluate.hpp"
#include "parklab/geom/keyed_rng.hpp"
#include "parklab/geom/stats.hpp"
#include "parklab/parking/saturation.hpp"

namespace parklab {

// Boundary-rooted partner T of S, when one is implemented.
inline std::optional<FunctionalKind> BoundaryPartner(FunctionalKind k) {
  switch (k) {
    case FunctionalKind::kMst:
    case FunctionalKind::kBoundaryMst: return FunctionalKind::kBoundaryMst;
    case FunctionalKind::kMatching:
    case FunctionalKind::kBoundaryMatching: return FunctionalKind::kBoundaryMatching;
    case FunctionalKind::kCount: return FunctionalKind::kCount;
    default: return std::nullopt;
  }
}

struct PropertyOptions {
  // Frozen constants; a check fails when a trial needs a larger one.
  double c_subadditive = 3.0;
  double c_smooth = 3.0;
  // Instance size cap for zeta1 ∪ zeta2.
  std::size_t max_points = 16;
  double rho0 = 0.5;
  std::uint64_t seed = 1;
  // Relative slack for rounding in the superadditivity comparison.
  double rel_tol = 1e-12;
};

struct ClosenessRow {
  double R = 0.0;
  double mean_card = 0.0;
  // max over replicates of |S - T| / diam^p
  double max_gap = 0.0;
  // max_gap / card^((d - p) / d)
  double normalized = 0.0;
};

struct PropertyReport {
  FunctionalSpec spec;
  std::size_t trials = 0;
  // (a) S(D, z1 ∪ z2) <= S(D, z1) + S(D, z2) + C diam^p
  double fitted_c_subadditive = 0.0;
  std::size_t subadditive_violations = 0;
  // (b) T(D) >= T(D1) + T(D2) over bisections
  bool superadditive_checked = false;
  std::size_t superadditive_violations = 0;
  double worst_superadditive_gap = 0.0;
  // (c) |S(D, z1 ∪ z2) - S(D, z1)| <= C diam^p card(z2 ∩ D)^((d - p)/d)
  double fitted_c_smooth = 0.0;
  std::size_t smooth_violations = 0;
  // (d) closeness of S and T
  std::vector<ClosenessRow> closeness;
  bool closeness_sublinear = true;
};

namespace detail {

// Random sub-configuration of a parked configuration in [0, L)^d.
template <std::size_t D>
PointSet<D> ParkedSubset(double L, double rho0, std::uint64_t seed, std::size_t take,
                         KeyedRng& rng) {
  Point<D> c;
  c.fill(0.5 * L);
  auto pts = ParkToSaturation(Domain<D>::Box(0.5 * L, c), rho0, seed).accepted.points;
  std::shuffle(pts.begin(), pts.end(), rng);
  if (pts.size() > take) pts.resize(take);
  return pts;
}

template <std::size_t D>
double BoxDiameter(const Box<D>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < D; ++i) s += (b.hi[i] - b.lo[i]) * (b.hi[i] - b.lo[i]);
  return std::sqrt(s);
}

}  // namespace detail

/// Runs (a)-(d) on `trials` random instances built from parked
/// configurations. Only exact solvers are used.
template <std::size_t D>
PropertyReport PropertySuite(const FunctionalSpec& spec, std::size_t trials,
                             const PropertyOptions& opt = {}) {
  if (spec.mode != SolverMode::kExact) throw Error("property suite requires exact solver mode");
  PropertyReport rep;
  rep.spec = spec;
  rep.trials = trials;
  const double dd = static_cast<double>(D);
  const double expo = (dd - spec.p) / dd;
  // Box side giving roughly max_points parked points.
  const double L = 2.0 * opt.rho0 *
                   std::pow(static_cast<double>(opt.max_points) / 0.8, 1.0 / dd);
  Box<D> box;
  box.lo.fill(0.0);
  box.hi.fill(L);
  const double diam_p = PowerLength(detail::BoxDiameter(box), spec.p);
  const auto partner = BoundaryPartner(spec.kind);
  rep.superadditive_checked = partner.has_value();
  const FunctionalSpec tspec{partner.value_or(spec.kind), spec.p, SolverMode::kExact};

  for (std::size_t t = 0; t < trials; ++t) {
    KeyedRng rng(opt.seed, {0x70726f70ULL, t, 0});
    const std::size_t n1 = 1 + rng() % opt.max_points;
    const std::size_t n2 = rng() % (opt.max_points - n1 + 1);
    const auto z1 = detail::ParkedSubset<D>(L, opt.rho0, HashCombine(opt.seed, 2 * t), n1, rng);
    auto z2 = detail::ParkedSubset<D>(L, opt.rho0, HashCombine(opt.seed, 2 * t + 1), n2, rng);
    // Both sets live in the semi-open box; their union is a set.
    PointSet<D> uni = z1;
    for (const auto& x : z2)
      if (std::find(z1.begin(), z1.end(), x) == z1.end()) uni.push_back(x);

    const double s1 = EvaluateOn(spec, z1, box).value;
    const double s2 = EvaluateOn(spec, z2, box).value;
    const double s12 = EvaluateOn(spec, uni, box).value;
    // (a)
    const double need_a = (s12 - s1 - s2) / diam_p;
    rep.fitted_c_subadditive = std::max(rep.fitted_c_subadditive, need_a);
    if (need_a > opt.c_subadditive) ++rep.subadditive_violations;
    // (c)
    const double k2 = static_cast<double>(uni.size() - z1.size());
    const double lhs = std::abs(s12 - s1);
    if (k2 == 0.0) {
      if (lhs != 0.0) ++rep.smooth_violations;
    } else {
      const double need_c = lhs / (diam_p * std::pow(k2, expo));
      rep.fitted_c_smooth = std::max(rep.fitted_c_smooth, need_c);
      if (need_c > opt.c_smooth) ++rep.smooth_violations;
    }
    // (b) random bisection, occasionally degenerate.
    if (partner) {
      const std::size_t axis = rng() % D;
      const std::uint64_t mode = rng() % 16;
      const double cut = mode == 0 ? 0.0 : mode == 1 ? L : L * rng.UniformOpen();
      Box<D> lo_part = box, hi_part = box;
      lo_part.hi[axis] = cut;
      hi_part.lo[axis] = cut;
      const double whole = Evaluate(tspec, uni, box).value;
      const double parts = Evaluate(tspec, uni, lo_part).value + Evaluate(tspec, uni, hi_part).value;
      const double gap = parts - whole;
      rep.worst_superadditive_gap = std::max(rep.worst_superadditive_gap, gap);
      if (gap > opt.rel_tol * std::max(1.0, whole)) ++rep.superadditive_violations;
    }
  }

  // (d) S against its partner on parked configurations of growing size.
  if (partner) {
    std::vector<double> logk, logg;
    for (double R = opt.rho0 * 2.0; R <= 64.0; R *= 2.0) {
      const Domain<D> dom = Domain<D>::Box(R);
      ClosenessRow row;
      row.R = R;
      bool exact_ok = true;
      double cards = 0.0;
      const std::size_t reps = 8;
      for (std::size_t r = 0; r < reps; ++r) {
        const auto pts = ParkToSaturation(dom, opt.rho0, HashCombine(opt.seed ^ 0xc105eULL, r))
                             .accepted.points;
        if (!ExactAvailable(spec.kind, pts.size()) || !ExactAvailable(tspec.kind, pts.size())) {
          exact_ok = false;
          break;
        }
        const double s = EvaluateOn(spec, pts, dom).value, tv = EvaluateOn(tspec, pts, dom).value;
        row.max_gap = std::max(row.max_gap, std::abs(s - tv) / PowerLength(dom.Diameter(), spec.p));
        cards += static_cast<double>(pts.size());
      }
      if (!exact_ok) break;
      row.mean_card = cards / static_cast<double>(reps);
      row.normalized = row.max_gap / std::pow(row.mean_card, expo);
      rep.closeness.push_back(row);
      if (row.max_gap > 0.0) {
        logk.push_back(std::log(row.mean_card));
        logg.push_back(std::log(row.max_gap));
      }
    }
    // Sublinear in card^((d - p)/d): the log-log slope stays below the exponent.
    if (logk.size() >= 2) rep.closeness_sublinear = stats::FitLine(logk, logg).slope < expo;
  }
  return rep;
}

}  // namespace parklab

#endif  // PARKLAB_FUNCTIONALS_PROPERTIES_HPP_
