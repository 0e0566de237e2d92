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

#ifndef PARKLAB_GEOM_POINT_CONFIG_HPP_
#define PARKLAB_GEOM_POINT_CONFIG_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <vector>

#include "parklab/geom/domain.hpp"
#include "parklab/geom/keyed_rng.hpp"
#include "parklab/geom/point.hpp"
#include "parklab/geom/point_grid.hpp"
#include "parklab/geom/predicates.hpp"

namespace parklab {

/// Finite point set together with the admissibility parameters it is
/// meant to satisfy: hard-core radius rho1 and empty-space radius rho2 in
/// `domain`.
template <std::size_t D>
struct PointConfig {
  PointSet<D> points;
  double rho1 = 0.0;
  double rho2 = std::numeric_limits<double>::infinity();
  Domain<D> domain = Domain<D>::Box(1.0);

  std::size_t size() const { return points.size(); }
};

struct AdmissibilityReport {
  bool hardcore_ok = true;
  bool emptyspace_ok = false;
  // Minimum pairwise distance (+inf for fewer than two points).
  double min_gap = std::numeric_limits<double>::infinity();
  // Certified upper bound on sup_z dist(z, points) over the domain when
  // emptyspace_ok; otherwise only known to be >= rho2.
  double max_hole = std::numeric_limits<double>::infinity();
};

// Exact closest-pair distance by a sorted sweep along the first axis.
template <std::size_t D>
double MinPairwiseDistance(const PointSet<D>& pts) {
  if (pts.size() < 2) return std::numeric_limits<double>::infinity();
  std::vector<std::size_t> order(pts.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return pts[a][0] < pts[b][0]; });
  double best2 = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto& p = pts[order[i]];
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      const auto& q = pts[order[j]];
      const double dx = q[0] - p[0];
      if (dx * dx >= best2) break;
      best2 = std::min(best2, Dist2(p, q));
    }
  }
  return std::sqrt(best2);
}

namespace detail {

// Adaptive certification of sup_{z in cell ∩ domain} dist(z, points): a cell
// with center c and half-diagonal h is bounded by dist(c) + h, and cells whose
// bound reaches `target` are split until `max_depth`.
template <std::size_t D>
double HoleBound(const PointGrid<D>& grid, const Domain<D>& domain,
                 const Box<D>& cell, double target, int depth, int max_depth) {
  if (!domain.MayIntersect(cell)) return 0.0;
  const Point<D> c = cell.Center();
  double h2 = 0.0;
  for (std::size_t i = 0; i < D; ++i) {
    const double t = 0.5 * (cell.hi[i] - cell.lo[i]);
    h2 += t * t;
  }
  const double dc = grid.Nearest(c).second;
  const double bound = dc + std::sqrt(h2);
  // A center at distance >= target is a witnessed hole: no need to refine.
  if (bound < target || dc >= target || depth >= max_depth) return bound;
  double worst = 0.0;
  for (std::size_t child = 0; child < (std::size_t{1} << D); ++child) {
    Box<D> sub;
    for (std::size_t i = 0; i < D; ++i) {
      const bool upper = (child >> i) & 1U;
      sub.lo[i] = upper ? c[i] : cell.lo[i];
      sub.hi[i] = upper ? cell.hi[i] : c[i];
    }
    worst = std::max(worst, HoleBound(grid, domain, sub, target, depth + 1, max_depth));
    if (worst >= target) break;
  }
  return worst;
}

}  // namespace detail

/// Hard-core and empty-space check. The empty-space bound comes from a grid
/// of pitch at most rho2/20 (rho2 finite) whose cells are refined where the
/// coarse bound cannot certify the condition.
template <std::size_t D>
AdmissibilityReport CheckAdmissible(const PointConfig<D>& cfg, int max_refine = 12) {
  AdmissibilityReport rep;
  rep.min_gap = MinPairwiseDistance(cfg.points);
  rep.hardcore_ok = rep.min_gap >= cfg.rho1;
  if (cfg.points.empty() || cfg.domain.IsEmpty()) {
    rep.emptyspace_ok = cfg.domain.IsEmpty();
    rep.max_hole = cfg.domain.IsEmpty() ? 0.0 : std::numeric_limits<double>::infinity();
    return rep;
  }
  const Box<D> bb = cfg.domain.BoundingBox();
  double side = 0.0;
  for (std::size_t i = 0; i < D; ++i) side = std::max(side, bb.hi[i] - bb.lo[i]);
  const double pitch_target = std::isfinite(cfg.rho2) ? cfg.rho2 / 20.0 : side / 20.0;
  const PointGrid<D> grid(std::max(pitch_target * 4.0, 1e-12), cfg.points);
  std::array<std::int64_t, D> cells;
  std::array<double, D> pitch;
  for (std::size_t i = 0; i < D; ++i) {
    const double len = bb.hi[i] - bb.lo[i];
    cells[i] = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(len / pitch_target)));
    pitch[i] = len / static_cast<double>(cells[i]);
  }
  const double target = std::isfinite(cfg.rho2) ? cfg.rho2 : std::numeric_limits<double>::infinity();
  double worst = 0.0;
  std::array<std::int64_t, D> idx{};
  while (true) {
    Box<D> cell;
    for (std::size_t i = 0; i < D; ++i) {
      cell.lo[i] = bb.lo[i] + pitch[i] * static_cast<double>(idx[i]);
      cell.hi[i] = (idx[i] + 1 == cells[i]) ? bb.hi[i] : cell.lo[i] + pitch[i];
    }
    worst = std::max(worst, detail::HoleBound(grid, cfg.domain, cell, target, 0, max_refine));
    std::size_t i = 0;
    for (; i < D; ++i) {
      if (++idx[i] < cells[i]) break;
      idx[i] = 0;
    }
    if (i == D) break;
  }
  rep.max_hole = worst;
  rep.emptyspace_ok = worst < cfg.rho2;
  return rep;
}

struct GeneralPositionReport {
  bool ok = true;
  // Offending indices: three collinear points or four cocircular points.
  std::vector<std::size_t> witness;
};

/// Exhaustive planar general-position check with exact predicates:
/// O(n^3) collinearity and O(n^4) cocircularity. Meant for small sets; the
/// triangulator performs the checks that matter for larger ones.
inline GeneralPositionReport CheckGeneralPosition(const PointSet<2>& pts) {
  using predicates::InCircle;
  using predicates::Orient2D;
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        if (Orient2D(pts[i], pts[j], pts[k]) == 0) return {false, {i, j, k}};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        const bool ccw = Orient2D(pts[i], pts[j], pts[k]) > 0;
        for (std::size_t l = k + 1; l < n; ++l) {
          const int s = ccw ? InCircle(pts[i], pts[j], pts[k], pts[l])
                            : InCircle(pts[i], pts[k], pts[j], pts[l]);
          if (s == 0) return {false, {i, j, k, l}};
        }
      }
  return {};
}

// n uniform points in the axis-aligned cube `cell` of the given side, drawn
// from the stream keyed by (seed, cell key, counter).
template <std::size_t D>
PointSet<D> KeyedUniform(std::uint64_t seed, std::uint64_t experiment,
                         const std::array<std::int64_t, D>& cell, double side,
                         std::size_t n, std::uint64_t counter = 0) {
  KeyedRng rng(seed, {experiment, CellKey(cell), counter});
  PointSet<D> out(n);
  for (auto& p : out)
    for (std::size_t i = 0; i < D; ++i) {
      const double lo = side * static_cast<double>(cell[i]);
      const double hi = side * static_cast<double>(cell[i] + 1);
      p[i] = std::min(lo + side * rng.Uniform(), std::nextafter(hi, lo));
    }
  return out;
}

}  // namespace parklab

#endif  // PARKLAB_GEOM_POINT_CONFIG_HPP_
