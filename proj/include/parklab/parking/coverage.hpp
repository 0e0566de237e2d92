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

// Box-versus-union-of-balls coverage tests used to retire voxels during
// saturation. "Covered" means every point of the region lies strictly within
// `radius` of some center, so no arrival there can ever be accepted.

#ifndef PARKLAB_PARKING_COVERAGE_HPP_
#define PARKLAB_PARKING_COVERAGE_HPP_

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "parklab/geom/point.hpp"

namespace parklab::coverage {

// Relative slack on squared radii. Candidate points this close to a circle
// count as covered, which keeps voxels from living forever on measure-zero
// slivers.
inline constexpr double kSlack = 1e-10;

// Interval [lo, hi] against open intervals (c - radius, c + radius).
inline bool IntervalCovered(double lo, double hi, std::span<const Point<1>> centers,
                            double radius) {
  std::vector<std::pair<double, double>> iv;
  iv.reserve(centers.size());
  for (const auto& c : centers) iv.emplace_back(c[0] - radius, c[0] + radius);
  std::sort(iv.begin(), iv.end());
  const double tol = kSlack * radius;
  double reach = lo, far = -INFINITY;
  std::size_t i = 0;
  while (true) {
    while (i < iv.size() && iv[i].first < reach + tol) far = std::max(far, iv[i++].second);
    if (far <= reach) return false;
    reach = far;
    if (reach >= hi - tol) return true;
  }
}

struct Circle {
  Point<2> c;
  double r;
};

namespace detail {

inline void CircleLineX(const Circle& k, double x, double ylo, double yhi,
                        std::vector<Point<2>>& out) {
  const double dx = x - k.c[0];
  const double h2 = k.r * k.r - dx * dx;
  if (h2 < 0.0) return;
  const double h = std::sqrt(h2);
  for (double y : {k.c[1] - h, k.c[1] + h})
    if (y >= ylo && y <= yhi) out.push_back({x, y});
}

inline void CircleLineY(const Circle& k, double y, double xlo, double xhi,
                        std::vector<Point<2>>& out) {
  const double dy = y - k.c[1];
  const double h2 = k.r * k.r - dy * dy;
  if (h2 < 0.0) return;
  const double h = std::sqrt(h2);
  for (double x : {k.c[0] - h, k.c[0] + h})
    if (x >= xlo && x <= xhi) out.push_back({x, y});
}

inline void CircleCircle(const Circle& a, const Circle& b, std::vector<Point<2>>& out) {
  const double dx = b.c[0] - a.c[0], dy = b.c[1] - a.c[1];
  const double d2 = dx * dx + dy * dy;
  if (d2 == 0.0) return;
  const double d = std::sqrt(d2);
  if (d > a.r + b.r || d < std::abs(a.r - b.r)) return;
  const double l = (a.r * a.r - b.r * b.r + d2) / (2.0 * d);
  const double h2 = a.r * a.r - l * l;
  const double h = h2 > 0.0 ? std::sqrt(h2) : 0.0;
  const double mx = a.c[0] + l * dx / d, my = a.c[1] + l * dy / d;
  out.push_back({mx - h * dy / d, my + h * dx / d});
  out.push_back({mx + h * dy / d, my - h * dx / d});
}

}  // namespace detail

/// Exact (up to kSlack) planar test: is every point of the closed box `b`
/// that lies in the closed disk `inside` (when given) within distance
/// < radius of a center?
///
/// If the uncovered set has interior, its boundary has a vertex among: box
/// corners, circle/box-edge crossings, circle/circle crossings, or an
/// extreme point of the constraint circle. Checking those candidates is
/// therefore sufficient.
inline bool BoxCovered(const Box<2>& b, std::span<const Point<2>> centers, double radius,
                       const std::optional<Circle>& inside = std::nullopt) {
  const double r2 = radius * radius;
  const std::size_t n = centers.size();
  // Candidate source: index of generating disks, or n for the constraint.
  auto uncovered = [&](const Point<2>& q, std::size_t skip_a, std::size_t skip_b,
                       bool on_constraint) {
    if (q[0] < b.lo[0] || q[0] > b.hi[0] || q[1] < b.lo[1] || q[1] > b.hi[1]) return false;
    if (inside && !on_constraint) {
      const double rr = inside->r * inside->r;
      if (Dist2(q, inside->c) > rr * (1.0 + kSlack)) return false;
    }
    for (std::size_t k = 0; k < n; ++k) {
      if (k == skip_a || k == skip_b) continue;
      if (Dist2(q, centers[k]) < r2 * (1.0 + kSlack)) return false;
    }
    return true;
  };

  // Corners first: cheapest and most often decisive.
  for (int m = 0; m < 4; ++m) {
    const Point<2> q{(m & 1) ? b.hi[0] : b.lo[0], (m & 2) ? b.hi[1] : b.lo[1]};
    if (uncovered(q, n, n, false)) return false;
  }

  std::vector<Point<2>> pts;
  auto circle_of = [&](std::size_t k) -> Circle {
    return k < n ? Circle{centers[k], radius} : *inside;
  };
  const std::size_t m = n + (inside ? 1 : 0);
  for (std::size_t k = 0; k < m; ++k) {
    const Circle ck = circle_of(k);
    pts.clear();
    detail::CircleLineX(ck, b.lo[0], b.lo[1], b.hi[1], pts);
    detail::CircleLineX(ck, b.hi[0], b.lo[1], b.hi[1], pts);
    detail::CircleLineY(ck, b.lo[1], b.lo[0], b.hi[0], pts);
    detail::CircleLineY(ck, b.hi[1], b.lo[0], b.hi[0], pts);
    if (k == n) {
      pts.push_back({ck.c[0] - ck.r, ck.c[1]});
      pts.push_back({ck.c[0] + ck.r, ck.c[1]});
      pts.push_back({ck.c[0], ck.c[1] - ck.r});
      pts.push_back({ck.c[0], ck.c[1] + ck.r});
    }
    for (const auto& q : pts)
      if (uncovered(q, k < n ? k : n, n, k == n)) return false;
  }
  for (std::size_t i = 0; i < m; ++i) {
    const Circle ci = circle_of(i);
    for (std::size_t j = i + 1; j < m; ++j) {
      const Circle cj = circle_of(j);
      pts.clear();
      detail::CircleCircle(ci, cj, pts);
      for (const auto& q : pts)
        if (uncovered(q, i < n ? i : n, j < n ? j : n, j == n)) return false;
    }
  }
  return true;
}

// Some single ball of the given radius contains the whole closed box.
template <std::size_t D>
bool CoveredBySingleBall(const Box<D>& b, std::span<const Point<D>> centers, double radius) {
  const double r2 = radius * radius;
  for (const auto& c : centers)
    if (b.MaxDist2(c) < r2) return true;
  return false;
}

}  // namespace parklab::coverage

#endif  // PARKLAB_PARKING_COVERAGE_HPP_
