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

#ifndef PARKLAB_GEOM_POINT_GRID_HPP_
#define PARKLAB_GEOM_POINT_GRID_HPP_

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <unordered_map>
#include <utility>
#include <vector>

#include "parklab/geom/keyed_rng.hpp"
#include "parklab/geom/point.hpp"

namespace parklab {

/// Uniform-grid spatial hash over a growing point set.
template <std::size_t D>
class PointGrid {
 public:
  using Cell = std::array<std::int64_t, D>;

  explicit PointGrid(double cell_size) : cell_(cell_size), inv_(1.0 / cell_size) {
    if (!(cell_size > 0.0)) throw Error("grid cell size must be positive");
    lo_.fill(std::numeric_limits<std::int64_t>::max());
    hi_.fill(std::numeric_limits<std::int64_t>::min());
  }

  PointGrid(double cell_size, const PointSet<D>& points) : PointGrid(cell_size) {
    for (const auto& p : points) Insert(p);
  }

  std::size_t Insert(const Point<D>& p) {
    const std::size_t id = points_.size();
    points_.push_back(p);
    const Cell c = CellOf(p);
    buckets_[CellKey(c)].push_back(static_cast<std::uint32_t>(id));
    for (std::size_t i = 0; i < D; ++i) {
      lo_[i] = std::min(lo_[i], c[i]);
      hi_[i] = std::max(hi_[i], c[i]);
    }
    return id;
  }

  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const Point<D>& point(std::size_t i) const { return points_[i]; }
  const PointSet<D>& points() const { return points_; }
  double cell_size() const { return cell_; }

  Cell CellOf(const Point<D>& p) const {
    Cell c;
    for (std::size_t i = 0; i < D; ++i)
      c[i] = static_cast<std::int64_t>(std::floor(p[i] * inv_));
    return c;
  }

  // Calls fn(index) for every stored point with |p - x| < radius (strict).
  template <class Fn>
  void ForEachWithin(const Point<D>& x, double radius, Fn&& fn) const {
    const double r2 = radius * radius;
    ForEachCandidate(x, radius, [&](std::uint32_t id) {
      if (Dist2(points_[id], x) < r2) fn(static_cast<std::size_t>(id));
    });
  }

  // Calls fn(index) for every stored point in cells that intersect the ball.
  template <class Fn>
  void ForEachCandidate(const Point<D>& x, double radius, Fn&& fn) const {
    if (points_.empty()) return;
    Cell a, b;
    for (std::size_t i = 0; i < D; ++i) {
      a[i] = std::max(lo_[i], static_cast<std::int64_t>(std::floor((x[i] - radius) * inv_)));
      b[i] = std::min(hi_[i], static_cast<std::int64_t>(std::floor((x[i] + radius) * inv_)));
      if (a[i] > b[i]) return;
    }
    Cell c = a;
    while (true) {
      if (auto it = buckets_.find(CellKey(c)); it != buckets_.end())
        for (std::uint32_t id : it->second) fn(id);
      std::size_t i = 0;
      for (; i < D; ++i) {
        if (c[i] < b[i]) {
          ++c[i];
          break;
        }
        c[i] = a[i];
      }
      if (i == D) break;
    }
  }

  bool AnyWithin(const Point<D>& x, double radius) const {
    bool found = false;
    const double r2 = radius * radius;
    ForEachCandidate(x, radius, [&](std::uint32_t id) {
      if (!found && Dist2(points_[id], x) < r2) found = true;
    });
    return found;
  }

  // Nearest stored point; returns {index, distance}. Requires a nonempty grid.
  std::pair<std::size_t, double> Nearest(const Point<D>& x) const {
    if (points_.empty()) throw Error("nearest-point query on an empty grid");
    double best2 = std::numeric_limits<double>::infinity();
    std::size_t best = 0;
    std::int64_t max_ring = 0;
    const Cell cx = CellOf(x);
    for (std::size_t i = 0; i < D; ++i) {
      max_ring = std::max(max_ring, std::abs(cx[i] - lo_[i]));
      max_ring = std::max(max_ring, std::abs(cx[i] - hi_[i]));
    }
    for (std::int64_t k = 0; k <= max_ring; ++k) {
      VisitRing(cx, k, [&](std::uint32_t id) {
        const double d2 = Dist2(points_[id], x);
        if (d2 < best2) {
          best2 = d2;
          best = id;
        }
      });
      const double reach = static_cast<double>(k) * cell_;
      if (best2 <= reach * reach) break;
    }
    return {best, std::sqrt(best2)};
  }

 private:
  template <class Fn>
  void VisitRing(const Cell& center, std::int64_t k, Fn&& fn) const {
    Cell off;
    off.fill(-k);
    while (true) {
      std::int64_t m = 0;
      for (std::size_t i = 0; i < D; ++i) m = std::max(m, std::abs(off[i]));
      if (m == k) {
        Cell c;
        for (std::size_t i = 0; i < D; ++i) c[i] = center[i] + off[i];
        if (auto it = buckets_.find(CellKey(c)); it != buckets_.end())
          for (std::uint32_t id : it->second) fn(id);
      }
      std::size_t i = 0;
      for (; i < D; ++i) {
        if (off[i] < k) {
          // Skip the interior of the ring along the first axis.
          if (i == 0 && k > 0) {
            bool interior = true;
            for (std::size_t j = 1; j < D; ++j)
              if (std::abs(off[j]) == k) interior = false;
            off[0] = (interior && off[0] == -k) ? k : off[0] + 1;
          } else {
            ++off[i];
          }
          break;
        }
        off[i] = -k;
      }
      if (i == D) break;
    }
  }

  double cell_;
  double inv_;
  PointSet<D> points_;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> buckets_;
  Cell lo_, hi_;
};

}  // namespace parklab

#endif  // PARKLAB_GEOM_POINT_GRID_HPP_
