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

// Planar Delaunay triangulation of points in general position.
//
// Incremental Bowyer-Watson insertion over a triangulation closed by ghost
// triangles (one per hull edge, sharing a vertex at infinity), with
// visibility-walk point location and Morton-ordered insertion. Every
// orientation and incircle decision is exact; a zero answer means the input
// is not in general position and the offending tuple is reported.

#ifndef PARKLAB_DELAUNAY_TRIANGULATION_HPP_
#define PARKLAB_DELAUNAY_TRIANGULATION_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "parklab/functionals/functional.hpp"
#include "parklab/geom/point.hpp"
#include "parklab/geom/predicates.hpp"

namespace parklab {

using Simplex = std::array<std::uint32_t, 3>;

// Raised when exact arithmetic finds three collinear or four cocircular
// input points.
class GeneralPositionError : public Error {
 public:
  explicit GeneralPositionError(std::vector<std::uint32_t> tuple)
      : Error(Describe(tuple)), tuple_(std::move(tuple)) {}
  const std::vector<std::uint32_t>& tuple() const { return tuple_; }

 private:
  static std::string Describe(const std::vector<std::uint32_t>& t) {
    std::string s = t.size() == 3 ? "collinear points" : "cocircular points";
    for (std::size_t i = 0; i < t.size(); ++i) s += (i ? ", " : " ") + std::to_string(t[i]);
    return s;
  }
  std::vector<std::uint32_t> tuple_;
};

struct Triangulation {
  PointSet<2> points;
  // Counterclockwise, rotated so the smallest index comes first, sorted.
  std::vector<Simplex> simplices;
  // Undirected (i < j), sorted, each once.
  std::vector<Edge> edges;
  std::vector<double> areas;
};

inline double SignedArea(const Point<2>& a, const Point<2>& b, const Point<2>& c) {
  return 0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]));
}

// Canonical simplex order and the derived edge and area lists.
inline void Canonicalize(Triangulation& t) {
  for (auto& s : t.simplices) {
    const auto m = std::min_element(s.begin(), s.end()) - s.begin();
    std::rotate(s.begin(), s.begin() + m, s.end());
  }
  std::sort(t.simplices.begin(), t.simplices.end());
  t.edges.clear();
  for (const auto& s : t.simplices)
    for (int k = 0; k < 3; ++k) {
      const std::uint32_t a = s[k], b = s[(k + 1) % 3];
      t.edges.push_back({std::min(a, b), std::max(a, b)});
    }
  std::sort(t.edges.begin(), t.edges.end());
  t.edges.erase(std::unique(t.edges.begin(), t.edges.end()), t.edges.end());
  t.areas.clear();
  for (const auto& s : t.simplices)
    t.areas.push_back(SignedArea(t.points[s[0]], t.points[s[1]], t.points[s[2]]));
}

namespace detail {

class DelaunayBuilder {
 public:
  explicit DelaunayBuilder(const PointSet<2>& pts) : pts_(pts), ghost_(static_cast<std::uint32_t>(pts.size())) {}

  std::vector<Simplex> Run() {
    const std::size_t n = pts_.size();
    if (n < 3) return {};
    const auto order = InsertionOrder();
    // Seed triangle: the first three in order, which must not be collinear.
    std::uint32_t a = order[0], b = order[1], c = order[2];
    const int o = predicates::Orient2D(pts_[a], pts_[b], pts_[c]);
    if (o == 0) throw GeneralPositionError({a, b, c});
    if (o < 0) std::swap(b, c);
    const std::uint32_t t0 = Add({a, b, c});
    const std::uint32_t gab = Add({b, a, ghost_}), gbc = Add({c, b, ghost_}),
                        gca = Add({a, c, ghost_});
    // Neighbour k is across the edge opposite vertex k.
    Link(t0, 2, gab);
    Link(t0, 0, gbc);
    Link(t0, 1, gca);
    LinkGhosts(gab);
    LinkGhosts(gbc);
    LinkGhosts(gca);
    last_ = t0;
    for (std::size_t i = 3; i < n; ++i) Insert(order[i]);

    std::vector<Simplex> out;
    for (std::size_t t = 0; t < tri_.size(); ++t)
      if (alive_[t] && !IsGhost(static_cast<std::uint32_t>(t))) out.push_back(tri_[t]);
    return out;
  }

 private:
  std::vector<std::uint32_t> InsertionOrder() const {
    const std::size_t n = pts_.size();
    double lo0 = pts_[0][0], hi0 = lo0, lo1 = pts_[0][1], hi1 = lo1;
    for (const auto& p : pts_) {
      lo0 = std::min(lo0, p[0]);
      hi0 = std::max(hi0, p[0]);
      lo1 = std::min(lo1, p[1]);
      hi1 = std::max(hi1, p[1]);
    }
    const double s0 = hi0 > lo0 ? 65535.0 / (hi0 - lo0) : 0.0;
    const double s1 = hi1 > lo1 ? 65535.0 / (hi1 - lo1) : 0.0;
    auto spread = [](std::uint64_t v) {
      v &= 0xffff;
      v = (v | (v << 8)) & 0x00ff00ff;
      v = (v | (v << 4)) & 0x0f0f0f0f;
      v = (v | (v << 2)) & 0x33333333;
      v = (v | (v << 1)) & 0x55555555;
      return v;
    };
    std::vector<std::pair<std::uint64_t, std::uint32_t>> keyed(n);
    for (std::uint32_t i = 0; i < n; ++i) {
      const auto x = static_cast<std::uint64_t>((pts_[i][0] - lo0) * s0);
      const auto y = static_cast<std::uint64_t>((pts_[i][1] - lo1) * s1);
      keyed[i] = {spread(x) | (spread(y) << 1), i};
    }
    std::sort(keyed.begin(), keyed.end());
    std::vector<std::uint32_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = keyed[i].second;
    // Start from a non-degenerate seed when the first points are collinear.
    for (std::size_t k = 2; k < n; ++k)
      if (predicates::Orient2D(pts_[order[0]], pts_[order[1]], pts_[order[k]]) != 0) {
        std::swap(order[2], order[k]);
        break;
      }
    return order;
  }

  std::uint32_t Add(const Simplex& s) {
    tri_.push_back(s);
    nbr_.push_back({kNone, kNone, kNone});
    alive_.push_back(1);
    return static_cast<std::uint32_t>(tri_.size() - 1);
  }

  void Link(std::uint32_t t, int k, std::uint32_t u) {
    nbr_[t][k] = u;
    // Find the edge of u shared with t.
    const std::uint32_t x = tri_[t][(k + 1) % 3], y = tri_[t][(k + 2) % 3];
    for (int j = 0; j < 3; ++j) {
      const std::uint32_t p = tri_[u][(j + 1) % 3], q = tri_[u][(j + 2) % 3];
      if (p == y && q == x) {
        nbr_[u][j] = t;
        return;
      }
    }
    throw Error("delaunay: inconsistent adjacency");
  }

  // Links the two ghost edges of ghost triangle g to its ghost neighbours,
  // used only for the seed.
  void LinkGhosts(std::uint32_t g) {
    for (std::size_t h = 0; h < tri_.size(); ++h) {
      if (h == g || !IsGhost(static_cast<std::uint32_t>(h))) continue;
      for (int k = 0; k < 3; ++k) {
        const std::uint32_t x = tri_[g][(k + 1) % 3], y = tri_[g][(k + 2) % 3];
        for (int j = 0; j < 3; ++j)
          if (tri_[h][(j + 1) % 3] == y && tri_[h][(j + 2) % 3] == x) {
            nbr_[g][k] = static_cast<std::uint32_t>(h);
            nbr_[h][j] = g;
          }
      }
    }
  }

  bool IsGhost(std::uint32_t t) const {
    const auto& s = tri_[t];
    return s[0] == ghost_ || s[1] == ghost_ || s[2] == ghost_;
  }

  // The finite edge (u, v) of a ghost triangle, with the outside on the left.
  std::pair<std::uint32_t, std::uint32_t> GhostEdge(std::uint32_t t) const {
    const auto& s = tri_[t];
    const int k = s[0] == ghost_ ? 0 : s[1] == ghost_ ? 1 : 2;
    return {s[(k + 1) % 3], s[(k + 2) % 3]};
  }

  int Orient(std::uint32_t a, std::uint32_t b, std::uint32_t c) const {
    const int o = predicates::Orient2D(pts_[a], pts_[b], pts_[c]);
    if (o == 0) throw GeneralPositionError({a, b, c});
    return o;
  }

  bool InConflict(std::uint32_t t, std::uint32_t p) const {
    if (IsGhost(t)) {
      const auto [u, v] = GhostEdge(t);
      return Orient(u, v, p) > 0;
    }
    const auto& s = tri_[t];
    const int ic = predicates::InCircle(pts_[s[0]], pts_[s[1]], pts_[s[2]], pts_[p]);
    if (ic == 0) throw GeneralPositionError({s[0], s[1], s[2], p});
    return ic > 0;
  }

  std::uint32_t Locate(std::uint32_t p) const {
    std::uint32_t t = last_;
    if (!alive_[t]) t = static_cast<std::uint32_t>(std::find(alive_.begin(), alive_.end(), 1) - alive_.begin());
    if (IsGhost(t)) {
      const int k = tri_[t][0] == ghost_ ? 0 : tri_[t][1] == ghost_ ? 1 : 2;
      t = nbr_[t][k];
    }
    for (std::size_t steps = 0;; ++steps) {
      if (steps > 4 * tri_.size() + 16) throw Error("delaunay: point location did not terminate");
      const auto& s = tri_[t];
      bool moved = false;
      for (int k = 0; k < 3; ++k) {
        if (Orient(s[(k + 1) % 3], s[(k + 2) % 3], p) < 0) {
          t = nbr_[t][k];
          moved = true;
          break;
        }
      }
      if (!moved || IsGhost(t)) return t;
    }
  }

  void Insert(std::uint32_t p) {
    const std::uint32_t start = Locate(p);
    if (!InConflict(start, p)) throw Error("delaunay: located triangle is not in conflict");
    // Cavity by breadth-first search over conflicting triangles.
    cavity_.assign(1, start);
    alive_[start] = 0;
    boundary_.clear();
    for (std::size_t i = 0; i < cavity_.size(); ++i) {
      const std::uint32_t t = cavity_[i];
      for (int k = 0; k < 3; ++k) {
        const std::uint32_t u = nbr_[t][k];
        // Neighbours of live triangles are live, so a dead one is in the cavity.
        if (!alive_[u]) continue;
        if (InConflict(u, p)) {
          alive_[u] = 0;
          cavity_.push_back(u);
          continue;
        }
        boundary_.push_back({tri_[t][(k + 1) % 3], tri_[t][(k + 2) % 3], u});
      }
    }
    // Fan of new triangles (x, y, p) over the cavity boundary.
    fan_.clear();
    for (const auto& [x, y, outside] : boundary_) {
      if (x != ghost_ && y != ghost_ && Orient(x, y, p) <= 0)
        throw Error("delaunay: cavity is not star-shaped");
      const std::uint32_t t = Add({x, y, p});
      Link(t, 2, outside);
      fan_.push_back({x, t});
    }
    std::sort(fan_.begin(), fan_.end());
    auto by_first = [&](std::uint32_t v) {
      const auto it = std::lower_bound(fan_.begin(), fan_.end(), std::pair{v, 0U});
      if (it == fan_.end() || it->first != v) throw Error("delaunay: open cavity boundary");
      return it->second;
    };
    for (const auto& [x, t] : fan_) {
      // Across (y, p) lies the new triangle starting at y.
      nbr_[t][0] = by_first(tri_[t][1]);
    }
    for (const auto& [x, t] : fan_) nbr_[nbr_[t][0]][1] = t;
    last_ = fan_.front().second;
  }

  static constexpr std::uint32_t kNone = 0xffffffffU;

  const PointSet<2>& pts_;
  const std::uint32_t ghost_;
  std::vector<Simplex> tri_;
  std::vector<std::array<std::uint32_t, 3>> nbr_;
  std::vector<unsigned char> alive_;
  std::uint32_t last_ = 0;
  std::vector<std::uint32_t> cavity_;
  std::vector<std::array<std::uint32_t, 3>> boundary_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> fan_;
};

}  // namespace detail

/// The Delaunay triangulation of `pts`. Fewer than three points give no
/// simplices and no edges.
inline Triangulation Triangulate(const PointSet<2>& pts) {
  Triangulation t;
  t.points = pts;
  if (pts.size() > std::size_t{0xfffffffe}) throw Error("too many points");
  t.simplices = detail::DelaunayBuilder(pts).Run();
  Canonicalize(t);
  return t;
}

}  // namespace parklab

#endif  // PARKLAB_DELAUNAY_TRIANGULATION_HPP_
