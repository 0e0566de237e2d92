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

// Restriction of a triangulation to an eroded domain, and edge statistics.
//
// Simplices are open sets: a simplex is kept when its interior lies in the
// eroded domain. An edge is kept when its closed segment lies in the closure
// of the eroded domain.

#ifndef PARKLAB_DELAUNAY_CLIP_HPP_
#define PARKLAB_DELAUNAY_CLIP_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <vector>

#include "parklab/delaunay/triangulation.hpp"
#include "parklab/geom/domain.hpp"

namespace parklab {

namespace detail {

// Closed quadrant {x >= c0, y >= c1} removed from the l-shape.
inline double DistToQuadrant(const Point<2>& x, const Point<2>& c) {
  return std::hypot(std::max(0.0, c[0] - x[0]), std::max(0.0, c[1] - x[1]));
}

inline double DistPointSegment(const Point<2>& q, const Point<2>& a, const Point<2>& b) {
  const Point<2> ab = b - a, aq = q - a;
  const double l2 = ab[0] * ab[0] + ab[1] * ab[1];
  const double t = l2 > 0.0 ? std::clamp((aq[0] * ab[0] + aq[1] * ab[1]) / l2, 0.0, 1.0) : 0.0;
  return Dist(q, a + t * ab);
}

// Some axis weakly separates the convex polygon P (2 or 3 vertices) from the
// quadrant: P's interior (or relative interior) misses the open quadrant.
inline bool WeaklySeparated(std::span<const Point<2>> P, const Point<2>& c) {
  std::vector<Point<2>> axes = {{1.0, 0.0}, {0.0, 1.0}};
  for (std::size_t i = 0; i < P.size(); ++i) {
    const Point<2> e = P[(i + 1) % P.size()] - P[i];
    axes.push_back({-e[1], e[0]});
    axes.push_back({e[1], -e[0]});
  }
  for (const auto& u : axes) {
    // Quadrant's support on u: u.c + u.(s, t), s, t >= 0.
    const double uc = u[0] * c[0] + u[1] * c[1];
    const bool bounded_below = u[0] >= 0.0 && u[1] >= 0.0;
    if (!bounded_below) continue;
    double pmax = -INFINITY;
    for (const auto& p : P) pmax = std::max(pmax, u[0] * p[0] + u[1] * p[1]);
    if (pmax <= uc) return true;
  }
  return false;
}

// Distance from the closed polygon P to the quadrant (0 if they meet).
inline double GapToQuadrant(std::span<const Point<2>> P, const Point<2>& c) {
  // Strict separation is needed for a positive gap.
  double g = INFINITY;
  for (const auto& p : P) g = std::min(g, DistToQuadrant(p, c));
  if (g == 0.0) return 0.0;
  for (std::size_t i = 0; i < P.size(); ++i)
    g = std::min(g, DistPointSegment(c, P[i], P[(i + 1) % P.size()]));
  if (P.size() == 3 && SignedArea(P[0], P[1], P[2]) != 0.0) {
    // c inside the triangle.
    const double s = SignedArea(P[0], P[1], P[2]);
    bool inside = true;
    for (int i = 0; i < 3; ++i)
      if (SignedArea(P[i], P[(i + 1) % 3], c) * s < 0.0) inside = false;
    if (inside) return 0.0;
  }
  return WeaklySeparated(P, c) ? g : 0.0;
}

// Closure of the eroded domain.
inline bool InClosure(const Point<2>& x, const Domain<2>& d) {
  const double a = d.scale() - d.erosion();
  const auto& c = d.center();
  switch (d.kind()) {
    case DomainKind::kBox: return std::abs(x[0] - c[0]) <= a && std::abs(x[1] - c[1]) <= a;
    case DomainKind::kBall: return Dist(x, c) <= a;
    case DomainKind::kLShape: {
      const double box = d.scale() - d.erosion();
      if (!(std::abs(x[0] - c[0]) <= box && std::abs(x[1] - c[1]) <= box)) return false;
      if (d.erosion() == 0.0) return !(x[0] > c[0] && x[1] > c[1]);
      return DistToQuadrant(x, c) >= d.erosion();
    }
  }
  return false;
}

// Convex piece P (segment or triangle) with vertices in the closed outer box
// of an l-shape: is its (relative) interior inside the eroded l-shape?
inline bool LShapeAccepts(std::span<const Point<2>> P, const Domain<2>& d) {
  if (d.erosion() == 0.0) return WeaklySeparated(P, d.center());
  return GapToQuadrant(P, d.center()) >= d.erosion();
}

}  // namespace detail

// Open simplex inside the domain.
inline bool SimplexInside(const Triangulation& t, const Simplex& s, const Domain<2>& d) {
  if (d.IsEmpty()) return false;
  const std::array<Point<2>, 3> P = {t.points[s[0]], t.points[s[1]], t.points[s[2]]};
  if (d.kind() != DomainKind::kLShape)
    return std::all_of(P.begin(), P.end(), [&](const Point<2>& p) { return detail::InClosure(p, d); });
  const double box = d.scale() - d.erosion();
  for (const auto& p : P)
    if (!(std::abs(p[0] - d.center()[0]) <= box && std::abs(p[1] - d.center()[1]) <= box))
      return false;
  return detail::LShapeAccepts(P, d);
}

// Closed segment inside the closure of the domain.
inline bool EdgeInside(const Triangulation& t, const Edge& e, const Domain<2>& d) {
  if (d.IsEmpty()) return false;
  const std::array<Point<2>, 2> P = {t.points[e.first], t.points[e.second]};
  if (!detail::InClosure(P[0], d) || !detail::InClosure(P[1], d)) return false;
  if (d.kind() != DomainKind::kLShape) return true;
  return detail::LShapeAccepts(P, d);
}

/// Simplices of `t` lying in erode(domain, layer) and edges lying in its
/// closure. Vertex indices refer to t.points.
inline Triangulation ClipToInterior(const Triangulation& t, const Domain<2>& domain, double layer) {
  if (!(layer >= 0.0)) throw Error("layer must be nonnegative");
  const Domain<2> d = domain.Eroded(layer);
  Triangulation out;
  out.points = t.points;
  for (std::size_t i = 0; i < t.simplices.size(); ++i)
    if (SimplexInside(t, t.simplices[i], d)) {
      out.simplices.push_back(t.simplices[i]);
      out.areas.push_back(t.areas[i]);
    }
  for (const auto& e : t.edges)
    if (EdgeInside(t, e, d)) out.edges.push_back(e);
  return out;
}

struct EdgeStats {
  double max_length = 0.0;
  // Edges strictly longer than the bound.
  std::vector<Edge> exceeding;
};

inline EdgeStats ComputeEdgeStats(const Triangulation& t, double bound) {
  EdgeStats s;
  for (const auto& e : t.edges) {
    const double l = Dist(t.points[e.first], t.points[e.second]);
    s.max_length = std::max(s.max_length, l);
    if (l > bound) s.exceeding.push_back(e);
  }
  return s;
}

}  // namespace parklab

#endif  // PARKLAB_DELAUNAY_CLIP_HPP_
