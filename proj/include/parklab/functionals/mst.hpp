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

// Minimum spanning tree and its boundary-rooted partner.

#ifndef PARKLAB_FUNCTIONALS_MST_HPP_
#define PARKLAB_FUNCTIONALS_MST_HPP_

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <tuple>
#include <vector>

#include "parklab/functionals/functional.hpp"
#include "parklab/geom/point_grid.hpp"

namespace parklab {

namespace detail {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t Find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool Union(std::size_t a, std::size_t b) {
    a = Find(a);
    b = Find(b);
    if (a == b) return false;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<unsigned char> rank_;
};

struct WeightedEdge {
  double w;
  std::uint32_t a, b;
  bool operator<(const WeightedEdge& o) const { return std::tie(w, a, b) < std::tie(o.w, o.a, o.b); }
};

// Pairs closer than r, weighted by |x - y|^p.
template <std::size_t D>
std::vector<WeightedEdge> CandidateEdges(const PointSet<D>& pts, double r, double p) {
  std::vector<WeightedEdge> out;
  const PointGrid<D> grid(r, pts);
  for (std::size_t i = 0; i < pts.size(); ++i)
    grid.ForEachWithin(pts[i], r, [&](std::size_t j) {
      if (j > i)
        out.push_back({PowerDist(pts[i], pts[j], p), static_cast<std::uint32_t>(i),
                       static_cast<std::uint32_t>(j)});
    });
  return out;
}

// Initial candidate radius: about two typical spacings.
template <std::size_t D>
double InitialRadius(const PointSet<D>& pts) {
  Box<D> bb{pts.front(), pts.front()};
  for (const auto& x : pts)
    for (std::size_t i = 0; i < D; ++i) {
      bb.lo[i] = std::min(bb.lo[i], x[i]);
      bb.hi[i] = std::max(bb.hi[i], x[i]);
    }
  double vol = 1.0, ext = 0.0;
  for (std::size_t i = 0; i < D; ++i) {
    const double e = bb.hi[i] - bb.lo[i];
    vol *= e;
    ext = std::max(ext, e);
  }
  const double n = static_cast<double>(pts.size());
  double r = 2.0 * std::pow(vol / n, 1.0 / static_cast<double>(D));
  r = std::max(r, ext / n);
  return r > 0.0 ? r : 1.0;
}

template <std::size_t D>
double Extent(const PointSet<D>& pts) {
  double e = 0.0;
  for (std::size_t i = 0; i < D; ++i) {
    const auto [lo, hi] = std::minmax_element(pts.begin(), pts.end(), [i](const auto& a, const auto& b) {
      return a[i] < b[i];
    });
    e += ((*hi)[i] - (*lo)[i]) * ((*hi)[i] - (*lo)[i]);
  }
  return std::sqrt(e);
}

}  // namespace detail

/// Exact minimum of sum |x - y|^p over spanning trees (Kruskal on the
/// r-neighbour graph, doubling r until it is connected; a longer edge is
/// then the heaviest on some cycle and never needed).
template <std::size_t D>
FunctionalValue MstCost(const PointSet<D>& pts, double p) {
  FunctionalValue out;
  const std::size_t n = pts.size();
  if (n <= 1) return out;
  const double ext = detail::Extent(pts);
  for (double r = detail::InitialRadius(pts);; r *= 2.0) {
    auto edges = detail::CandidateEdges(pts, r, p);
    std::sort(edges.begin(), edges.end());
    detail::DisjointSets ds(n);
    out.certificate.clear();
    for (const auto& e : edges) {
      if (ds.Union(e.a, e.b)) out.certificate.push_back({e.a, e.b});
      if (out.certificate.size() + 1 == n) break;
    }
    if (out.certificate.size() + 1 == n) break;
    if (r > 2.0 * ext + 1.0) throw Error("MstCost: failed to connect");
  }
  out.value = CertificateCost<D>(pts, {}, p, out.certificate);
  return out;
}

/// Minimum spanning forest in which every tree may also hook to the
/// boundary at cost dist(x, boundary)^p: an MST of the graph with one extra
/// vertex standing for the boundary.
template <std::size_t D>
FunctionalValue BoundaryMstCost(const PointSet<D>& pts, std::span<const double> boundary_dist,
                                double p) {
  FunctionalValue out;
  const std::size_t n = pts.size();
  if (boundary_dist.size() != n) throw Error("BoundaryMstCost: size mismatch");
  if (n == 0) return out;
  const double ext = detail::Extent(pts);
  for (double r = n > 1 ? detail::InitialRadius(pts) : 1.0;; r *= 2.0) {
    auto edges = n > 1 ? detail::CandidateEdges(pts, r, p) : std::vector<detail::WeightedEdge>{};
    for (std::size_t i = 0; i < n; ++i)
      edges.push_back({PowerLength(boundary_dist[i], p), static_cast<std::uint32_t>(i),
                       kBoundaryVertex});
    std::sort(edges.begin(), edges.end());
    detail::DisjointSets ds(n + 1);
    out.certificate.clear();
    double heaviest = 0.0;
    for (const auto& e : edges) {
      const std::size_t b = e.b == kBoundaryVertex ? n : e.b;
      if (ds.Union(e.a, b)) {
        out.certificate.push_back({e.a, e.b});
        heaviest = e.w;
        if (out.certificate.size() == n) break;
      }
    }
    // Every omitted pair is at least r long; it is safe to omit once the
    // tree found uses nothing heavier.
    if (heaviest <= PowerLength(r, p) || r > 2.0 * ext + 1.0) break;
  }
  out.value = CertificateCost<D>(pts, boundary_dist, p, out.certificate);
  return out;
}

}  // namespace parklab

#endif  // PARKLAB_FUNCTIONALS_MST_HPP_
