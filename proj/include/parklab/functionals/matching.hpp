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

// Minimal matching and the boundary-rooted matching.
//
// With an odd number of points one point stays unmatched at no cost. In the
// boundary variant every point is either matched or hooked to the boundary
// at cost dist(x, boundary)^p.

#ifndef PARKLAB_FUNCTIONALS_MATCHING_HPP_
#define PARKLAB_FUNCTIONALS_MATCHING_HPP_

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include "parklab/functionals/functional.hpp"
#include "parklab/functionals/mst.hpp"

namespace parklab {

namespace detail {

inline constexpr std::uint8_t kToBoundary = 0xff;

// Subset dynamic program over the lowest unmatched index. `w(i, j)` is the
// pair cost; with `hook` non-empty, hook[i] is the cost of sending i to the
// boundary. Index m - 1 may be a free dummy (cost 0 to everyone).
template <class PairCost>
std::vector<Edge> MatchingDp(std::size_t m, PairCost&& w, std::span<const double> hook) {
  const std::size_t full = (std::size_t{1} << m) - 1;
  std::vector<double> dp(full + 1, std::numeric_limits<double>::infinity());
  std::vector<std::uint8_t> pick(full + 1, 0), low(full + 1, 0);
  dp[0] = 0.0;
  for (std::size_t mask = 0; mask < full; ++mask) {
    if (dp[mask] == std::numeric_limits<double>::infinity()) continue;
    const unsigned i = static_cast<unsigned>(std::countr_one(mask));
    auto relax = [&](std::size_t nm, double c, std::uint8_t j) {
      if (c < dp[nm]) {
        dp[nm] = c;
        pick[nm] = j;
        low[nm] = static_cast<std::uint8_t>(i);
      }
    };
    if (!hook.empty()) relax(mask | (std::size_t{1} << i), dp[mask] + hook[i], kToBoundary);
    for (unsigned j = i + 1; j < m; ++j)
      if (!(mask >> j & 1U))
        relax(mask | (std::size_t{1} << i) | (std::size_t{1} << j), dp[mask] + w(i, j),
              static_cast<std::uint8_t>(j));
  }
  std::vector<Edge> cert;
  for (std::size_t mask = full; mask;) {
    const unsigned i = low[mask];
    if (pick[mask] == kToBoundary) {
      cert.push_back({i, kBoundaryVertex});
      mask &= ~(std::size_t{1} << i);
    } else {
      cert.push_back({i, pick[mask]});
      mask &= ~((std::size_t{1} << i) | (std::size_t{1} << pick[mask]));
    }
  }
  std::sort(cert.begin(), cert.end());
  return cert;
}

}  // namespace detail

template <std::size_t D>
FunctionalValue MatchingExact(const PointSet<D>& pts, double p) {
  const std::size_t n = pts.size();
  if (n > kMatchingExactMax) throw Error("exact matching limited to 20 points");
  FunctionalValue out;
  if (n < 2) return out;
  const std::size_t m = n + (n % 2);
  auto w = [&](unsigned i, unsigned j) { return j >= n ? 0.0 : PowerDist(pts[i], pts[j], p); };
  out.certificate = detail::MatchingDp(m, w, {});
  std::erase_if(out.certificate, [n](const Edge& e) { return e.second >= n; });
  out.value = CertificateCost<D>(pts, {}, p, out.certificate);
  return out;
}

/// Greedy matching on increasing candidate radii followed by pair-swap
/// improvement. Upper bound only.
template <std::size_t D>
FunctionalValue MatchingHeuristic(const PointSet<D>& pts, double p) {
  FunctionalValue out;
  out.exact = false;
  const std::size_t n = pts.size();
  if (n < 2) return out;
  std::vector<std::uint32_t> mate(n, kBoundaryVertex);
  std::vector<std::uint32_t> open(n);
  std::iota(open.begin(), open.end(), 0U);
  for (double r = detail::InitialRadius(pts); open.size() > 1; r *= 2.0) {
    PointSet<D> sub;
    for (auto i : open) sub.push_back(pts[i]);
    auto edges = detail::CandidateEdges(sub, r, p);
    std::sort(edges.begin(), edges.end());
    for (const auto& e : edges) {
      const std::uint32_t a = open[e.a], b = open[e.b];
      if (mate[a] == kBoundaryVertex && mate[b] == kBoundaryVertex) {
        mate[a] = b;
        mate[b] = a;
      }
    }
    std::erase_if(open, [&](std::uint32_t i) { return mate[i] != kBoundaryVertex; });
  }
  // Pair swaps among nearby pairs.
  const double r = detail::InitialRadius(pts);
  const PointGrid<D> grid(r, pts);
  for (int round = 0; round < 50; ++round) {
    bool improved = false;
    for (std::uint32_t a = 0; a < n; ++a) {
      const std::uint32_t b = mate[a];
      if (b == kBoundaryVertex) continue;
      grid.ForEachWithin(pts[a], r, [&](std::size_t cc) {
        const auto c = static_cast<std::uint32_t>(cc);
        const std::uint32_t d = mate[c];
        if (c == a || c == b || d == kBoundaryVertex || mate[a] != b) return;
        const double now = PowerDist(pts[a], pts[b], p) + PowerDist(pts[c], pts[d], p);
        const double alt = PowerDist(pts[a], pts[c], p) + PowerDist(pts[b], pts[d], p);
        if (alt < now * (1.0 - 1e-12)) {
          mate[a] = c;
          mate[c] = a;
          mate[b] = d;
          mate[d] = b;
          improved = true;
        }
      });
    }
    if (!improved) break;
  }
  for (std::uint32_t a = 0; a < n; ++a)
    if (mate[a] != kBoundaryVertex && a < mate[a]) out.certificate.push_back({a, mate[a]});
  out.value = CertificateCost<D>(pts, {}, p, out.certificate);
  return out;
}

template <std::size_t D>
FunctionalValue MatchingCost(const PointSet<D>& pts, double p) {
  return pts.size() <= kMatchingExactMax ? MatchingExact(pts, p) : MatchingHeuristic(pts, p);
}

template <std::size_t D>
FunctionalValue BoundaryMatchingExact(const PointSet<D>& pts, std::span<const double> boundary_dist,
                                      double p) {
  const std::size_t n = pts.size();
  if (boundary_dist.size() != n) throw Error("BoundaryMatchingCost: size mismatch");
  if (n > kMatchingExactMax) throw Error("exact matching limited to 20 points");
  FunctionalValue out;
  if (n == 0) return out;
  std::vector<double> hook(n);
  for (std::size_t i = 0; i < n; ++i) hook[i] = PowerLength(boundary_dist[i], p);
  auto w = [&](unsigned i, unsigned j) { return PowerDist(pts[i], pts[j], p); };
  out.certificate = detail::MatchingDp(n, w, hook);
  out.value = CertificateCost<D>(pts, boundary_dist, p, out.certificate);
  return out;
}

/// Greedy over pairs and boundary hooks by increasing cost. Upper bound only.
template <std::size_t D>
FunctionalValue BoundaryMatchingHeuristic(const PointSet<D>& pts,
                                          std::span<const double> boundary_dist, double p) {
  const std::size_t n = pts.size();
  if (boundary_dist.size() != n) throw Error("BoundaryMatchingCost: size mismatch");
  FunctionalValue out;
  out.exact = false;
  if (n == 0) return out;
  auto edges = n > 1 ? detail::CandidateEdges(pts, detail::InitialRadius(pts), p)
                     : std::vector<detail::WeightedEdge>{};
  for (std::size_t i = 0; i < n; ++i)
    edges.push_back({PowerLength(boundary_dist[i], p), static_cast<std::uint32_t>(i), kBoundaryVertex});
  std::sort(edges.begin(), edges.end());
  std::vector<bool> used(n, false);
  for (const auto& e : edges) {
    if (used[e.a] || (e.b != kBoundaryVertex && used[e.b])) continue;
    used[e.a] = true;
    if (e.b != kBoundaryVertex) used[e.b] = true;
    out.certificate.push_back({e.a, e.b});
  }
  out.value = CertificateCost<D>(pts, boundary_dist, p, out.certificate);
  return out;
}

template <std::size_t D>
FunctionalValue BoundaryMatchingCost(const PointSet<D>& pts, std::span<const double> boundary_dist,
                                     double p) {
  return pts.size() <= kMatchingExactMax ? BoundaryMatchingExact(pts, boundary_dist, p)
                                         : BoundaryMatchingHeuristic(pts, boundary_dist, p);
}

}  // namespace parklab

#endif  // PARKLAB_FUNCTIONALS_MATCHING_HPP_
