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

// Travelling salesman tours with p-power edge weights.

#ifndef PARKLAB_FUNCTIONALS_TSP_HPP_
#define PARKLAB_FUNCTIONALS_TSP_HPP_

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

#include "parklab/functionals/functional.hpp"
#include "parklab/functionals/mst.hpp"

namespace parklab {

namespace detail {

inline std::vector<Edge> TourEdges(const std::vector<std::uint32_t>& tour) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i < tour.size(); ++i)
    e.push_back({tour[i], tour[(i + 1) % tour.size()]});
  return e;
}

}  // namespace detail

/// Held-Karp dynamic program; n <= 16.
template <std::size_t D>
FunctionalValue TspExact(const PointSet<D>& pts, double p) {
  const std::size_t n = pts.size();
  if (n > kTspExactMax) throw Error("exact tsp limited to 16 points");
  FunctionalValue out;
  if (n <= 1) return out;
  if (n == 2) {
    out.certificate = {{0, 1}, {1, 0}};
    out.value = CertificateCost<D>(pts, {}, p, out.certificate);
    return out;
  }
  // Subsets of {1, ..., n-1}; bit k stands for vertex k + 1.
  const std::size_t m = n - 1, full = (std::size_t{1} << m) - 1;
  std::vector<double> w(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) w[i * n + j] = PowerDist(pts[i], pts[j], p);
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> dp((full + 1) * m, kInf);
  std::vector<std::uint8_t> prev((full + 1) * m, 0);
  for (std::size_t k = 0; k < m; ++k) dp[(std::size_t{1} << k) * m + k] = w[k + 1];
  for (std::size_t mask = 1; mask <= full; ++mask)
    for (std::size_t k = 0; k < m; ++k) {
      const double c = dp[mask * m + k];
      if (!(mask >> k & 1U) || c == kInf) continue;
      for (std::size_t j = 0; j < m; ++j) {
        if (mask >> j & 1U) continue;
        const std::size_t nm = mask | (std::size_t{1} << j);
        const double v = c + w[(k + 1) * n + j + 1];
        if (v < dp[nm * m + j]) {
          dp[nm * m + j] = v;
          prev[nm * m + j] = static_cast<std::uint8_t>(k);
        }
      }
    }
  std::size_t last = 0;
  double best = kInf;
  for (std::size_t k = 0; k < m; ++k) {
    const double v = dp[full * m + k] + w[(k + 1) * n];
    if (v < best) {
      best = v;
      last = k;
    }
  }
  std::vector<std::uint32_t> tour;
  for (std::size_t mask = full, k = last; mask;) {
    tour.push_back(static_cast<std::uint32_t>(k + 1));
    const std::size_t pk = prev[mask * m + k];
    mask &= ~(std::size_t{1} << k);
    k = pk;
  }
  tour.push_back(0);
  std::reverse(tour.begin(), tour.end());
  out.certificate = detail::TourEdges(tour);
  out.value = CertificateCost<D>(pts, {}, p, out.certificate);
  return out;
}

/// Nearest-neighbour tour improved by 2-opt moves over nearby endpoints.
/// Upper bound only.
template <std::size_t D>
FunctionalValue TspHeuristic(const PointSet<D>& pts, double p) {
  const std::size_t n = pts.size();
  if (n <= 3) {
    auto v = TspExact(pts, p);
    v.exact = false;
    return v;
  }
  FunctionalValue out;
  out.exact = false;
  std::vector<std::uint32_t> tour;
  tour.reserve(n);
  std::vector<bool> seen(n, false);
  std::uint32_t cur = 0;
  for (std::size_t step = 0; step < n; ++step) {
    tour.push_back(cur);
    seen[cur] = true;
    double best = std::numeric_limits<double>::infinity();
    std::uint32_t nxt = cur;
    for (std::uint32_t j = 0; j < n; ++j)
      if (!seen[j]) {
        const double d = Dist2(pts[cur], pts[j]);
        if (d < best) {
          best = d;
          nxt = j;
        }
      }
    cur = nxt;
  }
  std::vector<std::uint32_t> pos(n);
  const double r = 2.0 * detail::InitialRadius(pts);
  const PointGrid<D> grid(r, pts);
  auto w = [&](std::uint32_t a, std::uint32_t b) { return PowerDist(pts[a], pts[b], p); };
  for (std::size_t i = 0; i < n; ++i) pos[tour[i]] = static_cast<std::uint32_t>(i);
  for (int round = 0; round < 1000; ++round) {
    bool improved = false;
    for (std::size_t i = 0; i < n; ++i) {
      bool moved = false;
      grid.ForEachWithin(pts[tour[i]], r, [&](std::size_t cc) {
        if (moved) return;
        const std::size_t j = pos[cc];
        const std::size_t lo = std::min(i, j), hi = std::max(i, j);
        if (hi - lo < 2 || (lo == 0 && hi == n - 1)) return;
        const std::uint32_t x = tour[lo], y = tour[lo + 1], u = tour[hi], v = tour[(hi + 1) % n];
        if (w(x, u) + w(y, v) < (w(x, y) + w(u, v)) * (1.0 - 1e-12)) {
          std::reverse(tour.begin() + static_cast<std::ptrdiff_t>(lo + 1),
                       tour.begin() + static_cast<std::ptrdiff_t>(hi + 1));
          for (std::size_t k = lo + 1; k <= hi; ++k) pos[tour[k]] = static_cast<std::uint32_t>(k);
          moved = true;
        }
      });
      improved = improved || moved;
    }
    if (!improved) break;
  }
  out.certificate = detail::TourEdges(tour);
  out.value = CertificateCost<D>(pts, {}, p, out.certificate);
  return out;
}

template <std::size_t D>
FunctionalValue TspCost(const PointSet<D>& pts, double p) {
  return pts.size() <= kTspExactMax ? TspExact(pts, p) : TspHeuristic(pts, p);
}

}  // namespace parklab

#endif  // PARKLAB_FUNCTIONALS_TSP_HPP_
