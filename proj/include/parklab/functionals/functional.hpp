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

// Common vocabulary of the p-power weighted Euclidean functionals.

#ifndef PARKLAB_FUNCTIONALS_FUNCTIONAL_HPP_
#define PARKLAB_FUNCTIONALS_FUNCTIONAL_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "parklab/geom/domain.hpp"
#include "parklab/geom/point.hpp"

namespace parklab {

enum class FunctionalKind { kMst, kBoundaryMst, kMatching, kBoundaryMatching, kTsp, kCount };
enum class SolverMode { kExact, kHeuristic };

inline std::string ToString(FunctionalKind k) {
  switch (k) {
    case FunctionalKind::kMst: return "mst";
    case FunctionalKind::kBoundaryMst: return "boundary-mst";
    case FunctionalKind::kMatching: return "matching";
    case FunctionalKind::kBoundaryMatching: return "boundary-matching";
    case FunctionalKind::kTsp: return "tsp";
    case FunctionalKind::kCount: return "count";
  }
  return "?";
}

inline FunctionalKind ParseFunctionalKind(const std::string& s) {
  for (auto k : {FunctionalKind::kMst, FunctionalKind::kBoundaryMst, FunctionalKind::kMatching,
                 FunctionalKind::kBoundaryMatching, FunctionalKind::kTsp, FunctionalKind::kCount})
    if (ToString(k) == s) return k;
  throw Error("unknown functional '" + s + "'");
}

inline std::string ToString(SolverMode m) { return m == SolverMode::kExact ? "exact" : "heuristic"; }

inline SolverMode ParseSolverMode(const std::string& s) {
  if (s == "exact") return SolverMode::kExact;
  if (s == "heuristic") return SolverMode::kHeuristic;
  throw Error("unknown solver mode '" + s + "'");
}

inline bool IsBoundaryKind(FunctionalKind k) {
  return k == FunctionalKind::kBoundaryMst || k == FunctionalKind::kBoundaryMatching;
}

// Size limits below which the exact solvers run.
inline constexpr std::size_t kMatchingExactMax = 20;
inline constexpr std::size_t kTspExactMax = 16;

struct FunctionalSpec {
  FunctionalKind kind = FunctionalKind::kMst;
  double p = 1.0;
  SolverMode mode = SolverMode::kExact;
};

// Vertex index standing for the domain boundary in certificates.
inline constexpr std::uint32_t kBoundaryVertex = std::numeric_limits<std::uint32_t>::max();

using Edge = std::pair<std::uint32_t, std::uint32_t>;

struct FunctionalValue {
  double value = 0.0;
  // Edges of the optimal structure. Tours list their closing edge; a
  // two-point tour lists its edge twice. kBoundaryVertex marks a boundary
  // attachment.
  std::vector<Edge> certificate;
  // False for heuristic (upper bound) values.
  bool exact = true;
};

inline double PowerLength(double dist, double p) {
  if (p == 1.0) return dist;
  if (p == 2.0) return dist * dist;
  return std::pow(dist, p);
}

template <std::size_t D>
double PowerDist(const Point<D>& a, const Point<D>& b, double p) {
  if (p == 2.0) return Dist2(a, b);
  return PowerLength(Dist(a, b), p);
}

// Sum in ascending order, so equal multisets of weights give equal sums.
inline double CanonicalSum(std::vector<double> w) {
  std::sort(w.begin(), w.end());
  double s = 0.0;
  for (double x : w) s += x;
  return s;
}

/// Cost of a certificate. `boundary_dist[i]` is the distance of point i to
/// the boundary; required only when the certificate uses kBoundaryVertex.
template <std::size_t D>
double CertificateCost(const PointSet<D>& pts, std::span<const double> boundary_dist, double p,
                       std::span<const Edge> cert) {
  std::vector<double> w;
  w.reserve(cert.size());
  for (const auto& [a, b] : cert) {
    if (a == kBoundaryVertex || b == kBoundaryVertex) {
      const std::uint32_t v = a == kBoundaryVertex ? b : a;
      if (v >= boundary_dist.size()) throw Error("certificate uses the boundary without distances");
      w.push_back(PowerLength(boundary_dist[v], p));
    } else {
      w.push_back(PowerDist(pts.at(a), pts.at(b), p));
    }
  }
  return CanonicalSum(std::move(w));
}

// Distance of each point to the boundary of `region`; throws if a point
// lies outside.
template <std::size_t D>
std::vector<double> BoundaryDistances(const PointSet<D>& pts, const Domain<D>& region) {
  std::vector<double> d;
  d.reserve(pts.size());
  for (const auto& x : pts) {
    if (!region.Contains(x)) throw Error("point outside domain");
    d.push_back(region.DistanceToBoundary(x));
  }
  return d;
}

template <std::size_t D>
std::vector<double> BoundaryDistances(const PointSet<D>& pts, const Box<D>& region) {
  std::vector<double> d;
  d.reserve(pts.size());
  for (const auto& x : pts) {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < D; ++i) {
      if (x[i] < region.lo[i] || x[i] > region.hi[i]) throw Error("point outside domain");
      m = std::min({m, x[i] - region.lo[i], region.hi[i] - x[i]});
    }
    d.push_back(m);
  }
  return d;
}

}  // namespace parklab

#endif  // PARKLAB_FUNCTIONALS_FUNCTIONAL_HPP_
