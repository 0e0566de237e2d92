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

// Dispatch from a FunctionalSpec to the solvers, with S(D, zeta) computed on
// zeta ∩ D.

#ifndef PARKLAB_FUNCTIONALS_EVALUATE_HPP_
#define PARKLAB_FUNCTIONALS_EVALUATE_HPP_

#include <vector>

#include "parklab/functionals/functional.hpp"
#include "parklab/functionals/matching.hpp"
#include "parklab/functionals/mst.hpp"
#include "parklab/functionals/tsp.hpp"

namespace parklab {

template <std::size_t D>
bool InRegion(const Point<D>& x, const Domain<D>& d) {
  return d.Contains(x);
}

// Rectangles are semi-open, [lo, hi), so that partitions are disjoint.
template <std::size_t D>
bool InRegion(const Point<D>& x, const Box<D>& b) {
  for (std::size_t i = 0; i < D; ++i)
    if (!(b.lo[i] <= x[i] && x[i] < b.hi[i])) return false;
  return true;
}

template <std::size_t D, class Region>
PointSet<D> PointsIn(const PointSet<D>& pts, const Region& region) {
  PointSet<D> out;
  for (const auto& x : pts)
    if (InRegion(x, region)) out.push_back(x);
  return out;
}

inline bool ExactAvailable(FunctionalKind k, std::size_t n) {
  switch (k) {
    case FunctionalKind::kMatching:
    case FunctionalKind::kBoundaryMatching: return n <= kMatchingExactMax;
    case FunctionalKind::kTsp: return n <= kTspExactMax;
    default: return true;
  }
}

/// Functional of the points already restricted to the region.
template <std::size_t D, class Region>
FunctionalValue EvaluateOn(const FunctionalSpec& spec, const PointSet<D>& pts,
                           const Region& region) {
  if (!(spec.p >= 0.0)) throw Error("power p must be nonnegative");
  const std::size_t n = pts.size();
  if (spec.mode == SolverMode::kExact && !ExactAvailable(spec.kind, n))
    throw Error("no exact solver for " + ToString(spec.kind) + " with " + std::to_string(n) +
                " points");
  switch (spec.kind) {
    case FunctionalKind::kMst: return MstCost(pts, spec.p);
    case FunctionalKind::kBoundaryMst:
      return BoundaryMstCost(pts, BoundaryDistances(pts, region), spec.p);
    case FunctionalKind::kMatching: return MatchingCost(pts, spec.p);
    case FunctionalKind::kBoundaryMatching:
      return BoundaryMatchingCost(pts, BoundaryDistances(pts, region), spec.p);
    case FunctionalKind::kTsp: return TspCost(pts, spec.p);
    case FunctionalKind::kCount: {
      FunctionalValue v;
      v.value = static_cast<double>(n);
      return v;
    }
  }
  throw Error("unknown functional kind");
}

/// S(region, zeta).
template <std::size_t D, class Region>
FunctionalValue Evaluate(const FunctionalSpec& spec, const PointSet<D>& zeta, const Region& region) {
  return EvaluateOn(spec, PointsIn(zeta, region), region);
}

}  // namespace parklab

#endif  // PARKLAB_FUNCTIONALS_EVALUATE_HPP_
