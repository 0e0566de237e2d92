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

// Random parking to saturation in a bounded domain.
//
// The construction sweeps the arrivals of a SpaceTimeProcess in time order,
// one epoch at a time. Arrivals falling in voxels that are already covered
// (every point within 2 rho0 of an accepted center) would be rejected, so
// those voxels are pruned from the enumeration; this never changes the
// outcome of the sweep. Saturation is certified when every lattice cell
// meeting the domain is covered.

#ifndef PARKLAB_PARKING_SATURATION_HPP_
#define PARKLAB_PARKING_SATURATION_HPP_

#include <algorithm>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "parklab/geom/domain.hpp"
#include "parklab/geom/point_grid.hpp"
#include "parklab/parking/construction.hpp"
#include "parklab/parking/coverage.hpp"
#include "parklab/parking/process.hpp"

namespace parklab {

namespace detail {

template <std::size_t D>
class Saturator {
 public:
  using Proc = SpaceTimeProcess<D>;
  using Node = typename Proc::Node;
  using Cell = typename Proc::Cell;

  // Depth (relative to a lattice cell) at which d >= 3 certification stops
  // subdividing and falls back to the approximate corner rule.
  static constexpr int kCertDepth3 = 7;

  Saturator(const Domain<D>& domain, double rho0, std::uint64_t seed)
      : domain_(domain), rho0_(rho0), diam_(2.0 * rho0), proc_(seed, 2.0 * rho0),
        accepted_(2.0 * rho0) {
    if (!(rho0 > 0.0)) throw Error("rho0 must be positive");
    if (domain.kind() == DomainKind::kLShape && domain.erosion() > 0.0)
      throw Error("parking in eroded l-shapes is not supported");
  }

  ParkingResult<D> Run() {
    ParkingResult<D> res;
    res.accepted = ParkedConfig(domain_, rho0_);
    res.provenance = Provenance::kFiniteBox;
    auto& cert = res.certificate;
    if (domain_.IsEmpty()) {
      cert.certified = true;
      return res;
    }

    std::vector<Node> live;
    for (const auto& c : proc_.CellsCovering(domain_.BoundingBox())) {
      Node root = proc_.Root(c);
      if (domain_.MayIntersect(root.box)) live.push_back(root);
    }

    std::vector<Arrival<D>> batch, scratch;
    auto prune = [&](const Node& n, std::uint64_t count) {
      if (!domain_.MayIntersect(n.box)) return true;
      // Single arrivals are cheaper to reject in the sweep than to certify.
      if (count < 2) return false;
      cert.max_depth = std::max(cert.max_depth, n.depth);
      return IsDead(n, cert);
    };
    auto emit = [&](const Arrival<D>& a) {
      if (domain_.Contains(a.x)) batch.push_back(a);
    };

    int e = 0;
    for (; e <= Proc::kMaxEpoch && !live.empty(); ++e) {
      batch.clear();
      for (const auto& root : live)
        proc_.Enumerate(root, e, proc_.RootCount(root.cell, e), prune, emit, scratch);
      std::sort(batch.begin(), batch.end(), ArrivalBefore<D>);
      cert.examined += batch.size();
      for (const auto& a : batch) {
        if (accepted_.AnyWithin(a.x, diam_)) {
          ++res.rejected;
          continue;
        }
        Accept(a.x);
        res.accepted.points.push_back(a.x);
        res.accept_times.push_back(a.t);
        res.saturation_time = a.t;
      }
      std::erase_if(live, [&](const Node& root) { return IsDead(root, cert); });
    }
    cert.epochs = e;
    cert.certified = live.empty();
    cert.dead_voxels = dead_.size();
    cert.exact = exact_;
    if (!cert.certified)
      cert.diagnostic = "epoch cap reached with " + std::to_string(live.size()) +
                        " uncovered lattice cells";
    return res;
  }

 private:
  void Accept(const Point<D>& x) {
    accepted_.Insert(x);
    // Bump the version of every lattice cell whose coverage could change.
    const auto c = proc_.CellOf(x);
    std::array<std::int64_t, D> off;
    off.fill(-2);
    while (true) {
      Cell k;
      for (std::size_t i = 0; i < D; ++i) k[i] = c[i] + off[i];
      ++version_[CellKey(k)];
      std::size_t i = 0;
      for (; i < D; ++i) {
        if (off[i] < 2) {
          ++off[i];
          break;
        }
        off[i] = -2;
      }
      if (i == D) break;
    }
  }

  std::uint64_t Version(const Cell& c) const {
    auto it = version_.find(CellKey(c));
    return it == version_.end() ? 0 : it->second;
  }

  bool IsDead(const Node& n, SaturationCertificate& cert) {
    if (dead_.contains(n.key)) return true;
    const std::uint64_t ver = Version(n.cell);
    if (auto it = live_checked_.find(n.key); it != live_checked_.end() && it->second == ver)
      return false;
    ++cert.coverage_tests;
    const bool dead = Covered(n.box, n.depth);
    if (dead) {
      dead_.insert(n.key);
      live_checked_.erase(n.key);
    } else {
      live_checked_[n.key] = ver;
    }
    return dead;
  }

  void Nearby(const Box<D>& b, std::vector<Point<D>>& out) const {
    out.clear();
    const Point<D> c = b.Center();
    double h2 = 0.0;
    for (std::size_t i = 0; i < D; ++i) {
      const double t = 0.5 * (b.hi[i] - b.lo[i]);
      h2 += t * t;
    }
    const double reach = diam_ + std::sqrt(h2);
    accepted_.ForEachCandidate(c, reach, [&](std::uint32_t id) {
      const auto& p = accepted_.point(id);
      if (b.MinDist2(p) < diam_ * diam_) out.push_back(p);
    });
  }

  // Is every point of box ∩ domain within 2 rho0 of an accepted center?
  bool Covered(const Box<D>& node_box, int depth) {
    if (!domain_.MayIntersect(node_box)) return true;
    const Box<D> b = node_box.Intersect(domain_.BoundingBox());
    std::vector<Point<D>>& near = near_;
    Nearby(b, near);
    if (near.empty()) return false;
    if (coverage::CoveredBySingleBall<D>(b, near, diam_)) return true;

    if constexpr (D == 1) {
      return coverage::IntervalCovered(b.lo[0], b.hi[0], near, diam_);
    } else if constexpr (D == 2) {
      if (domain_.kind() == DomainKind::kBall) {
        const coverage::Circle inside{domain_.center(), domain_.scale() - domain_.erosion()};
        return coverage::BoxCovered(b, near, diam_, inside);
      }
      if (domain_.kind() == DomainKind::kLShape) {
        // Closure of (box ∩ L) is the union of its parts left of and below
        // the reentrant corner.
        const auto& c = domain_.center();
        Box<2> left = b, below = b;
        left.hi[0] = std::min(left.hi[0], c[0]);
        below.hi[1] = std::min(below.hi[1], c[1]);
        const bool lok = left.lo[0] > left.hi[0] || coverage::BoxCovered(left, near, diam_);
        return lok && (below.lo[1] > below.hi[1] || coverage::BoxCovered(below, near, diam_));
      }
      return coverage::BoxCovered(b, near, diam_);
    } else {
      return CoveredBySubdivision(b, depth);
    }
  }

  // d >= 3: recursive subdivision with the single-ball rule; at the depth
  // limit a box counts as covered when its corners and center are.
  bool CoveredBySubdivision(const Box<D>& b, int depth) {
    std::vector<Point<D>> near;
    Nearby(b, near);
    if (near.empty()) return false;
    if (coverage::CoveredBySingleBall<D>(b, near, diam_)) return true;
    const double r2 = diam_ * diam_;
    auto hit = [&](const Point<D>& q) {
      for (const auto& p : near)
        if (Dist2(p, q) < r2) return true;
      return false;
    };
    if (!hit(b.Center())) return false;
    for (std::size_t m = 0; m < (std::size_t{1} << D); ++m) {
      Point<D> q;
      for (std::size_t i = 0; i < D; ++i) q[i] = ((m >> i) & 1U) ? b.hi[i] : b.lo[i];
      if (!hit(q)) return false;
    }
    if (depth >= kCertDepth3) {
      exact_ = false;
      return true;
    }
    const Point<D> mid = b.Center();
    for (std::size_t m = 0; m < (std::size_t{1} << D); ++m) {
      Box<D> s;
      for (std::size_t i = 0; i < D; ++i) {
        const bool up = (m >> i) & 1U;
        s.lo[i] = up ? mid[i] : b.lo[i];
        s.hi[i] = up ? b.hi[i] : mid[i];
      }
      if (!CoveredBySubdivision(s, depth + 1)) return false;
    }
    return true;
  }

  Domain<D> domain_;
  double rho0_;
  double diam_;
  Proc proc_;
  PointGrid<D> accepted_;
  std::unordered_set<std::uint64_t> dead_;
  std::unordered_map<std::uint64_t, std::uint64_t> live_checked_;
  std::unordered_map<std::uint64_t, std::uint64_t> version_;
  std::vector<Point<D>> near_;
  bool exact_ = true;
};

}  // namespace detail

/// Random parking measure of the domain: the saturated outcome of the
/// seed's space-time process restricted to the domain.
template <std::size_t D>
ParkingResult<D> ParkToSaturation(const Domain<D>& domain, double rho0, std::uint64_t seed) {
  return detail::Saturator<D>(domain, rho0, seed).Run();
}

// Half-side of the padded box used to approximate the whole-space measure
// around `window`.
template <std::size_t D>
Domain<D> PaddedBox(const Domain<D>& window, double pad) {
  return Domain<D>::Box(window.scale() - window.erosion() + pad, window.center());
}

/// Approximation of xi ∩ window: saturate the padded box and restrict.
/// With pad = 0 and a box window this is exactly the finite-box measure.
template <std::size_t D>
ParkingResult<D> ParkCoupledInfinite(const Domain<D>& window, double pad, double rho0,
                                     std::uint64_t seed) {
  if (!(pad >= 0.0)) throw Error("pad must be nonnegative");
  const Domain<D> outer = (pad == 0.0 && window.kind() == DomainKind::kBox)
                              ? window
                              : PaddedBox(window, pad);
  ParkingResult<D> big = ParkToSaturation(outer, rho0, seed);
  ParkingResult<D> res;
  res.accepted = ParkedConfig(window, rho0);
  for (std::size_t i = 0; i < big.accepted.points.size(); ++i) {
    const auto& p = big.accepted.points[i];
    if (window.Contains(p)) {
      res.accepted.points.push_back(p);
      res.accept_times.push_back(big.accept_times[i]);
    }
  }
  res.rejected = big.rejected;
  res.saturation_time = big.saturation_time;
  res.certificate = big.certificate;
  res.provenance = Provenance::kPaddedCoupled;
  res.pad = pad;
  return res;
}

// Points of a configuration lying in `window`.
template <std::size_t D>
PointSet<D> Restrict(const PointSet<D>& pts, const Domain<D>& window) {
  PointSet<D> out;
  for (const auto& p : pts)
    if (window.Contains(p)) out.push_back(p);
  return out;
}

}  // namespace parklab

#endif  // PARKLAB_PARKING_SATURATION_HPP_
