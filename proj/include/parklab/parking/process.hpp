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

// Unit-intensity Poisson process on R^d x [0, inf), realized lazily and
// reproducibly from a 64-bit seed.
//
// Space is tiled by lattice cells of side `cell_side`; time by epochs
//   E_0 = [0, tau),  E_e = [tau 2^(e-1), tau 2^e)  (e >= 1),
// with tau = 1 / cell_side^d so that E_0 carries one expected point per
// cell. For each (cell, epoch) the point count is Poisson, and a node with
// two or more points splits its count multinomially among its 2^d dyadic
// children. Nodes holding a single point (or sitting at the depth cap) place
// their points uniformly in node x epoch. Every random choice is keyed by
// (node, epoch), so the process restricted to any region is the same no
// matter which other regions are ever looked at.

#ifndef PARKLAB_PARKING_PROCESS_HPP_
#define PARKLAB_PARKING_PROCESS_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "parklab/geom/domain.hpp"
#include "parklab/geom/keyed_rng.hpp"
#include "parklab/geom/point.hpp"

namespace parklab {

template <std::size_t D>
struct Arrival {
  Point<D> x{};
  double t = 0.0;

  friend bool operator==(const Arrival&, const Arrival&) = default;
};

// Time order with the lexicographic tie-break on positions.
template <std::size_t D>
bool ArrivalBefore(const Arrival<D>& a, const Arrival<D>& b) {
  if (a.t != b.t) return a.t < b.t;
  return LexLess(a.x, b.x);
}

template <std::size_t D>
class SpaceTimeProcess {
 public:
  using Cell = std::array<std::int64_t, D>;

  static constexpr int kMaxDepth = 40;
  static constexpr int kMaxEpoch = 60;

  // Stream-key experiment tags.
  static constexpr std::uint64_t kCountTag = 0x70726f632d636e74ULL;
  static constexpr std::uint64_t kPointTag = 0x70726f632d707473ULL;

  struct Node {
    Cell cell{};
    int depth = 0;
    std::uint64_t key = 0;
    Box<D> box{};
  };

  SpaceTimeProcess(std::uint64_t seed, double cell_side)
      : seed_(seed), side_(cell_side),
        tau_(1.0 / std::pow(cell_side, static_cast<double>(D))) {
    if (!(cell_side > 0.0)) throw Error("cell side must be positive");
  }

  std::uint64_t seed() const { return seed_; }
  double cell_side() const { return side_; }

  double EpochBegin(int e) const { return e == 0 ? 0.0 : std::ldexp(tau_, e - 1); }
  double EpochEnd(int e) const { return std::ldexp(tau_, e); }
  // Smallest epoch whose end exceeds t.
  int EpochOf(double t) const {
    int e = 0;
    while (e < kMaxEpoch && EpochEnd(e) <= t) ++e;
    return e;
  }

  Cell CellOf(const Point<D>& x) const {
    Cell c;
    for (std::size_t i = 0; i < D; ++i)
      c[i] = static_cast<std::int64_t>(std::floor(x[i] / side_));
    return c;
  }

  Node Root(const Cell& c) const {
    Node n;
    n.cell = c;
    n.key = CellKey(c);
    for (std::size_t i = 0; i < D; ++i) {
      n.box.lo[i] = side_ * static_cast<double>(c[i]);
      n.box.hi[i] = side_ * static_cast<double>(c[i] + 1);
    }
    return n;
  }

  Node Child(const Node& p, unsigned which) const {
    Node n;
    n.cell = p.cell;
    n.depth = p.depth + 1;
    n.key = HashCombine(p.key, which + 1);
    for (std::size_t i = 0; i < D; ++i) {
      const double mid = 0.5 * (p.box.lo[i] + p.box.hi[i]);
      const bool upper = (which >> i) & 1U;
      n.box.lo[i] = upper ? mid : p.box.lo[i];
      n.box.hi[i] = upper ? p.box.hi[i] : mid;
    }
    return n;
  }

  // Number of points of the process in cell x E_e.
  std::uint64_t RootCount(const Cell& c, int e) const {
    KeyedRng rng(seed_, {kCountTag, CellKey(c), static_cast<std::uint64_t>(e)});
    const double mean = std::pow(side_, static_cast<double>(D)) * (EpochEnd(e) - EpochBegin(e));
    std::poisson_distribution<std::uint64_t> pois(mean);
    return pois(rng);
  }

  // Splits `count` points of `node` in epoch e among its 2^d children.
  std::array<std::uint64_t, (std::size_t{1} << D)> Split(const Node& node, int e,
                                                        std::uint64_t count) const {
    constexpr std::size_t kChildren = std::size_t{1} << D;
    std::array<std::uint64_t, kChildren> out{};
    KeyedRng rng(seed_, {kCountTag, node.key, static_cast<std::uint64_t>(e)});
    if (count <= 64) {
      // Each point picks a child uniformly: D random bits per point.
      std::uint64_t bits = 0;
      int avail = 0;
      for (std::uint64_t k = 0; k < count; ++k) {
        if (avail < static_cast<int>(D)) {
          bits = rng();
          avail = 64;
        }
        ++out[bits & (kChildren - 1)];
        bits >>= D;
        avail -= static_cast<int>(D);
      }
      return out;
    }
    std::uint64_t remaining = count;
    for (std::size_t i = 0; i + 1 < kChildren; ++i) {
      std::binomial_distribution<std::uint64_t> bin(
          remaining, 1.0 / static_cast<double>(kChildren - i));
      out[i] = bin(rng);
      remaining -= out[i];
    }
    out[kChildren - 1] = remaining;
    return out;
  }

  // Points of a leaf node (count <= 1, or depth cap reached).
  void LeafPoints(const Node& node, int e, std::uint64_t count,
                  std::vector<Arrival<D>>& out) const {
    KeyedRng rng(seed_, {kPointTag, node.key, static_cast<std::uint64_t>(e)});
    const double t0 = EpochBegin(e), t1 = EpochEnd(e);
    for (std::uint64_t k = 0; k < count; ++k) {
      Arrival<D> a;
      for (std::size_t i = 0; i < D; ++i) {
        const double lo = node.box.lo[i], hi = node.box.hi[i];
        a.x[i] = std::min(lo + (hi - lo) * rng.Uniform(), std::nextafter(hi, lo));
      }
      a.t = std::min(t0 + (t1 - t0) * rng.Uniform(), std::nextafter(t1, t0));
      out.push_back(a);
    }
  }

  /// Depth-first enumeration of the points of `node` in epoch e.
  /// `prune(node, count)` may return true to skip a subtree holding `count`
  /// points; `emit(arrival)` receives every point that is not pruned.
  template <class Prune, class Emit>
  void Enumerate(const Node& node, int e, std::uint64_t count, Prune&& prune,
                 Emit&& emit, std::vector<Arrival<D>>& scratch) const {
    if (count == 0 || prune(node, count)) return;
    if (count == 1 || node.depth >= kMaxDepth) {
      scratch.clear();
      LeafPoints(node, e, count, scratch);
      for (const auto& a : scratch) emit(a);
      return;
    }
    const auto split = Split(node, e, count);
    for (unsigned c = 0; c < split.size(); ++c)
      if (split[c]) Enumerate(Child(node, c), e, split[c], prune, emit, scratch);
  }

  // Lattice cells whose closed box meets the bounding box of `domain`.
  std::vector<Cell> CellsCovering(const Box<D>& bb) const {
    Cell a, b;
    for (std::size_t i = 0; i < D; ++i) {
      a[i] = static_cast<std::int64_t>(std::floor(bb.lo[i] / side_));
      b[i] = static_cast<std::int64_t>(std::floor(bb.hi[i] / side_));
    }
    std::vector<Cell> cells;
    Cell c = a;
    while (true) {
      cells.push_back(c);
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
    return cells;
  }

 private:
  std::uint64_t seed_;
  double side_;
  double tau_;
};

/// Explicit, time-ordered list of arrivals of the process in a domain up to
/// a time horizon.
template <std::size_t D>
struct ArrivalStream {
  Domain<D> domain = Domain<D>::Box(1.0);
  double rho0 = 0.5;
  double horizon = 0.0;
  std::vector<Arrival<D>> arrivals;

  // Sorts by time (lexicographic tie-break) and drops exact duplicates: the
  // process is a set, so a repeated space-time point is the same point.
  void Normalize() {
    std::sort(arrivals.begin(), arrivals.end(), ArrivalBefore<D>);
    arrivals.erase(std::unique(arrivals.begin(), arrivals.end()), arrivals.end());
  }
};

/// Arrivals of the seed's process in `domain` x [0, horizon). The cell side
/// is 2 rho0. Streams for nested domains or horizons agree on their overlap.
template <std::size_t D>
ArrivalStream<D> GenerateArrivals(const Domain<D>& domain, double horizon, double rho0,
                                  std::uint64_t seed) {
  if (!(horizon > 0.0)) throw Error("horizon must be positive");
  if (!(rho0 > 0.0)) throw Error("rho0 must be positive");
  ArrivalStream<D> s{domain, rho0, horizon, {}};
  if (domain.IsEmpty()) return s;
  const SpaceTimeProcess<D> proc(seed, 2.0 * rho0);
  const int last = proc.EpochOf(horizon);
  std::vector<Arrival<D>> scratch;
  auto prune = [&](const typename SpaceTimeProcess<D>::Node& n, std::uint64_t) {
    return !domain.MayIntersect(n.box);
  };
  auto emit = [&](const Arrival<D>& a) {
    if (a.t < horizon && domain.Contains(a.x)) s.arrivals.push_back(a);
  };
  for (const auto& cell : proc.CellsCovering(domain.BoundingBox())) {
    const auto root = proc.Root(cell);
    if (!domain.MayIntersect(root.box)) continue;
    for (int e = 0; e <= last; ++e)
      proc.Enumerate(root, e, proc.RootCount(cell, e), prune, emit, scratch);
  }
  s.Normalize();
  return s;
}

}  // namespace parklab

#endif  // PARKLAB_PARKING_PROCESS_HPP_
