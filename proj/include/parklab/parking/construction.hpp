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

#ifndef PARKLAB_PARKING_CONSTRUCTION_HPP_
#define PARKLAB_PARKING_CONSTRUCTION_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "parklab/geom/point_config.hpp"
#include "parklab/geom/point_grid.hpp"
#include "parklab/parking/process.hpp"

namespace parklab {

enum class Provenance { kStream, kFiniteBox, kPaddedCoupled };

inline std::string ToString(Provenance p) {
  switch (p) {
    case Provenance::kStream: return "stream";
    case Provenance::kFiniteBox: return "finite-box";
    case Provenance::kPaddedCoupled: return "padded-coupled";
  }
  return "?";
}

// Summary of the voxel tree that certified saturation.
struct SaturationCertificate {
  bool certified = false;
  // False when some voxels were retired by the approximate (d >= 3) rule.
  bool exact = true;
  int epochs = 0;
  int max_depth = 0;
  std::uint64_t coverage_tests = 0;
  std::uint64_t dead_voxels = 0;
  std::uint64_t examined = 0;
  std::string diagnostic;
};

template <std::size_t D>
struct ParkingResult {
  // Accepted centers in acceptance order, with rho1 = 2 rho0 (1 - 1e-9),
  // rho2 = 2 rho0 on the birth domain.
  PointConfig<D> accepted;
  std::vector<double> accept_times;
  std::uint64_t rejected = 0;
  double saturation_time = 0.0;
  SaturationCertificate certificate;
  Provenance provenance = Provenance::kStream;
  double pad = 0.0;
};

template <std::size_t D>
PointConfig<D> ParkedConfig(const Domain<D>& domain, double rho0) {
  PointConfig<D> cfg;
  cfg.domain = domain;
  cfg.rho1 = 2.0 * rho0 * (1.0 - 1e-9);
  cfg.rho2 = 2.0 * rho0;
  return cfg;
}

/// Time sweep: an arrival is accepted iff it lies at distance >= 2 rho0
/// from every previously accepted center.
template <std::size_t D>
ParkingResult<D> ParkSequential(const ArrivalStream<D>& stream) {
  ParkingResult<D> res;
  res.accepted = ParkedConfig(stream.domain, stream.rho0);
  const double diam = 2.0 * stream.rho0;
  PointGrid<D> grid(diam);
  for (const auto& a : stream.arrivals) {
    if (grid.AnyWithin(a.x, diam)) {
      ++res.rejected;
      continue;
    }
    grid.Insert(a.x);
    res.accepted.points.push_back(a.x);
    res.accept_times.push_back(a.t);
    res.saturation_time = a.t;
  }
  return res;
}

/// Root peeling on the oriented conflict graph. Vertices are arrivals; there
/// is an edge u -> v when the balls of radius rho0 around them overlap and u
/// precedes v in time (lexicographic tie-break). Each round accepts the roots
/// of the remaining graph, discards their offspring, and removes both.
template <std::size_t D>
ParkingResult<D> ParkGraphical(const ArrivalStream<D>& stream) {
  const auto& arr = stream.arrivals;
  const std::size_t n = arr.size();
  const double diam = 2.0 * stream.rho0;

  PointGrid<D> grid(diam);
  for (const auto& a : arr) grid.Insert(a.x);
  std::vector<std::vector<std::uint32_t>> parents(n), children(n);
  for (std::size_t v = 0; v < n; ++v) {
    grid.ForEachWithin(arr[v].x, diam, [&](std::size_t u) {
      if (u != v && ArrivalBefore(arr[u], arr[v])) {
        parents[v].push_back(static_cast<std::uint32_t>(u));
        children[u].push_back(static_cast<std::uint32_t>(v));
      }
    });
  }

  enum : unsigned char { kLive, kAccepted, kRemoved };
  std::vector<unsigned char> state(n, kLive);
  std::vector<std::uint32_t> live_parents(n);
  for (std::size_t v = 0; v < n; ++v) live_parents[v] = static_cast<std::uint32_t>(parents[v].size());

  std::vector<std::uint32_t> roots;
  for (std::size_t v = 0; v < n; ++v)
    if (live_parents[v] == 0) roots.push_back(static_cast<std::uint32_t>(v));

  std::vector<bool> is_accepted(n, false);
  std::vector<std::uint32_t> removed_now, next_roots;
  while (!roots.empty()) {
    removed_now.clear();
    for (std::uint32_t r : roots) {
      state[r] = kAccepted;
      is_accepted[r] = true;
      removed_now.push_back(r);
    }
    for (std::uint32_t r : roots)
      for (std::uint32_t c : children[r])
        if (state[c] == kLive) {
          state[c] = kRemoved;
          removed_now.push_back(c);
        }
    next_roots.clear();
    for (std::uint32_t v : removed_now)
      for (std::uint32_t c : children[v])
        if (state[c] == kLive && --live_parents[c] == 0) next_roots.push_back(c);
    roots.swap(next_roots);
  }

  ParkingResult<D> res;
  res.accepted = ParkedConfig(stream.domain, stream.rho0);
  for (std::size_t v = 0; v < n; ++v) {
    if (is_accepted[v]) {
      res.accepted.points.push_back(arr[v].x);
      res.accept_times.push_back(arr[v].t);
      res.saturation_time = arr[v].t;
    } else {
      ++res.rejected;
    }
  }
  return res;
}

}  // namespace parklab

#endif  // PARKLAB_PARKING_CONSTRUCTION_HPP_
