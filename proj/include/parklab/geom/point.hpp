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

#ifndef PARKLAB_GEOM_POINT_HPP_
#define PARKLAB_GEOM_POINT_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace parklab {

template <std::size_t D>
using Point = std::array<double, D>;

template <std::size_t D>
using PointSet = std::vector<Point<D>>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <std::size_t D>
constexpr double Dist2(const Point<D>& a, const Point<D>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < D; ++i) {
    const double t = a[i] - b[i];
    s += t * t;
  }
  return s;
}

template <std::size_t D>
double Dist(const Point<D>& a, const Point<D>& b) {
  return std::sqrt(Dist2(a, b));
}

template <std::size_t D>
double Norm(const Point<D>& a) {
  return std::sqrt(Dist2(a, Point<D>{}));
}

template <std::size_t D>
constexpr Point<D> operator+(Point<D> a, const Point<D>& b) {
  for (std::size_t i = 0; i < D; ++i) a[i] += b[i];
  return a;
}

template <std::size_t D>
constexpr Point<D> operator-(Point<D> a, const Point<D>& b) {
  for (std::size_t i = 0; i < D; ++i) a[i] -= b[i];
  return a;
}

template <std::size_t D>
constexpr Point<D> operator*(double s, Point<D> a) {
  for (double& x : a) x *= s;
  return a;
}

// Lexicographic order, used for the tie-break between simultaneous arrivals.
template <std::size_t D>
constexpr bool LexLess(const Point<D>& a, const Point<D>& b) {
  for (std::size_t i = 0; i < D; ++i) {
    if (a[i] < b[i]) return true;
    if (b[i] < a[i]) return false;
  }
  return false;
}

// Axis-aligned closed box [lo, hi].
template <std::size_t D>
struct Box {
  Point<D> lo{};
  Point<D> hi{};

  bool Empty() const {
    for (std::size_t i = 0; i < D; ++i)
      if (!(lo[i] < hi[i])) return true;
    return false;
  }
  double Volume() const {
    double v = 1.0;
    for (std::size_t i = 0; i < D; ++i) v *= std::max(0.0, hi[i] - lo[i]);
    return v;
  }
  Point<D> Center() const { return 0.5 * (lo + hi); }
  bool ContainsClosed(const Point<D>& x) const {
    for (std::size_t i = 0; i < D; ++i)
      if (x[i] < lo[i] || x[i] > hi[i]) return false;
    return true;
  }
  Box Intersect(const Box& o) const {
    Box r;
    for (std::size_t i = 0; i < D; ++i) {
      r.lo[i] = std::max(lo[i], o.lo[i]);
      r.hi[i] = std::min(hi[i], o.hi[i]);
    }
    return r;
  }
  // Largest squared distance from x to any point of the box.
  double MaxDist2(const Point<D>& x) const {
    double s = 0.0;
    for (std::size_t i = 0; i < D; ++i) {
      const double t = std::max(std::abs(x[i] - lo[i]), std::abs(x[i] - hi[i]));
      s += t * t;
    }
    return s;
  }
  // Smallest squared distance from x to the box (0 inside).
  double MinDist2(const Point<D>& x) const {
    double s = 0.0;
    for (std::size_t i = 0; i < D; ++i) {
      double t = 0.0;
      if (x[i] < lo[i]) t = lo[i] - x[i];
      else if (x[i] > hi[i]) t = x[i] - hi[i];
      s += t * t;
    }
    return s;
  }
};

}  // namespace parklab

#endif  // PARKLAB_GEOM_POINT_HPP_
