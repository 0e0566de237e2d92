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

// Sign-exact planar predicates. Each predicate first evaluates in double
// precision with a forward error bound; only when the bound cannot certify
// the sign does it re-evaluate in exact rational arithmetic. Double inputs
// convert exactly to rationals, so the slow path never rounds.

#ifndef PARKLAB_GEOM_PREDICATES_HPP_
#define PARKLAB_GEOM_PREDICATES_HPP_

#include <cmath>
#include <limits>

#include <boost/multiprecision/cpp_int.hpp>

#include "parklab/geom/point.hpp"

namespace parklab::predicates {

using Exact = boost::multiprecision::cpp_rational;

namespace detail {

constexpr double kEps = std::numeric_limits<double>::epsilon() / 2.0;
// Bounds from Shewchuk's adaptive predicates (first-stage filters).
constexpr double kOrientBound = (3.0 + 16.0 * kEps) * kEps;
constexpr double kInCircleBound = (10.0 + 96.0 * kEps) * kEps;

inline int Sign(const Exact& v) { return v.sign(); }

inline int OrientExact(const Point<2>& a, const Point<2>& b, const Point<2>& c) {
  const Exact ax(a[0]), ay(a[1]), bx(b[0]), by(b[1]), cx(c[0]), cy(c[1]);
  return Sign((ax - cx) * (by - cy) - (ay - cy) * (bx - cx));
}

inline int InCircleExact(const Point<2>& a, const Point<2>& b,
                         const Point<2>& c, const Point<2>& d) {
  const Exact dx(d[0]), dy(d[1]);
  const Exact adx = Exact(a[0]) - dx, ady = Exact(a[1]) - dy;
  const Exact bdx = Exact(b[0]) - dx, bdy = Exact(b[1]) - dy;
  const Exact cdx = Exact(c[0]) - dx, cdy = Exact(c[1]) - dy;
  const Exact alift = adx * adx + ady * ady;
  const Exact blift = bdx * bdx + bdy * bdy;
  const Exact clift = cdx * cdx + cdy * cdy;
  const Exact det = alift * (bdx * cdy - bdy * cdx) +
                    blift * (cdx * ady - cdy * adx) +
                    clift * (adx * bdy - ady * bdx);
  return Sign(det);
}

}  // namespace detail

// +1 if a, b, c are counterclockwise, -1 if clockwise, 0 if collinear.
inline int Orient2D(const Point<2>& a, const Point<2>& b, const Point<2>& c) {
  const double detleft = (a[0] - c[0]) * (b[1] - c[1]);
  const double detright = (a[1] - c[1]) * (b[0] - c[0]);
  const double det = detleft - detright;
  const double detsum = std::abs(detleft) + std::abs(detright);
  if (std::abs(det) > detail::kOrientBound * detsum) return det > 0 ? 1 : -1;
  return detail::OrientExact(a, b, c);
}

// +1 if d lies strictly inside the circle through a, b, c (given
// counterclockwise), -1 if strictly outside, 0 if cocircular.
inline int InCircle(const Point<2>& a, const Point<2>& b, const Point<2>& c,
                    const Point<2>& d) {
  const double adx = a[0] - d[0], ady = a[1] - d[1];
  const double bdx = b[0] - d[0], bdy = b[1] - d[1];
  const double cdx = c[0] - d[0], cdy = c[1] - d[1];
  const double bdxcdy = bdx * cdy, cdxbdy = cdx * bdy;
  const double cdxady = cdx * ady, adxcdy = adx * cdy;
  const double adxbdy = adx * bdy, bdxady = bdx * ady;
  const double alift = adx * adx + ady * ady;
  const double blift = bdx * bdx + bdy * bdy;
  const double clift = cdx * cdx + cdy * cdy;
  const double det = alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) +
                     clift * (adxbdy - bdxady);
  const double permanent =
      (std::abs(bdxcdy) + std::abs(cdxbdy)) * alift +
      (std::abs(cdxady) + std::abs(adxcdy)) * blift +
      (std::abs(adxbdy) + std::abs(bdxady)) * clift;
  if (std::abs(det) > detail::kInCircleBound * permanent) return det > 0 ? 1 : -1;
  return detail::InCircleExact(a, b, c, d);
}

}  // namespace parklab::predicates

#endif  // PARKLAB_GEOM_PREDICATES_HPP_
