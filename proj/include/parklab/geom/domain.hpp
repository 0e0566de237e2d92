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

#ifndef PARKLAB_GEOM_DOMAIN_HPP_
#define PARKLAB_GEOM_DOMAIN_HPP_

#include <cmath>
#include <numbers>
#include <string>

#include "parklab/geom/point.hpp"

namespace parklab {

enum class DomainKind { kBox, kBall, kLShape };

inline std::string ToString(DomainKind k) {
  switch (k) {
    case DomainKind::kBox: return "box";
    case DomainKind::kBall: return "ball";
    case DomainKind::kLShape: return "l-shape";
  }
  return "?";
}

inline DomainKind ParseDomainKind(const std::string& s) {
  if (s == "box") return DomainKind::kBox;
  if (s == "ball") return DomainKind::kBall;
  if (s == "l-shape" || s == "lshape") return DomainKind::kLShape;
  throw Error("unknown domain kind: " + s);
}

// Volume of the unit ball in R^d.
inline double UnitBallVolume(std::size_t d) {
  const double h = 0.5 * static_cast<double>(d);
  return std::pow(std::numbers::pi, h) / std::tgamma(h + 1.0);
}

/// Open bounded domain D_R of one of three shapes, optionally eroded:
/// D_{R,r} = { x in D_R : dist(x, complement of D_R) > r }.
///
///   box      Q_R = center + (-R, R)^d
///   ball     center + open ball of radius R
///   l-shape  (d = 2) Q_R minus the closed upper-right quadrant
///            { x : x - center >= 0 componentwise }
///
/// Erosion composes additively (erosion by balls), so a domain is fully
/// described by (kind, center, R, r).
template <std::size_t D>
class Domain {
 public:
  Domain() = default;

  static Domain Box(double R, Point<D> center = {}) {
    return Domain(DomainKind::kBox, center, R, 0.0);
  }
  static Domain Ball(double R, Point<D> center = {}) {
    return Domain(DomainKind::kBall, center, R, 0.0);
  }
  static Domain LShape(double R, Point<D> center = {}) {
    static_assert(D == 2, "l-shape domains are planar");
    return Domain(DomainKind::kLShape, center, R, 0.0);
  }
  static Domain Make(DomainKind kind, double R, Point<D> center = {}) {
    if constexpr (D != 2) {
      if (kind == DomainKind::kLShape)
        throw Error("l-shape domains require dimension 2");
    }
    return Domain(kind, center, R, 0.0);
  }

  DomainKind kind() const { return kind_; }
  const Point<D>& center() const { return center_; }
  double scale() const { return scale_; }
  double erosion() const { return erosion_; }

  bool IsEmpty() const {
    if (kind_ == DomainKind::kLShape) return !(2.0 * erosion_ < scale_);
    return !(erosion_ < scale_);
  }

  // Same shape scaled by R about its center: D_R.
  Domain WithScale(double R) const { return Domain(kind_, center_, R, erosion_); }
  Domain Translated(const Point<D>& y) const {
    return Domain(kind_, center_ + y, scale_, erosion_);
  }
  Domain Eroded(double r) const {
    if (!(r >= 0.0)) throw Error("erosion radius must be nonnegative");
    return Domain(kind_, center_, scale_, erosion_ + r);
  }

  // Distance from x to the complement of the uneroded shape (0 outside).
  double BaseDepth(const Point<D>& x) const {
    const Point<D> y = x - center_;
    switch (kind_) {
      case DomainKind::kBox: {
        double m = scale_;
        for (std::size_t i = 0; i < D; ++i) m = std::min(m, scale_ - std::abs(y[i]));
        return std::max(0.0, m);
      }
      case DomainKind::kBall:
        return std::max(0.0, scale_ - Norm(y));
      case DomainKind::kLShape: {
        if constexpr (D == 2) {
          double m = scale_;
          for (std::size_t i = 0; i < D; ++i) m = std::min(m, scale_ - std::abs(y[i]));
          if (m <= 0.0) return 0.0;
          // Distance to the removed quadrant [0, R] x [0, R].
          const double dx = std::max(0.0, -y[0]);
          const double dy = std::max(0.0, -y[1]);
          const double dq = std::sqrt(dx * dx + dy * dy);
          return std::min(m, dq);
        }
        return 0.0;
      }
    }
    return 0.0;
  }

  bool Contains(const Point<D>& x) const { return BaseDepth(x) > erosion_; }

  // dist(x, boundary) for x in the domain, 0 outside.
  double DistanceToBoundary(const Point<D>& x) const {
    return std::max(0.0, BaseDepth(x) - erosion_);
  }

  double Volume() const {
    if (IsEmpty()) return 0.0;
    const double a = scale_ - erosion_;
    switch (kind_) {
      case DomainKind::kBox: return std::pow(2.0 * a, static_cast<double>(D));
      case DomainKind::kBall:
        return UnitBallVolume(D) * std::pow(a, static_cast<double>(D));
      case DomainKind::kLShape: {
        const double r = erosion_;
        return 4.0 * a * a - scale_ * scale_ + r * r * (1.0 - std::numbers::pi / 4.0);
      }
    }
    return 0.0;
  }

  double Diameter() const {
    if (IsEmpty()) return 0.0;
    const double a = scale_ - erosion_;
    if (kind_ == DomainKind::kBall) return 2.0 * a;
    return 2.0 * a * std::sqrt(static_cast<double>(D));
  }

  // Closed bounding box of the (eroded) domain.
  parklab::Box<D> BoundingBox() const {
    parklab::Box<D> b;
    const double a = std::max(0.0, scale_ - erosion_);
    for (std::size_t i = 0; i < D; ++i) {
      b.lo[i] = center_[i] - a;
      b.hi[i] = center_[i] + a;
    }
    return b;
  }

  // Conservative test: false only if the closed box provably misses the
  // closure of the domain.
  bool MayIntersect(const parklab::Box<D>& b) const {
    if (IsEmpty()) return false;
    const auto bb = BoundingBox();
    for (std::size_t i = 0; i < D; ++i)
      if (b.hi[i] < bb.lo[i] || b.lo[i] > bb.hi[i]) return false;
    if (kind_ == DomainKind::kBall) {
      const double a = scale_ - erosion_;
      return b.MinDist2(center_) <= a * a;
    }
    if (kind_ == DomainKind::kLShape) {
      // The lower corner is the box point farthest from the removed quadrant.
      double s = 0.0;
      for (std::size_t i = 0; i < D; ++i) {
        const double t = std::max(0.0, center_[i] - b.lo[i]);
        s += t * t;
      }
      if (s <= erosion_ * erosion_) return false;
    }
    return true;
  }

  friend bool operator==(const Domain& a, const Domain& b) {
    return a.kind_ == b.kind_ && a.center_ == b.center_ &&
           a.scale_ == b.scale_ && a.erosion_ == b.erosion_;
  }

 private:
  Domain(DomainKind kind, Point<D> center, double R, double r)
      : kind_(kind), center_(center), scale_(R), erosion_(r) {
    if (!(R > 0.0)) throw Error("domain scale must be positive");
  }

  DomainKind kind_ = DomainKind::kBox;
  Point<D> center_{};
  double scale_ = 1.0;
  double erosion_ = 0.0;
};

template <std::size_t D>
Domain<D> Erode(const Domain<D>& domain, double r) {
  return domain.Eroded(r);
}

}  // namespace parklab

#endif  // PARKLAB_GEOM_DOMAIN_HPP_
