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

// Bond and volumetric energy densities for planar networks (d = n = 2).
//
//   f_nn(z, s) = (1 + a * (z_1 / |z|)^2) |s|^p
//   W_vol(G)   = kappa (det G - 1)^2
//
// a = 0 gives an isotropic bond energy. W_vol is right-rotation invariant
// for every kappa.

#ifndef PARKLAB_RUBBER_MODEL_HPP_
#define PARKLAB_RUBBER_MODEL_HPP_

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "parklab/geom/point.hpp"
#include "parklab/geom/point_io.hpp"

namespace parklab::rubber {

using Vec2 = Point<2>;

// Row-major 2x2 matrix.
struct Mat2 {
  double a00 = 0.0, a01 = 0.0, a10 = 0.0, a11 = 0.0;

  static Mat2 Identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static Mat2 Diag(double x, double y) { return {x, 0.0, 0.0, y}; }
  static Mat2 Rotation(double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    return {c, -s, s, c};
  }
  // From the columns.
  static Mat2 Cols(const Vec2& c0, const Vec2& c1) { return {c0[0], c1[0], c0[1], c1[1]}; }

  double Det() const { return a00 * a11 - a01 * a10; }
  double Frobenius() const { return std::sqrt(a00 * a00 + a01 * a01 + a10 * a10 + a11 * a11); }
  // d det / d A.
  Mat2 Cofactor() const { return {a11, -a10, -a01, a00}; }
  Mat2 Transpose() const { return {a00, a10, a01, a11}; }
  Mat2 Inverse() const {
    const double d = Det();
    if (d == 0.0) throw Error("singular matrix");
    return {a11 / d, -a01 / d, -a10 / d, a00 / d};
  }
  Vec2 operator*(const Vec2& x) const { return {a00 * x[0] + a01 * x[1], a10 * x[0] + a11 * x[1]}; }
  Mat2 operator*(const Mat2& b) const {
    return {a00 * b.a00 + a01 * b.a10, a00 * b.a01 + a01 * b.a11,
            a10 * b.a00 + a11 * b.a10, a10 * b.a01 + a11 * b.a11};
  }
  friend Mat2 operator*(double s, Mat2 m) {
    m.a00 *= s, m.a01 *= s, m.a10 *= s, m.a11 *= s;
    return m;
  }
  friend bool operator==(const Mat2&, const Mat2&) = default;
};

// "a00,a01,a10,a11".
inline Mat2 ParseMat2(const std::string& s) {
  std::vector<double> v;
  std::stringstream ss(s);
  for (std::string tok; std::getline(ss, tok, ',');) v.push_back(io::ParseDouble(tok));
  if (v.size() != 4) throw Error("matrix needs 4 comma-separated entries, got '" + s + "'");
  return {v[0], v[1], v[2], v[3]};
}

inline std::string FormatMat2(const Mat2& m) {
  return io::FormatDouble(m.a00) + "," + io::FormatDouble(m.a01) + "," +
         io::FormatDouble(m.a10) + "," + io::FormatDouble(m.a11);
}

struct EnergyModel {
  std::string name = "p2";
  double p = 2.0;
  double kappa = 0.0;
  double anisotropy = 0.0;

  static EnergyModel P2() { return {"p2", 2.0, 0.0, 0.0}; }
  static EnergyModel P4() { return {"p4", 4.0, 0.0, 0.0}; }
  static EnergyModel P4Vol(double kappa = 1.0) { return {"p4vol", 4.0, kappa, 0.0}; }

  static EnergyModel Parse(const std::string& s) {
    if (s == "p2") return P2();
    if (s == "p4") return P4();
    if (s == "p4vol") return P4Vol();
    throw Error("unknown energy model: " + s);
  }

  void Validate() const {
    if (!(p >= 2.0)) throw Error("model exponent p must be >= 2");
    if (!(kappa >= 0.0)) throw Error("kappa must be nonnegative");
    if (!(anisotropy > -1.0)) throw Error("anisotropy must exceed -1");
    // (det - 1)^2 grows like |G|^4 and must stay under the p-growth bound.
    if (kappa > 0.0 && p < 4.0) throw Error("volumetric term requires p >= 4");
  }

  bool isotropic() const { return anisotropy == 0.0; }
  bool has_volume() const { return kappa > 0.0; }

  // Constant C of the growth sandwich
  //   |s|^p / C - C <= f_nn(z, s) <= C (|s|^p + 1),  W_vol(G) <= C (|G|^p + 1).
  double growth_constant() const {
    double c = std::max(1.0 + anisotropy, 1.0 / (1.0 + anisotropy));
    // kappa (det - 1)^2 <= kappa (|G|^4 / 2 + 2), and |G|^4 <= |G|^p + 1.
    if (kappa > 0.0) c = std::max(c, (p == 4.0 ? 2.0 : 2.5) * kappa);
    return std::max(c, 1.0);
  }

  // Direction weight 1 + a (z_1 / |z|)^2.
  double BondWeight(const Vec2& z) const {
    if (anisotropy == 0.0) return 1.0;
    const double n2 = z[0] * z[0] + z[1] * z[1];
    return n2 > 0.0 ? 1.0 + anisotropy * z[0] * z[0] / n2 : 1.0;
  }

  double Fnn(const Vec2& z, const Vec2& s) const {
    return BondWeight(z) * std::pow(s[0] * s[0] + s[1] * s[1], 0.5 * p);
  }
  // d f_nn / d s.
  Vec2 FnnGrad(const Vec2& z, const Vec2& s) const {
    const double n2 = s[0] * s[0] + s[1] * s[1];
    const double c = BondWeight(z) * p * (p == 2.0 ? 1.0 : std::pow(n2, 0.5 * p - 1.0));
    return {c * s[0], c * s[1]};
  }

  double Wvol(const Mat2& g) const {
    if (kappa == 0.0) return 0.0;
    const double t = g.Det() - 1.0;
    return kappa * t * t;
  }
  // d W_vol / d G.
  Mat2 WvolGrad(const Mat2& g) const {
    if (kappa == 0.0) return {};
    return (2.0 * kappa * (g.Det() - 1.0)) * g.Cofactor();
  }
};

}  // namespace parklab::rubber

#endif  // PARKLAB_RUBBER_MODEL_HPP_
