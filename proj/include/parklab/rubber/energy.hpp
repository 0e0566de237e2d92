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

// Discrete energy of a displacement field on a triangulated network:
//
//   F = sum over edges [x, y] in the closed domain of
//         eps^2 f_nn((y - x) / eps, (u(y) - u(x)) / |y - x|)
//     + sum over triangles T inside the domain of |T| W_vol(grad u|_T).
//
// Terms are evaluated into a buffer and reduced by a fixed-shape pairwise
// tree, so the value does not depend on anything but the inputs.

#ifndef PARKLAB_RUBBER_ENERGY_HPP_
#define PARKLAB_RUBBER_ENERGY_HPP_

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "parklab/delaunay/clip.hpp"
#include "parklab/delaunay/triangulation.hpp"
#include "parklab/geom/domain.hpp"
#include "parklab/rubber/model.hpp"

namespace parklab::rubber {

// Fixed-topology pairwise summation.
inline double PairwiseSum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t h = v.size() / 2;
  return PairwiseSum(v.first(h)) + PairwiseSum(v.subspan(h));
}

/// Per-vertex values u(x) in R^2 plus the pinned mask.
struct VertexField {
  std::vector<Vec2> u;
  std::vector<unsigned char> pinned;

  // u = lambda x everywhere, nothing pinned.
  static VertexField Affine(std::span<const Vec2> points, const Mat2& lambda) {
    VertexField f;
    f.u.reserve(points.size());
    for (const auto& x : points) f.u.push_back(lambda * x);
    f.pinned.assign(points.size(), 0);
    return f;
  }

  bool IsPinned(std::size_t i) const { return i < pinned.size() && pinned[i]; }
};

/// Energy terms of a triangulation restricted to a domain, with the
/// geometric factors precomputed.
struct EnergyTerms {
  double eps = 1.0;
  std::size_t vertex_count = 0;
  std::vector<Edge> edges;
  std::vector<double> edge_weight;  // eps^2 times the direction weight
  std::vector<double> inv_length;
  std::vector<Simplex> simplices;
  std::vector<double> area;
  std::vector<Mat2> inv_shape;  // inverse of [b - a, c - a]
  std::vector<unsigned char> used;

  std::size_t UsedCount() const {
    std::size_t n = 0;
    for (auto b : used) n += b;
    return n;
  }
};

inline EnergyTerms CompileEnergy(const Triangulation& tri, const Domain<2>& domain,
                                 const EnergyModel& model, double eps = 1.0) {
  if (!(eps > 0.0)) throw Error("eps must be positive");
  model.Validate();
  const Triangulation in = ClipToInterior(tri, domain, 0.0);
  EnergyTerms t;
  t.eps = eps;
  t.vertex_count = tri.points.size();
  t.used.assign(t.vertex_count, 0);
  const double e2 = eps * eps;
  for (const auto& e : in.edges) {
    const Vec2 z = tri.points[e.second] - tri.points[e.first];
    const double len = Norm(z);
    if (len == 0.0) throw Error("coincident vertices");
    t.edges.push_back(e);
    t.edge_weight.push_back(e2 * model.BondWeight(z));
    t.inv_length.push_back(1.0 / len);
    t.used[e.first] = t.used[e.second] = 1;
  }
  for (std::size_t k = 0; k < in.simplices.size(); ++k) {
    const auto& s = in.simplices[k];
    const auto& a = tri.points[s[0]];
    t.simplices.push_back(s);
    t.area.push_back(std::abs(in.areas[k]));
    t.inv_shape.push_back(Mat2::Cols(tri.points[s[1]] - a, tri.points[s[2]] - a).Inverse());
    for (auto v : s) t.used[v] = 1;
  }
  return t;
}

namespace detail {

inline Mat2 Gradient(const EnergyTerms& t, std::size_t k, std::span<const Vec2> u) {
  const auto& s = t.simplices[k];
  const Mat2 du = Mat2::Cols(u[s[1]] - u[s[0]], u[s[2]] - u[s[0]]);
  return du * t.inv_shape[k];
}

// |s|^(p-2), written so that energy and gradient share one rounding path.
inline double PowM2(double n2, double p) { return p == 2.0 ? 1.0 : std::pow(n2, 0.5 * p - 1.0); }

inline void CheckField(const EnergyTerms& t, std::span<const Vec2> u) {
  if (u.size() < t.vertex_count) throw Error("missing vertex value");
}

}  // namespace detail

struct EnergyParts {
  double nn = 0.0;
  double vol = 0.0;
  double total() const { return nn + vol; }
};

inline EnergyParts AssembleParts(const EnergyTerms& t, const EnergyModel& model,
                                 std::span<const Vec2> u) {
  detail::CheckField(t, u);
  std::vector<double> buf(t.edges.size());
  for (std::size_t k = 0; k < t.edges.size(); ++k) {
    const auto [i, j] = t.edges[k];
    const Vec2 s = t.inv_length[k] * (u[j] - u[i]);
    const double n2 = s[0] * s[0] + s[1] * s[1];
    buf[k] = t.edge_weight[k] * detail::PowM2(n2, model.p) * n2;
  }
  EnergyParts parts;
  parts.nn = PairwiseSum(buf);
  if (model.has_volume()) {
    buf.resize(t.simplices.size());
    for (std::size_t k = 0; k < t.simplices.size(); ++k)
      buf[k] = t.area[k] * model.Wvol(detail::Gradient(t, k, u));
    parts.vol = PairwiseSum(buf);
  }
  return parts;
}

inline double AssembleEnergy(const EnergyTerms& t, const EnergyModel& model,
                             std::span<const Vec2> u) {
  return AssembleParts(t, model, u).total();
}

// Convenience form taking the raw triangulation.
inline double AssembleEnergy(const Triangulation& tri, const VertexField& field,
                             const EnergyModel& model, const Domain<2>& domain, double eps = 1.0) {
  return AssembleEnergy(CompileEnergy(tri, domain, model, eps), model, field.u);
}

/// Energy and its gradient with respect to every vertex value; entries of
/// pinned vertices are zero.
inline double EnergyGradient(const EnergyTerms& t, const EnergyModel& model,
                             std::span<const Vec2> u, std::span<const unsigned char> pinned,
                             std::vector<Vec2>& grad) {
  detail::CheckField(t, u);
  grad.assign(t.vertex_count, Vec2{});
  std::vector<double> buf(t.edges.size());
  for (std::size_t k = 0; k < t.edges.size(); ++k) {
    const auto [i, j] = t.edges[k];
    const double il = t.inv_length[k];
    const Vec2 s = il * (u[j] - u[i]);
    const double n2 = s[0] * s[0] + s[1] * s[1];
    const double pw = detail::PowM2(n2, model.p);
    buf[k] = t.edge_weight[k] * pw * n2;
    const Vec2 g = (t.edge_weight[k] * model.p * pw * il) * s;
    grad[j] = grad[j] + g;
    grad[i] = grad[i] - g;
  }
  double f = PairwiseSum(buf);
  if (model.has_volume()) {
    buf.resize(t.simplices.size());
    for (std::size_t k = 0; k < t.simplices.size(); ++k) {
      const Mat2 g = detail::Gradient(t, k, u);
      buf[k] = t.area[k] * model.Wvol(g);
      // dF/dU = |T| W'(G) E^{-T}, U = [u_b - u_a, u_c - u_a].
      const Mat2 du = t.area[k] * (model.WvolGrad(g) * t.inv_shape[k].Transpose());
      const auto& s = t.simplices[k];
      const Vec2 gb{du.a00, du.a10}, gc{du.a01, du.a11};
      grad[s[1]] = grad[s[1]] + gb;
      grad[s[2]] = grad[s[2]] + gc;
      grad[s[0]] = grad[s[0]] - (gb + gc);
    }
    f += PairwiseSum(buf);
  }
  for (std::size_t i = 0; i < pinned.size() && i < grad.size(); ++i)
    if (pinned[i]) grad[i] = Vec2{};
  return f;
}

}  // namespace parklab::rubber

#endif  // PARKLAB_RUBBER_ENERGY_HPP_
