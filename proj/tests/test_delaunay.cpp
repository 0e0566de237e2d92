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

#include <algorithm>
#include <numeric>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "parklab/delaunay/clip.hpp"
#include "parklab/delaunay/mesh_io.hpp"
#include "parklab/delaunay/triangulation.hpp"
#include "parklab/geom/keyed_rng.hpp"
#include "parklab/parking/saturation.hpp"

namespace parklab {
namespace {

PointSet<2> RandomPoints(std::size_t n, std::uint64_t seed) {
  KeyedRng rng(seed, {17, 0, 0});
  PointSet<2> pts(n);
  for (auto& p : pts) p = {rng.Uniform(), rng.Uniform()};
  return pts;
}

// Andrew's monotone chain; returns the hull counterclockwise.
PointSet<2> Hull(PointSet<2> p) {
  std::sort(p.begin(), p.end(), LexLess<2>);
  PointSet<2> h(2 * p.size());
  std::size_t k = 0;
  auto cross = [](const Point<2>& o, const Point<2>& a, const Point<2>& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
  };
  for (std::size_t i = 0; i < p.size(); ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p[i]) <= 0) --k;
    h[k++] = p[i];
  }
  for (std::size_t i = p.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], p[i]) <= 0) --k;
    h[k++] = p[i];
  }
  h.resize(k - 1);
  return h;
}

double PolygonArea(const PointSet<2>& poly) {
  double a = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const auto& p = poly[i];
    const auto& q = poly[(i + 1) % poly.size()];
    a += p[0] * q[1] - p[1] * q[0];
  }
  return 0.5 * a;
}

void ExpectDelaunay(const Triangulation& t) {
  const std::size_t n = t.points.size();
  const std::size_t h = Hull(t.points).size();
  EXPECT_EQ(t.simplices.size(), 2 * n - 2 - h);
  EXPECT_EQ(t.edges.size(), 3 * n - 3 - h);
  double area = 0.0;
  for (std::size_t i = 0; i < t.simplices.size(); ++i) {
    const auto& s = t.simplices[i];
    EXPECT_GT(t.areas[i], 0.0);
    area += t.areas[i];
    for (std::size_t v = 0; v < n; ++v) {
      if (v == s[0] || v == s[1] || v == s[2]) continue;
      ASSERT_LT(predicates::detail::InCircleExact(t.points[s[0]], t.points[s[1]], t.points[s[2]],
                                                  t.points[v]),
                0)
          << "vertex " << v << " inside circumcircle";
    }
  }
  EXPECT_NEAR(area, PolygonArea(Hull(t.points)), 1e-9 * std::max(1.0, area));
}

TEST(Delaunay, RandomSetsSatisfyEmptyCircle) {
  for (std::size_t n : {3, 4, 10, 50, 300}) ExpectDelaunay(Triangulate(RandomPoints(n, n)));
}

TEST(Delaunay, ParkedConfigurations) {
  const auto pts = ParkToSaturation(Domain<2>::Box(6.0), 0.5, 3).accepted.points;
  ExpectDelaunay(Triangulate(pts));
}

TEST(Delaunay, PermutationGivesSameMesh) {
  const auto pts = RandomPoints(80, 5);
  const auto t = Triangulate(pts);
  std::vector<std::uint32_t> perm(pts.size());
  std::iota(perm.begin(), perm.end(), 0U);
  std::reverse(perm.begin(), perm.end());
  PointSet<2> shuffled(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) shuffled[perm[i]] = pts[i];
  auto u = Triangulate(shuffled);
  for (auto& s : u.simplices)
    for (auto& v : s) v = perm[v];  // perm is an involution
  u.points = pts;
  Canonicalize(u);
  EXPECT_EQ(t.simplices, u.simplices);
}

TEST(Delaunay, DegenerateInputsThrow) {
  EXPECT_TRUE(Triangulate({{0, 0}, {1, 1}}).simplices.empty());
  EXPECT_THROW(Triangulate({{0, 0}, {1, 1}, {2, 2}}), GeneralPositionError);
  try {
    Triangulate({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    FAIL() << "cocircular square accepted";
  } catch (const GeneralPositionError& e) {
    EXPECT_EQ(e.tuple().size(), 4U);
  }
  // Near-degenerate but generic: the exact predicates decide.
  EXPECT_NO_THROW(Triangulate({{0, 0}, {1, 0}, {1, 1}, {0, 1.0000000000000002}}));
}

TEST(MeshIo, RoundTrip) {
  const auto t = Triangulate(RandomPoints(40, 6));
  std::vector<std::vector<double>> vals(t.points.size());
  for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = {1.0 / (i + 3.0), -static_cast<double>(i)};
  std::stringstream ss;
  io::WriteMesh(ss, t, vals);
  const auto m = io::ReadMesh(ss);
  EXPECT_EQ(m.tri.points, t.points);
  EXPECT_EQ(m.tri.simplices, t.simplices);
  EXPECT_EQ(m.tri.edges, t.edges);
  EXPECT_EQ(m.values, vals);
}

TEST(MeshIo, RejectsMalformedInput) {
  std::stringstream bad_magic("mesh 1\nvertices 0\nsimplices 0\nedges 0\n");
  EXPECT_THROW(io::ReadMesh(bad_magic), Error);
  std::stringstream bad_index("parklab-mesh 1\nvertices 3\n0 0 0\n1 1 0\n2 0 1\nsimplices 1\n0 1 5\nedges 0\n");
  EXPECT_THROW(io::ReadMesh(bad_index), Error);
  std::stringstream truncated("parklab-mesh 1\nvertices 2\n0 0 0\n");
  EXPECT_THROW(io::ReadMesh(truncated), Error);
}

TEST(Clip, BoxKeepsSimplicesWithVerticesInside) {
  PointSet<2> pts = RandomPoints(200, 7);
  for (auto& p : pts) p = {4.0 * p[0] - 2.0, 4.0 * p[1] - 2.0};
  const auto t = Triangulate(pts);
  const auto c = ClipToInterior(t, Domain<2>::Box(2.0), 0.5);
  std::size_t want = 0;
  for (const auto& s : t.simplices) {
    bool in = true;
    for (auto v : s) in = in && std::abs(pts[v][0]) <= 1.5 && std::abs(pts[v][1]) <= 1.5;
    want += in;
  }
  EXPECT_EQ(c.simplices.size(), want);
  EXPECT_GT(want, 0U);
  EXPECT_THROW(ClipToInterior(t, Domain<2>::Box(2.0), -1.0), Error);
}

TEST(Clip, LShapeDropsSimplicesAcrossTheNotch) {
  PointSet<2> pts = RandomPoints(400, 8);
  for (auto& p : pts) p = {2.0 * p[0] - 1.0, 2.0 * p[1] - 1.0};
  const auto t = Triangulate(pts);
  for (double layer : {0.0, 0.1}) {
    const auto dom = Domain<2>::LShape(1.0);
    const auto er = dom.Eroded(layer);
    const auto c = ClipToInterior(t, dom, layer);
    EXPECT_GT(c.simplices.size(), t.simplices.size() / 3);
    KeyedRng rng(9, {1, 2, 3});
    for (const auto& s : c.simplices) {
      for (int k = 0; k < 20; ++k) {
        double a = rng.UniformOpen(), b = rng.UniformOpen();
        if (a + b >= 1.0) a = 1.0 - a, b = 1.0 - b;
        const Point<2> q = pts[s[0]] + a * (pts[s[1]] - pts[s[0]]) + b * (pts[s[2]] - pts[s[0]]);
        EXPECT_TRUE(er.Contains(q)) << "layer " << layer;
      }
    }
  }
}

TEST(Clip, ParkedEdgesAreBoundedAwayFromTheBoundary) {
  const double rho0 = 0.5;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto dom = Domain<2>::Box(8.0);
    const auto t = Triangulate(ParkToSaturation(dom, rho0, seed).accepted.points);
    const auto c = ClipToInterior(t, dom, 4.0 * rho0);
    EXPECT_TRUE(ComputeEdgeStats(c, 4.0 * rho0).exceeding.empty());
    EXPECT_GT(c.edges.size(), 100U);
  }
}

}  // namespace
}  // namespace parklab
