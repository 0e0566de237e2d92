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
#include <bit>
#include <numbers>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>
#include <gtest/gtest.h>

#include "parklab/geom/domain.hpp"
#include "parklab/geom/keyed_rng.hpp"
#include "parklab/geom/parallel.hpp"
#include "parklab/geom/point_config.hpp"
#include "parklab/geom/point_grid.hpp"
#include "parklab/geom/point_io.hpp"
#include "parklab/geom/predicates.hpp"
#include "parklab/geom/stats.hpp"

namespace parklab {
namespace {

double ChiSquareCritical(double dof, double p = 1e-3) {
  return boost::math::quantile(boost::math::complement(boost::math::chi_squared(dof), p));
}

TEST(KeyedRng, SameKeySameStream) {
  KeyedRng a(7, {1, 2, 3}), b(7, {1, 2, 3}), c(7, {1, 2, 4});
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a(), y = b(), z = c();
    EXPECT_EQ(x, y);
    differs = differs || x != z;
  }
  EXPECT_TRUE(differs);
}

TEST(KeyedRng, DeriveIgnoresPosition) {
  KeyedRng a(11, {5, 6, 7});
  const auto d0 = a.Derive(3);
  for (int i = 0; i < 17; ++i) a();
  auto d1 = a.Derive(3);
  auto d0c = d0;
  for (int i = 0; i < 10; ++i) EXPECT_EQ(d0c(), d1());
}

TEST(KeyedRng, UniformPassesChiSquare) {
  KeyedRng rng(2024, {9, 9, 9});
  const int bins = 20, n = 200000;
  std::vector<double> count(bins, 0.0);
  for (int i = 0; i < n; ++i) {
    const double u = rng.Uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    count[static_cast<int>(u * bins)] += 1.0;
  }
  const double e = static_cast<double>(n) / bins;
  double chi = 0.0;
  for (double c : count) chi += (c - e) * (c - e) / e;
  EXPECT_LT(chi, ChiSquareCritical(bins - 1));
}

TEST(KeyedRng, AdjacentKeysUncorrelated) {
  // Pearson correlation of first outputs across consecutive cell keys.
  const int n = 20000;
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    const double x = KeyedRng(1, {0, static_cast<std::uint64_t>(i), 0}).Uniform();
    const double y = KeyedRng(1, {0, static_cast<std::uint64_t>(i + 1), 0}).Uniform();
    sx += x, sy += y, sxx += x * x, syy += y * y, sxy += x * y;
  }
  const double cov = sxy / n - sx / n * sy / n;
  const double r = cov / std::sqrt((sxx / n - sx * sx / n / n) * (syy / n - sy * sy / n / n));
  EXPECT_LT(std::abs(r), 4.0 / std::sqrt(n));
}

TEST(PointIo, CsvRoundTripIsExact) {
  KeyedRng rng(3, {1, 1, 1});
  PointSet<3> pts;
  for (int i = 0; i < 200; ++i)
    pts.push_back({rng.Uniform() * 1e-300, (rng.Uniform() - 0.5) * 1e300,
                   std::nextafter(rng.Uniform(), 2.0)});
  pts.push_back({0.1, -0.0, 1.0 / 3.0});
  std::stringstream ss;
  io::WriteCsv<3>(ss, pts);
  const auto back = io::ReadCsv<3>(ss);
  ASSERT_EQ(back.size(), pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (int k = 0; k < 3; ++k) EXPECT_EQ(std::bit_cast<std::uint64_t>(back[i][k]),
                                          std::bit_cast<std::uint64_t>(pts[i][k]));
}

TEST(PointIo, CsvSkipsCommentsAndRejectsBadRows) {
  std::stringstream ok("# header\n1,2\n\n3.5 , -4e-3\r\n");
  const auto pts = io::ReadCsv<2>(ok);
  ASSERT_EQ(pts.size(), 2U);
  EXPECT_EQ(pts[1][0], 3.5);
  EXPECT_EQ(pts[1][1], -4e-3);
  std::stringstream three("1,2,3\n"), one("1\n"), junk("1,x\n");
  EXPECT_THROW(io::ReadCsv<2>(three), Error);
  EXPECT_THROW(io::ReadCsv<2>(one), Error);
  EXPECT_THROW(io::ReadCsv<2>(junk), Error);
}

TEST(PointIo, NanHasOneSpelling) {
  EXPECT_EQ(io::FormatDouble(std::nan("")), "nan");
  EXPECT_EQ(io::FormatDouble(-std::nan("")), "nan");
  EXPECT_EQ(io::FormatDouble(0.1), "0.10000000000000001");
}

TEST(PointIo, BinaryLayout) {
  const PointSet<2> pts = {{1.0, -2.0}};
  std::stringstream ss;
  io::WriteBinary<2>(ss, pts);
  const std::string b = ss.str();
  ASSERT_EQ(b.size(), 4U + 4U + 4U + 8U + 16U);
  EXPECT_EQ(b.substr(0, 4), "PKLB");
  EXPECT_EQ(b[4], 1);  // version, little-endian
  EXPECT_EQ(b[8], 2);  // dimension
  EXPECT_EQ(b[12], 1);  // count
  // 1.0 = 0x3ff0000000000000, little-endian.
  EXPECT_EQ(static_cast<unsigned char>(b[27]), 0x3f);
  EXPECT_EQ(static_cast<unsigned char>(b[26]), 0xf0);
}

TEST(PointIo, BinaryRoundTripAndErrors) {
  KeyedRng rng(4, {1, 1, 1});
  PointSet<2> pts(1000);
  for (auto& p : pts) p = {rng.Uniform(), -rng.Uniform()};
  std::stringstream ss;
  io::WriteBinary<2>(ss, pts);
  const std::string bytes = ss.str();
  std::stringstream in(bytes);
  EXPECT_EQ(io::ReadBinary<2>(in), pts);

  std::stringstream wrong_dim(bytes);
  EXPECT_THROW(io::ReadBinary<3>(wrong_dim), Error);
  std::stringstream truncated(bytes.substr(0, bytes.size() - 3));
  EXPECT_THROW(io::ReadBinary<2>(truncated), Error);
  std::stringstream bad_magic("PKLX" + bytes.substr(4));
  EXPECT_THROW(io::ReadBinary<2>(bad_magic), Error);
}

TEST(Domain, BoxIsOpen) {
  const auto b = Domain<2>::Box(1.0);
  EXPECT_TRUE(b.Contains({0.999, -0.999}));
  EXPECT_FALSE(b.Contains({1.0, 0.0}));
  EXPECT_DOUBLE_EQ(b.Volume(), 4.0);
  EXPECT_DOUBLE_EQ(b.Eroded(0.25).Volume(), 2.25);
  EXPECT_NEAR(b.DistanceToBoundary({0.5, 0.1}), 0.5, 1e-15);
  EXPECT_TRUE(b.Eroded(1.0).IsEmpty());
}

TEST(Domain, VolumesMatchMonteCarlo) {
  KeyedRng rng(5, {2, 2, 2});
  const std::vector<Domain<2>> doms = {Domain<2>::Ball(1.0), Domain<2>::LShape(1.0),
                                       Domain<2>::LShape(1.0).Eroded(0.2),
                                       Domain<2>::Ball(1.0).Eroded(0.3)};
  for (const auto& d : doms) {
    const int n = 400000;
    int hit = 0;
    for (int i = 0; i < n; ++i) hit += d.Contains({2.0 * rng.Uniform() - 1.0, 2.0 * rng.Uniform() - 1.0});
    const double est = 4.0 * hit / n;
    const double se = 4.0 * std::sqrt(0.25 / n);
    EXPECT_NEAR(d.Volume(), est, 5.0 * se) << ToString(d.kind()) << " erosion " << d.erosion();
  }
}

TEST(Domain, BallVolumeIn3d) {
  EXPECT_NEAR(Domain<3>::Ball(2.0).Volume(), 4.0 / 3.0 * std::numbers::pi * 8.0, 1e-12);
  EXPECT_THROW(Domain<3>::Make(DomainKind::kLShape, 1.0), Error);
}

TEST(PointGrid, WithinMatchesBruteForce) {
  KeyedRng rng(6, {3, 3, 3});
  PointSet<3> pts(500);
  for (auto& p : pts) p = {10 * rng.Uniform(), 10 * rng.Uniform(), 10 * rng.Uniform()};
  const PointGrid<3> g(0.7, pts);
  for (int q = 0; q < 200; ++q) {
    const Point<3> x = {12 * rng.Uniform() - 1, 12 * rng.Uniform() - 1, 12 * rng.Uniform() - 1};
    const double r = 3.0 * rng.Uniform();
    std::vector<std::size_t> got, want;
    g.ForEachWithin(x, r, [&](std::size_t i) { got.push_back(i); });
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (Dist2(pts[i], x) < r * r) want.push_back(i);
    std::sort(got.begin(), got.end());
    EXPECT_EQ(got, want);
    EXPECT_EQ(g.AnyWithin(x, r), !want.empty());
    const auto [idx, d] = g.Nearest(x);
    double best = INFINITY;
    for (const auto& p : pts) best = std::min(best, Dist(p, x));
    EXPECT_EQ(d, best);
    EXPECT_EQ(Dist(pts[idx], x), best);
  }
}

TEST(Predicates, ExactOnDegenerateInputs) {
  using predicates::InCircle;
  using predicates::Orient2D;
  EXPECT_EQ(Orient2D({0, 0}, {1, 1}, {3, 3}), 0);
  EXPECT_EQ(Orient2D({0.1, 0.1}, {0.2, 0.2}, {0.3, 0.3}),
            predicates::detail::OrientExact({0.1, 0.1}, {0.2, 0.2}, {0.3, 0.3}));
  EXPECT_EQ(Orient2D({0, 0}, {1, 0}, {0, 1}), 1);
  EXPECT_EQ(InCircle({0, 0}, {1, 0}, {1, 1}, {0, 1}), 0);
  EXPECT_EQ(InCircle({0, 0}, {1, 0}, {0, 1}, {0.5, 0.5}), 1);
  EXPECT_EQ(InCircle({0, 0}, {1, 0}, {0, 1}, {2, 2}), -1);
  // Nearly collinear triples: the filtered and exact paths agree.
  KeyedRng rng(8, {4, 4, 4});
  for (int i = 0; i < 2000; ++i) {
    const double t = rng.Uniform(), s = rng.Uniform();
    const Point<2> a{0.5, 0.5}, b{12.0, 12.0};
    const Point<2> c{0.5 + t * 11.5, 0.5 + t * 11.5 + (s - 0.5) * 1e-15};
    EXPECT_EQ(Orient2D(a, b, c), predicates::detail::OrientExact(a, b, c));
    const Point<2> d{0.5 + s, 0.5 + t};
    EXPECT_EQ(InCircle(a, {12.0, 0.5}, b, d), predicates::detail::InCircleExact(a, {12.0, 0.5}, b, d));
  }
}

TEST(PointConfig, MinPairwiseDistanceMatchesBruteForce) {
  KeyedRng rng(9, {5, 5, 5});
  for (int rep = 0; rep < 20; ++rep) {
    PointSet<2> pts(100);
    for (auto& p : pts) p = {rng.Uniform(), rng.Uniform()};
    double best = INFINITY;
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j) best = std::min(best, Dist(pts[i], pts[j]));
    EXPECT_EQ(MinPairwiseDistance(pts), best);
  }
}

TEST(PointConfig, AdmissibilityOnLattice) {
  // Unit lattice in (-5, 5)^2 at half-integers: holes of radius sqrt(2)/2.
  PointConfig<2> cfg;
  cfg.domain = Domain<2>::Box(5.0);
  for (int i = -5; i < 5; ++i)
    for (int j = -5; j < 5; ++j) cfg.points.push_back({i + 0.5, j + 0.5});
  cfg.rho1 = 1.0;
  cfg.rho2 = 0.75;
  auto rep = CheckAdmissible(cfg);
  EXPECT_TRUE(rep.hardcore_ok);
  EXPECT_TRUE(rep.emptyspace_ok);
  EXPECT_GE(rep.max_hole, std::sqrt(0.5) - 1e-12);
  cfg.rho2 = 0.7;
  EXPECT_FALSE(CheckAdmissible(cfg).emptyspace_ok);
  cfg.rho1 = 1.01;
  EXPECT_FALSE(CheckAdmissible(cfg).hardcore_ok);
}

TEST(PointConfig, GeneralPositionWitness) {
  EXPECT_FALSE(CheckGeneralPosition({{0, 0}, {1, 0}, {2, 0}}).ok);
  const auto r = CheckGeneralPosition({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.witness.size(), 4U);
  EXPECT_TRUE(CheckGeneralPosition({{0, 0}, {1, 0}, {0.3, 0.9}}).ok);
}

TEST(Stats, SmallSamples) {
  const std::vector<double> v = {1, 2, 3, 4};
  EXPECT_DOUBLE_EQ(stats::Mean(v), 2.5);
  EXPECT_NEAR(stats::StdError(v), std::sqrt(5.0 / 3.0) / 2.0, 1e-15);
  EXPECT_DOUBLE_EQ(stats::Median(v), 2.5);
  EXPECT_NEAR(stats::TQuantile(9), 2.262157162798205, 1e-12);
  const auto ci = stats::MeanCi(v);
  EXPECT_NEAR(ci.hi - 2.5, 2.5 - ci.lo, 1e-12);
  EXPECT_TRUE(ci.Overlaps({ci.hi, ci.hi + 1}));
  EXPECT_FALSE(ci.Overlaps({ci.hi + 1e-9, ci.hi + 1}));
}

TEST(Stats, FitLineRecoversSlope) {
  std::vector<double> x, y;
  KeyedRng rng(10, {6, 6, 6});
  for (int i = 0; i < 200; ++i) {
    x.push_back(i * 0.1);
    y.push_back(3.0 - 0.7 * i * 0.1 + 0.01 * (rng.Uniform() - 0.5));
  }
  const auto f = stats::FitLine(x, y);
  EXPECT_NEAR(f.slope, -0.7, 1e-3);
  EXPECT_NEAR(f.intercept, 3.0, 1e-2);
  EXPECT_LT(f.slope_ci.lo, -0.7);
  EXPECT_GT(f.slope_ci.hi, -0.7);
}

TEST(Parallel, MatchesSerialAndPropagatesErrors) {
  std::vector<int> out(1000);
  ParallelFor(out.size(), 8, [&](std::size_t i) { out[i] = static_cast<int>(i * i % 97); });
  for (std::size_t i = 0; i < out.size(); ++i) EXPECT_EQ(out[i], static_cast<int>(i * i % 97));
  EXPECT_THROW(ParallelFor(100, 4,
                           [](std::size_t i) {
                             if (i == 42) throw std::runtime_error("boom");
                           }),
               std::runtime_error);
}

}  // namespace
}  // namespace parklab
