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
#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/poisson.hpp>
#include <gtest/gtest.h>

#include "parklab/geom/point_config.hpp"
#include "parklab/parking/experiments.hpp"
#include "parklab/parking/saturation.hpp"

namespace parklab {
namespace {

double ChiSquareCritical(double dof, double p = 1e-3) {
  return boost::math::quantile(boost::math::complement(boost::math::chi_squared(dof), p));
}

template <std::size_t D>
PointSet<D> Sorted(PointSet<D> v) {
  std::sort(v.begin(), v.end(), LexLess<D>);
  return v;
}

// Plain O(n^2) random sequential adsorption over a time-ordered stream.
template <std::size_t D>
PointSet<D> NaiveRsa(const std::vector<Arrival<D>>& arr, double rho0) {
  PointSet<D> out;
  for (const auto& a : arr) {
    bool ok = true;
    for (const auto& p : out) ok = ok && Dist(p, a.x) >= 2.0 * rho0;
    if (ok) out.push_back(a.x);
  }
  return out;
}

TEST(Process, RootCountsArePoisson) {
  const SpaceTimeProcess<2> proc(99, 1.0);
  for (int e : {0, 3}) {
    const double mean = proc.cell_side() * proc.cell_side() * (proc.EpochEnd(e) - proc.EpochBegin(e));
    ASSERT_DOUBLE_EQ(mean, e == 0 ? 1.0 : 4.0);
    const int kmax = 12, n = 20000;
    std::vector<double> hist(kmax + 1, 0.0);
    for (int i = 0; i < n; ++i) {
      const auto c = proc.RootCount({i, -i / 7}, e);
      hist[std::min<std::uint64_t>(c, kmax)] += 1.0;
    }
    const boost::math::poisson_distribution<> pois(mean);
    double chi = 0.0;
    int bins = 0;
    double tail = 1.0;
    for (int k = 0; k <= kmax; ++k) {
      const double p = k < kmax ? boost::math::pdf(pois, k) : tail;
      tail -= p;
      const double ex = p * n;
      if (ex < 5.0) continue;
      chi += (hist[k] - ex) * (hist[k] - ex) / ex;
      ++bins;
    }
    EXPECT_LT(chi, ChiSquareCritical(bins - 1)) << "epoch " << e;
  }
}

TEST(Process, ArrivalsUniformInSpaceAndTime) {
  const int bins = 10;
  std::vector<double> hx(bins, 0.0), ht(bins, 0.0);
  double total = 0.0;
  const int seeds = 100;
  const double horizon = 1.5;
  for (int s = 0; s < seeds; ++s) {
    const auto st = GenerateArrivals(Domain<2>::Box(5.0), horizon, 0.5, 1000 + s);
    for (const auto& a : st.arrivals) {
      hx[static_cast<int>((a.x[0] + 5.0) / 10.0 * bins)] += 1.0;
      ht[static_cast<int>(a.t / horizon * bins)] += 1.0;
    }
    total += static_cast<double>(st.arrivals.size());
  }
  const double expect_total = 100.0 * horizon * seeds;
  EXPECT_NEAR(total, expect_total, 5.0 * std::sqrt(expect_total));
  for (const auto* h : {&hx, &ht}) {
    double chi = 0.0;
    for (double c : *h) chi += (c - total / bins) * (c - total / bins) / (total / bins);
    EXPECT_LT(chi, ChiSquareCritical(bins - 1));
  }
}

TEST(Process, NestedDomainsAgree) {
  const auto big = GenerateArrivals(Domain<2>::Box(6.0), 3.0, 0.5, 5);
  const auto small = GenerateArrivals(Domain<2>::Ball(2.5, {1.0, -0.5}), 2.0, 0.5, 5);
  std::vector<Arrival<2>> restricted;
  for (const auto& a : big.arrivals)
    if (a.t < 2.0 && small.domain.Contains(a.x)) restricted.push_back(a);
  EXPECT_EQ(restricted, small.arrivals);
}

TEST(Construction, GraphicalMatchesSequentialAndNaive) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto st = GenerateArrivals(Domain<2>::Box(4.0), 4.0, 0.5, seed);
    const auto seq = ParkSequential(st);
    const auto gra = ParkGraphical(st);
    EXPECT_EQ(Sorted(seq.accepted.points), Sorted(gra.accepted.points));
    EXPECT_EQ(seq.accepted.points, NaiveRsa(st.arrivals, 0.5));
    EXPECT_EQ(seq.rejected + seq.accepted.points.size(), st.arrivals.size());
  }
}

TEST(Construction, EmptyStreamAndEarliestWins) {
  ArrivalStream<2> st;
  EXPECT_TRUE(ParkSequential(st).accepted.points.empty());
  EXPECT_TRUE(ParkGraphical(st).accepted.points.empty());
  st.arrivals = {{{0.3, 0.0}, 0.2}, {{0.0, 0.0}, 0.1}, {{2.0, 0.0}, 0.3}};
  st.Normalize();
  const PointSet<2> want = {{0.0, 0.0}, {2.0, 0.0}};
  EXPECT_EQ(ParkSequential(st).accepted.points, want);
  EXPECT_EQ(Sorted(ParkGraphical(st).accepted.points), Sorted(want));
}

TEST(Construction, TouchingDisksAreCompatible) {
  ArrivalStream<1> st;
  st.domain = Domain<1>::Box(5.0);
  st.arrivals = {{{0.0}, 0.1}, {{1.0}, 0.2}, {{1.5}, 0.3}};
  EXPECT_EQ(ParkSequential(st).accepted.points.size(), 2U);
}

TEST(Construction, PrefixProperty) {
  const auto st = GenerateArrivals(Domain<2>::Box(5.0), 5.0, 0.5, 77);
  const auto full = ParkSequential(st);
  for (std::size_t k : {std::size_t{0}, st.arrivals.size() / 3, st.arrivals.size() / 2}) {
    ArrivalStream<2> pre = st;
    pre.arrivals.resize(k);
    const auto part = ParkSequential(pre);
    std::size_t m = 0;
    while (m < full.accept_times.size() && (k > 0 && full.accept_times[m] <= st.arrivals[k - 1].t)) ++m;
    EXPECT_EQ(part.accepted.points, PointSet<2>(full.accepted.points.begin(),
                                                full.accepted.points.begin() + static_cast<long>(m)));
  }
}

TEST(Construction, TranslationEquivariance) {
  auto st = GenerateArrivals(Domain<2>::Box(4.0), 3.0, 0.5, 3);
  const auto before = ParkSequential(st).accepted.points;
  const Point<2> shift{0.25, 1.5};  // exactly representable: no rounding
  for (auto& a : st.arrivals) a.x = a.x + shift;
  const auto after = ParkSequential(st).accepted.points;
  ASSERT_EQ(before.size(), after.size());
  for (std::size_t i = 0; i < before.size(); ++i) EXPECT_EQ(before[i] + shift, after[i]);
}

TEST(Saturation, EqualsSequentialSweepOfFullStream) {
  // Past the saturation time every arrival is rejected, so a long enough
  // stream reproduces the saturated configuration. Last arrivals can come
  // very late; replicates whose stream would be huge are skipped.
  const auto dom = Domain<2>::Box(3.0);
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto sat = ParkToSaturation(dom, 0.5, seed);
    ASSERT_TRUE(sat.certificate.certified);
    const double horizon = 2.0 * sat.saturation_time + 1.0;
    if (horizon * dom.Volume() > 2e5) continue;
    const auto st = GenerateArrivals(dom, horizon, 0.5, seed);
    EXPECT_EQ(NaiveRsa(st.arrivals, 0.5), sat.accepted.points) << "seed " << seed;
    ++checked;
  }
  EXPECT_GE(checked, 5);
}

TEST(Saturation, AdmissibleOnEveryDomain) {
  const std::vector<Domain<2>> doms = {Domain<2>::Box(6.0), Domain<2>::Ball(6.0),
                                       Domain<2>::LShape(6.0)};
  for (const auto& d : doms) {
    const auto res = ParkToSaturation(d, 0.5, 4);
    ASSERT_TRUE(res.certificate.certified) << ToString(d.kind());
    for (const auto& p : res.accepted.points) EXPECT_TRUE(d.Contains(p));
    const auto rep = CheckAdmissible(res.accepted);
    EXPECT_TRUE(rep.hardcore_ok) << ToString(d.kind());
    EXPECT_TRUE(rep.emptyspace_ok) << ToString(d.kind()) << " hole " << rep.max_hole;
    // Disjoint rho0-balls inside the dilated domain, 2 rho0-balls covering it.
    const double n = static_cast<double>(res.accepted.points.size());
    EXPECT_LE(n * std::numbers::pi * 0.25, Domain<2>::Box(6.5).Volume());
    EXPECT_GE(n * std::numbers::pi, d.Volume());
  }
}

TEST(Saturation, SmallBoxHoldsOnePoint) {
  const auto res = ParkToSaturation(Domain<1>::Box(0.4), 0.5, 8);
  EXPECT_EQ(res.accepted.points.size(), 1U);
  EXPECT_TRUE(res.certificate.certified);
}

TEST(Saturation, ThreeDimensionalIsHardcore) {
  const auto res = ParkToSaturation(Domain<3>::Box(2.5), 0.5, 2);
  EXPECT_TRUE(res.certificate.certified);
  EXPECT_GE(MinPairwiseDistance(res.accepted.points), 1.0);
  EXPECT_GT(res.accepted.points.size(), 20U);
}

TEST(Saturation, CoupledWithZeroPadIsFiniteBox) {
  const auto dom = Domain<2>::Box(5.0);
  EXPECT_EQ(ParkCoupledInfinite(dom, 0.0, 0.5, 6).accepted.points,
            ParkToSaturation(dom, 0.5, 6).accepted.points);
}

TEST(Saturation, CoupledWindowIsRestrictionOfPaddedBox) {
  const auto win = Domain<2>::Box(3.0);
  const auto res = ParkCoupledInfinite(win, 4.0, 0.5, 6);
  const auto big = ParkToSaturation(Domain<2>::Box(7.0), 0.5, 6);
  EXPECT_EQ(res.accepted.points, Restrict(big.accepted.points, win));
}

TEST(Saturation, Deterministic) {
  const auto a = ParkToSaturation(Domain<2>::Ball(5.0), 0.5, 12);
  const auto b = ParkToSaturation(Domain<2>::Ball(5.0), 0.5, 12);
  EXPECT_EQ(a.accepted.points, b.accepted.points);
  EXPECT_EQ(a.accept_times, b.accept_times);
}

TEST(Experiments, JammingSamplesAreThreadIndependent) {
  JammingOptions opt;
  opt.pad = 2.0;
  const auto a = JammingSamples<2>({4.0, 6.0}, 3, 1, opt);
  opt.threads = 4;
  const auto b = JammingSamples<2>({4.0, 6.0}, 3, 1, opt);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].count, b[i].count);
    EXPECT_EQ(a[i].coupled_count, b[i].coupled_count);
  }
  EXPECT_THROW(JammingSamples<2>({6.0, 4.0}, 1, 1, opt), Error);
}

TEST(Experiments, SurvivalIsMonotone) {
  const std::vector<double> grid = {2.0, 3.0, 4.0, 5.0, 6.0};
  const auto tail = EstimateStabilizationTail<2>(0.5, 2.0, grid, 30, 4, 4);
  ASSERT_EQ(tail.survival.size(), grid.size());
  for (std::size_t i = 1; i < tail.survival.size(); ++i)
    EXPECT_LE(tail.survival[i].survival, tail.survival[i - 1].survival);
  for (const auto& s : tail.samples) {
    EXPECT_GE(s.radius, grid.front());
    // The window seen from the radius onward never changes.
    const auto ref = WindowOfFiniteBox<2>(grid.back(), 2.0, 0.5, ReplicateSeed(4, &s - &tail.samples[0]));
    EXPECT_EQ(WindowOfFiniteBox<2>(s.radius, 2.0, 0.5, ReplicateSeed(4, &s - &tail.samples[0])), ref);
  }
}

TEST(Experiments, SectorCountsLookIsotropic) {
  const auto t = SectorIsotropyTest(0.5, 2.0, 6.0, 8, 40, 17, 8.0, 999, 4);
  EXPECT_GT(t.p_value, 0.01);
}

}  // namespace
}  // namespace parklab
