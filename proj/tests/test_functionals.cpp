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
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "parklab/functionals/evaluate.hpp"
#include "parklab/functionals/matching.hpp"
#include "parklab/functionals/mst.hpp"
#include "parklab/functionals/properties.hpp"
#include "parklab/functionals/tsp.hpp"
#include "parklab/functionals/umbrella.hpp"
#include "parklab/geom/keyed_rng.hpp"

namespace parklab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

PointSet<2> RandomPoints(std::size_t n, std::uint64_t seed) {
  KeyedRng rng(seed, {42, 0, 0});
  PointSet<2> pts(n);
  for (auto& p : pts) p = {3.0 * rng.Uniform(), 2.0 * rng.Uniform()};
  return pts;
}

double Near(double a) { return 1e-12 * std::max(1.0, std::abs(a)); }

// Minimum spanning tree weight by enumerating Pruefer sequences.
double BruteTree(std::size_t n, const std::function<double(std::size_t, std::size_t)>& w) {
  if (n < 2) return 0.0;
  if (n == 2) return w(0, 1);
  std::vector<std::size_t> seq(n - 2, 0);
  double best = kInf;
  while (true) {
    std::vector<std::size_t> degree(n, 1);
    for (auto s : seq) ++degree[s];
    double cost = 0.0;
    for (auto s : seq) {
      std::size_t leaf = 0;
      while (degree[leaf] != 1) ++leaf;
      cost += w(leaf, s);
      --degree[leaf];
      --degree[s];
    }
    std::size_t u = n, v = n;
    for (std::size_t i = 0; i < n; ++i)
      if (degree[i] == 1) (u == n ? u : v) = i;
    cost += w(u, v);
    best = std::min(best, cost);
    std::size_t i = 0;
    for (; i < seq.size(); ++i) {
      if (++seq[i] < n) break;
      seq[i] = 0;
    }
    if (i == seq.size()) break;
  }
  return best;
}

// Minimum perfect-or-near-perfect matching by recursion. With `hook`, a
// point may instead attach to the boundary; without, odd sets leave one
// point out.
double BruteMatch(std::vector<std::size_t> left, const PointSet<2>& pts, double p,
                  const std::vector<double>* hook, bool skip_used) {
  if (left.empty()) return 0.0;
  const std::size_t a = left.back();
  left.pop_back();
  double best = kInf;
  if (hook) best = PowerLength((*hook)[a], p) + BruteMatch(left, pts, p, hook, skip_used);
  else if (!skip_used && left.size() % 2 == 0) best = BruteMatch(left, pts, p, hook, true);
  for (std::size_t k = 0; k < left.size(); ++k) {
    auto rest = left;
    const std::size_t b = rest[k];
    rest.erase(rest.begin() + static_cast<long>(k));
    best = std::min(best, PowerDist(pts[a], pts[b], p) + BruteMatch(rest, pts, p, hook, skip_used));
  }
  return best;
}

double BruteTour(const PointSet<2>& pts, double p) {
  const std::size_t n = pts.size();
  if (n < 2) return 0.0;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double best = kInf;
  do {
    double c = 0.0;
    for (std::size_t i = 0; i < n; ++i) c += PowerDist(pts[perm[i]], pts[perm[(i + 1) % n]], p);
    best = std::min(best, c);
  } while (std::next_permutation(perm.begin() + 1, perm.end()));
  return best;
}

std::vector<double> BoxHooks(const PointSet<2>& pts) {
  Box<2> b;
  b.lo = {0.0, 0.0};
  b.hi = {3.0, 2.0};
  return BoundaryDistances(pts, b);
}

class Powers : public ::testing::TestWithParam<double> {};

TEST_P(Powers, MstMatchesTreeEnumeration) {
  const double p = GetParam();
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto pts = RandomPoints(2 + s % 6, s);
    const double want =
        BruteTree(pts.size(), [&](std::size_t i, std::size_t j) { return PowerDist(pts[i], pts[j], p); });
    const auto got = MstCost(pts, p);
    EXPECT_NEAR(got.value, want, Near(want));
    EXPECT_EQ(got.certificate.size(), pts.size() - 1);
  }
}

TEST_P(Powers, BoundaryMstMatchesTreeEnumeration) {
  const double p = GetParam();
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto pts = RandomPoints(1 + s % 6, 100 + s);
    const auto hook = BoxHooks(pts);
    const std::size_t n = pts.size();
    // Vertex n is the boundary.
    const double want = BruteTree(n + 1, [&](std::size_t i, std::size_t j) {
      if (i == n || j == n) return PowerLength(hook[std::min(i, j)], p);
      return PowerDist(pts[i], pts[j], p);
    });
    const double got = BoundaryMstCost(pts, hook, p).value;
    EXPECT_NEAR(got, want, Near(want));
  }
}

TEST_P(Powers, MatchingMatchesEnumeration) {
  const double p = GetParam();
  for (std::uint64_t s = 0; s < 12; ++s) {
    const auto pts = RandomPoints(1 + s % 9, 200 + s);
    std::vector<std::size_t> idx(pts.size());
    std::iota(idx.begin(), idx.end(), 0);
    const double want = BruteMatch(idx, pts, p, nullptr, pts.size() % 2 == 0);
    EXPECT_NEAR(MatchingExact(pts, p).value, want, Near(want)) << pts.size() << " points";
    const auto hook = BoxHooks(pts);
    const double bwant = BruteMatch(idx, pts, p, &hook, true);
    EXPECT_NEAR(BoundaryMatchingExact(pts, hook, p).value, bwant, Near(bwant));
  }
}

TEST_P(Powers, TourMatchesPermutations) {
  const double p = GetParam();
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto pts = RandomPoints(1 + s % 8, 300 + s);
    const double want = BruteTour(pts, p);
    const auto got = TspExact(pts, p);
    EXPECT_NEAR(got.value, want, Near(want));
    if (pts.size() >= 2) {
      EXPECT_EQ(got.certificate.size(), pts.size());
    }
  }
}

TEST_P(Powers, HeuristicsBoundExactFromAbove) {
  const double p = GetParam();
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto pts = RandomPoints(12 + s % 5, 400 + s);
    const auto hook = BoxHooks(pts);
    const auto tol = [](double x) { return x * (1.0 - 1e-12); };
    EXPECT_GE(MatchingHeuristic(pts, p).value, tol(MatchingExact(pts, p).value));
    EXPECT_GE(TspHeuristic(pts, p).value, tol(TspExact(pts, p).value));
    EXPECT_GE(BoundaryMatchingHeuristic(pts, hook, p).value,
              tol(BoundaryMatchingExact(pts, hook, p).value));
    EXPECT_FALSE(TspHeuristic(pts, p).exact);
  }
}

INSTANTIATE_TEST_SUITE_P(Functionals, Powers, ::testing::Values(0.5, 1.0, 2.0, 3.0));

TEST(Mst, LargeInstanceMatchesPrim) {
  const auto pts = RandomPoints(600, 7);
  const std::size_t n = pts.size();
  std::vector<double> key(n, kInf);
  std::vector<bool> in(n, false);
  key[0] = 0.0;
  double total = 0.0;
  for (std::size_t it = 0; it < n; ++it) {
    std::size_t u = n;
    for (std::size_t v = 0; v < n; ++v)
      if (!in[v] && (u == n || key[v] < key[u])) u = v;
    in[u] = true;
    total += key[u];
    for (std::size_t v = 0; v < n; ++v)
      if (!in[v]) key[v] = std::min(key[v], Dist(pts[u], pts[v]));
  }
  EXPECT_NEAR(MstCost(pts, 1.0).value, total, 1e-9);
}

TEST(Functional, CertificatesPriceToValue) {
  const auto pts = RandomPoints(14, 8);
  const auto hook = BoxHooks(pts);
  for (const auto& v : {MstCost(pts, 1.5), MatchingExact(pts, 1.5), TspExact(pts, 1.5),
                        BoundaryMstCost(pts, hook, 1.5), BoundaryMatchingExact(pts, hook, 1.5)})
    EXPECT_EQ(CertificateCost<2>(pts, hook, 1.5, v.certificate), v.value);
}

TEST(Functional, ValueIsOrderIndependent) {
  auto pts = RandomPoints(15, 9);
  const double a = MstCost(pts, 1.0).value, b = TspExact(pts, 1.0).value;
  std::reverse(pts.begin(), pts.end());
  EXPECT_EQ(MstCost(pts, 1.0).value, a);
  EXPECT_EQ(TspExact(pts, 1.0).value, b);
}

TEST(Evaluate, RestrictsToRegionAndRejectsOversizeExact) {
  const auto pts = RandomPoints(40, 10);
  const auto dom = Domain<2>::Box(1.0, {1.5, 1.0});
  const FunctionalSpec count{FunctionalKind::kCount, 1.0, SolverMode::kExact};
  EXPECT_EQ(Evaluate(count, pts, dom).value, static_cast<double>(PointsIn(pts, dom).size()));
  const FunctionalSpec tsp{FunctionalKind::kTsp, 1.0, SolverMode::kExact};
  EXPECT_THROW(Evaluate(tsp, pts, Domain<2>::Box(10.0)), Error);
  const FunctionalSpec heur{FunctionalKind::kTsp, 1.0, SolverMode::kHeuristic};
  EXPECT_FALSE(Evaluate(heur, pts, Domain<2>::Box(10.0)).exact);
  const FunctionalSpec bm{FunctionalKind::kBoundaryMst, 1.0, SolverMode::kExact};
  EXPECT_THROW(EvaluateOn(bm, pts, dom), Error);
}

TEST(Properties, SmallSuiteHasNoViolations) {
  PropertyOptions opt;
  opt.max_points = 10;
  for (auto kind : {FunctionalKind::kMst, FunctionalKind::kMatching}) {
    const FunctionalSpec spec{kind, 1.0, SolverMode::kExact};
    const auto rep = PropertySuite<2>(spec, 30, opt);
    EXPECT_EQ(rep.subadditive_violations, 0U) << ToString(kind);
    EXPECT_EQ(rep.smooth_violations, 0U) << ToString(kind);
    EXPECT_TRUE(rep.superadditive_checked);
    EXPECT_EQ(rep.superadditive_violations, 0U) << ToString(kind);
    EXPECT_LE(rep.fitted_c_subadditive, opt.c_subadditive);
  }
  const FunctionalSpec heur{FunctionalKind::kMst, 1.0, SolverMode::kHeuristic};
  EXPECT_THROW(PropertySuite<2>(heur, 1, opt), Error);
}

TEST(Umbrella, SamplesAreDeterministicAndPaired) {
  const FunctionalSpec spec{FunctionalKind::kMst, 1.0, SolverMode::kHeuristic};
  UmbrellaOptions opt;
  opt.pad = 4.0;
  const auto a = UmbrellaSamples<2>(spec, {3.0, 5.0}, 2, 3, opt);
  opt.threads = 3;
  const auto b = UmbrellaSamples<2>(spec, {3.0, 5.0}, 2, 3, opt);
  ASSERT_EQ(a.size(), 4U);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].finite_value, b[i].finite_value);
    EXPECT_EQ(a[i].coupled_value, b[i].coupled_value);
    EXPECT_EQ(a[i].R, i < 2 ? 3.0 : 5.0);
  }
  const auto rows = SummarizeUmbrella(a);
  ASSERT_EQ(rows.size(), 2U);
  EXPECT_EQ(rows[0].replicates, 2U);
}

}  // namespace
}  // namespace parklab
