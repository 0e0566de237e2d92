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

// Small summary statistics shared by the experiment drivers.

#ifndef PARKLAB_GEOM_STATS_HPP_
#define PARKLAB_GEOM_STATS_HPP_

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

#include "parklab/geom/point.hpp"

namespace parklab::stats {

inline double Mean(std::span<const double> v) {
  if (v.empty()) return 0.0;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

// Standard error of the mean (0 for fewer than two samples).
inline double StdError(std::span<const double> v) {
  const std::size_t n = v.size();
  if (n < 2) return 0.0;
  const double m = Mean(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n));
}

inline double Median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const std::size_t h = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + h, v.end());
  if (v.size() % 2) return v[h];
  const double hi = v[h];
  return 0.5 * (hi + *std::max_element(v.begin(), v.begin() + h));
}

// Two-sided Student t quantile for a (1 - alpha) interval.
inline double TQuantile(double dof, double alpha = 0.05) {
  if (dof < 1.0) return INFINITY;
  boost::math::students_t dist(dof);
  return boost::math::quantile(boost::math::complement(dist, alpha / 2.0));
}

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool Overlaps(const Interval& o) const { return lo <= o.hi && o.lo <= hi; }
};

inline Interval MeanCi(std::span<const double> v, double alpha = 0.05) {
  const double m = Mean(v);
  const double h = TQuantile(static_cast<double>(v.size()) - 1.0, alpha) * StdError(v);
  return {m - h, m + h};
}

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_se = 0.0;
  Interval slope_ci;
  std::size_t n = 0;
};

// Ordinary least squares y = a + b x with a (1 - alpha) interval on b.
inline LineFit FitLine(std::span<const double> x, std::span<const double> y, double alpha = 0.05) {
  if (x.size() != y.size()) throw Error("FitLine: size mismatch");
  LineFit f;
  f.n = x.size();
  if (f.n < 2) return f;
  const double mx = Mean(x), my = Mean(y);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < f.n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) return f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  if (f.n < 3) {
    f.slope_ci = {-INFINITY, INFINITY};
    return f;
  }
  double rss = 0.0;
  for (std::size_t i = 0; i < f.n; ++i) {
    const double r = y[i] - f.intercept - f.slope * x[i];
    rss += r * r;
  }
  f.slope_se = std::sqrt(rss / static_cast<double>(f.n - 2) / sxx);
  const double h = TQuantile(static_cast<double>(f.n) - 2.0, alpha) * f.slope_se;
  f.slope_ci = {f.slope - h, f.slope + h};
  return f;
}

}  // namespace parklab::stats

#endif  // PARKLAB_GEOM_STATS_HPP_
