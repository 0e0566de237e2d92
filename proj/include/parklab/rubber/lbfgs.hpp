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

// Limited-memory BFGS with a backtracking line search.
//
// Steps are accepted on the Armijo condition, or on the approximate Wolfe
// conditions once the objective is flat to rounding. Convergence is declared
// on the sup-norm of the gradient.

#ifndef PARKLAB_RUBBER_LBFGS_HPP_
#define PARKLAB_RUBBER_LBFGS_HPP_

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>
#include <vector>

namespace parklab::rubber {

struct MinimizeOptions {
  double tol = 1e-8;
  int max_iters = 50000;
  int memory = 12;
};

struct MinimizeResult {
  double energy = 0.0;
  double grad_norm = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
  std::string diagnostic;
};

namespace detail {

inline double Dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double SupNorm(const std::vector<double>& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace detail

/// Minimizes fg over x in place. fg(x, g) returns f(x) and writes the
/// gradient into g. The returned energy never exceeds the starting value.
template <class FG>
MinimizeResult Lbfgs(FG&& fg, std::vector<double>& x, const MinimizeOptions& opt = {}) {
  using detail::Dot;
  const std::size_t n = x.size();
  MinimizeResult res;
  std::vector<double> g(n), xn(n), gn(n), d(n), alpha;
  double f = fg(x, g);
  ++res.evaluations;
  res.energy = f;
  res.grad_norm = detail::SupNorm(g);
  if (res.grad_norm <= opt.tol) {
    res.converged = true;
    return res;
  }
  const std::vector<double> x0 = x;
  const double f0 = f, g0 = res.grad_norm;

  struct Pair {
    std::vector<double> s, y;
    double rho;
  };
  std::deque<Pair> mem;
  bool restarted = false;

  for (res.iterations = 0; res.iterations < opt.max_iters;) {
    // Two-loop recursion for d = -H g.
    d = g;
    alpha.assign(mem.size(), 0.0);
    for (std::size_t k = mem.size(); k-- > 0;) {
      alpha[k] = mem[k].rho * Dot(mem[k].s, d);
      for (std::size_t i = 0; i < n; ++i) d[i] -= alpha[k] * mem[k].y[i];
    }
    if (!mem.empty()) {
      const auto& last = mem.back();
      const double gamma = Dot(last.s, last.y) / Dot(last.y, last.y);
      for (double& v : d) v *= gamma;
    }
    for (std::size_t k = 0; k < mem.size(); ++k) {
      const double beta = mem[k].rho * Dot(mem[k].y, d);
      for (std::size_t i = 0; i < n; ++i) d[i] += (alpha[k] - beta) * mem[k].s[i];
    }
    for (double& v : d) v = -v;
    double gd = Dot(g, d);
    if (!(gd < 0.0)) {
      mem.clear();
      for (std::size_t i = 0; i < n; ++i) d[i] = -g[i];
      gd = Dot(g, d);
    }

    double step = mem.empty() ? std::min(1.0, 1.0 / detail::SupNorm(g)) : 1.0;
    bool accepted = false;
    double fn = f;
    for (int bt = 0; bt < 60; ++bt) {
      for (std::size_t i = 0; i < n; ++i) xn[i] = x[i] + step * d[i];
      fn = fg(xn, gn);
      ++res.evaluations;
      if (std::isfinite(fn)) {
        const bool armijo = fn <= f + 1e-4 * step * gd;
        const double gnd = Dot(gn, d);
        const bool approx_wolfe =
            fn <= f + 1e-12 * std::abs(f) && gnd >= 0.9 * gd && gnd <= -0.8 * gd;
        if (armijo || approx_wolfe) {
          accepted = true;
          break;
        }
      }
      step *= 0.5;
    }
    if (!accepted) {
      if (!mem.empty() && !restarted) {
        mem.clear();
        restarted = true;
        continue;
      }
      res.diagnostic = "line search failed at gradient norm " + std::to_string(res.grad_norm);
      break;
    }
    restarted = false;
    ++res.iterations;

    Pair pr{std::vector<double>(n), std::vector<double>(n), 0.0};
    for (std::size_t i = 0; i < n; ++i) {
      pr.s[i] = xn[i] - x[i];
      pr.y[i] = gn[i] - g[i];
    }
    const double sy = Dot(pr.s, pr.y);
    if (sy > 1e-14 * std::sqrt(Dot(pr.s, pr.s) * Dot(pr.y, pr.y))) {
      pr.rho = 1.0 / sy;
      mem.push_back(std::move(pr));
      if (mem.size() > static_cast<std::size_t>(opt.memory)) mem.pop_front();
    }

    x.swap(xn);
    g.swap(gn);
    f = fn;
    res.energy = f;
    res.grad_norm = detail::SupNorm(g);
    if (res.grad_norm <= opt.tol) {
      res.converged = true;
      break;
    }
  }
  if (f > f0) {
    // Only reachable through approximate-Wolfe steps that rose by rounding.
    x = x0;
    res.energy = f0;
    res.grad_norm = g0;
    res.converged = false;
    res.diagnostic = "no descent below the starting value";
  }
  if (!res.converged && res.diagnostic.empty())
    res.diagnostic = "iteration cap " + std::to_string(opt.max_iters) +
                     " reached at gradient norm " + std::to_string(res.grad_norm);
  return res;
}

}  // namespace parklab::rubber

#endif  // PARKLAB_RUBBER_LBFGS_HPP_
