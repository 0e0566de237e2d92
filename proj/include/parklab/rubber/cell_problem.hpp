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

// Cell problems for the homogenized energy density.
//
// Infinite variant: the network is the Delaunay graph of the whole-space
// parking measure near Q_R = (-R, R)^2, the energy is taken on Q_R, and
// vertices in Q_R \ Q_{R - 2 rho2} are pinned to lambda x.
//
// Finite variant: the network comes from the parking measure of Q_R itself,
// the energy is taken on Q_{R - 2 rho2}, and vertices outside Q_{R - 4 rho2}
// are pinned.
//
// Both normalize by |Q_R| and use rho2 = 2 rho0. Replicates of the two
// variants with the same index share the underlying space-time process.

#ifndef PARKLAB_RUBBER_CELL_PROBLEM_HPP_
#define PARKLAB_RUBBER_CELL_PROBLEM_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "parklab/delaunay/triangulation.hpp"
#include "parklab/geom/keyed_rng.hpp"
#include "parklab/geom/parallel.hpp"
#include "parklab/geom/stats.hpp"
#include "parklab/parking/experiments.hpp"
#include "parklab/rubber/energy.hpp"
#include "parklab/rubber/lbfgs.hpp"

namespace parklab::rubber {

enum class Variant { kInfinite, kFinite };

inline std::string ToString(Variant v) { return v == Variant::kInfinite ? "infinite" : "finite"; }

inline Variant ParseVariant(const std::string& s) {
  if (s == "infinite") return Variant::kInfinite;
  if (s == "finite" || s == "finite-domain") return Variant::kFinite;
  throw Error("unknown variant: " + s);
}

struct CellProblem {
  Mat2 lambda = Mat2::Identity();
  double R = 8.0;
  double rho0 = 0.5;
  Variant variant = Variant::kInfinite;
  EnergyModel model = EnergyModel::P2();
  double eps = 1.0;
  // Padding of the whole-space approximation; negative selects the default.
  double pad = -1.0;

  double rho2() const { return 2.0 * rho0; }
  double volume() const { return 4.0 * R * R; }
  // Region whose energy is counted, and the region of free vertices.
  Domain<2> EnergyDomain() const {
    return Domain<2>::Box(variant == Variant::kInfinite ? R : R - 2.0 * rho2());
  }
  Domain<2> FreeDomain() const {
    return Domain<2>::Box(variant == Variant::kInfinite ? R - 2.0 * rho2() : R - 4.0 * rho2());
  }

  void Validate() const {
    if (!(rho0 > 0.0)) throw Error("rho0 must be positive");
    if (!(R > 4.0 * rho2())) throw Error("R must exceed 4 rho2: pinning annulus empty");
    model.Validate();
  }
};

/// A cell problem realized on one sample of the point process.
struct CellInstance {
  Triangulation tri;
  EnergyTerms terms;
  VertexField affine;  // lambda x everywhere, pinned mask set
  std::vector<std::uint32_t> free;
};

inline PointSet<2> CellPoints(const CellProblem& pb, std::uint64_t seed) {
  PointSet<2> pts;
  if (pb.variant == Variant::kInfinite) {
    // Triangles inside Q_R have circumradius at most rho2, so a margin of
    // 2 rho2 makes them those of the whole-space configuration.
    const double pad = pb.pad < 0.0 ? DefaultPad(pb.rho0) : pb.pad;
    const auto win = Domain<2>::Box(pb.R + 2.0 * pb.rho2() + 1.0);
    pts = ParkCoupledInfinite(win, pad, pb.rho0, seed).accepted.points;
  } else {
    pts = ParkToSaturation(Domain<2>::Box(pb.R), pb.rho0, seed).accepted.points;
  }
  std::sort(pts.begin(), pts.end(), LexLess<2>);
  return pts;
}

inline CellInstance BuildCell(const CellProblem& pb, const PointSet<2>& pts) {
  pb.Validate();
  CellInstance c;
  c.tri = Triangulate(pts);
  c.terms = CompileEnergy(c.tri, pb.EnergyDomain(), pb.model, pb.eps);
  c.affine = VertexField::Affine(c.tri.points, pb.lambda);
  const Domain<2> free = pb.FreeDomain();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const bool pin = !free.Contains(pts[i]);
    c.affine.pinned[i] = pin;
    if (!pin && c.terms.used[i]) c.free.push_back(static_cast<std::uint32_t>(i));
  }
  return c;
}

inline CellInstance BuildCell(const CellProblem& pb, std::uint64_t seed) {
  pb.Validate();
  return BuildCell(pb, CellPoints(pb, seed));
}

struct SolveOptions {
  MinimizeOptions minimize;
  // Number of starts; 0 selects 3 with a volumetric term and 1 otherwise.
  int starts = 0;
  // Jitter of the extra starts, in units of rho0.
  double jitter = 0.1;
};

struct CellSolution {
  double energy = 0.0;
  double affine_energy = 0.0;
  double grad_norm = 0.0;
  int iterations = 0;
  int starts = 1;
  bool converged = false;
  // Starts ended at energies differing by more than 1e-6 relative.
  bool multimodal = false;
  std::string diagnostic;
  VertexField field;
};

inline constexpr std::uint64_t kJitterTag = 0x7275622d6a697474ULL;

/// Minimizes the cell energy over the free vertices, best of several starts.
/// Start 0 is lambda x; the others perturb its free vertices.
inline CellSolution SolveCell(const CellInstance& c, const CellProblem& pb, std::uint64_t seed,
                              const SolveOptions& opt = {}) {
  const auto& model = pb.model;
  CellSolution best;
  best.affine_energy = AssembleEnergy(c.terms, model, c.affine.u);
  const int starts = opt.starts > 0 ? opt.starts : (model.has_volume() ? 3 : 1);
  best.starts = starts;

  std::vector<Vec2> u, grad;
  auto fg = [&](const std::vector<double>& x, std::vector<double>& g) {
    for (std::size_t k = 0; k < c.free.size(); ++k) u[c.free[k]] = {x[2 * k], x[2 * k + 1]};
    const double f = EnergyGradient(c.terms, model, u, c.affine.pinned, grad);
    for (std::size_t k = 0; k < c.free.size(); ++k) {
      g[2 * k] = grad[c.free[k]][0];
      g[2 * k + 1] = grad[c.free[k]][1];
    }
    return f;
  };

  double lo = INFINITY, hi = -INFINITY;
  for (int s = 0; s < starts; ++s) {
    u = c.affine.u;
    std::vector<double> x(2 * c.free.size());
    KeyedRng rng(seed, {kJitterTag, static_cast<std::uint64_t>(s), 0});
    for (std::size_t k = 0; k < c.free.size(); ++k) {
      Vec2 v = u[c.free[k]];
      if (s > 0) {
        const double r = opt.jitter * pb.rho0 * std::sqrt(rng.Uniform());
        const double a = 2.0 * std::numbers::pi * rng.Uniform();
        v = v + Vec2{r * std::cos(a), r * std::sin(a)};
      }
      x[2 * k] = v[0];
      x[2 * k + 1] = v[1];
    }
    const MinimizeResult r = Lbfgs(fg, x, opt.minimize);
    best.iterations += r.iterations;
    lo = std::min(lo, r.energy);
    hi = std::max(hi, r.energy);
    if (s == 0 || r.energy < best.energy) {
      best.energy = r.energy;
      best.grad_norm = r.grad_norm;
      best.converged = r.converged;
      best.diagnostic = r.diagnostic;
      best.field = c.affine;
      for (std::size_t k = 0; k < c.free.size(); ++k)
        best.field.u[c.free[k]] = {x[2 * k], x[2 * k + 1]};
    }
  }
  best.multimodal = hi - lo > 1e-6 * std::max(1.0, std::abs(lo));
  return best;
}

struct WhomOptions {
  Variant variant = Variant::kInfinite;
  EnergyModel model = EnergyModel::P2();
  double rho0 = 0.5;
  double pad = -1.0;
  unsigned threads = 1;
  SolveOptions solve;
};

struct WhomSample {
  std::size_t replicate = 0;
  double R = 0.0;
  std::size_t vertices = 0;
  std::size_t free = 0;
  double W = 0.0;
  double affine_W = 0.0;
  double grad_norm = 0.0;
  int iterations = 0;
  bool converged = false;
  bool multimodal = false;
};

struct WhomRow {
  double R = 0.0;
  std::size_t replicates = 0;
  double mean = 0.0;
  double stderr_ = 0.0;
  stats::Interval ci;
  double affine_mean = 0.0;
  std::size_t unconverged = 0;
  std::size_t multimodal = 0;
};

inline CellProblem MakeProblem(const Mat2& lambda, double R, const WhomOptions& opt) {
  CellProblem pb;
  pb.lambda = lambda;
  pb.R = R;
  pb.rho0 = opt.rho0;
  pb.variant = opt.variant;
  pb.model = opt.model;
  pb.pad = opt.pad;
  return pb;
}

inline WhomSample WhomReplicate(const Mat2& lambda, double R, std::size_t rep,
                                std::uint64_t master, const WhomOptions& opt,
                                CellSolution* keep = nullptr, Triangulation* keep_tri = nullptr) {
  const CellProblem pb = MakeProblem(lambda, R, opt);
  const std::uint64_t seed = ReplicateSeed(master, rep);
  CellInstance c = BuildCell(pb, seed);
  CellSolution sol = SolveCell(c, pb, seed, opt.solve);
  WhomSample s;
  s.replicate = rep;
  s.R = R;
  s.vertices = c.tri.points.size();
  s.free = c.free.size();
  s.W = sol.energy / pb.volume();
  s.affine_W = sol.affine_energy / pb.volume();
  s.grad_norm = sol.grad_norm;
  s.iterations = sol.iterations;
  s.converged = sol.converged;
  s.multimodal = sol.multimodal;
  if (keep) *keep = std::move(sol);
  if (keep_tri) *keep_tri = std::move(c.tri);
  return s;
}

/// W_R(lambda) for every (R, replicate), ordered by R then replicate.
inline std::vector<WhomSample> EstimateWhom(const Mat2& lambda, const std::vector<double>& Rs,
                                            std::size_t reps, std::uint64_t master,
                                            const WhomOptions& opt) {
  RequireIncreasing(Rs, "R");
  for (double R : Rs) MakeProblem(lambda, R, opt).Validate();
  std::vector<WhomSample> out(Rs.size() * reps);
  ParallelFor(out.size(), opt.threads, [&](std::size_t i) {
    out[i] = WhomReplicate(lambda, Rs[i / reps], i % reps, master, opt);
  });
  return out;
}

inline std::vector<WhomRow> SummarizeWhom(const std::vector<WhomSample>& samples) {
  std::vector<WhomRow> rows;
  for (std::size_t i = 0; i < samples.size();) {
    std::size_t j = i;
    while (j < samples.size() && samples[j].R == samples[i].R) ++j;
    std::vector<double> w, a;
    WhomRow row;
    row.R = samples[i].R;
    for (std::size_t k = i; k < j; ++k) {
      w.push_back(samples[k].W);
      a.push_back(samples[k].affine_W);
      row.unconverged += !samples[k].converged;
      row.multimodal += samples[k].multimodal;
    }
    row.replicates = w.size();
    row.mean = stats::Mean(w);
    row.stderr_ = stats::StdError(w);
    row.ci = stats::MeanCi(w);
    row.affine_mean = stats::Mean(a);
    rows.push_back(row);
    i = j;
  }
  return rows;
}

struct IsotropyRow {
  double theta = 0.0;
  WhomRow estimate;
};

struct IsotropyReport {
  std::vector<IsotropyRow> rows;
  std::vector<WhomSample> samples;  // grouped by angle, in input order
  bool overlap = false;
};

/// Estimates W_R(lambda Q_theta) for each angle on shared seeds. The verdict
/// holds when all pairwise 95% intervals overlap.
inline IsotropyReport IsotropyTest(const Mat2& lambda, const std::vector<double>& thetas,
                                   double R, std::size_t reps, std::uint64_t master,
                                   const WhomOptions& opt) {
  if (!opt.model.isotropic()) throw Error("isotropy test requires an isotropic model");
  if (thetas.empty()) throw Error("theta list is empty");
  IsotropyReport rep;
  for (double th : thetas) {
    const Mat2 m = th == 0.0 ? lambda : lambda * Mat2::Rotation(th);
    auto s = EstimateWhom(m, {R}, reps, master, opt);
    rep.rows.push_back({th, SummarizeWhom(s).front()});
    rep.samples.insert(rep.samples.end(), s.begin(), s.end());
  }
  rep.overlap = true;
  for (std::size_t i = 0; i < rep.rows.size(); ++i)
    for (std::size_t j = i + 1; j < rep.rows.size(); ++j)
      rep.overlap = rep.overlap && rep.rows[i].estimate.ci.Overlaps(rep.rows[j].estimate.ci);
  return rep;
}

}  // namespace parklab::rubber

#endif  // PARKLAB_RUBBER_CELL_PROBLEM_HPP_
