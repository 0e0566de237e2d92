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

// Dispatch of a validated experiment config to the owning module.

#ifndef PARKLAB_LAB_RUNNER_HPP_
#define PARKLAB_LAB_RUNNER_HPP_

#include <fstream>
#include <string>
#include <vector>

#include "parklab/delaunay/mesh_io.hpp"
#include "parklab/functionals/properties.hpp"
#include "parklab/functionals/umbrella.hpp"
#include "parklab/geom/point_io.hpp"
#include "parklab/lab/config.hpp"
#include "parklab/lab/table.hpp"
#include "parklab/parking/experiments.hpp"
#include "parklab/rubber/cell_problem.hpp"

namespace parklab::lab {

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> v)
      : Error(Join(v)), violations_(std::move(v)) {}
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  static std::string Join(const std::vector<std::string>& v) {
    std::string s;
    for (const auto& m : v) s += (s.empty() ? "" : "; ") + m;
    return s;
  }
  std::vector<std::string> violations_;
};

struct RunOptions {
  unsigned threads = 0;  // 0: all cores
  // park: write the points of replicate 0 at the largest R (".pklb" selects
  // the binary format, anything else CSV).
  std::string dump;
  // whom: write the minimizing field of replicate 0 at the largest R as an
  // indexed mesh with a per-vertex value block.
  std::string snapshot;
};

struct RunResult {
  ResultTable table;
  // Numerical caveats (uncertified saturation, censoring, iteration caps).
  std::vector<std::string> diagnostics;
};

namespace detail {

inline std::ofstream OpenOut(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write '" + path + "'");
  return f;
}

template <std::size_t D>
void RunPark(const ExperimentConfig& c, const RunOptions& o, RunResult& out) {
  const auto kind = ParseDomainKind(c.domain);
  const std::size_t reps = c.reps;
  std::vector<ParkingResult<D>> res(c.R.size() * reps);
  ParallelFor(res.size(), o.threads, [&](std::size_t i) {
    const auto dom = Domain<D>::Make(kind, c.R[i / reps]);
    const auto seed = ReplicateSeed(c.seed, i % reps);
    res[i] = c.pad < 0.0 ? ParkToSaturation(dom, c.rho0, seed)
                         : ParkCoupledInfinite(dom, c.pad, c.rho0, seed);
  });
  auto& t = out.table;
  t.columns = {{"replicate", "-"},
               {"R", "length"},
               {"count", "points"},
               {"density", "points/volume"},
               {"saturation_time", "time"}};
  for (std::size_t i = 0; i < res.size(); ++i) {
    const double R = c.R[i / reps];
    const auto n = res[i].accepted.points.size();
    t.AddRow({static_cast<std::uint64_t>(i % reps), R, static_cast<std::uint64_t>(n),
              static_cast<double>(n) / Domain<D>::Make(kind, R).Volume(), res[i].saturation_time});
    if (!res[i].certificate.certified)
      out.diagnostics.push_back("R=" + io::FormatDouble(R) + " replicate " +
                                std::to_string(i % reps) + ": " + res[i].certificate.diagnostic);
  }
  t.summary.push_back({"provenance", ToString(res.front().provenance)});
  if (!o.dump.empty()) {
    auto pts = res[(c.R.size() - 1) * reps].accepted.points;
    auto f = OpenOut(o.dump);
    if (o.dump.ends_with(".pklb")) io::WriteBinary<D>(f, pts);
    else io::WriteCsv<D>(f, pts);
  }
}

template <std::size_t D>
void RunJam(const ExperimentConfig& c, const RunOptions& o, RunResult& out) {
  JammingOptions jo;
  jo.kind = ParseDomainKind(c.domain);
  jo.rho0 = c.rho0;
  jo.pad = c.pad;
  jo.threads = o.threads;
  const auto samples = JammingSamples<D>(c.R, c.reps, c.seed, jo);
  std::size_t uncertified = 0;
  for (const auto& s : samples) uncertified += !s.certified;
  if (uncertified)
    out.diagnostics.push_back(std::to_string(uncertified) + " replicates without a saturation "
                              "certificate");
  auto& t = out.table;
  t.columns = {{"R", "length"},
               {"replicates", "count"},
               {"mean_density", "points/volume"},
               {"stderr", "points/volume"},
               {"coupled_mean_density", "points/volume"},
               {"coupled_stderr", "points/volume"}};
  for (const auto& r : SummarizeJamming(samples))
    t.AddRow({r.R, static_cast<std::uint64_t>(r.replicates), r.mean, r.stderr_, r.coupled_mean,
              r.coupled_stderr});
  t.summary.push_back(
      {"pad", c.pad < 0.0 ? DefaultPad(c.rho0) : c.pad});
}

template <std::size_t D>
void RunStab(const ExperimentConfig& c, const RunOptions& o, RunResult& out) {
  const auto tail = EstimateStabilizationTail<D>(c.rho0, c.r, c.R, c.reps, c.seed, o.threads);
  auto& t = out.table;
  t.columns = {{"t", "length"}, {"survival", "probability"}};
  for (const auto& s : tail.survival) t.AddRow({s.t, s.survival});
  t.summary.push_back({"censored", static_cast<std::uint64_t>(tail.censored)});
  t.summary.push_back({"fit_points", static_cast<std::uint64_t>(tail.fit.n)});
  t.summary.push_back({"slope", tail.fit.slope});
  t.summary.push_back({"slope_ci_lo", tail.fit.slope_ci.lo});
  t.summary.push_back({"slope_ci_hi", tail.fit.slope_ci.hi});
  t.summary.push_back({"intercept", tail.fit.intercept});
  if (tail.censored)
    out.diagnostics.push_back(std::to_string(tail.censored) + " of " + std::to_string(c.reps) +
                              " samples censored at the last grid value");
}

template <std::size_t D>
void RunUmbrella(const ExperimentConfig& c, const RunOptions& o, RunResult& out) {
  const FunctionalSpec spec{ParseFunctionalKind(c.functional), c.p, ParseSolverMode(c.mode)};
  UmbrellaOptions uo;
  uo.kind = ParseDomainKind(c.domain);
  uo.rho0 = c.rho0;
  uo.pad = c.pad;
  uo.threads = o.threads;
  const auto samples = UmbrellaSamples<D>(spec, c.R, c.reps, c.seed, uo);
  bool exact = true;
  for (const auto& s : samples) exact = exact && s.exact;
  auto& t = out.table;
  t.columns = {{"R", "length"},
               {"replicates", "count"},
               {"finite_mean", "cost/volume"},
               {"finite_stderr", "cost/volume"},
               {"coupled_mean", "cost/volume"},
               {"coupled_stderr", "cost/volume"},
               {"diff_mean", "cost/volume"},
               {"diff_stderr", "cost/volume"},
               {"median_abs_diff", "cost/volume"}};
  for (const auto& r : SummarizeUmbrella(samples))
    t.AddRow({r.R, static_cast<std::uint64_t>(r.replicates), r.finite_mean, r.finite_stderr,
              r.coupled_mean, r.coupled_stderr, r.diff_mean, r.diff_stderr, r.median_abs_diff});
  t.summary.push_back({"exact", exact});
}

template <std::size_t D>
void RunProps(const ExperimentConfig& c, const RunOptions&, RunResult& out) {
  const FunctionalSpec spec{ParseFunctionalKind(c.functional), c.p, SolverMode::kExact};
  PropertyOptions po;
  po.c_subadditive = c.c_subadditive;
  po.c_smooth = c.c_smooth;
  po.max_points = c.max_points;
  po.rho0 = c.rho0;
  po.seed = c.seed;
  const auto rep = PropertySuite<D>(spec, c.trials, po);
  auto& t = out.table;
  t.columns = {{"property", "-"},
               {"scope", "-"},
               {"checked", "-"},
               {"violations", "count"},
               {"fitted_constant", "1"},
               {"frozen_constant", "1"}};
  const auto n = static_cast<std::uint64_t>(rep.trials);
  t.AddRow({std::string("subadditive"), std::string("trials=") + std::to_string(n), true,
            static_cast<std::uint64_t>(rep.subadditive_violations), rep.fitted_c_subadditive,
            c.c_subadditive});
  t.AddRow({std::string("superadditive"), std::string("trials=") + std::to_string(n),
            rep.superadditive_checked, static_cast<std::uint64_t>(rep.superadditive_violations),
            rep.worst_superadditive_gap, 0.0});
  t.AddRow({std::string("smooth"), std::string("trials=") + std::to_string(n), true,
            static_cast<std::uint64_t>(rep.smooth_violations), rep.fitted_c_smooth, c.c_smooth});
  for (const auto& row : rep.closeness)
    t.AddRow({std::string("closeness"), "R=" + io::FormatDouble(row.R), true,
              std::uint64_t{0}, row.normalized, 0.0});
  t.summary.push_back({"closeness_sublinear", rep.closeness_sublinear});
}

inline rubber::WhomOptions WhomOptionsOf(const ExperimentConfig& c, const RunOptions& o) {
  rubber::WhomOptions w;
  w.variant = rubber::ParseVariant(c.variant);
  w.model = ModelOf(c);
  w.rho0 = c.rho0;
  w.pad = c.pad;
  w.threads = o.threads;
  w.solve.minimize.tol = c.tol;
  w.solve.minimize.max_iters = c.max_iters;
  w.solve.starts = c.starts;
  return w;
}

inline void AddWhomColumns(ResultTable& t, bool with_theta) {
  t.columns.clear();
  if (with_theta) t.columns.push_back({"theta", "radian"});
  else t.columns.push_back({"R", "length"});
  for (Column col : std::vector<Column>{{"replicates", "count"},
                                        {"mean_W", "energy/volume"},
                                        {"stderr", "energy/volume"},
                                        {"ci_lo", "energy/volume"},
                                        {"ci_hi", "energy/volume"},
                                        {"affine_mean_W", "energy/volume"},
                                        {"unconverged", "count"},
                                        {"multimodal", "count"}})
    t.columns.push_back(col);
}

inline std::vector<Cell> WhomCells(double key, const rubber::WhomRow& r) {
  return {key,
          static_cast<std::uint64_t>(r.replicates),
          r.mean,
          r.stderr_,
          r.ci.lo,
          r.ci.hi,
          r.affine_mean,
          static_cast<std::uint64_t>(r.unconverged),
          static_cast<std::uint64_t>(r.multimodal)};
}

inline void NoteUnconverged(const std::vector<rubber::WhomSample>& s, RunResult& out) {
  std::size_t bad = 0;
  for (const auto& x : s) bad += !x.converged;
  if (bad)
    out.diagnostics.push_back(std::to_string(bad) + " cell problems stopped before the gradient "
                              "tolerance");
}

inline void RunWhom(const ExperimentConfig& c, const RunOptions& o, RunResult& out) {
  const auto lambda = rubber::ParseMat2(c.lambda);
  const auto wo = WhomOptionsOf(c, o);
  const auto samples = rubber::EstimateWhom(lambda, c.R, c.reps, c.seed, wo);
  AddWhomColumns(out.table, false);
  for (const auto& r : rubber::SummarizeWhom(samples))
    out.table.AddRow(WhomCells(r.R, r));
  out.table.summary.push_back({"growth_constant", wo.model.growth_constant()});
  NoteUnconverged(samples, out);
  if (!o.snapshot.empty()) {
    rubber::CellSolution sol;
    Triangulation tri;
    rubber::WhomReplicate(lambda, c.R.back(), 0, c.seed, wo, &sol, &tri);
    std::vector<std::vector<double>> values;
    for (const auto& u : sol.field.u) values.push_back({u[0], u[1]});
    auto f = OpenOut(o.snapshot);
    io::WriteMesh(f, tri, values);
  }
}

inline void RunIsotropy(const ExperimentConfig& c, const RunOptions& o, RunResult& out) {
  const auto lambda = rubber::ParseMat2(c.lambda);
  const auto rep = rubber::IsotropyTest(lambda, c.theta, c.R.front(), c.reps, c.seed,
                                        WhomOptionsOf(c, o));
  AddWhomColumns(out.table, true);
  for (const auto& r : rep.rows) out.table.AddRow(WhomCells(r.theta, r.estimate));
  out.table.summary.push_back({"R", c.R.front()});
  out.table.summary.push_back({"overlap", rep.overlap});
  NoteUnconverged(rep.samples, out);
}

template <std::size_t D>
void RunDim(const ExperimentConfig& c, const RunOptions& o, RunResult& out) {
  if (c.kind == "park") RunPark<D>(c, o, out);
  else if (c.kind == "jam") RunJam<D>(c, o, out);
  else if (c.kind == "stab") RunStab<D>(c, o, out);
  else if (c.kind == "umbrella") RunUmbrella<D>(c, o, out);
  else if (c.kind == "props") RunProps<D>(c, o, out);
  else if constexpr (D == 2) {
    if (c.kind == "whom") RunWhom(c, o, out);
    else if (c.kind == "isotropy") RunIsotropy(c, o, out);
    else throw Error("unknown experiment kind '" + c.kind + "'");
  } else {
    throw Error(c.kind + " requires dim = 2");
  }
}

}  // namespace detail

/// Resolves defaults, validates, and runs. Throws ValidationError before
/// any computation when the config is not runnable.
inline RunResult Run(ExperimentConfig c, const RunOptions& o = {}) {
  ResolveDefaults(c);
  if (auto v = Validate(c); !v.empty()) throw ValidationError(std::move(v));
  RunResult out;
  out.table.config = c;
  switch (c.dim) {
    case 1: detail::RunDim<1>(c, o, out); break;
    case 2: detail::RunDim<2>(c, o, out); break;
    default: detail::RunDim<3>(c, o, out); break;
  }
  return out;
}

}  // namespace parklab::lab

#endif  // PARKLAB_LAB_RUNNER_HPP_
