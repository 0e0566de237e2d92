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

// parklab command-line front end.
//
// Exit codes: 0 success, 1 runtime failure, 2 invalid configuration,
// 3 finished with numerical diagnostics.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "parklab/lab/runner.hpp"

namespace {

using parklab::lab::ExperimentConfig;

// Config keys exposed as flags on each subcommand.
const std::map<std::string, std::vector<std::string>>& KeysByKind() {
  static const std::map<std::string, std::vector<std::string>> m = {
      {"park", {"dim", "domain", "rho0", "R", "reps", "pad"}},
      {"jam", {"dim", "domain", "rho0", "R", "reps", "pad"}},
      {"stab", {"dim", "rho0", "R", "reps", "r"}},
      {"umbrella", {"functional", "p", "mode", "dim", "domain", "rho0", "R", "reps", "pad"}},
      {"whom",
       {"lambda", "R", "reps", "variant", "model", "kappa", "anisotropy", "rho0", "pad", "tol",
        "max_iters", "starts"}},
      {"isotropy",
       {"lambda", "theta", "R", "reps", "variant", "model", "kappa", "rho0", "pad", "tol",
        "max_iters", "starts"}},
      {"props",
       {"functional", "p", "dim", "rho0", "trials", "max_points", "c_subadditive", "c_smooth"}},
  };
  return m;
}

const std::map<std::string, std::string>& Descriptions() {
  static const std::map<std::string, std::string> m = {
      {"park", "Park to saturation and report counts per replicate"},
      {"jam", "Jamming densities of finite boxes and the whole-space approximation"},
      {"stab", "Tail of the stabilization radius"},
      {"umbrella", "Finite-box vs whole-space functional per volume, paired seeds"},
      {"whom", "Homogenized energy density from cell problems"},
      {"isotropy", "Homogenized energy density under rotations of the boundary matrix"},
      {"props", "Subadditivity, superadditivity, smoothness and closeness checks"},
  };
  return m;
}

std::string FlagName(std::string key) {
  for (char& ch : key)
    if (ch == '_') ch = '-';
  return "--" + key;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"parklab: random parking, subadditive functionals and discrete elasticity"};
  app.require_subcommand(1);

  std::optional<std::string> seed, config_file;
  unsigned threads = 0;
  std::string out = "-", format = "csv", dump, snapshot;
  bool no_timestamp = false;
  app.add_option("--seed", seed, "Master seed (64-bit)");
  app.add_option("--threads", threads, "Worker threads (0 = all cores)");
  app.add_option("--out", out, "Output path, '-' for stdout");
  app.add_option("--config", config_file, "key=value config file; flags override it");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "jsonl"}));
  app.add_flag("--no-timestamp", no_timestamp, "Omit the timestamp header line");

  std::map<std::string, std::map<std::string, std::optional<std::string>>> values;
  std::map<std::string, CLI::App*> subs;
  for (const auto& [kind, keys] : KeysByKind()) {
    auto* sub = app.add_subcommand(kind, Descriptions().at(kind));
    sub->fallthrough();
    for (const auto& k : keys) sub->add_option(FlagName(k), values[kind][k]);
    if (kind == "park") sub->add_option("--dump", dump, "Write replicate 0 at the largest R");
    if (kind == "whom")
      sub->add_option("--snapshot", snapshot, "Write the minimizing field as an indexed mesh");
    subs[kind] = sub;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  std::string kind;
  for (const auto& [k, sub] : subs)
    if (sub->parsed()) kind = k;

  ExperimentConfig cfg;
  try {
    if (config_file) {
      std::ifstream f(*config_file);
      if (!f) throw parklab::Error("cannot read config file '" + *config_file + "'");
      parklab::lab::ApplyConfig(cfg, f);
    }
    cfg.kind = kind;
    for (const auto& [k, v] : values[kind])
      if (v) parklab::lab::SetValue(cfg, k, *v);
    if (seed) parklab::lab::SetValue(cfg, "seed", *seed);
  } catch (const parklab::Error& e) {
    std::cerr << "parklab: " << e.what() << '\n';
    return 2;
  }

  std::ofstream file;
  if (out != "-") {
    file.open(out, std::ios::binary);
    if (!file) {
      std::cerr << "parklab: cannot write '" << out << "'\n";
      return 1;
    }
  }
  std::ostream& os = out == "-" ? std::cout : file;

  parklab::lab::RunResult res;
  try {
    res = parklab::lab::Run(cfg, {threads, dump, snapshot});
  } catch (const parklab::lab::ValidationError& e) {
    for (const auto& v : e.violations()) std::cerr << "parklab: invalid config: " << v << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "parklab: " << e.what() << '\n';
    return 1;
  }
  if (format == "jsonl") parklab::lab::WriteJsonl(os, res.table, !no_timestamp);
  else parklab::lab::WriteCsv(os, res.table, !no_timestamp);
  os.flush();
  if (!os) {
    std::cerr << "parklab: write failed\n";
    return 1;
  }
  for (const auto& d : res.diagnostics) std::cerr << "parklab: diagnostic: " << d << '\n';
  return res.diagnostics.empty() ? 0 : 3;
}
