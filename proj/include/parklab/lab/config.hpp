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

// Experiment configuration: a flat key=value file with typed values and
// comma-separated lists. Rendering is canonical (fixed key order, doubles at
// 17 significant digits), so parse(render(c)) == c.

#ifndef PARKLAB_LAB_CONFIG_HPP_
#define PARKLAB_LAB_CONFIG_HPP_

#include <cstdint>
#include <functional>
#include <istream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "parklab/functionals/functional.hpp"
#include "parklab/geom/domain.hpp"
#include "parklab/geom/point_io.hpp"
#include "parklab/rubber/cell_problem.hpp"
#include "parklab/rubber/model.hpp"

namespace parklab::lab {

inline const std::vector<std::string>& ExperimentKinds() {
  static const std::vector<std::string> k = {"park", "jam",  "stab",    "umbrella",
                                             "whom", "isotropy", "props"};
  return k;
}

struct ExperimentConfig {
  std::string kind = "park";
  int dim = 2;
  std::string domain = "box";
  double rho0 = 0.5;
  std::vector<double> R;  // empty: per-kind default
  // 0 selects the per-kind default.
  std::size_t reps = 0;
  std::uint64_t seed = 1;
  // Whole-space padding; negative means 20 (2 rho0). For park, negative
  // selects the finite-box measure instead.
  double pad = -1.0;
  // Functionals.
  std::string functional = "mst";
  double p = 1.0;
  std::string mode = "heuristic";
  // Stabilization window half-side.
  double r = 2.0;
  // Rubber.
  std::string lambda = "1.2,0,0,0.9";
  std::string variant = "infinite";
  std::string model = "p2";
  double kappa = -1.0;  // negative: the model's own
  double anisotropy = 0.0;
  std::vector<double> theta = {0.0};
  double tol = 1e-8;
  int max_iters = 50000;
  int starts = 0;
  // Property suite.
  std::size_t trials = 1000;
  std::size_t max_points = 16;
  double c_subadditive = 3.0;
  double c_smooth = 3.0;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

namespace detail {

inline std::string Trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<double> ParseList(const std::string& s) {
  std::vector<double> v;
  if (Trim(s).empty()) return v;
  std::stringstream ss(s);
  for (std::string tok; std::getline(ss, tok, ',');) v.push_back(io::ParseDouble(tok));
  return v;
}

inline std::string FormatList(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + io::FormatDouble(v[i]);
  return s;
}

template <class T>
T ParseUnsigned(const std::string& key, const std::string& s) {
  const std::string t = Trim(s);
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    if (!t.empty() && t[0] == '-') throw std::invalid_argument("negative");
    v = std::stoull(t, &pos, 10);
  } catch (const std::exception&) {
    pos = std::string::npos;
  }
  if (pos != t.size()) throw Error(key + ": expected a nonnegative integer, got '" + s + "'");
  return static_cast<T>(v);
}

inline int ParseInt(const std::string& key, const std::string& s) {
  const std::string t = Trim(s);
  std::size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(t, &pos, 10);
  } catch (const std::exception&) {
    pos = std::string::npos;
  }
  if (pos != t.size()) throw Error(key + ": expected an integer, got '" + s + "'");
  return v;
}

inline double ParseNumber(const std::string& key, const std::string& s) {
  try {
    return io::ParseDouble(s);
  } catch (const Error&) {
    throw Error(key + ": expected a number, got '" + s + "'");
  }
}

struct Field {
  std::function<void(ExperimentConfig&, const std::string&)> set;
  std::function<std::string(const ExperimentConfig&)> get;
};

// Canonical key order.
inline const std::vector<std::pair<std::string, Field>>& Fields() {
  using C = ExperimentConfig;
  using S = std::string;
  auto num = [](double C::*m) {
    return Field{[m](C& c, const S& v) { c.*m = ParseNumber("", v); },
                 [m](const C& c) { return io::FormatDouble(c.*m); }};
  };
  auto str = [](S C::*m) {
    return Field{[m](C& c, const S& v) { c.*m = Trim(v); }, [m](const C& c) { return c.*m; }};
  };
  auto size = [](std::size_t C::*m) {
    return Field{[m](C& c, const S& v) { c.*m = ParseUnsigned<std::size_t>("", v); },
                 [m](const C& c) { return std::to_string(c.*m); }};
  };
  auto integer = [](int C::*m) {
    return Field{[m](C& c, const S& v) { c.*m = ParseInt("", v); },
                 [m](const C& c) { return std::to_string(c.*m); }};
  };
  auto list = [](std::vector<double> C::*m) {
    return Field{[m](C& c, const S& v) { c.*m = ParseList(v); },
                 [m](const C& c) { return FormatList(c.*m); }};
  };
  static const std::vector<std::pair<S, Field>> f = {
      {"kind", str(&C::kind)},
      {"dim", integer(&C::dim)},
      {"domain", str(&C::domain)},
      {"rho0", num(&C::rho0)},
      {"R", list(&C::R)},
      {"reps", size(&C::reps)},
      {"seed", Field{[](C& c, const S& v) { c.seed = ParseUnsigned<std::uint64_t>("", v); },
                     [](const C& c) { return std::to_string(c.seed); }}},
      {"pad", num(&C::pad)},
      {"functional", str(&C::functional)},
      {"p", num(&C::p)},
      {"mode", str(&C::mode)},
      {"r", num(&C::r)},
      {"lambda", Field{[](C& c, const S& v) { c.lambda = rubber::FormatMat2(rubber::ParseMat2(v)); },
                       [](const C& c) { return c.lambda; }}},
      {"variant", str(&C::variant)},
      {"model", str(&C::model)},
      {"kappa", num(&C::kappa)},
      {"anisotropy", num(&C::anisotropy)},
      {"theta", list(&C::theta)},
      {"tol", num(&C::tol)},
      {"max_iters", integer(&C::max_iters)},
      {"starts", integer(&C::starts)},
      {"trials", size(&C::trials)},
      {"max_points", size(&C::max_points)},
      {"c_subadditive", num(&C::c_subadditive)},
      {"c_smooth", num(&C::c_smooth)},
  };
  return f;
}

}  // namespace detail

inline std::vector<std::string> ConfigKeys() {
  std::vector<std::string> k;
  for (const auto& [name, f] : detail::Fields()) k.push_back(name);
  return k;
}

/// Sets one key from its text form. Errors name the key.
inline void SetValue(ExperimentConfig& c, const std::string& key, const std::string& value) {
  for (const auto& [name, f] : detail::Fields()) {
    if (name != key) continue;
    try {
      f.set(c, value);
    } catch (const Error& e) {
      std::string msg = e.what();
      if (msg.rfind(": ", 0) == 0) msg = msg.substr(2);
      throw Error(key + ": " + msg);
    }
    return;
  }
  throw Error("unknown config key '" + key + "'");
}

inline std::string GetValue(const ExperimentConfig& c, const std::string& key) {
  for (const auto& [name, f] : detail::Fields())
    if (name == key) return f.get(c);
  throw Error("unknown config key '" + key + "'");
}

/// Canonical "key=value" lines.
inline std::string RenderConfig(const ExperimentConfig& c) {
  std::string s;
  for (const auto& [name, f] : detail::Fields()) s += name + "=" + f.get(c) + "\n";
  return s;
}

/// Applies every "key = value" line of a config file; '#' starts a comment.
inline void ApplyConfig(ExperimentConfig& c, std::istream& is) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (const auto h = line.find('#'); h != std::string::npos) line.resize(h);
    line = detail::Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error("config line " + std::to_string(lineno) + ": expected key=value");
    SetValue(c, detail::Trim(line.substr(0, eq)), detail::Trim(line.substr(eq + 1)));
  }
}

inline ExperimentConfig ParseConfig(const std::string& text) {
  ExperimentConfig c;
  std::istringstream is(text);
  ApplyConfig(c, is);
  return c;
}

/// Fills per-kind defaults (R list, replicate counts) left unset.
inline void ResolveDefaults(ExperimentConfig& c) {
  if (c.R.empty()) {
    if (c.kind == "jam") c.R = {20, 40, 80};
    else if (c.kind == "stab")
      for (int k = 0; k <= 16; ++k) c.R.push_back(2.0 + 0.5 * k);
    else if (c.kind == "umbrella") c.R = {8, 16, 32, 64};
    else if (c.kind == "whom") c.R = {8, 16, 32};
    else c.R = {16};
  }
  if (c.reps == 0) {
    if (c.kind == "jam") c.reps = 50;
    else if (c.kind == "stab") c.reps = 200;
    else if (c.kind == "umbrella" || c.kind == "whom" || c.kind == "isotropy") c.reps = 20;
    else c.reps = 1;
  }
  if (c.kind == "props") c.mode = "exact";
}

inline rubber::EnergyModel ModelOf(const ExperimentConfig& c) {
  auto m = rubber::EnergyModel::Parse(c.model);
  if (c.kappa >= 0.0) m.kappa = c.kappa;
  m.anisotropy = c.anisotropy;
  return m;
}

/// Every constraint a downstream module would reject, as messages naming
/// the offending field. Empty when the config is runnable.
inline std::vector<std::string> Validate(const ExperimentConfig& c) {
  std::vector<std::string> v;
  auto check = [&](bool ok, const std::string& msg) {
    if (!ok) v.push_back(msg);
  };
  bool known = false;
  for (const auto& k : ExperimentKinds()) known = known || k == c.kind;
  check(known, "kind: unknown experiment kind '" + c.kind + "'");
  check(c.dim >= 1 && c.dim <= 3, "dim: must be 1, 2 or 3");
  try {
    const auto dk = ParseDomainKind(c.domain);
    check(dk != DomainKind::kLShape || c.dim == 2, "domain: l-shape requires dim = 2");
  } catch (const Error& e) {
    v.push_back(std::string("domain: ") + e.what());
  }
  check(c.rho0 > 0.0, "rho0: must be positive");
  check(!c.R.empty(), "R: list is empty");
  for (std::size_t i = 0; i < c.R.size(); ++i) {
    check(c.R[i] > 0.0, "R: entries must be positive");
    if (i > 0 && !(c.R[i] > c.R[i - 1])) {
      v.push_back("R: list must be strictly increasing");
      break;
    }
  }
  check(c.reps >= 1, "reps: must be at least 1");
  check(c.pad >= 0.0 || c.pad == -1.0, "pad: must be nonnegative (or -1 for the default)");

  if (c.kind == "umbrella" || c.kind == "props") {
    try {
      const auto fk = ParseFunctionalKind(c.functional);
      ParseSolverMode(c.mode);
      if (c.kind == "umbrella") {
        check(c.p >= 1.0 && c.p < c.dim, "p: umbrella theorem requires p < d (got p = " +
                                             io::FormatDouble(c.p) + ", d = " +
                                             std::to_string(c.dim) + ") and p >= 1");
        check(!IsBoundaryKind(fk), "functional: umbrella runs the free functional, not its "
                                   "boundary variant");
      }
    } catch (const Error& e) {
      v.push_back(std::string("functional: ") + e.what());
    }
    check(c.p >= 0.0, "p: must be nonnegative");
  }
  if (c.kind == "props") {
    check(c.trials >= 1, "trials: must be at least 1");
    check(c.max_points >= 2, "max_points: must be at least 2");
    check(c.c_subadditive >= 0.0 && c.c_smooth >= 0.0, "c_subadditive/c_smooth: must be nonnegative");
  }
  if (c.kind == "stab") {
    check(c.r > 0.0, "r: must be positive");
    check(c.R.empty() || c.r <= c.R.front(), "r: window must fit in the first grid box");
    check(c.R.size() >= 3, "R: stabilization grid needs at least 3 values");
    check(c.domain == "box", "domain: stabilization uses boxes");
  }
  if (c.kind == "whom" || c.kind == "isotropy") {
    check(c.dim == 2, "dim: rubber experiments require dim = 2");
    check(c.domain == "box", "domain: rubber experiments use boxes");
    try {
      rubber::ParseMat2(c.lambda);
    } catch (const Error& e) {
      v.push_back(std::string("lambda: ") + e.what());
    }
    try {
      rubber::ParseVariant(c.variant);
    } catch (const Error& e) {
      v.push_back(std::string("variant: ") + e.what());
    }
    try {
      const auto m = ModelOf(c);
      m.Validate();
      if (c.kind == "isotropy") check(m.isotropic(), "model: isotropy test requires an isotropic model");
    } catch (const Error& e) {
      v.push_back(std::string("model: ") + e.what());
    }
    const double rho2 = 2.0 * c.rho0;
    for (double R : c.R)
      if (!(R > 4.0 * rho2)) {
        v.push_back("R: R = " + io::FormatDouble(R) + " leaves the pinning annulus empty (need R > " +
                    io::FormatDouble(4.0 * rho2) + ")");
        break;
      }
    check(c.tol > 0.0, "tol: must be positive");
    check(c.max_iters >= 1, "max_iters: must be at least 1");
    check(c.starts >= 0, "starts: must be nonnegative");
    if (c.kind == "isotropy") {
      check(!c.theta.empty(), "theta: list is empty");
      check(c.R.size() == 1, "R: isotropy takes a single R");
    }
  }
  return v;
}

}  // namespace parklab::lab

#endif  // PARKLAB_LAB_CONFIG_HPP_
