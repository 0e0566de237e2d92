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

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "parklab/lab/config.hpp"
#include "parklab/lab/runner.hpp"
#include "parklab/lab/table.hpp"

namespace parklab::lab {
namespace {

namespace fs = std::filesystem;

bool Contains(const std::vector<std::string>& v, const std::string& needle) {
  for (const auto& s : v)
    if (s.find(needle) != std::string::npos) return true;
  return false;
}

ExperimentConfig Small(const std::string& kind) {
  ExperimentConfig c;
  c.kind = kind;
  c.reps = 2;
  c.pad = 3.0;
  if (kind == "park") c.R = {4.0};
  if (kind == "jam") {
    c.dim = 1;
    c.R = {10.0, 20.0};
  }
  if (kind == "stab") {
    c.r = 1.0;
    c.R = {1.5, 2.0, 3.0};
    c.reps = 5;
  }
  if (kind == "umbrella") c.R = {3.0, 4.0};
  if (kind == "props") {
    c.trials = 4;
    c.max_points = 8;
  }
  if (kind == "whom") c.R = {6.0};
  if (kind == "isotropy") {
    c.R = {6.0};
    c.theta = {0.0, 0.5};
  }
  return c;
}

std::vector<std::string> ColumnNames(const ResultTable& t) {
  std::vector<std::string> v;
  for (const auto& c : t.columns) v.push_back(c.name);
  return v;
}

TEST(Config, RenderParseRoundTrip) {
  ExperimentConfig c = Small("whom");
  c.lambda = "1,0.5,-0.25,2";
  c.theta = {0.0, 0.125, 1.5};
  c.seed = 123456789012345ULL;
  const auto back = ParseConfig(RenderConfig(c));
  EXPECT_EQ(back, c);
  EXPECT_EQ(RenderConfig(back), RenderConfig(c));
  for (const auto& k : ConfigKeys()) EXPECT_NE(RenderConfig(c).find(k + "="), std::string::npos);
}

TEST(Config, ParseErrors) {
  EXPECT_NO_THROW(ParseConfig("# comment\n\nkind = jam\n  R=1,2,3\n"));
  EXPECT_EQ(ParseConfig("R=1, 2 ,3").R, (std::vector<double>{1, 2, 3}));
  try {
    ParseConfig("kind=jam\nbogus=1\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("unknown config key 'bogus'"), std::string::npos);
  }
  EXPECT_THROW(ParseConfig("kind jam\n"), Error);
  EXPECT_THROW(ParseConfig("reps=-1\n"), Error);
  EXPECT_THROW(ParseConfig("rho0=abc\n"), Error);
}

TEST(Config, ValidationMessages) {
  ExperimentConfig c = Small("umbrella");
  c.p = 2.0;
  EXPECT_TRUE(Contains(Validate(c), "requires p < d"));
  c = Small("park");
  c.rho0 = -1.0;
  EXPECT_TRUE(Contains(Validate(c), "rho0: must be positive"));
  c = Small("jam");
  c.R = {20.0, 10.0};
  EXPECT_TRUE(Contains(Validate(c), "R: list must be strictly increasing"));
  c = Small("whom");
  c.R = {3.0};
  EXPECT_TRUE(Contains(Validate(c), "pinning annulus empty"));
  c = Small("isotropy");
  c.anisotropy = 0.3;
  EXPECT_FALSE(Validate(c).empty());
  c = Small("park");
  c.dim = 3;
  c.domain = "l-shape";
  EXPECT_TRUE(Contains(Validate(c), "l-shape requires dim = 2"));
  c.kind = "nope";
  EXPECT_TRUE(Contains(Validate(c), "unknown experiment kind"));
  for (const auto& k : ExperimentKinds()) {
    auto s = Small(k);
    ResolveDefaults(s);
    EXPECT_TRUE(Validate(s).empty()) << k;
  }
}

TEST(Config, DefaultsPerKind) {
  for (const auto& k : ExperimentKinds()) {
    ExperimentConfig c;
    c.kind = k;
    ResolveDefaults(c);
    EXPECT_FALSE(c.R.empty()) << k;
    EXPECT_GE(c.reps, 1U) << k;
    EXPECT_TRUE(Validate(c).empty()) << k;
  }
}

TEST(Config, ExplicitRepsSurviveDefaults) {
  ExperimentConfig c;
  c.kind = "stab";
  ResolveDefaults(c);
  EXPECT_EQ(c.reps, 200U);
  c.reps = 7;
  ResolveDefaults(c);
  EXPECT_EQ(c.reps, 7U);
}

TEST(Table, CsvQuoting) {
  EXPECT_EQ(CsvField("plain"), "plain");
  EXPECT_EQ(CsvField("a,b"), "\"a,b\"");
  EXPECT_EQ(CsvField("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(CsvField("two\nlines"), "\"two\nlines\"");
}

TEST(Table, FnvKnownVectors) {
  // Published FNV-1a 64 test vectors.
  EXPECT_EQ(Fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(Fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(Fnv1a64("foobar"), 0x85944171f73967e8ULL);
}

TEST(Table, RowWidthChecked) {
  ResultTable t;
  t.columns = {{"a", "1"}, {"b", "1"}};
  EXPECT_THROW(t.AddRow({1.0}), Error);
  EXPECT_NO_THROW(t.AddRow({1.0, std::string("x,y")}));
}

class Kinds : public ::testing::TestWithParam<std::string> {};

TEST_P(Kinds, SchemaHashAndFormats) {
  static const std::map<std::string, std::vector<std::string>> kSchema = {
      {"park", {"replicate", "R", "count", "density", "saturation_time"}},
      {"jam", {"R", "replicates", "mean_density", "stderr", "coupled_mean_density", "coupled_stderr"}},
      {"stab", {"t", "survival"}},
      {"umbrella", {"R", "replicates", "finite_mean", "finite_stderr", "coupled_mean",
                    "coupled_stderr", "diff_mean", "diff_stderr", "median_abs_diff"}},
      {"props", {"property", "scope", "checked", "violations", "fitted_constant", "frozen_constant"}},
      {"whom", {"R", "replicates", "mean_W", "stderr", "ci_lo", "ci_hi", "affine_mean_W",
                "unconverged", "multimodal"}},
      {"isotropy", {"theta", "replicates", "mean_W", "stderr", "ci_lo", "ci_hi", "affine_mean_W",
                    "unconverged", "multimodal"}}};
  const auto kind = GetParam();
  const auto res = lab::Run(Small(kind), {2, "", ""});
  EXPECT_EQ(ColumnNames(res.table), kSchema.at(kind));
  EXPECT_FALSE(res.table.rows.empty());
  for (const auto& c : res.table.columns) EXPECT_FALSE(c.unit.empty());

  // Same config, other thread count: same content.
  const auto again = lab::Run(Small(kind), {1, "", ""});
  EXPECT_EQ(ContentHash(again.table), ContentHash(res.table));
  auto other = Small(kind);
  other.seed = 99;
  EXPECT_NE(ContentHash(lab::Run(other, {1, "", ""}).table), ContentHash(res.table));

  // CSV: the hash covers every line except the hash and timestamp lines.
  std::ostringstream csv;
  WriteCsv(csv, res.table, true);
  std::istringstream in(csv.str());
  std::uint64_t h = 0xcbf29ce484222325ULL;
  std::string line, stated;
  bool saw_ts = false;
  while (std::getline(in, line)) {
    if (line.starts_with("# hash fnv1a64=")) {
      stated = line.substr(15);
      continue;
    }
    if (line.starts_with("# timestamp ")) {
      saw_ts = true;
      continue;
    }
    for (unsigned char ch : line + "\n") {
      h ^= ch;
      h *= 0x100000001b3ULL;
    }
  }
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
  EXPECT_EQ(stated, hex);
  EXPECT_TRUE(saw_ts);
  EXPECT_NE(csv.str().find("# config kind=" + kind + "\n"), std::string::npos);

  // JSONL parses back to the same header and rows.
  std::ostringstream jl;
  WriteJsonl(jl, res.table, false);
  std::istringstream jin(jl.str());
  std::getline(jin, line);
  const auto head = nlohmann::json::parse(line).at("header");
  EXPECT_EQ(head.at("hash").get<std::string>(), std::string("fnv1a64=") + hex);
  EXPECT_EQ(head.at("config").at("kind").get<std::string>(), kind);
  EXPECT_FALSE(head.contains("timestamp"));
  std::size_t rows = 0;
  while (std::getline(jin, line)) {
    const auto row = nlohmann::json::parse(line);
    ASSERT_EQ(row.size(), res.table.columns.size());
    EXPECT_TRUE(row.contains(res.table.columns.front().name));
    ++rows;
  }
  EXPECT_EQ(rows, res.table.rows.size());
}

INSTANTIATE_TEST_SUITE_P(Lab, Kinds,
                         ::testing::Values("park", "jam", "stab", "umbrella", "props", "whom",
                                           "isotropy"));

#ifdef PARKLAB_CLI

struct Cli {
  int code = -1;
  std::string out, err;
};

Cli RunCli(const std::string& args) {
  static int counter = 0;
  const fs::path dir = fs::temp_directory_path() / ("parklab_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const auto o = dir / ("out" + std::to_string(counter));
  const auto e = dir / ("err" + std::to_string(counter++));
  const std::string cmd = std::string(PARKLAB_CLI) + " " + args + " > " + o.string() + " 2> " + e.string();
  const int st = std::system(cmd.c_str());
  Cli r;
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  std::ifstream fo(o), fe(e);
  std::stringstream so, se;
  so << fo.rdbuf();
  se << fe.rdbuf();
  r.out = so.str();
  r.err = se.str();
  return r;
}

TEST(Cli, ExitCodes) {
  const auto ok = RunCli("--no-timestamp park --R 4 --reps 1");
  EXPECT_EQ(ok.code, 0) << ok.err;
  EXPECT_NE(ok.out.find("# config kind=park"), std::string::npos);
  EXPECT_EQ(ok.out.find("# timestamp"), std::string::npos);

  const auto bad_value = RunCli("park --rho0 -1");
  EXPECT_EQ(bad_value.code, 2);
  EXPECT_NE(bad_value.err.find("rho0: must be positive"), std::string::npos);
  EXPECT_EQ(RunCli("umbrella --p 2").code, 2);
  EXPECT_EQ(RunCli("park --bogus 1").code, 2);
  EXPECT_EQ(RunCli("park --rho0 zz").code, 2);
  EXPECT_EQ(RunCli("--config /nonexistent/file park").code, 2);
  EXPECT_EQ(RunCli("--out /nonexistent/dir/x.csv park --R 4").code, 1);
  // A censored stabilization run reports a diagnostic.
  const auto diag = RunCli("stab --R 1,1.5,2 --r 1 --reps 4");
  EXPECT_EQ(diag.code, 3) << diag.err;
  EXPECT_NE(diag.err.find("diagnostic"), std::string::npos);
}

TEST(Cli, ConfigFileAndFlagsCompose) {
  const fs::path cfg = fs::temp_directory_path() / ("parklab_cfg_" + std::to_string(::getpid()));
  {
    std::ofstream f(cfg);
    f << "# test\nR=4\nreps=2\nrho0=0.25\n";
  }
  const auto a = RunCli("--no-timestamp --config " + cfg.string() + " park --reps 1");
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_NE(a.out.find("# config reps=1\n"), std::string::npos);
  EXPECT_NE(a.out.find("# config rho0=0.25\n"), std::string::npos);
  const auto b = RunCli("--no-timestamp park --R 4 --reps 1 --rho0 0.25");
  EXPECT_EQ(a.out, b.out);
  const auto j = RunCli("--no-timestamp --format jsonl park --R 4 --reps 1 --rho0 0.25");
  ASSERT_EQ(j.code, 0);
  const auto head = nlohmann::json::parse(j.out.substr(0, j.out.find('\n'))).at("header");
  EXPECT_NE(a.out.find("# hash " + head.at("hash").get<std::string>()), std::string::npos);
  fs::remove(cfg);
}

TEST(Cli, DumpAndSnapshot) {
  const fs::path dir = fs::temp_directory_path() / ("parklab_dump_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const auto pk = dir / "pts.pklb";
  ASSERT_EQ(RunCli("park --R 4 --reps 1 --dump " + pk.string()).code, 0);
  std::ifstream f(pk, std::ios::binary);
  EXPECT_EQ(io::ReadBinary<2>(f).size() > 10, true);
  const auto mesh = dir / "field.mesh";
  const auto w = RunCli("whom --R 6 --reps 1 --pad 3 --snapshot " + mesh.string());
  ASSERT_EQ(w.code, 0) << w.err;
  std::ifstream m(mesh);
  const auto read = io::ReadMesh(m);
  EXPECT_EQ(read.values.size(), read.tri.points.size());
  fs::remove_all(dir);
}

#endif

}  // namespace
}  // namespace parklab::lab
