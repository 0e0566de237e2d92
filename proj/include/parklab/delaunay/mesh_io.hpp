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

// Indexed-mesh text format.
//
//   parklab-mesh 1
//   vertices <n>
//   <i> <x> <y>            (n lines)
//   simplices <m>
//   <i> <j> <k>            (m lines)
//   edges <e>
//   <i> <j>                (e lines)
//   values <n> <c>         (optional; c values per vertex)
//   <i> <v1> ... <vc>      (n lines)
//
// Coordinates and values use 17 significant digits, so reading back gives
// the same doubles.

#ifndef PARKLAB_DELAUNAY_MESH_IO_HPP_
#define PARKLAB_DELAUNAY_MESH_IO_HPP_

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "parklab/delaunay/triangulation.hpp"
#include "parklab/geom/point_io.hpp"

namespace parklab::io {

struct Mesh {
  Triangulation tri;
  // values[i] holds the per-vertex values; empty when absent.
  std::vector<std::vector<double>> values;
};

inline void WriteMesh(std::ostream& os, const Triangulation& t,
                      const std::vector<std::vector<double>>& values = {}) {
  os << "parklab-mesh 1\n";
  os << "vertices " << t.points.size() << '\n';
  for (std::size_t i = 0; i < t.points.size(); ++i)
    os << i << ' ' << FormatDouble(t.points[i][0]) << ' ' << FormatDouble(t.points[i][1]) << '\n';
  os << "simplices " << t.simplices.size() << '\n';
  for (const auto& s : t.simplices) os << s[0] << ' ' << s[1] << ' ' << s[2] << '\n';
  os << "edges " << t.edges.size() << '\n';
  for (const auto& e : t.edges) os << e.first << ' ' << e.second << '\n';
  if (!values.empty()) {
    if (values.size() != t.points.size()) throw Error("mesh values: one row per vertex required");
    const std::size_t c = values.front().size();
    os << "values " << values.size() << ' ' << c << '\n';
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (values[i].size() != c) throw Error("mesh values: ragged rows");
      os << i;
      for (double v : values[i]) os << ' ' << FormatDouble(v);
      os << '\n';
    }
  }
}

namespace detail {

inline std::istringstream NextLine(std::istream& is, const char* what) {
  std::string line;
  while (std::getline(is, line))
    if (!line.empty() && line[0] != '#') return std::istringstream(line);
  throw Error(std::string("mesh: unexpected end of input reading ") + what);
}

inline std::size_t Header(std::istream& is, const std::string& name) {
  auto ls = NextLine(is, name.c_str());
  std::string tag;
  std::size_t n = 0;
  if (!(ls >> tag >> n) || tag != name) throw Error("mesh: expected '" + name + "' block");
  return n;
}

inline void CheckIndex(std::size_t got, std::size_t want) {
  if (got != want) throw Error("mesh: rows out of order at " + std::to_string(want));
}

}  // namespace detail

inline Mesh ReadMesh(std::istream& is) {
  Mesh m;
  {
    auto ls = detail::NextLine(is, "magic");
    std::string magic;
    int version = 0;
    if (!(ls >> magic >> version) || magic != "parklab-mesh" || version != 1)
      throw Error("mesh: not a parklab-mesh version 1 file");
  }
  const std::size_t n = detail::Header(is, "vertices");
  m.tri.points.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto ls = detail::NextLine(is, "vertex");
    std::size_t idx;
    std::string x, y;
    if (!(ls >> idx >> x >> y)) throw Error("mesh: malformed vertex row");
    detail::CheckIndex(idx, i);
    m.tri.points[i] = {ParseDouble(x), ParseDouble(y)};
  }
  const std::size_t ns = detail::Header(is, "simplices");
  for (std::size_t i = 0; i < ns; ++i) {
    auto ls = detail::NextLine(is, "simplex");
    Simplex s;
    if (!(ls >> s[0] >> s[1] >> s[2])) throw Error("mesh: malformed simplex row");
    for (auto v : s)
      if (v >= n) throw Error("mesh: simplex vertex out of range");
    m.tri.simplices.push_back(s);
    m.tri.areas.push_back(SignedArea(m.tri.points[s[0]], m.tri.points[s[1]], m.tri.points[s[2]]));
  }
  const std::size_t ne = detail::Header(is, "edges");
  for (std::size_t i = 0; i < ne; ++i) {
    auto ls = detail::NextLine(is, "edge");
    Edge e;
    if (!(ls >> e.first >> e.second)) throw Error("mesh: malformed edge row");
    if (e.first >= n || e.second >= n) throw Error("mesh: edge vertex out of range");
    m.tri.edges.push_back(e);
  }
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tag;
    std::size_t rows = 0, cols = 0;
    if (!(ls >> tag >> rows >> cols) || tag != "values" || rows != n)
      throw Error("mesh: malformed values block");
    m.values.assign(n, std::vector<double>(cols));
    for (std::size_t i = 0; i < n; ++i) {
      auto row = detail::NextLine(is, "values");
      std::size_t idx;
      if (!(row >> idx)) throw Error("mesh: malformed values row");
      detail::CheckIndex(idx, i);
      for (auto& v : m.values[i]) {
        std::string tok;
        if (!(row >> tok)) throw Error("mesh: short values row");
        v = ParseDouble(tok);
      }
    }
    break;
  }
  return m;
}

}  // namespace parklab::io

#endif  // PARKLAB_DELAUNAY_MESH_IO_HPP_
