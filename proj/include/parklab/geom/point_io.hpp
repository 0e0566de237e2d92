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

// Point-set serialization.
//
// CSV: one point per line, coordinates separated by commas, each printed
// with 17 significant digits (round-trips doubles exactly).
//
// Binary (little-endian):
//   bytes 0..3   magic "PKLB"
//   u32          format version (1)
//   u32          dimension d
//   u64          point count n
//   f64[n*d]     coordinates, point-major

#ifndef PARKLAB_GEOM_POINT_IO_HPP_
#define PARKLAB_GEOM_POINT_IO_HPP_

#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <type_traits>

#include "parklab/geom/point.hpp"

namespace parklab::io {

inline constexpr char kBinaryMagic[4] = {'P', 'K', 'L', 'B'};
inline constexpr std::uint32_t kBinaryVersion = 1;

inline std::string FormatDouble(double v) {
  // The sign of a NaN is not portable; print one spelling.
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline double ParseDouble(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw Error("malformed number: '" + std::string(s) + "'");
  return v;
}

template <std::size_t D>
void WriteCsv(std::ostream& os, const PointSet<D>& pts) {
  for (const auto& p : pts) {
    for (std::size_t i = 0; i < D; ++i) {
      if (i) os << ',';
      os << FormatDouble(p[i]);
    }
    os << '\n';
  }
}

template <std::size_t D>
PointSet<D> ReadCsv(std::istream& is) {
  PointSet<D> pts;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    Point<D> p{};
    std::size_t field = 0, start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      const std::string_view tok(line.data() + start,
                                 (comma == std::string::npos ? line.size() : comma) - start);
      if (field >= D)
        throw Error("line " + std::to_string(lineno) + ": too many coordinates");
      p[field++] = ParseDouble(tok);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (field != D)
      throw Error("line " + std::to_string(lineno) + ": expected " +
                  std::to_string(D) + " coordinates");
    pts.push_back(p);
  }
  return pts;
}

namespace detail {

template <class T>
void PutLE(std::ostream& os, T v) {
  unsigned char b[sizeof(T)];
  std::uint64_t u = 0;
  if constexpr (sizeof(T) == 8) u = std::bit_cast<std::uint64_t>(v);
  else u = static_cast<std::uint64_t>(v);
  for (std::size_t i = 0; i < sizeof(T); ++i) b[i] = static_cast<unsigned char>(u >> (8 * i));
  os.write(reinterpret_cast<const char*>(b), sizeof(T));
}

template <class T>
T GetLE(std::istream& is) {
  unsigned char b[sizeof(T)];
  if (!is.read(reinterpret_cast<char*>(b), sizeof(T))) throw Error("truncated binary point file");
  std::uint64_t u = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) u |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  if constexpr (std::is_same_v<T, double>) return std::bit_cast<double>(u);
  else return static_cast<T>(u);
}

}  // namespace detail

template <std::size_t D>
void WriteBinary(std::ostream& os, const PointSet<D>& pts) {
  os.write(kBinaryMagic, 4);
  detail::PutLE<std::uint32_t>(os, kBinaryVersion);
  detail::PutLE<std::uint32_t>(os, static_cast<std::uint32_t>(D));
  detail::PutLE<std::uint64_t>(os, pts.size());
  for (const auto& p : pts)
    for (double x : p) detail::PutLE<double>(os, x);
}

template <std::size_t D>
PointSet<D> ReadBinary(std::istream& is) {
  char magic[4];
  if (!is.read(magic, 4) || std::memcmp(magic, kBinaryMagic, 4) != 0)
    throw Error("not a PKLB point file");
  const auto version = detail::GetLE<std::uint32_t>(is);
  if (version != kBinaryVersion)
    throw Error("unsupported PKLB version " + std::to_string(version));
  const auto d = detail::GetLE<std::uint32_t>(is);
  if (d != D)
    throw Error("PKLB dimension " + std::to_string(d) + " does not match " + std::to_string(D));
  const auto n = detail::GetLE<std::uint64_t>(is);
  PointSet<D> pts(n);
  for (auto& p : pts)
    for (double& x : p) x = detail::GetLE<double>(is);
  return pts;
}

}  // namespace parklab::io

#endif  // PARKLAB_GEOM_POINT_IO_HPP_
