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

#ifndef PARKLAB_GEOM_KEYED_RNG_HPP_
#define PARKLAB_GEOM_KEYED_RNG_HPP_

#include <array>
#include <cstdint>
#include <limits>

namespace parklab {

// Finalizer from splitmix64. Bijective on 64-bit words.
constexpr std::uint64_t Mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t HashCombine(std::uint64_t h, std::uint64_t v) {
  return Mix64(h ^ (Mix64(v) + 0x632be59bd9b4e019ULL + (h << 6) + (h >> 2)));
}

// Hash of an integer lattice cell, used as the spatial part of a stream key.
template <std::size_t D>
std::uint64_t CellKey(const std::array<std::int64_t, D>& cell) {
  std::uint64_t h = 0x8f1bbcdcca62c1d6ULL ^ D;
  for (std::int64_t c : cell) h = HashCombine(h, static_cast<std::uint64_t>(c));
  return h;
}

struct StreamKey {
  std::uint64_t experiment = 0;
  std::uint64_t cell = 0;
  std::uint64_t counter = 0;
};

/// Counter-based random stream. The i-th output depends only on
/// (seed, key, i), so a stream can be regenerated anywhere without touching
/// any other stream. Satisfies UniformRandomBitGenerator.
class KeyedRng {
 public:
  using result_type = std::uint64_t;

  KeyedRng(std::uint64_t seed, StreamKey key)
      : seed_(seed), key_(key),
        base_(HashCombine(HashCombine(HashCombine(Mix64(seed), key.experiment),
                                      key.cell),
                          key.counter)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() {
    // Two rounds so that consecutive counters decorrelate fully.
    return Mix64(Mix64(base_ + 0x9e3779b97f4a7c15ULL * ++position_) ^ base_);
  }

  // Uniform in [0, 1) with 53 random bits.
  double Uniform() {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

  // Uniform in the open interval (0, 1).
  double UniformOpen() {
    double u;
    do u = Uniform();
    while (u == 0.0);
    return u;
  }

  // Child stream for a sub-key. Independent of how far this stream advanced.
  KeyedRng Derive(std::uint64_t tag) const {
    return KeyedRng(seed_, {key_.experiment, key_.cell,
                            HashCombine(key_.counter, tag)});
  }

  std::uint64_t seed() const { return seed_; }
  const StreamKey& key() const { return key_; }
  std::uint64_t position() const { return position_; }

 private:
  std::uint64_t seed_;
  StreamKey key_;
  std::uint64_t base_;
  std::uint64_t position_ = 0;
};

}  // namespace parklab

#endif  // PARKLAB_GEOM_KEYED_RNG_HPP_
