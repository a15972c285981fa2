// Copyright 2026 The qgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QGAME_SIM_RANDOM_SOURCE_HPP_
#define QGAME_SIM_RANDOM_SOURCE_HPP_

#include <array>
#include <cstdint>
#include <string_view>

namespace qgame::sim {

// Independent sub-streams of one seeded source. Drawing from one never
// shifts the values produced by another.
enum class Substream : std::uint8_t {
  charge = 0,    // normalized charge fractions u1 = q1/Q
  digits = 1,    // card draws 0..9
  strategy = 2,  // sampling of mixed strategies
};

// Counter-based deterministic generator, "qgame-ctr64" version 1.
//
// For sub-stream s with counter i (starting at 0):
//
//   key_s  = mix(seed + (s + 1) * 0xD1B54A32D192ED03)
//   x_s(i) = mix(key_s + (i + 1) * 0x9E3779B97F4A7C15)
//
// where mix is the SplitMix64 finalizer
//
//   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//   z =  z ^ (z >> 31)
//
// with all arithmetic modulo 2^64. Derived values:
//   uniform() = (x >> 11) * 2^-53                      in [0, 1)
//   digit()   = floor(x * 10 / 2^64), rejecting x whose low product word
//               falls below 2^64 mod 10 (Lemire), so digits are exactly
//               uniform; a rejected x consumes one counter step.
//
// Not thread-safe; give each thread its own instance.
class RandomSource {
 public:
  static constexpr std::string_view kAlgorithm = "qgame-ctr64";
  static constexpr int kVersion = 1;

  explicit RandomSource(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t counter(Substream stream) const {
    return counters_[static_cast<std::size_t>(stream)];
  }

  std::uint64_t next_u64(Substream stream);
  double uniform(Substream stream = Substream::charge);
  int digit();
  // True with probability p, drawn from the strategy sub-stream.
  bool bernoulli(double p);

 private:
  std::uint64_t seed_;
  std::array<std::uint64_t, 3> keys_{};
  std::array<std::uint64_t, 3> counters_{};
};

std::uint64_t splitmix64_mix(std::uint64_t z);

}  // namespace qgame::sim

#endif  // QGAME_SIM_RANDOM_SOURCE_HPP_
