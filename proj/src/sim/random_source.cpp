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

#include "qgame/sim/random_source.hpp"

namespace qgame::sim {

namespace {

constexpr std::uint64_t kStreamGamma = 0xD1B54A32D192ED03ull;
constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ull;

__extension__ typedef unsigned __int128 uint128;

}  // namespace

std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

RandomSource::RandomSource(std::uint64_t seed) : seed_(seed) {
  for (std::size_t s = 0; s < keys_.size(); ++s) {
    keys_[s] = splitmix64_mix(seed + (s + 1) * kStreamGamma);
  }
}

std::uint64_t RandomSource::next_u64(Substream stream) {
  const auto s = static_cast<std::size_t>(stream);
  const std::uint64_t i = ++counters_[s];
  return splitmix64_mix(keys_[s] + i * kGoldenGamma);
}

double RandomSource::uniform(Substream stream) {
  return static_cast<double>(next_u64(stream) >> 11) * 0x1.0p-53;
}

int RandomSource::digit() {
  // 2^64 mod 10
  constexpr std::uint64_t kThreshold = 6;
  for (;;) {
    const uint128 product =
        static_cast<uint128>(next_u64(Substream::digits)) * 10u;
    if (static_cast<std::uint64_t>(product) >= kThreshold) {
      return static_cast<int>(product >> 64);
    }
  }
}

bool RandomSource::bernoulli(double p) {
  return uniform(Substream::strategy) < p;
}

}  // namespace qgame::sim
