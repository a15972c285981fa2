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

#ifndef QGAME_EXPERIMENTS_EXPERIMENT_HPP_
#define QGAME_EXPERIMENTS_EXPERIMENT_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "qgame/core/game.hpp"
#include "qgame/sim/measurement.hpp"

namespace qgame::experiments {

struct ExperimentConfig {
  core::PayoffMatrix payoffs{5, 3, 1};
  double a_sq = 1.0;
  double p = 1.0;
  double q = 1.0;
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  sim::Backend backend = sim::Backend::machine;
  int max_digits = sim::kDefaultMaxDigits;

  // Throws std::domain_error on out-of-range values or zero trials.
  void validate() const;
};

struct ExperimentReport {
  ExperimentConfig config;
  // Indexed by core::Outcome.
  std::array<std::uint64_t, 4> counts{};
  core::PayoffPair empirical;
  core::PayoffPair analytic;
  core::PayoffPair abs_error;
  // Sample standard deviation over sqrt(trials), per player.
  core::PayoffPair std_error;
  // Mean number of randomness draws per measurement (always 1 for the
  // machine).
  double mean_draws = 0.0;
  std::uint64_t tie_breaks = 0;

  std::uint64_t count(core::Outcome o) const {
    return counts[static_cast<std::size_t>(o)];
  }
  double frequency(core::Outcome o) const {
    return static_cast<double>(count(o)) / static_cast<double>(config.trials);
  }
};

// Per trial: Alice flips with probability 1 - p and Bob with 1 - q (strategy
// sub-stream), then the configured backend measures. Serial and
// deterministic: the same config always yields the same report.
ExperimentReport run_experiment(const ExperimentConfig& config);

enum class SweepAxis { a_sq, p, q };

std::string_view to_string(SweepAxis axis);
// Accepts "a_sq" (or "a-sq"), "p", "q"; throws std::invalid_argument.
SweepAxis sweep_axis_from_string(std::string_view text);

struct SweepRow {
  double value = 0.0;
  ExperimentReport report;
};

// One report per value. Row i runs with seed (base.seed XOR i) so each row
// is reproducible on its own. Throws std::domain_error on an empty value list
// or an out-of-range value.
std::vector<SweepRow> sweep(const ExperimentConfig& base, SweepAxis axis,
                            std::span<const double> values);

}  // namespace qgame::experiments

#endif  // QGAME_EXPERIMENTS_EXPERIMENT_HPP_
