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

#include "qgame/experiments/experiment.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qgame/sim/card_interval.hpp"
#include "qgame/sim/random_source.hpp"

namespace qgame::experiments {

namespace {

// Mean and standard error of a payoff that takes one value per outcome.
std::pair<double, double> mean_and_se(const std::array<std::uint64_t, 4>& counts,
                                      const std::array<double, 4>& values,
                                      std::uint64_t n) {
  const double total = static_cast<double>(n);
  double sum = 0.0;
  for (std::size_t k = 0; k < 4; ++k) sum += counts[k] * values[k];
  const double mean = sum / total;
  if (n < 2) return {mean, 0.0};
  double ss = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    const double d = values[k] - mean;
    ss += counts[k] * d * d;
  }
  const double sample_var = ss / (total - 1.0);
  return {mean, std::sqrt(sample_var / total)};
}

}  // namespace

void ExperimentConfig::validate() const {
  static_cast<void>(core::EntangledState(a_sq));
  static_cast<void>(core::StrategyProfile(p, q));
  if (trials < 1) throw std::domain_error("trials must be at least 1");
  if (max_digits < 1 || max_digits > sim::kMaxDigitsLimit) {
    throw std::domain_error("max_digits must lie in [1, 18]");
  }
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  config.validate();
  const core::EntangledState state(config.a_sq);
  const sim::CardTarget target(state);
  sim::RandomSource rng(config.seed);

  ExperimentReport report;
  report.config = config;
  std::uint64_t draws = 0;
  for (std::uint64_t i = 0; i < config.trials; ++i) {
    const sim::Flips flips{!rng.bernoulli(config.p), !rng.bernoulli(config.q)};
    sim::Branch branch;
    if (config.backend == sim::Backend::machine) {
      branch = sim::machine_branch_for(state, rng.uniform(sim::Substream::charge));
      ++draws;
    } else {
      const sim::CardResult r =
          sim::draw_card_branch(target, rng, config.max_digits);
      branch = r.branch;
      draws += static_cast<std::uint64_t>(r.draws);
      report.tie_breaks += r.tie_break ? 1 : 0;
    }
    ++report.counts[static_cast<std::size_t>(sim::outcome_for_branch(branch, flips))];
  }

  std::array<double, 4> alice_values{};
  std::array<double, 4> bob_values{};
  for (core::Outcome o : core::kAllOutcomes) {
    const core::PayoffPair entry = core::payoff_for(o, config.payoffs);
    alice_values[static_cast<std::size_t>(o)] = entry.alice;
    bob_values[static_cast<std::size_t>(o)] = entry.bob;
  }
  const auto [alice_mean, alice_se] =
      mean_and_se(report.counts, alice_values, config.trials);
  const auto [bob_mean, bob_se] =
      mean_and_se(report.counts, bob_values, config.trials);
  report.empirical = {alice_mean, bob_mean};
  report.std_error = {alice_se, bob_se};
  report.analytic = core::expected_payoffs({config.p, config.q}, state,
                                           config.payoffs);
  report.abs_error = {std::abs(report.empirical.alice - report.analytic.alice),
                      std::abs(report.empirical.bob - report.analytic.bob)};
  report.mean_draws =
      static_cast<double>(draws) / static_cast<double>(config.trials);
  return report;
}

std::string_view to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::a_sq: return "a_sq";
    case SweepAxis::p: return "p";
    case SweepAxis::q: return "q";
  }
  return "?";
}

SweepAxis sweep_axis_from_string(std::string_view text) {
  if (text == "a_sq" || text == "a-sq") return SweepAxis::a_sq;
  if (text == "p") return SweepAxis::p;
  if (text == "q") return SweepAxis::q;
  throw std::invalid_argument("unknown sweep axis '" + std::string(text) + "'");
}

std::vector<SweepRow> sweep(const ExperimentConfig& base, SweepAxis axis,
                            std::span<const double> values) {
  if (values.empty()) throw std::domain_error("sweep needs at least one value");
  std::vector<ExperimentConfig> configs;
  configs.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    ExperimentConfig c = base;
    switch (axis) {
      case SweepAxis::a_sq: c.a_sq = values[i]; break;
      case SweepAxis::p: c.p = values[i]; break;
      case SweepAxis::q: c.q = values[i]; break;
    }
    c.seed = base.seed ^ static_cast<std::uint64_t>(i);
    c.validate();
    configs.push_back(c);
  }
  std::vector<SweepRow> rows;
  rows.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    rows.push_back({values[i], run_experiment(configs[i])});
  }
  return rows;
}

}  // namespace qgame::experiments
