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

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "qgame/core/equilibrium.hpp"
#include "qgame/experiments/equilibrium_grid.hpp"
#include "qgame/experiments/experiment.hpp"
#include "qgame/experiments/report_io.hpp"

namespace qgame::experiments {
namespace {

using core::Outcome;
using sim::Backend;

ExperimentConfig make_config(double a_sq, double p, double q,
                             std::uint64_t trials, Backend backend,
                             std::uint64_t seed = 1) {
  ExperimentConfig c;
  c.a_sq = a_sq;
  c.p = p;
  c.q = q;
  c.trials = trials;
  c.backend = backend;
  c.seed = seed;
  return c;
}

TEST(RunExperiment, DeterministicBranch) {
  for (Backend b : {Backend::machine, Backend::cards}) {
    const auto r = run_experiment(make_config(1, 1, 1, 1000, b));
    EXPECT_EQ(r.count(Outcome::OO), 1000u);
    EXPECT_EQ(r.empirical, (core::PayoffPair{5, 3}));
    EXPECT_EQ(r.std_error, (core::PayoffPair{0, 0}));
    EXPECT_EQ(r.mean_draws, 1.0);
  }
}

TEST(RunExperiment, EntangledIdentityPlay) {
  for (Backend b : {Backend::machine, Backend::cards}) {
    const auto r = run_experiment(make_config(0.5, 1, 1, 1000000, b, 3));
    // (alpha + beta) / 2 at p = q = 1, |a|^2 = 1/2.
    EXPECT_DOUBLE_EQ(r.analytic.alice, 4.0);
    EXPECT_LE(std::abs(r.empirical.alice - 4.0), 4 * r.std_error.alice);
    EXPECT_LE(r.abs_error.bob, 4 * r.std_error.bob);
  }
}

TEST(RunExperiment, CenterPoint) {
  for (Backend b : {Backend::machine, Backend::cards}) {
    const auto r = run_experiment(make_config(0.5, 0.5, 0.5, 1000000, b, 4));
    EXPECT_DOUBLE_EQ(r.analytic.alice, 2.5);
    EXPECT_DOUBLE_EQ(r.analytic.bob, 2.5);
    EXPECT_LE(r.abs_error.alice, 4 * r.std_error.alice);
    EXPECT_LE(r.abs_error.bob, 4 * r.std_error.bob);
  }
}

TEST(RunExperiment, CountsSumAndStandardError) {
  const auto r = run_experiment(make_config(0.3, 0.6, 0.2, 5000, Backend::cards));
  std::uint64_t total = 0;
  for (auto c : r.counts) total += c;
  EXPECT_EQ(total, 5000u);
  // Recompute the sample standard deviation from the counts.
  double mean = 0, ss = 0;
  for (Outcome o : core::kAllOutcomes) {
    mean += r.count(o) * core::payoff_for(o, r.config.payoffs).alice;
  }
  mean /= 5000;
  for (Outcome o : core::kAllOutcomes) {
    const double d = core::payoff_for(o, r.config.payoffs).alice - mean;
    ss += r.count(o) * d * d;
  }
  EXPECT_NEAR(r.std_error.alice, std::sqrt(ss / 4999) / std::sqrt(5000.0), 1e-12);
  EXPECT_GE(r.mean_draws, 1.0);
}

TEST(RunExperiment, RejectsBadConfig) {
  EXPECT_THROW(run_experiment(make_config(1.5, 1, 1, 10, Backend::machine)),
               std::domain_error);
  EXPECT_THROW(run_experiment(make_config(1, 1, 1, 0, Backend::machine)),
               std::domain_error);
  auto c = make_config(1, 1, 1, 10, Backend::cards);
  c.max_digits = 0;
  EXPECT_THROW(run_experiment(c), std::domain_error);
}

TEST(RunExperiment, ReproducibleBytes) {
  const auto c = make_config(0.37, 0.2, 0.9, 20000, Backend::cards, 77);
  EXPECT_EQ(to_json(run_experiment(c)).dump(), to_json(run_experiment(c)).dump());
  EXPECT_EQ(to_csv(run_experiment(c)), to_csv(run_experiment(c)));
}

TEST(RunExperiment, ErrorShrinksLikeInverseRootN) {
  std::vector<double> small, large;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    small.push_back(
        run_experiment(make_config(0.4, 0.3, 0.6, 10000, Backend::machine, seed))
            .abs_error.alice);
    large.push_back(run_experiment(make_config(0.4, 0.3, 0.6, 1000000,
                                               Backend::machine, 100 + seed))
                        .abs_error.alice);
  }
  auto median = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return 0.5 * (v[4] + v[5]);
  };
  const double ratio = median(small) / median(large);
  EXPECT_GE(ratio, 5.0);
  EXPECT_LE(ratio, 20.0);
}

TEST(Sweep, EntanglementAxis) {
  const std::vector<double> values{0, 0.5, 1};
  const auto rows = sweep(make_config(1, 1, 1, 100000, Backend::machine, 9),
                          SweepAxis::a_sq, values);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].report.frequency(Outcome::OO), 0.0);
  EXPECT_NEAR(rows[1].report.frequency(Outcome::OO), 0.5,
              4 * std::sqrt(0.25 / 100000));
  EXPECT_EQ(rows[2].report.frequency(Outcome::OO), 1.0);
  EXPECT_EQ(rows[1].report.config.seed, 9u ^ 1u);
}

TEST(Sweep, StrategyAxisAnalytic) {
  const std::vector<double> values{0, 1};
  const auto rows = sweep(make_config(1, 1, 1, 100, Backend::cards),
                          SweepAxis::p, values);
  EXPECT_EQ(rows[0].report.analytic.alice, 1.0);
  EXPECT_EQ(rows[1].report.analytic.alice, 5.0);
}

TEST(Sweep, SingleValueMatchesRunExperiment) {
  const auto base = make_config(0.6, 0.3, 0.9, 20000, Backend::cards, 1234);
  const std::vector<double> values{0.5};
  const auto rows = sweep(base, SweepAxis::q, values);
  auto direct = base;
  direct.q = 0.5;
  EXPECT_EQ(to_json(rows[0].report).dump(), to_json(run_experiment(direct)).dump());
}

TEST(Sweep, Errors) {
  EXPECT_THROW(sweep(make_config(1, 1, 1, 10, Backend::machine), SweepAxis::p, {}),
               std::domain_error);
  const std::vector<double> bad{0.5, 1.5};
  EXPECT_THROW(sweep(make_config(1, 1, 1, 10, Backend::machine), SweepAxis::p, bad),
               std::domain_error);
  EXPECT_EQ(sweep_axis_from_string("a-sq"), SweepAxis::a_sq);
  EXPECT_THROW(sweep_axis_from_string("r"), std::invalid_argument);
}

TEST(ReportIo, CsvColumns) {
  const std::vector<double> values{1};
  const auto rows = sweep(make_config(1, 1, 1, 10, Backend::machine), SweepAxis::a_sq,
                          values);
  EXPECT_EQ(to_csv(rows),
            "axis_value,count_OO,count_OT,count_TO,count_TT,empirical_a,"
            "empirical_b,analytic_a,analytic_b,abs_err_a,abs_err_b,se_a,se_b,"
            "mean_draws,tie_breaks\n"
            "1,10,0,0,0,5,3,5,3,0,0,0,0,1,0\n");
}

// --- grid oracle ----------------------------------------------------------

bool has_cell_near(const EquilibriumGridReport& r, double p, double q,
                   double reach) {
  return std::any_of(r.cells.begin(), r.cells.end(), [&](const GridCell& c) {
    return std::abs(c.p - p) <= reach && std::abs(c.q - q) <= reach;
  });
}

TEST(GridOracle, ClassicalCells) {
  const auto r = equilibrium_oracle_grid(core::EntangledState(1),
                                         core::PayoffMatrix(5, 3, 1), 0.01);
  EXPECT_TRUE(has_cell_near(r, 1, 1, 0));
  EXPECT_TRUE(has_cell_near(r, 0, 0, 0));
  EXPECT_TRUE(has_cell_near(r, 0.67, 0.33, 0.01));
  EXPECT_TRUE(r.agrees());
  EXPECT_EQ(r.closed_form.size(), 3u);
}

TEST(GridOracle, MaximallyEntangledCell) {
  const auto r = equilibrium_oracle_grid(core::EntangledState(0.5),
                                         core::PayoffMatrix(5, 3, 1), 0.01);
  EXPECT_TRUE(has_cell_near(r, 0.5, 0.5, 1e-9));
  EXPECT_TRUE(r.agrees());
}

TEST(GridOracle, ConstantGameEveryCell) {
  const auto r = equilibrium_oracle_grid(core::EntangledState(0.5),
                                         core::PayoffMatrix(2, 2, 2), 0.1);
  EXPECT_EQ(r.cells.size(), 121u);
  for (const auto& c : r.cells) {
    EXPECT_EQ(c.source, GridCell::Source::grid_point);
    EXPECT_FALSE(c.isolated);
  }
  EXPECT_TRUE(r.agrees());
}

TEST(GridOracle, StepValidation) {
  EXPECT_THROW(equilibrium_oracle_grid(core::EntangledState(0.5),
                                       core::PayoffMatrix(5, 3, 1), 0.0),
               std::domain_error);
  EXPECT_THROW(equilibrium_oracle_grid(core::EntangledState(0.5),
                                       core::PayoffMatrix(5, 3, 1), 0.2),
               std::domain_error);
  // A step that does not divide 1 still includes the far edge.
  const auto r = equilibrium_oracle_grid(core::EntangledState(1),
                                         core::PayoffMatrix(5, 3, 1), 0.03);
  EXPECT_TRUE(has_cell_near(r, 1, 1, 0));
  EXPECT_TRUE(r.agrees());
}

TEST(GridOracle, AgreesOnRandomBattleOfTheSexes) {
  std::mt19937_64 gen(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    std::vector<double> v{10 * u(gen) - 5, 10 * u(gen) - 5, 10 * u(gen) - 5};
    std::sort(v.rbegin(), v.rend());
    const core::PayoffMatrix m(v[0], v[1], v[2]);
    ASSERT_TRUE(m.is_bos());
    const core::EntangledState s(u(gen));
    const auto r = equilibrium_oracle_grid(s, m, 0.01);
    EXPECT_TRUE(r.agrees()) << "alpha=" << v[0] << " beta=" << v[1]
                            << " gamma=" << v[2] << " a_sq=" << s.a_sq();
  }
}

}  // namespace
}  // namespace qgame::experiments
