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

#ifndef QGAME_EXPERIMENTS_REPORT_IO_HPP_
#define QGAME_EXPERIMENTS_REPORT_IO_HPP_

#include <optional>
#include <span>
#include <string>

#include "json.hpp"
#include "qgame/experiments/equilibrium_grid.hpp"
#include "qgame/experiments/experiment.hpp"

namespace qgame::experiments {

// CSV column order shared by `simulate` and `sweep` output:
//   axis_value, count_OO, count_OT, count_TO, count_TT,
//   empirical_a, empirical_b, analytic_a, analytic_b,
//   abs_err_a, abs_err_b, se_a, se_b, mean_draws, tie_breaks
// axis_value is empty for a single experiment. Reals use the shortest
// round-trip decimal form.
std::string csv_header();
std::string csv_row(const ExperimentReport& report,
                    std::optional<double> axis_value = std::nullopt);
std::string to_csv(const ExperimentReport& report);
std::string to_csv(std::span<const SweepRow> rows);

nlohmann::ordered_json to_json(const ExperimentConfig& config);
nlohmann::ordered_json to_json(const ExperimentReport& report);
nlohmann::ordered_json to_json(SweepAxis axis, std::span<const SweepRow> rows);
nlohmann::ordered_json to_json(const EquilibriumGridReport& report);

// Fixed-width human-readable tables.
std::string format_table(const ExperimentReport& report);
std::string format_table(SweepAxis axis, std::span<const SweepRow> rows);

}  // namespace qgame::experiments

#endif  // QGAME_EXPERIMENTS_REPORT_IO_HPP_
