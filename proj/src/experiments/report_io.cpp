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

#include "qgame/experiments/report_io.hpp"

#include <fmt/format.h>

#include "qgame/sim/card_interval.hpp"

namespace qgame::experiments {

namespace {

using nlohmann::ordered_json;
using sim::shortest_decimal;

ordered_json pair_json(const core::PayoffPair& pair) {
  return {{"alice", pair.alice}, {"bob", pair.bob}};
}

void append_table_row(std::string& out, const std::string& label,
                      const ExperimentReport& r) {
  out += fmt::format(
      "{:>8} {:>9} {:>9} {:>9} {:>9} {:>10.5f} {:>10.5f} {:>10.5f} {:>10.5f} "
      "{:>9.2e} {:>9.2e} {:>9.2e} {:>9.2e} {:>7.3f} {:>6}\n",
      label, r.count(core::Outcome::OO), r.count(core::Outcome::OT),
      r.count(core::Outcome::TO), r.count(core::Outcome::TT), r.empirical.alice,
      r.empirical.bob, r.analytic.alice, r.analytic.bob, r.abs_error.alice,
      r.abs_error.bob, r.std_error.alice, r.std_error.bob, r.mean_draws,
      r.tie_breaks);
}

std::string table_header(const std::string& label) {
  return fmt::format(
      "{:>8} {:>9} {:>9} {:>9} {:>9} {:>10} {:>10} {:>10} {:>10} {:>9} {:>9} "
      "{:>9} {:>9} {:>7} {:>6}\n",
      label, "OO", "OT", "TO", "TT", "emp A", "emp B", "exact A", "exact B",
      "err A", "err B", "SE A", "SE B", "draws", "ties");
}

}  // namespace

std::string csv_header() {
  return "axis_value,count_OO,count_OT,count_TO,count_TT,empirical_a,"
         "empirical_b,analytic_a,analytic_b,abs_err_a,abs_err_b,se_a,se_b,"
         "mean_draws,tie_breaks\n";
}

std::string csv_row(const ExperimentReport& r, std::optional<double> axis_value) {
  return fmt::format(
      "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
      axis_value ? shortest_decimal(*axis_value) : std::string(),
      r.count(core::Outcome::OO), r.count(core::Outcome::OT),
      r.count(core::Outcome::TO), r.count(core::Outcome::TT),
      shortest_decimal(r.empirical.alice), shortest_decimal(r.empirical.bob),
      shortest_decimal(r.analytic.alice), shortest_decimal(r.analytic.bob),
      shortest_decimal(r.abs_error.alice), shortest_decimal(r.abs_error.bob),
      shortest_decimal(r.std_error.alice), shortest_decimal(r.std_error.bob),
      shortest_decimal(r.mean_draws), r.tie_breaks);
}

std::string to_csv(const ExperimentReport& report) {
  return csv_header() + csv_row(report);
}

std::string to_csv(std::span<const SweepRow> rows) {
  std::string out = csv_header();
  for (const SweepRow& row : rows) out += csv_row(row.report, row.value);
  return out;
}

ordered_json to_json(const ExperimentConfig& c) {
  return {{"alpha", c.payoffs.alpha()},
          {"beta", c.payoffs.beta()},
          {"gamma", c.payoffs.gamma()},
          {"is_bos", c.payoffs.is_bos()},
          {"a_sq", c.a_sq},
          {"p", c.p},
          {"q", c.q},
          {"trials", c.trials},
          {"seed", c.seed},
          {"backend", std::string(sim::to_string(c.backend))},
          {"max_digits", c.max_digits}};
}

ordered_json to_json(const ExperimentReport& r) {
  ordered_json counts;
  for (core::Outcome o : core::kAllOutcomes) {
    counts[std::string(core::to_string(o))] = r.count(o);
  }
  return {{"config", to_json(r.config)},
          {"counts", counts},
          {"empirical", pair_json(r.empirical)},
          {"analytic", pair_json(r.analytic)},
          {"abs_error", pair_json(r.abs_error)},
          {"std_error", pair_json(r.std_error)},
          {"mean_draws", r.mean_draws},
          {"tie_breaks", r.tie_breaks}};
}

ordered_json to_json(SweepAxis axis, std::span<const SweepRow> rows) {
  ordered_json out;
  out["axis"] = std::string(to_string(axis));
  out["rows"] = ordered_json::array();
  for (const SweepRow& row : rows) {
    out["rows"].push_back({{"value", row.value}, {"report", to_json(row.report)}});
  }
  return out;
}

ordered_json to_json(const EquilibriumGridReport& report) {
  ordered_json out;
  out["step"] = report.step;
  out["agrees"] = report.agrees();
  out["cells"] = ordered_json::array();
  for (const GridCell& c : report.cells) {
    out["cells"].push_back(
        {{"source", c.source == GridCell::Source::grid_point ? "grid_point"
                                                              : "bracket"},
         {"p", c.p},
         {"q", c.q},
         {"isolated", c.isolated},
         {"matched", c.matched}});
  }
  out["closed_form"] = ordered_json::array();
  for (const ClosedFormMatch& m : report.closed_form) {
    const core::Equilibrium& e = m.equilibrium;
    out["closed_form"].push_back(
        {{"kind", std::string(core::to_string(e.kind))},
         {"p", e.profile.p()},
         {"q", e.profile.q()},
         {"p_range", {e.p_range.lo, e.p_range.hi}},
         {"q_range", {e.q_range.lo, e.q_range.hi}},
         {"matched", m.matched},
         {"distance", m.distance}});
  }
  return out;
}

std::string format_table(const ExperimentReport& report) {
  const ExperimentConfig& c = report.config;
  std::string out = fmt::format(
      "alpha={} beta={} gamma={}{}  a_sq={} p={} q={}  trials={} seed={} "
      "backend={}\n",
      c.payoffs.alpha(), c.payoffs.beta(), c.payoffs.gamma(),
      c.payoffs.is_bos() ? "" : " (not BoS)", c.a_sq, c.p, c.q, c.trials,
      c.seed, sim::to_string(c.backend));
  out += table_header("");
  append_table_row(out, "", report);
  return out;
}

std::string format_table(SweepAxis axis, std::span<const SweepRow> rows) {
  std::string out = table_header(std::string(to_string(axis)));
  for (const SweepRow& row : rows) {
    append_table_row(out, fmt::format("{:.4g}", row.value), row.report);
  }
  return out;
}

}  // namespace qgame::experiments
