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

#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <pthread.h>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "qgame/core/equilibrium.hpp"
#include "qgame/core/game.hpp"
#include "qgame/experiments/equilibrium_grid.hpp"
#include "qgame/experiments/experiment.hpp"
#include "qgame/experiments/report_io.hpp"
#include "qgame/server/http_server.hpp"
#include "qgame/server/protocol.hpp"

namespace {

using namespace qgame;

struct GameFlags {
  double alpha = 5;
  double beta = 3;
  double gamma = 1;
  double a_sq = 1;
  double p = 1;
  double q = 1;
};

void add_game_flags(CLI::App* cmd, GameFlags& g) {
  cmd->add_option("--alpha", g.alpha, "Payoff to the player whose outcome is favoured")
      ->capture_default_str();
  cmd->add_option("--beta", g.beta, "Payoff to the other player on a match")
      ->capture_default_str();
  cmd->add_option("--gamma", g.gamma, "Payoff to both players on a mismatch")
      ->capture_default_str();
  cmd->add_option("--a-sq", g.a_sq, "|a|^2 of the initial state")
      ->capture_default_str();
  cmd->add_option("--p", g.p, "Alice's probability of the identity")
      ->capture_default_str();
  cmd->add_option("--q", g.q, "Bob's probability of the identity")
      ->capture_default_str();
}

// Writes JSON or CSV depending on the extension.
void write_out(const std::string& path, const nlohmann::ordered_json& json,
               const std::string& csv) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0) {
    out << csv;
  } else {
    out << json.dump(2) << '\n';
  }
}

experiments::ExperimentConfig make_config(const GameFlags& g, std::uint64_t trials,
                                          std::uint64_t seed,
                                          const std::string& backend, int max_digits) {
  experiments::ExperimentConfig c;
  c.payoffs = core::PayoffMatrix(g.alpha, g.beta, g.gamma);
  c.a_sq = g.a_sq;
  c.p = g.p;
  c.q = g.q;
  c.trials = trials;
  c.seed = seed;
  c.backend = sim::backend_from_string(backend);
  c.max_digits = max_digits;
  return c;
}

int analyze(const GameFlags& g, bool grid_check, double grid_step,
            const std::string& out_path) {
  const core::PayoffMatrix payoffs(g.alpha, g.beta, g.gamma);
  const core::EntangledState state(g.a_sq);
  const core::StrategyProfile profile(g.p, g.q);
  const auto pay = core::expected_payoffs(profile, state, payoffs);
  const auto br_a = core::best_response_alice(g.q, state, payoffs);
  const auto br_b = core::best_response_bob(g.p, state, payoffs);
  const auto equilibria = core::nash_equilibria(state, payoffs);

  fmt::print("alpha={} beta={} gamma={}{}  a_sq={}\n", g.alpha, g.beta, g.gamma,
             payoffs.is_bos() ? "" : " (not BoS)", g.a_sq);
  fmt::print("payoffs at p={} q={}: alice={} bob={}\n", g.p, g.q, pay.alice, pay.bob);
  fmt::print("best response: alice to q={} -> {}, bob to p={} -> {}\n", g.q,
             core::to_string(br_a), g.p, core::to_string(br_b));
  fmt::print("equilibria:\n");
  nlohmann::ordered_json json;
  json["payoffs"] = {{"alice", pay.alice}, {"bob", pay.bob}};
  json["best_response"] = {{"alice", std::string(core::to_string(br_a))},
                           {"bob", std::string(core::to_string(br_b))}};
  json["equilibria"] = nlohmann::ordered_json::array();
  for (const auto& e : equilibria) {
    if (e.kind == core::EquilibriumKind::component) {
      fmt::print("  component p in [{}, {}] q in [{}, {}]\n", e.p_range.lo,
                 e.p_range.hi, e.q_range.lo, e.q_range.hi);
    } else {
      fmt::print("  {:<9} p={:.6f} q={:.6f}  alice={:.6f} bob={:.6f}\n",
                 core::to_string(e.kind), e.profile.p(), e.profile.q(),
                 e.payoffs.alice, e.payoffs.bob);
    }
    json["equilibria"].push_back({{"kind", std::string(core::to_string(e.kind))},
                                  {"p", e.profile.p()},
                                  {"q", e.profile.q()},
                                  {"p_range", {e.p_range.lo, e.p_range.hi}},
                                  {"q_range", {e.q_range.lo, e.q_range.hi}},
                                  {"alice", e.payoffs.alice},
                                  {"bob", e.payoffs.bob}});
  }

  int status = 0;
  if (grid_check) {
    const auto report = experiments::equilibrium_oracle_grid(state, payoffs, grid_step);
    std::size_t isolated = 0;
    for (const auto& c : report.cells) isolated += c.isolated ? 1 : 0;
    fmt::print("grid check (step {}): {} cells, {} isolated, {}\n", grid_step,
               report.cells.size(), isolated, report.agrees() ? "agrees" : "DISAGREES");
    json["grid_check"] = experiments::to_json(report);
    status = report.agrees() ? 0 : 1;
  }
  if (!out_path.empty()) write_out(out_path, json, "");
  return status;
}

int serve(unsigned short port, const std::string& bind, const std::string& log_dir,
          const std::string& static_dir, std::optional<double> bot_window, int threads) {
  // Workers inherit the mask; the main thread waits for the signal.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  server::ServiceOptions options;
  options.log_dir = log_dir;
  if (bot_window) {
    options.bot_window = std::chrono::duration_cast<std::chrono::steady_clock::duration>(
        std::chrono::duration<double>(*bot_window));
  }
  server::SessionService service(std::move(options));
  server::HttpServer http(service, {bind, port, static_dir, threads});
  http.start();
  fmt::print("listening on http://{}:{}\n", bind, http.port());
  std::fflush(stdout);

  int received = 0;
  sigwait(&signals, &received);
  fmt::print("stopping\n");
  http.stop();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulator for restricted quantum games"};
  app.require_subcommand(1);

  GameFlags game;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 0;
  std::string backend = "machine";
  int max_digits = sim::kDefaultMaxDigits;
  std::string out_path;

  auto add_run_flags = [&](CLI::App* cmd) {
    add_game_flags(cmd, game);
    cmd->add_option("--trials", trials, "Number of rounds")->capture_default_str();
    cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
    cmd->add_option("--backend", backend, "machine or cards")
        ->check(CLI::IsMember({"machine", "cards"}))
        ->capture_default_str();
    cmd->add_option("--max-digits", max_digits, "Card draws before a tie-break")
        ->check(CLI::Range(1, sim::kMaxDigitsLimit))
        ->capture_default_str();
    cmd->add_option("--out", out_path, "Write results to a .json or .csv file");
  };

  auto* simulate = app.add_subcommand("simulate", "Run one experiment");
  add_run_flags(simulate);

  auto* sweep_cmd = app.add_subcommand("sweep", "Run experiments along one axis");
  add_run_flags(sweep_cmd);
  std::string axis = "a_sq";
  std::vector<double> values;
  sweep_cmd->add_option("--axis", axis, "a_sq, p or q")
      ->check(CLI::IsMember({"a_sq", "a-sq", "p", "q"}))
      ->capture_default_str();
  sweep_cmd->add_option("--values", values, "Comma-separated axis values")
      ->delimiter(',')
      ->required();

  auto* analyze_cmd = app.add_subcommand("analyze", "Closed-form payoffs and equilibria");
  add_game_flags(analyze_cmd, game);
  bool grid_check = false;
  double grid_step = 0.01;
  analyze_cmd->add_flag("--grid-check", grid_check, "Confirm equilibria on a grid");
  analyze_cmd->add_option("--grid-step", grid_step, "Grid spacing for --grid-check")
      ->capture_default_str();
  analyze_cmd->add_option("--out", out_path, "Write results to a .json file");

  auto* serve_cmd = app.add_subcommand("serve", "Start the session server");
  unsigned short port = 8080;
  std::string bind = "0.0.0.0";
  std::string log_dir;
  std::string static_dir;
  std::optional<double> bot_window;
  int threads = 2;
  serve_cmd->add_option("--port", port, "TCP port")->capture_default_str();
  serve_cmd->add_option("--bind", bind, "Listen address")->capture_default_str();
  serve_cmd->add_option("--session-log", log_dir, "Directory for session logs");
  serve_cmd->add_option("--static-dir", static_dir, "Directory served as the web client");
  serve_cmd->add_option("--bot-window", bot_window,
                        "Seconds before an empty second seat gets the built-in opponent");
  serve_cmd->add_option("--threads", threads, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*simulate) {
      const auto report = experiments::run_experiment(
          make_config(game, trials, seed, backend, max_digits));
      std::cout << experiments::format_table(report);
      if (!out_path.empty()) {
        write_out(out_path, experiments::to_json(report), experiments::to_csv(report));
      }
      return 0;
    }
    if (*sweep_cmd) {
      const auto ax = experiments::sweep_axis_from_string(axis);
      const auto rows = experiments::sweep(
          make_config(game, trials, seed, backend, max_digits), ax, values);
      std::cout << experiments::format_table(ax, rows);
      if (!out_path.empty()) {
        write_out(out_path, experiments::to_json(ax, rows), experiments::to_csv(rows));
      }
      return 0;
    }
    if (*analyze_cmd) return analyze(game, grid_check, grid_step, out_path);
    if (*serve_cmd) return serve(port, bind, log_dir, static_dir, bot_window, threads);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
