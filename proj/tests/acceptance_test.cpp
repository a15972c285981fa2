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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails. Tolerances are pinned below.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "json.hpp"
#include "qgame/core/equilibrium.hpp"
#include "qgame/core/game.hpp"
#include "qgame/experiments/equilibrium_grid.hpp"
#include "qgame/experiments/experiment.hpp"
#include "qgame/server/protocol.hpp"
#include "qgame/server/session_log.hpp"
#include "qgame/sim/bloch.hpp"
#include "qgame/sim/card_interval.hpp"
#include "qgame/sim/measurement.hpp"
#include "qgame/sim/random_source.hpp"

namespace {

using namespace qgame;
using Clock = std::chrono::steady_clock;

constexpr double kSigmas = 4.0;
constexpr double kExactTolerance = 1e-12;
constexpr double kSpinSecondsPerAngle = 10.0;
constexpr double kBackendSweepSeconds = 300.0;
constexpr std::uint64_t kMillion = 1000000;

struct Verdict {
  bool pass = true;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double binomial_sigma(double p, std::uint64_t n) {
  return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

// Expected payoffs by enumerating both players' pure actions and both
// measurement branches; shares no code with the closed forms.
core::PayoffPair brute_force_payoffs(double p, double q, double a_sq, double alpha,
                                     double beta, double gamma) {
  core::PayoffPair total{0, 0};
  for (int alice_flip = 0; alice_flip < 2; ++alice_flip) {
    for (int bob_flip = 0; bob_flip < 2; ++bob_flip) {
      const double w = (alice_flip ? 1 - p : p) * (bob_flip ? 1 - q : q);
      for (int branch_b = 0; branch_b < 2; ++branch_b) {
        const double pb = branch_b ? 1 - a_sq : a_sq;
        // Branch A puts both letters on O, branch B both on T.
        const bool alice_o = (branch_b == 0) != (alice_flip == 1);
        const bool bob_o = (branch_b == 0) != (bob_flip == 1);
        double ua = gamma, ub = gamma;
        if (alice_o && bob_o) {
          ua = alpha;
          ub = beta;
        } else if (!alice_o && !bob_o) {
          ua = beta;
          ub = alpha;
        }
        total.alice += w * pb * ua;
        total.bob += w * pb * ub;
      }
    }
  }
  return total;
}

Verdict spin_law() {
  const std::array<double, 5> angles{0, std::numbers::pi / 4, std::numbers::pi / 2,
                                     2 * std::numbers::pi / 3, std::numbers::pi};
  // A generic pure state and a unit vector perpendicular to it.
  const sim::BlochPoint state(1.0, 1.1, 0.7);
  const sim::Vec3 v = state.position();
  sim::Vec3 w{v.z, 0.0, -v.x};
  const double wn = w.norm();
  w = {w.x / wn, w.y / wn, w.z / wn};

  Verdict out;
  double worst_z = 0, slowest = 0;
  for (std::size_t k = 0; k < angles.size(); ++k) {
    const double t = angles[k];
    const sim::Vec3 dir{std::cos(t) * v.x + std::sin(t) * w.x,
                        std::cos(t) * v.y + std::sin(t) * w.y,
                        std::cos(t) * v.z + std::sin(t) * w.z};
    sim::RandomSource rng(1000 + k);
    const auto start = Clock::now();
    std::uint64_t up = 0;
    for (std::uint64_t i = 0; i < kMillion; ++i) {
      const auto tr = sim::spin_measurement(state, dir, rng);
      up += std::get<sim::SpinOutcome>(tr.outcome) == sim::SpinOutcome::up ? 1 : 0;
    }
    const double elapsed = seconds_since(start);
    const double expected = std::pow(std::cos(t / 2), 2);
    const double freq = static_cast<double>(up) / kMillion;
    const double bound = kSigmas * binomial_sigma(expected, kMillion);
    const double err = std::abs(freq - expected);
    // cos^2(t/2) is 1 or 0 only up to rounding at the poles.
    const bool ok = bound > 1e-9 ? err < bound : err <= 1e-6;
    if (bound > 1e-9) worst_z = std::max(worst_z, err / binomial_sigma(expected, kMillion));
    slowest = std::max(slowest, elapsed);
    if (!ok || elapsed >= kSpinSecondsPerAngle) out.pass = false;
    out.detail += fmt::format("{}{:.4f}:{:.6f}/{:.6f}", k ? " " : "", t, freq, expected);
  }
  out.detail += fmt::format("; worst {:.2f} sigma; slowest {:.2f} s per angle", worst_z,
                            slowest);
  return out;
}

Verdict game_machine_law() {
  Verdict out;
  double worst_z = 0;
  for (double a_sq : {0.0, 0.1, 0.25, 0.5, 0.75, 1.0}) {
    experiments::ExperimentConfig c;
    c.a_sq = a_sq;
    c.p = c.q = 1;
    c.trials = kMillion;
    c.seed = 2000 + static_cast<std::uint64_t>(a_sq * 100);
    const auto r = experiments::run_experiment(c);
    const double freq = r.frequency(core::Outcome::OO);
    if (a_sq == 0.0 || a_sq == 1.0) {
      if (freq != a_sq) out.pass = false;
    } else {
      const double z = std::abs(freq - a_sq) / binomial_sigma(a_sq, kMillion);
      worst_z = std::max(worst_z, z);
      if (z > kSigmas) out.pass = false;
    }
    out.detail += fmt::format("{}:{} ", a_sq, freq);
  }
  out.detail += fmt::format("; worst {:.2f} sigma", worst_z);
  return out;
}

Verdict payoff_reproduction() {
  Verdict out;
  std::mt19937_64 gen(3000);
  std::uniform_real_distribution<double> u(0, 1);
  const core::PayoffMatrix m(5, 3, 1);
  double worst_ratio = 0, worst_identity = 0;
  for (int i = 0; i < 20; ++i) {
    const double p = u(gen), q = u(gen), a_sq = u(gen);
    const core::EntangledState s(a_sq);
    const auto closed = core::expected_payoffs({p, q}, s, m);
    const auto weighted = core::expected_payoffs_from_distribution(
        core::outcome_distribution({p, q}, s), m);
    const auto oracle = brute_force_payoffs(p, q, a_sq, 5, 3, 1);
    for (double d : {closed.alice - weighted.alice, closed.bob - weighted.bob,
                     closed.alice - oracle.alice, closed.bob - oracle.bob}) {
      worst_identity = std::max(worst_identity, std::abs(d));
    }
    for (sim::Backend b : {sim::Backend::machine, sim::Backend::cards}) {
      experiments::ExperimentConfig c;
      c.a_sq = a_sq;
      c.p = p;
      c.q = q;
      c.trials = kMillion;
      c.backend = b;
      c.seed = 3000 + 2 * i + (b == sim::Backend::cards ? 1 : 0);
      const auto r = experiments::run_experiment(c);
      const double ra = r.abs_error.alice / r.std_error.alice;
      const double rb = r.abs_error.bob / r.std_error.bob;
      worst_ratio = std::max({worst_ratio, ra, rb});
      if (ra > kSigmas || rb > kSigmas) out.pass = false;
    }
  }
  if (worst_identity > kExactTolerance) out.pass = false;
  out.detail = fmt::format(
      "20 profiles x 2 backends x 1e6 trials; worst |err|/SE {:.2f}; closed form vs "
      "weighted distribution and enumeration {:.1e}",
      worst_ratio, worst_identity);
  return out;
}

Verdict nonentangled_limit() {
  Verdict out;
  const core::PayoffMatrix m(5, 3, 1);
  int mismatches = 0;
  for (int i = 0; i <= 10; ++i) {
    for (int j = 0; j <= 10; ++j) {
      const core::StrategyProfile sp(i / 10.0, j / 10.0);
      const auto a = core::expected_payoffs(sp, core::EntangledState(1), m);
      const auto b = core::expected_payoffs_nonentangled(sp, m);
      if (a.alice != b.alice || a.bob != b.bob) ++mismatches;
    }
  }
  const auto eqs = core::nash_equilibria(core::EntangledState(1), m);
  const bool has_mixed = std::any_of(eqs.begin(), eqs.end(), [](const core::Equilibrium& e) {
    return e.kind == core::EquilibriumKind::mixed &&
           std::abs(e.profile.p() - 2.0 / 3) < kExactTolerance &&
           std::abs(e.profile.q() - 1.0 / 3) < kExactTolerance;
  });
  const auto grid = experiments::equilibrium_oracle_grid(core::EntangledState(1), m, 0.01);
  const bool grid_confirms = std::any_of(grid.cells.begin(), grid.cells.end(),
                                         [](const experiments::GridCell& c) {
                                           return std::abs(c.p - 2.0 / 3) <= 0.01 &&
                                                  std::abs(c.q - 1.0 / 3) <= 0.01;
                                         });
  out.pass = mismatches == 0 && has_mixed && grid_confirms && grid.agrees();
  out.detail = fmt::format(
      "{} mismatches on 121 grid points; mixed (2/3,1/3) from solver: {}; grid oracle "
      "cell: {}; oracle agrees: {}",
      mismatches, has_mixed, grid_confirms, grid.agrees());
  return out;
}

Verdict backend_equivalence() {
  Verdict out;
  const auto start = Clock::now();
  double worst_z = 0;
  int cells = 0;
  for (int k = 0; k <= 20; ++k) {
    const double a_sq = k / 20.0;
    for (int flips = 0; flips < 4; ++flips) {
      experiments::ExperimentConfig c;
      c.a_sq = a_sq;
      c.p = (flips & 2) ? 0 : 1;
      c.q = (flips & 1) ? 0 : 1;
      c.trials = kMillion;
      c.seed = 4000 + 8 * k + 2 * flips;
      c.backend = sim::Backend::machine;
      const auto machine = experiments::run_experiment(c);
      c.seed += 1;
      c.backend = sim::Backend::cards;
      const auto cards = experiments::run_experiment(c);
      ++cells;
      for (core::Outcome o : core::kAllOutcomes) {
        const double f1 = machine.frequency(o), f2 = cards.frequency(o);
        const double pooled = 0.5 * (f1 + f2);
        const double sigma = std::sqrt(2.0) * binomial_sigma(pooled, kMillion);
        if (sigma == 0.0) {
          if (f1 != f2) out.pass = false;
          continue;
        }
        const double z = std::abs(f1 - f2) / sigma;
        worst_z = std::max(worst_z, z);
        if (z > kSigmas) out.pass = false;
      }
    }
  }
  const double elapsed = seconds_since(start);
  if (elapsed >= kBackendSweepSeconds) out.pass = false;
  out.detail = fmt::format("{} cells x 1e6 trials per backend; worst {:.2f} sigma; {:.1f} s",
                           cells, worst_z, elapsed);
  return out;
}

Verdict card_termination() {
  Verdict out;
  // |a|^2 = 1/2: the first card always decides.
  int max_half = 0;
  {
    const sim::CardTarget target{core::EntangledState(0.5)};
    sim::RandomSource rng(5000);
    for (int i = 0; i < 100000; ++i) {
      max_half = std::max(max_half, sim::draw_card_branch(target, rng).draws);
    }
  }
  // Two-digit expansions k/100: at most three cards.
  int max_two = 0;
  for (int k = 1; k < 100; ++k) {
    if (k % 10 == 0) continue;
    const sim::CardTarget target{core::EntangledState(k / 100.0)};
    if (target.digits().size() != 2) out.pass = false;
    sim::RandomSource rng(5100 + k);
    for (int i = 0; i < 20000; ++i) {
      max_two = std::max(max_two, sim::draw_card_branch(target, rng).draws);
    }
  }
  // No tie-breaks at the default depth on the 0.05 grid.
  std::uint64_t ties = 0;
  for (int k = 0; k <= 20; ++k) {
    experiments::ExperimentConfig c;
    c.a_sq = k / 20.0;
    c.trials = kMillion;
    c.backend = sim::Backend::cards;
    c.max_digits = 16;
    c.seed = 5300 + k;
    ties += experiments::run_experiment(c).tie_breaks;
  }
  out.pass = out.pass && max_half == 1 && max_two <= 3 && ties == 0;
  out.detail = fmt::format(
      "a_sq=0.5 max draws {} over 1e5; two-digit a_sq max draws {}; tie-breaks {} over "
      "21 x 1e6",
      max_half, max_two, ties);
  return out;
}

Verdict center_point() {
  Verdict out;
  std::mt19937_64 gen(6000);
  std::uniform_real_distribution<double> u(-5, 5);
  double worst = 0;
  for (int g = 0; g < 20; ++g) {
    const core::PayoffMatrix m = g == 0 ? core::PayoffMatrix(5, 3, 1)
                                        : core::PayoffMatrix(u(gen), u(gen), u(gen));
    const double expected = (m.alpha() + m.beta() + 2 * m.gamma()) / 4;
    for (int k = 0; k <= 1000; ++k) {
      const auto pay = core::expected_payoffs({0.5, 0.5}, core::EntangledState(k / 1000.0), m);
      worst = std::max({worst, std::abs(pay.alice - expected), std::abs(pay.bob - expected)});
    }
  }
  out.pass = worst <= kExactTolerance;
  out.detail = fmt::format("20 games x 1001 a_sq values; worst deviation {:.1e}", worst);
  return out;
}

Verdict oracle_agreement() {
  Verdict out;
  std::mt19937_64 gen(7000);
  std::uniform_real_distribution<double> u(0, 1);
  int agreed = 0;
  for (int i = 0; i < 50; ++i) {
    std::array<double, 3> v{10 * u(gen) - 5, 10 * u(gen) - 5, 10 * u(gen) - 5};
    std::sort(v.rbegin(), v.rend());
    const core::PayoffMatrix m(v[0], v[1], v[2]);
    const auto r = experiments::equilibrium_oracle_grid(core::EntangledState(u(gen)), m, 0.01);
    if (r.agrees()) ++agreed;
  }
  out.pass = agreed == 50;
  out.detail = fmt::format("{}/50 instances agree in both directions at step 0.01", agreed);
  return out;
}

std::string scripted_session(const std::filesystem::path& dir) {
  server::ServiceOptions o;
  o.log_dir = dir;
  auto n = std::make_shared<int>(0);
  o.token_source = [n] { return "id" + std::to_string(++*n); };
  server::SessionService service(o);
  using nlohmann::ordered_json;
  auto call = [&](const std::string& kind, ordered_json payload) {
    return service.handle({{"protocol_version", 1}, {"kind", kind}, {"payload", payload}});
  };
  const auto created = call("create", {{"seed", 42}});
  const std::string id = created["payload"]["session_id"];
  const std::string alice = created["payload"]["token"];
  const std::string bob = call("join", {{"session_id", id}})["payload"]["token"];
  auto as = [&](const std::string& token, const std::string& kind, ordered_json payload) {
    payload["session_id"] = id;
    payload["token"] = token;
    return call(kind, payload);
  };
  const std::vector<std::array<double, 4>> games{
      {5, 3, 1, 0.55}, {5, 3, 1, 0.5}, {4, 2, 0, 0.123}};
  for (const auto& g : games) {
    as(alice, "configure", {{"alpha", g[0]}, {"beta", g[1]}, {"gamma", g[2]}, {"a_sq", g[3]}});
    as(alice, "commit_move", {{"move", {{"kind", "mixed"}, {"prob_identity", 0.4}}}});
    as(bob, "commit_move", {{"move", "flip"}});
    while (!as(bob, "draw_card", ordered_json::object())["payload"]["decided"].get<bool>()) {
    }
  }
  std::ifstream in(*service.log_path(id), std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Verdict replay_determinism() {
  const auto base = std::filesystem::temp_directory_path() / "qgame_acceptance_replay";
  std::filesystem::remove_all(base);
  const std::string first = scripted_session(base / "run1");
  const std::string second = scripted_session(base / "run2");
  std::vector<std::string> lines;
  std::istringstream split(first);
  for (std::string line; std::getline(split, line);) lines.push_back(line);
  const bool replays = server::replay_events(lines) == lines;
  Verdict out;
  out.pass = !first.empty() && first == second && replays;
  out.detail = fmt::format("{} log lines, {} bytes; identical: {}; re-driven replay matches: {}",
                           lines.size(), first.size(), first == second, replays);
  std::filesystem::remove_all(base);
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"spin_law", spin_law},
      {"game_machine_law", game_machine_law},
      {"payoff_reproduction", payoff_reproduction},
      {"nonentangled_limit", nonentangled_limit},
      {"backend_equivalence", backend_equivalence},
      {"card_termination", card_termination},
      {"center_point_independence", center_point},
      {"equilibrium_oracle_agreement", oracle_agreement},
      {"replay_determinism", replay_determinism},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failures += v.pass ? 0 : 1;
    fmt::print("{} {:<30} {}\n", v.pass ? "PASS" : "FAIL", name, v.detail);
    std::fflush(stdout);
  }
  fmt::print("{} of {} criteria passed\n", criteria.size() - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
