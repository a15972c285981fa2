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

#include "qgame/core/game.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qgame::core {

namespace {

bool is_probability(double x) { return x >= 0.0 && x <= 1.0; }

}  // namespace

PayoffMatrix::PayoffMatrix(double alpha, double beta, double gamma)
    : alpha_(alpha), beta_(beta), gamma_(gamma) {
  if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(gamma)) {
    throw std::domain_error("payoff values must be finite");
  }
}

EntangledState::EntangledState(double a_sq) : a_sq_(a_sq) {
  if (!is_probability(a_sq)) {
    throw std::domain_error("a_sq must lie in [0, 1], got " +
                            std::to_string(a_sq));
  }
}

StrategyProfile::StrategyProfile(double p, double q) : p_(p), q_(q) {
  if (!is_probability(p) || !is_probability(q)) {
    throw std::domain_error("strategy probabilities must lie in [0, 1]");
  }
}

std::string_view to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::OO: return "OO";
    case Outcome::OT: return "OT";
    case Outcome::TO: return "TO";
    case Outcome::TT: return "TT";
  }
  return "??";
}

Outcome outcome_from_string(std::string_view text) {
  for (Outcome o : kAllOutcomes) {
    if (to_string(o) == text) return o;
  }
  throw std::invalid_argument("unknown outcome '" + std::string(text) + "'");
}

Outcome flip_labels(Outcome outcome, bool flip_alice, bool flip_bob) {
  auto bits = static_cast<unsigned>(outcome);
  if (flip_alice) bits ^= 2u;
  if (flip_bob) bits ^= 1u;
  return static_cast<Outcome>(bits);
}

PayoffPair payoff_for(Outcome outcome, const PayoffMatrix& payoffs) {
  switch (outcome) {
    case Outcome::OO: return {payoffs.alpha(), payoffs.beta()};
    case Outcome::TT: return {payoffs.beta(), payoffs.alpha()};
    case Outcome::OT:
    case Outcome::TO: return {payoffs.gamma(), payoffs.gamma()};
  }
  return {};
}

OutcomeDistribution::OutcomeDistribution(
    const std::array<double, 4>& probabilities)
    : probabilities_(probabilities) {
  double total = 0.0;
  for (double x : probabilities_) {
    if (!(x >= -1e-12 && x <= 1.0 + 1e-12)) {
      throw std::domain_error("outcome probability outside [0, 1]");
    }
    total += x;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::domain_error("outcome probabilities do not sum to 1");
  }
}

OutcomeDistribution outcome_distribution(const StrategyProfile& profile,
                                         const EntangledState& state) {
  const double p = profile.p();
  const double q = profile.q();
  const double a = state.a_sq();
  const double b = state.b_sq();
  // Four flip configurations; within each, branch A (probability |a|^2)
  // would read (O,O) before the flips and branch B would read (T,T).
  const double none = p * q;
  const double both = (1.0 - p) * (1.0 - q);
  const double alice_only = (1.0 - p) * q;
  const double bob_only = p * (1.0 - q);
  std::array<double, 4> probs{};
  probs[static_cast<std::size_t>(Outcome::OO)] = none * a + both * b;
  probs[static_cast<std::size_t>(Outcome::TT)] = none * b + both * a;
  probs[static_cast<std::size_t>(Outcome::TO)] = alice_only * a + bob_only * b;
  probs[static_cast<std::size_t>(Outcome::OT)] = bob_only * a + alice_only * b;
  return OutcomeDistribution(probs);
}

PayoffPair expected_payoffs(const StrategyProfile& profile,
                            const EntangledState& state,
                            const PayoffMatrix& payoffs) {
  const double p = profile.p();
  const double q = profile.q();
  const double a = state.a_sq();
  const double b = state.b_sq();
  const double alpha = payoffs.alpha();
  const double beta = payoffs.beta();
  const double gamma = payoffs.gamma();
  const double cross = alpha + beta - 2.0 * gamma;

  const double alice_base = -alpha * b - beta * a + gamma;
  const double alice = p * (q * cross + alice_base) + q * alice_base +
                       alpha * b + beta * a;

  const double bob_base = -alpha * a - beta * b + gamma;
  const double bob =
      q * (p * cross + bob_base) + p * bob_base + alpha * a + beta * b;
  return {alice, bob};
}

PayoffPair expected_payoffs_from_distribution(const OutcomeDistribution& dist,
                                              const PayoffMatrix& payoffs) {
  PayoffPair total;
  for (Outcome o : kAllOutcomes) {
    const PayoffPair entry = payoff_for(o, payoffs);
    total.alice += dist[o] * entry.alice;
    total.bob += dist[o] * entry.bob;
  }
  return total;
}

PayoffPair expected_payoffs_nonentangled(const StrategyProfile& profile,
                                         const PayoffMatrix& payoffs) {
  return expected_payoffs(profile, EntangledState(1.0), payoffs);
}

}  // namespace qgame::core
