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

#ifndef QGAME_CORE_GAME_HPP_
#define QGAME_CORE_GAME_HPP_

#include <array>
#include <cstdint>
#include <string_view>

// Exact mathematics of the restricted two-player, two-strategy quantum game.
//
// Each player holds one qubit of the initial state a|OO> + b|TT> and either
// leaves it alone (identity) or exchanges the O/T labels on their side
// (spin-flip). Only |a|^2 enters any probability, so the state is stored as
// that single real.

namespace qgame::core {

inline constexpr double kTieTolerance = 1e-12;

// Battle-of-the-Sexes shaped bimatrix:
//
//               Bob: O          Bob: T
//   Alice: O   (alpha, beta)   (gamma, gamma)
//   Alice: T   (gamma, gamma)  (beta, alpha)
class PayoffMatrix {
 public:
  // Throws std::domain_error unless all three values are finite.
  PayoffMatrix(double alpha, double beta, double gamma);

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double gamma() const { return gamma_; }

  // True for a genuine Battle of the Sexes (alpha > beta > gamma).
  bool is_bos() const { return alpha_ > beta_ && beta_ > gamma_; }

  friend bool operator==(const PayoffMatrix&, const PayoffMatrix&) = default;

 private:
  double alpha_;
  double beta_;
  double gamma_;
};

// |a|^2 of the initial state. |b|^2 is always derived, never stored.
class EntangledState {
 public:
  // Throws std::domain_error unless 0 <= a_sq <= 1.
  explicit EntangledState(double a_sq);

  double a_sq() const { return a_sq_; }
  double b_sq() const { return 1.0 - a_sq_; }

  friend bool operator==(const EntangledState&, const EntangledState&) = default;

 private:
  double a_sq_;
};

// p: probability Alice applies the identity; q: same for Bob.
class StrategyProfile {
 public:
  // Throws std::domain_error unless both lie in [0, 1].
  StrategyProfile(double p, double q);

  double p() const { return p_; }
  double q() const { return q_; }

  friend bool operator==(const StrategyProfile&, const StrategyProfile&) = default;

 private:
  double p_;
  double q_;
};

// First letter is Alice's label, second Bob's. The numeric value packs
// "Alice reads T" into bit 1 and "Bob reads T" into bit 0.
enum class Outcome : std::uint8_t { OO = 0, OT = 1, TO = 2, TT = 3 };

inline constexpr std::array<Outcome, 4> kAllOutcomes = {
    Outcome::OO, Outcome::OT, Outcome::TO, Outcome::TT};

std::string_view to_string(Outcome outcome);
// Throws std::invalid_argument on anything but "OO", "OT", "TO", "TT".
Outcome outcome_from_string(std::string_view text);

// Exchanges the given players' letters.
Outcome flip_labels(Outcome outcome, bool flip_alice, bool flip_bob);

struct PayoffPair {
  double alice = 0.0;
  double bob = 0.0;

  friend bool operator==(const PayoffPair&, const PayoffPair&) = default;
};

// Bimatrix entry paid for a realized outcome.
PayoffPair payoff_for(Outcome outcome, const PayoffMatrix& payoffs);

class OutcomeDistribution {
 public:
  // Throws std::domain_error if an entry leaves [0, 1] or the total
  // differs from 1 by more than 1e-12.
  explicit OutcomeDistribution(const std::array<double, 4>& probabilities);

  double operator[](Outcome outcome) const {
    return probabilities_[static_cast<std::size_t>(outcome)];
  }
  const std::array<double, 4>& probabilities() const { return probabilities_; }

 private:
  std::array<double, 4> probabilities_;
};

OutcomeDistribution outcome_distribution(const StrategyProfile& profile,
                                         const EntangledState& state);

// Closed-form expected payoffs, written in the affine-in-own-strategy form:
//   A = p[q(a+b-2g) - a|b|^2 - b|a|^2 + g] + q(-a|b|^2 - b|a|^2 + g)
//       + a|b|^2 + b|a|^2
// and symmetrically for Bob with |a|^2 and |b|^2 exchanged.
PayoffPair expected_payoffs(const StrategyProfile& profile,
                            const EntangledState& state,
                            const PayoffMatrix& payoffs);

// Bimatrix-weighted outcome distribution; must agree with expected_payoffs.
PayoffPair expected_payoffs_from_distribution(const OutcomeDistribution& dist,
                                              const PayoffMatrix& payoffs);

// The |a|^2 = 1 limit (initial state |OO>). This reproduces the classical
// mixed-strategy Battle of the Sexes. Bob's payoff is
//   q[p(alpha + beta - 2 gamma) + gamma - alpha] + p(gamma - alpha) + alpha.
PayoffPair expected_payoffs_nonentangled(const StrategyProfile& profile,
                                         const PayoffMatrix& payoffs);

}  // namespace qgame::core

#endif  // QGAME_CORE_GAME_HPP_
