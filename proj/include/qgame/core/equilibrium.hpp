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

#ifndef QGAME_CORE_EQUILIBRIUM_HPP_
#define QGAME_CORE_EQUILIBRIUM_HPP_

#include <string_view>
#include <vector>

#include "qgame/core/game.hpp"

namespace qgame::core {

// Best response of a player whose payoff is affine in their own identity
// probability. Ties within kTieTolerance report the whole interval.
enum class BestResponse { flip /* {0} */, identity /* {1} */, any /* [0,1] */ };

std::string_view to_string(BestResponse response);

// Whether x (a probability) is a member of the response set. Pure responses
// accept x within kTieTolerance of their endpoint.
bool contains(BestResponse response, double x);

// Slope of Alice's payoff in p at Bob's strategy q:
//   q(alpha + beta - 2 gamma) - alpha |b|^2 - beta |a|^2 + gamma.
double alice_coefficient(double q, const EntangledState& state,
                         const PayoffMatrix& payoffs);
// Slope of Bob's payoff in q at Alice's strategy p:
//   p(alpha + beta - 2 gamma) - alpha |a|^2 - beta |b|^2 + gamma.
double bob_coefficient(double p, const EntangledState& state,
                       const PayoffMatrix& payoffs);

// Throw std::domain_error when the opponent probability is outside [0, 1].
BestResponse best_response_alice(double q, const EntangledState& state,
                                 const PayoffMatrix& payoffs);
BestResponse best_response_bob(double p, const EntangledState& state,
                               const PayoffMatrix& payoffs);

enum class EquilibriumKind { pure, mixed, component };

std::string_view to_string(EquilibriumKind kind);

struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

struct Equilibrium {
  // For points this is the equilibrium; for components it is the center of
  // the axis-aligned box [p_range] x [q_range].
  StrategyProfile profile{0.0, 0.0};
  PayoffPair payoffs;
  EquilibriumKind kind = EquilibriumKind::pure;
  Range p_range;
  Range q_range;
};

// All mutual best responses of the bilinear game, computed as the
// intersection of the two best-response graphs. Isolated points are reported
// as pure (both coordinates in {0, 1}) or mixed; segments and rectangles of
// equilibria (degenerate payoffs) are reported once as a component.
//
// Ordering: pure equilibria first, then mixed, then components; within a
// kind, by descending p then descending q.
std::vector<Equilibrium> nash_equilibria(const EntangledState& state,
                                         const PayoffMatrix& payoffs);

}  // namespace qgame::core

#endif  // QGAME_CORE_EQUILIBRIUM_HPP_
