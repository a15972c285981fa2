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

#ifndef QGAME_SIM_MEASUREMENT_HPP_
#define QGAME_SIM_MEASUREMENT_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "qgame/core/game.hpp"
#include "qgame/sim/bloch.hpp"
#include "qgame/sim/card_interval.hpp"
#include "qgame/sim/random_source.hpp"

// Stochastic measurement backends.
//
// The charged-sphere machine: a measurement along u places charges q1 at u
// and q2 = Q - q1 at -u with q1 uniform on [0, Q]. The constants (Coulomb
// constant, particle charge, Q) cancel from every force comparison, so only
// the fraction u1 = q1/Q in [0, 1) is drawn. For a pure state at angle theta
// from u the distances are 2 sin(theta/2) and 2 cos(theta/2), and the
// particle goes up iff u1 > sin^2(theta/2).
//
// The entangled game machine compares q1 |a|^2 against q2 |b|^2, i.e. it
// selects branch A iff u1 > |b|^2. The connecting rod is not simulated; for
// identity/flip strategies it never affects the result.
//
// The card backend draws uniform digits 0..9 with replacement until the
// emerging number is provably above or below |a|^2 (see CardInterval).

namespace qgame::sim {

enum class Backend : std::uint8_t { machine, cards };
enum class SpinOutcome : std::uint8_t { up, down };

std::string_view to_string(Backend backend);
std::string_view to_string(SpinOutcome outcome);
// Throws std::invalid_argument for anything but "machine" / "cards".
Backend backend_from_string(std::string_view text);

struct Flips {
  bool alice = false;
  bool bob = false;
};

using MeasuredValue = std::variant<core::Outcome, SpinOutcome, Branch>;

struct MeasurementTranscript {
  Backend backend = Backend::machine;
  MeasuredValue outcome = core::Outcome::OO;
  // Raw branch for two-player measurements.
  std::optional<Branch> branch;
  // Present iff backend == machine.
  std::optional<double> charge_fraction;
  std::vector<std::uint8_t> digits;
  int draws_used = 0;
  // max_digits ran out with the interval still straddling |a|^2.
  bool tie_break = false;

  friend bool operator==(const MeasurementTranscript&,
                         const MeasurementTranscript&) = default;
};

inline constexpr int kDefaultMaxDigits = 16;
inline constexpr int kMaxDigitsLimit = 18;

SpinOutcome spin_outcome_for(double angle, double charge_fraction);

// Throws std::domain_error for interior (mixed) states or a non-unit
// direction.
MeasurementTranscript spin_measurement(const BlochPoint& state,
                                       const Vec3& direction,
                                       RandomSource& rng);

// A iff u1 > |b|^2.
Branch machine_branch_for(const core::EntangledState& state,
                          double charge_fraction);

// A -> (O,O), B -> (T,T), then each flipping player's letter is exchanged.
core::Outcome outcome_for_branch(Branch branch, Flips flips);

MeasurementTranscript machine_game_measurement(const core::EntangledState& state,
                                               Flips flips, RandomSource& rng);
// Same measurement with the charge fraction supplied by the caller.
MeasurementTranscript machine_game_measurement_from_draw(
    const core::EntangledState& state, Flips flips, double charge_fraction);

using DigitSource = std::function<int()>;

// Replays a fixed digit list; throws std::out_of_range when exhausted.
DigitSource digits_from(std::span<const int> digits);

// Raw card measurement; transcript outcome is the branch. If max_digits runs
// out undecided the result is branch B with tie_break set. Throws
// std::domain_error unless 1 <= max_digits <= 18.
MeasurementTranscript card_measurement(const CardTarget& target,
                                       const DigitSource& digits,
                                       int max_digits = kDefaultMaxDigits);
MeasurementTranscript card_measurement(const core::EntangledState& state,
                                       const DigitSource& digits,
                                       int max_digits = kDefaultMaxDigits);

MeasurementTranscript card_game_measurement(const core::EntangledState& state,
                                            Flips flips, RandomSource& rng,
                                            int max_digits = kDefaultMaxDigits);

// Allocation-free card measurement for Monte Carlo loops.
struct CardResult {
  Branch branch = Branch::B;
  int draws = 0;
  bool tie_break = false;
};
CardResult draw_card_branch(const CardTarget& target, RandomSource& rng,
                            int max_digits = kDefaultMaxDigits);

}  // namespace qgame::sim

#endif  // QGAME_SIM_MEASUREMENT_HPP_
