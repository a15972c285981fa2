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

#include "qgame/sim/measurement.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>

namespace qgame::sim {

namespace {

void require_max_digits(int max_digits) {
  if (max_digits < 1 || max_digits > kMaxDigitsLimit) {
    throw std::domain_error("max_digits must lie in [1, 18]");
  }
}

MeasurementTranscript game_transcript(Backend backend, Branch branch,
                                      Flips flips) {
  MeasurementTranscript t;
  t.backend = backend;
  t.branch = branch;
  t.outcome = outcome_for_branch(branch, flips);
  return t;
}

}  // namespace

std::string_view to_string(Backend backend) {
  return backend == Backend::machine ? "machine" : "cards";
}

std::string_view to_string(SpinOutcome outcome) {
  return outcome == SpinOutcome::up ? "up" : "down";
}

Backend backend_from_string(std::string_view text) {
  if (text == "machine") return Backend::machine;
  if (text == "cards") return Backend::cards;
  throw std::invalid_argument("unknown backend '" + std::string(text) + "'");
}

SpinOutcome spin_outcome_for(double angle, double charge_fraction) {
  const double s = std::sin(0.5 * angle);
  return charge_fraction > s * s ? SpinOutcome::up : SpinOutcome::down;
}

MeasurementTranscript spin_measurement(const BlochPoint& state,
                                       const Vec3& direction,
                                       RandomSource& rng) {
  if (!state.is_pure()) {
    throw std::domain_error(
        "the sphere machine measures surface (pure) states only");
  }
  const double angle = angle_between(state, direction);
  const double u1 = rng.uniform(Substream::charge);
  MeasurementTranscript t;
  t.backend = Backend::machine;
  t.outcome = spin_outcome_for(angle, u1);
  t.charge_fraction = u1;
  t.draws_used = 1;
  return t;
}

Branch machine_branch_for(const core::EntangledState& state,
                          double charge_fraction) {
  return charge_fraction > state.b_sq() ? Branch::A : Branch::B;
}

core::Outcome outcome_for_branch(Branch branch, Flips flips) {
  const core::Outcome raw =
      branch == Branch::A ? core::Outcome::OO : core::Outcome::TT;
  return core::flip_labels(raw, flips.alice, flips.bob);
}

MeasurementTranscript machine_game_measurement_from_draw(
    const core::EntangledState& state, Flips flips, double charge_fraction) {
  MeasurementTranscript t = game_transcript(
      Backend::machine, machine_branch_for(state, charge_fraction), flips);
  t.charge_fraction = charge_fraction;
  t.draws_used = 1;
  return t;
}

MeasurementTranscript machine_game_measurement(const core::EntangledState& state,
                                               Flips flips, RandomSource& rng) {
  return machine_game_measurement_from_draw(state, flips,
                                            rng.uniform(Substream::charge));
}

DigitSource digits_from(std::span<const int> digits) {
  auto list = std::make_shared<std::vector<int>>(digits.begin(), digits.end());
  auto next = std::make_shared<std::size_t>(0);
  return [list, next]() {
    if (*next >= list->size()) throw std::out_of_range("digit list exhausted");
    return (*list)[(*next)++];
  };
}

MeasurementTranscript card_measurement(const CardTarget& target,
                                       const DigitSource& digits,
                                       int max_digits) {
  require_max_digits(max_digits);
  CardInterval interval(target);
  while (!interval.decision() &&
         interval.draws() < static_cast<std::size_t>(max_digits)) {
    interval.push(digits());
  }
  MeasurementTranscript t;
  t.backend = Backend::cards;
  t.branch = interval.decision().value_or(Branch::B);
  t.outcome = *t.branch;
  t.tie_break = !interval.decision().has_value();
  t.digits.assign(interval.digits().begin(), interval.digits().end());
  t.draws_used = static_cast<int>(t.digits.size());
  return t;
}

MeasurementTranscript card_measurement(const core::EntangledState& state,
                                       const DigitSource& digits,
                                       int max_digits) {
  return card_measurement(CardTarget(state), digits, max_digits);
}

MeasurementTranscript card_game_measurement(const core::EntangledState& state,
                                            Flips flips, RandomSource& rng,
                                            int max_digits) {
  MeasurementTranscript t = card_measurement(
      state, [&rng] { return rng.digit(); }, max_digits);
  t.outcome = outcome_for_branch(*t.branch, flips);
  return t;
}

CardResult draw_card_branch(const CardTarget& target, RandomSource& rng,
                            int max_digits) {
  require_max_digits(max_digits);
  for (int n = 1; n <= max_digits; ++n) {
    if (auto branch = target.compare(static_cast<std::size_t>(n), rng.digit())) {
      return {*branch, n, false};
    }
  }
  return {Branch::B, max_digits, true};
}

}  // namespace qgame::sim
