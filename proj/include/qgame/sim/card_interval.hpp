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

#ifndef QGAME_SIM_CARD_INTERVAL_HPP_
#define QGAME_SIM_CARD_INTERVAL_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qgame/core/game.hpp"

namespace qgame::sim {

// Raw measurement branch before any label exchange. Branch A has
// probability |a|^2 and reads (O,O) when nobody flipped.
enum class Branch : std::uint8_t { A, B };

std::string_view to_string(Branch branch);

// |a|^2 prepared for digit-by-digit comparison.
//
// |a|^2 is compared as the exact decimal given by its shortest round-trip
// representation (0.55 is 55/100, not the nearest binary double), so every
// comparison is an exact integer digit comparison.
class CardTarget {
 public:
  explicit CardTarget(const core::EntangledState& state);

  // Decision after drawing `digit` at 1-based `position`, given that every
  // earlier digit equalled the target's. Empty while the interval still
  // straddles |a|^2.
  std::optional<Branch> compare(std::size_t position, int digit) const;

  bool is_one() const { return is_one_; }
  // Decimal digits of |a|^2 after the point, without trailing zeros ("55"
  // for 0.55, "" for 0).
  const std::string& digits() const { return digits_; }

 private:
  bool is_one_ = false;
  std::string digits_;
};

// Digit-by-digit construction of a uniform number in [0, 1), compared
// against |a|^2 as each card is turned over.
//
// After digits d1..dn the number is known to lie in [lo, hi) with
// lo = 0.d1..dn and hi = lo + 10^-n. The comparison stops with branch A as
// soon as hi <= |a|^2 and with branch B as soon as lo >= |a|^2.
// Interval endpoints are reported as exact decimal strings.
class CardInterval {
 public:
  explicit CardInterval(const core::EntangledState& state)
      : target_(state) {}
  explicit CardInterval(CardTarget target) : target_(std::move(target)) {}

  // Turns over one card. Throws std::logic_error once decided and
  // std::domain_error for a digit outside 0..9.
  std::optional<Branch> push(int digit);

  std::optional<Branch> decision() const { return decision_; }
  std::span<const std::uint8_t> digits() const { return digits_; }
  std::size_t draws() const { return digits_.size(); }

  // Exact decimal endpoints of the current interval, e.g. "0.55" / "0.56".
  std::string lower_decimal() const;
  std::string upper_decimal() const;
  const CardTarget& target() const { return target_; }

 private:
  CardTarget target_;
  std::vector<std::uint8_t> digits_;
  std::optional<Branch> decision_;
};

// Shortest round-trip decimal for a finite double ("0.55", "1", "2.5").
std::string shortest_decimal(double value);

}  // namespace qgame::sim

#endif  // QGAME_SIM_CARD_INTERVAL_HPP_
