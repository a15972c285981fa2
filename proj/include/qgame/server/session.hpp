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

#ifndef QGAME_SERVER_SESSION_HPP_
#define QGAME_SERVER_SESSION_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qgame/core/equilibrium.hpp"
#include "qgame/core/game.hpp"
#include "qgame/sim/card_interval.hpp"
#include "qgame/sim/measurement.hpp"
#include "qgame/sim/random_source.hpp"

namespace qgame::server {

inline constexpr int kProtocolVersion = 1;

// Lobby -> Configured -> Committing -> Measuring -> Revealed, then
// Revealed -> Configured -> Committing for the next round. Configured is
// passed through by every configure call.
enum class Phase { lobby, configured, committing, measuring, revealed };
enum class Seat { alice, bob };

std::string_view to_string(Phase phase);
std::string_view to_string(Seat seat);
Seat other(Seat seat);

enum class ErrorCode {
  bad_request,
  unsupported_version,
  unknown_session,
  seat_taken,
  bad_token,
  wrong_phase,
  double_commit,
  out_of_range,
};

std::string_view to_string(ErrorCode code);

class SessionError : public std::runtime_error {
 public:
  SessionError(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

struct Move {
  enum class Kind { identity, flip, mixed };

  Kind kind = Kind::identity;
  // Probability of applying the identity; 1 or 0 for pure moves.
  double prob_identity = 1.0;

  static Move identity() { return {Kind::identity, 1.0}; }
  static Move flip() { return {Kind::flip, 0.0}; }
  // Throws SessionError(out_of_range) unless p lies in [0, 1].
  static Move mixed(double p);
};

struct GameSetup {
  core::PayoffMatrix payoffs{5, 3, 1};
  core::EntangledState state{1.0};
  // Finish the card measurement in one step once both seats committed.
  bool auto_draw = false;
};

struct RoundRecord {
  int round_index = 0;
  GameSetup setup;
  Move alice_move;
  Move bob_move;
  // The pure actions actually applied (mixed moves are sampled).
  bool alice_flipped = false;
  bool bob_flipped = false;
  sim::MeasurementTranscript transcript;
  core::Outcome outcome = core::Outcome::OO;
  core::PayoffPair payoffs;
};

struct DrawResult {
  int digit = 0;
  std::string lower;
  std::string upper;
  bool decided = false;
  bool tie_break = false;
  std::optional<RoundRecord> round;
};

struct WhatIfResult {
  core::PayoffPair payoffs;
  core::BestResponse best_response;
};

// Audit events, in order of occurrence. Logged verbatim by SessionLog; they
// never carry tokens or the session id.
using EventSink = std::function<void(const nlohmann::ordered_json&)>;

// One two-seat match. Not thread-safe: callers serialize access.
class Session {
 public:
  Session(std::string id, std::uint64_t seed, std::string alice_token,
          EventSink sink = {});

  const std::string& id() const { return id_; }
  std::uint64_t seed() const { return seed_; }
  Phase phase() const { return phase_; }
  int round_index() const { return round_index_; }
  const std::optional<GameSetup>& setup() const { return setup_; }
  const std::vector<RoundRecord>& history() const { return history_; }
  core::PayoffPair cumulative() const { return cumulative_; }
  bool seat_filled(Seat seat) const;
  bool is_bot(Seat seat) const { return seat == Seat::bob && bob_is_bot_; }
  bool has_committed(Seat seat) const;

  // Throws SessionError(bad_token).
  Seat authenticate(std::string_view token) const;

  // Fills Bob's seat. Throws wrong_phase outside the lobby, seat_taken if
  // already filled.
  void join(std::string bob_token);
  // Fills Bob's seat with the built-in opponent, which commits its best
  // response to a uniform prior (p = 1/2) at the start of every round.
  void seat_bot();

  // Allowed in the lobby once both seats are filled, and between rounds.
  // Leaves the session in Committing.
  void configure(const GameSetup& setup);
  void commit(Seat seat, const Move& move);
  // Turns over one card. Throws wrong_phase unless Measuring.
  DrawResult draw_card();
  // Pure query; requires a configured game.
  WhatIfResult what_if(Seat seat, double own, double assumed_opponent) const;

  // Seat-scoped snapshot. Before Revealed it never encodes the opponent's
  // committed move or sampled action.
  nlohmann::ordered_json view(Seat seat) const;

 private:
  void transition(Phase next);
  void emit(nlohmann::ordered_json event) const;
  void begin_measurement();
  DrawResult push_digit(int digit);
  void require_phase(std::initializer_list<Phase> allowed,
                     std::string_view action) const;

  std::string id_;
  std::uint64_t seed_;
  sim::RandomSource rng_;
  std::string alice_token_;
  std::optional<std::string> bob_token_;
  bool bob_is_bot_ = false;
  EventSink sink_;

  Phase phase_ = Phase::lobby;
  int round_index_ = 0;
  std::optional<GameSetup> setup_;
  std::optional<Move> alice_move_;
  std::optional<Move> bob_move_;
  bool alice_flipped_ = false;
  bool bob_flipped_ = false;
  std::optional<sim::CardInterval> interval_;
  std::vector<RoundRecord> history_;
  core::PayoffPair cumulative_;
};

nlohmann::ordered_json move_to_json(const Move& move);
// Accepts "identity", "flip", {"kind": ..., "prob_identity": ...}.
Move move_from_json(const nlohmann::ordered_json& j);
nlohmann::ordered_json round_to_json(const RoundRecord& round);
nlohmann::ordered_json setup_to_json(const GameSetup& setup);

// Decimal string for payoffs and other reals on the wire.
std::string wire_decimal(double value);

}  // namespace qgame::server

#endif  // QGAME_SERVER_SESSION_HPP_
