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

#include "qgame/server/session.hpp"

#include <algorithm>
#include <utility>

#include "qgame/core/equilibrium.hpp"
#include "qgame/sim/transcript_json.hpp"

namespace qgame::server {

namespace {

using nlohmann::ordered_json;

ordered_json pair_json(const core::PayoffPair& pair) {
  return {{"alice", wire_decimal(pair.alice)}, {"bob", wire_decimal(pair.bob)}};
}

// Labels placed at the 1 end and the 0 end of the board; a flip exchanges
// them.
ordered_json labels_json(bool flipped) {
  return {{"near_one", flipped ? "T" : "O"}, {"near_zero", flipped ? "O" : "T"}};
}

}  // namespace

std::string wire_decimal(double value) { return sim::shortest_decimal(value); }

std::string_view to_string(Phase phase) {
  switch (phase) {
    case Phase::lobby: return "lobby";
    case Phase::configured: return "configured";
    case Phase::committing: return "committing";
    case Phase::measuring: return "measuring";
    case Phase::revealed: return "revealed";
  }
  return "?";
}

std::string_view to_string(Seat seat) {
  return seat == Seat::alice ? "alice" : "bob";
}

Seat other(Seat seat) { return seat == Seat::alice ? Seat::bob : Seat::alice; }

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::bad_request: return "bad_request";
    case ErrorCode::unsupported_version: return "unsupported_version";
    case ErrorCode::unknown_session: return "unknown_session";
    case ErrorCode::seat_taken: return "seat_taken";
    case ErrorCode::bad_token: return "bad_token";
    case ErrorCode::wrong_phase: return "wrong_phase";
    case ErrorCode::double_commit: return "double_commit";
    case ErrorCode::out_of_range: return "out_of_range";
  }
  return "?";
}

Move Move::mixed(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw SessionError(ErrorCode::out_of_range,
                       "mixed move probability must lie in [0, 1]");
  }
  return {Kind::mixed, p};
}

ordered_json move_to_json(const Move& move) {
  switch (move.kind) {
    case Move::Kind::identity: return {{"kind", "identity"}};
    case Move::Kind::flip: return {{"kind", "flip"}};
    case Move::Kind::mixed:
      return {{"kind", "mixed"}, {"prob_identity", wire_decimal(move.prob_identity)}};
  }
  return {};
}

ordered_json setup_to_json(const GameSetup& setup) {
  return {{"alpha", wire_decimal(setup.payoffs.alpha())},
          {"beta", wire_decimal(setup.payoffs.beta())},
          {"gamma", wire_decimal(setup.payoffs.gamma())},
          {"a_sq", wire_decimal(setup.state.a_sq())},
          {"is_bos", setup.payoffs.is_bos()},
          {"auto_draw", setup.auto_draw}};
}

ordered_json round_to_json(const RoundRecord& round) {
  return {{"round_index", round.round_index},
          {"game", setup_to_json(round.setup)},
          {"moves",
           {{"alice", move_to_json(round.alice_move)},
            {"bob", move_to_json(round.bob_move)}}},
          {"flipped", {{"alice", round.alice_flipped}, {"bob", round.bob_flipped}}},
          {"transcript", sim::transcript_to_json(round.transcript)},
          {"outcome", std::string(core::to_string(round.outcome))},
          {"payoffs", pair_json(round.payoffs)}};
}

Session::Session(std::string id, std::uint64_t seed, std::string alice_token,
                 EventSink sink)
    : id_(std::move(id)),
      seed_(seed),
      rng_(seed),
      alice_token_(std::move(alice_token)),
      sink_(std::move(sink)) {
  emit({{"event", "created"},
        {"protocol_version", kProtocolVersion},
        {"rng", std::string(sim::RandomSource::kAlgorithm) + "/" +
                    std::to_string(sim::RandomSource::kVersion)},
        {"seed", std::to_string(seed)}});
}

void Session::emit(ordered_json event) const {
  if (sink_) sink_(event);
}

void Session::transition(Phase next) {
  emit({{"event", "phase"},
        {"from", std::string(to_string(phase_))},
        {"to", std::string(to_string(next))}});
  phase_ = next;
}

void Session::require_phase(std::initializer_list<Phase> allowed,
                            std::string_view action) const {
  if (std::find(allowed.begin(), allowed.end(), phase_) == allowed.end()) {
    throw SessionError(ErrorCode::wrong_phase,
                       std::string(action) + " is not allowed in phase " +
                           std::string(to_string(phase_)));
  }
}

bool Session::seat_filled(Seat seat) const {
  return seat == Seat::alice || bob_token_.has_value() || bob_is_bot_;
}

bool Session::has_committed(Seat seat) const {
  return seat == Seat::alice ? alice_move_.has_value() : bob_move_.has_value();
}

Seat Session::authenticate(std::string_view token) const {
  if (!token.empty()) {
    if (token == alice_token_) return Seat::alice;
    if (bob_token_ && token == *bob_token_) return Seat::bob;
  }
  throw SessionError(ErrorCode::bad_token, "token does not match a seat");
}

void Session::join(std::string bob_token) {
  if (seat_filled(Seat::bob)) {
    throw SessionError(ErrorCode::seat_taken, "Bob's seat is already taken");
  }
  require_phase({Phase::lobby}, "join");
  bob_token_ = std::move(bob_token);
  emit({{"event", "joined"}, {"seat", "bob"}});
}

void Session::seat_bot() {
  if (seat_filled(Seat::bob)) {
    throw SessionError(ErrorCode::seat_taken, "Bob's seat is already taken");
  }
  require_phase({Phase::lobby}, "seating the bot");
  bob_is_bot_ = true;
  emit({{"event", "joined"}, {"seat", "bob"}, {"bot", true}});
}

void Session::configure(const GameSetup& setup) {
  require_phase({Phase::lobby, Phase::configured, Phase::revealed}, "configure");
  if (phase_ == Phase::lobby && !seat_filled(Seat::bob)) {
    throw SessionError(ErrorCode::wrong_phase,
                       "configure needs both seats filled");
  }
  if (phase_ != Phase::configured) transition(Phase::configured);
  setup_ = setup;
  ++round_index_;
  alice_move_.reset();
  bob_move_.reset();
  alice_flipped_ = bob_flipped_ = false;
  interval_.reset();
  emit({{"event", "configured"},
        {"round_index", round_index_},
        {"game", setup_to_json(setup)}});
  transition(Phase::committing);

  if (bob_is_bot_) {
    const auto response =
        core::best_response_bob(0.5, setup.state, setup.payoffs);
    const Move move = response == core::BestResponse::identity ? Move::identity()
                      : response == core::BestResponse::flip   ? Move::flip()
                                                               : Move::mixed(0.5);
    commit(Seat::bob, move);
  }
}

void Session::commit(Seat seat, const Move& move) {
  require_phase({Phase::committing}, "commit_move");
  std::optional<Move>& slot = seat == Seat::alice ? alice_move_ : bob_move_;
  if (slot) {
    throw SessionError(ErrorCode::double_commit,
                       "seat already committed this round");
  }
  slot = move;
  emit({{"event", "committed"},
        {"seat", std::string(to_string(seat))},
        {"move", move_to_json(move)}});
  if (alice_move_ && bob_move_) begin_measurement();
}

void Session::begin_measurement() {
  auto sample = [this](const Move& m) {
    switch (m.kind) {
      case Move::Kind::identity: return false;
      case Move::Kind::flip: return true;
      case Move::Kind::mixed: return !rng_.bernoulli(m.prob_identity);
    }
    return false;
  };
  alice_flipped_ = sample(*alice_move_);
  bob_flipped_ = sample(*bob_move_);
  emit({{"event", "sampled"},
        {"flipped", {{"alice", alice_flipped_}, {"bob", bob_flipped_}}}});
  interval_.emplace(setup_->state);
  transition(Phase::measuring);
  if (setup_->auto_draw) {
    while (phase_ == Phase::measuring) draw_card();
  }
}

DrawResult Session::draw_card() {
  require_phase({Phase::measuring}, "draw_card");
  return push_digit(rng_.digit());
}

DrawResult Session::push_digit(int digit) {
  const std::optional<sim::Branch> decision = interval_->push(digit);
  DrawResult result;
  result.digit = digit;
  result.lower = interval_->lower_decimal();
  result.upper = interval_->upper_decimal();
  result.decided = decision.has_value();
  emit({{"event", "card"},
        {"digit", digit},
        {"lower", result.lower},
        {"upper", result.upper}});

  const bool exhausted =
      interval_->draws() >= static_cast<std::size_t>(sim::kDefaultMaxDigits);
  if (!decision && !exhausted) return result;

  RoundRecord round;
  round.round_index = round_index_;
  round.setup = *setup_;
  round.alice_move = *alice_move_;
  round.bob_move = *bob_move_;
  round.alice_flipped = alice_flipped_;
  round.bob_flipped = bob_flipped_;
  round.transcript.backend = sim::Backend::cards;
  round.transcript.branch = decision.value_or(sim::Branch::B);
  round.transcript.tie_break = !decision.has_value();
  round.transcript.digits.assign(interval_->digits().begin(),
                                 interval_->digits().end());
  round.transcript.draws_used = static_cast<int>(round.transcript.digits.size());
  round.outcome = sim::outcome_for_branch(*round.transcript.branch,
                                          {alice_flipped_, bob_flipped_});
  round.transcript.outcome = round.outcome;
  round.payoffs = core::payoff_for(round.outcome, setup_->payoffs);
  cumulative_.alice += round.payoffs.alice;
  cumulative_.bob += round.payoffs.bob;
  history_.push_back(round);

  result.decided = true;
  result.tie_break = round.transcript.tie_break;
  result.round = round;
  emit({{"event", "revealed"},
        {"round", round_to_json(round)},
        {"cumulative", pair_json(cumulative_)}});
  transition(Phase::revealed);
  return result;
}

WhatIfResult Session::what_if(Seat seat, double own,
                              double assumed_opponent) const {
  if (!setup_) {
    throw SessionError(ErrorCode::wrong_phase, "what_if needs a configured game");
  }
  auto in_range = [](double x) { return x >= 0.0 && x <= 1.0; };
  if (!in_range(own) || !in_range(assumed_opponent)) {
    throw SessionError(ErrorCode::out_of_range,
                       "what_if probabilities must lie in [0, 1]");
  }
  const bool alice = seat == Seat::alice;
  const core::StrategyProfile profile = alice
                                            ? core::StrategyProfile(own, assumed_opponent)
                                            : core::StrategyProfile(assumed_opponent, own);
  WhatIfResult result;
  result.payoffs = core::expected_payoffs(profile, setup_->state, setup_->payoffs);
  result.best_response =
      alice ? core::best_response_alice(assumed_opponent, setup_->state,
                                        setup_->payoffs)
            : core::best_response_bob(assumed_opponent, setup_->state,
                                      setup_->payoffs);
  return result;
}

ordered_json Session::view(Seat seat) const {
  const bool revealed = phase_ == Phase::revealed;
  const std::optional<Move>& own_move = seat == Seat::alice ? alice_move_ : bob_move_;
  const bool own_flipped = seat == Seat::alice ? alice_flipped_ : bob_flipped_;
  const bool opp_flipped = seat == Seat::alice ? bob_flipped_ : alice_flipped_;
  const bool sampled = phase_ == Phase::measuring || revealed;

  ordered_json v;
  v["protocol_version"] = kProtocolVersion;
  v["session_id"] = id_;
  v["seat"] = std::string(to_string(seat));
  v["phase"] = std::string(to_string(phase_));
  v["round_index"] = round_index_;
  v["seats"] = {{"alice", {{"joined", true}, {"bot", false}}},
                {"bob",
                 {{"joined", seat_filled(Seat::bob)}, {"bot", bob_is_bot_}}}};
  v["game"] = setup_ ? setup_to_json(*setup_) : ordered_json(nullptr);

  if (setup_) {
    ordered_json board;
    board["a_sq"] = wire_decimal(setup_->state.a_sq());
    if (sampled) {
      board["own_labels"] = labels_json(own_flipped);
    } else if (own_move && own_move->kind != Move::Kind::mixed) {
      board["own_labels"] = labels_json(own_move->kind == Move::Kind::flip);
    } else if (own_move) {
      board["own_labels"] = nullptr;  // sampled at measurement
    } else {
      board["own_labels"] = labels_json(false);
    }
    board["opponent_labels"] = revealed ? labels_json(opp_flipped) : ordered_json(nullptr);
    v["board"] = board;
  } else {
    v["board"] = nullptr;
  }

  v["own_move"] = own_move ? move_to_json(*own_move) : ordered_json(nullptr);
  v["own_committed"] = has_committed(seat);
  v["opponent_committed"] = has_committed(other(seat));

  if (interval_) {
    auto digits = ordered_json::array();
    for (auto d : interval_->digits()) digits.push_back(static_cast<int>(d));
    v["measurement"] = {{"digits", digits},
                        {"lower", interval_->lower_decimal()},
                        {"upper", interval_->upper_decimal()},
                        {"decided", revealed}};
  } else {
    v["measurement"] = nullptr;
  }

  v["last_round"] = revealed && !history_.empty() ? round_to_json(history_.back())
                                                  : ordered_json(nullptr);
  auto history = ordered_json::array();
  for (const RoundRecord& r : history_) history.push_back(round_to_json(r));
  v["history"] = std::move(history);
  v["cumulative"] = pair_json(cumulative_);
  return v;
}

Move move_from_json(const ordered_json& j) {
  auto parse_kind = [](const std::string& kind) -> Move {
    if (kind == "identity") return Move::identity();
    if (kind == "flip") return Move::flip();
    throw SessionError(ErrorCode::bad_request, "unknown move '" + kind + "'");
  };
  if (j.is_string()) return parse_kind(j.get<std::string>());
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    throw SessionError(ErrorCode::bad_request, "move must be a string or object");
  }
  const auto kind = j["kind"].get<std::string>();
  if (kind != "mixed") return parse_kind(kind);
  if (!j.contains("prob_identity")) {
    throw SessionError(ErrorCode::bad_request, "mixed move needs prob_identity");
  }
  const auto& p = j["prob_identity"];
  double value = 0.0;
  if (p.is_number()) {
    value = p.get<double>();
  } else if (p.is_string()) {
    try {
      std::size_t used = 0;
      const auto text = p.get<std::string>();
      value = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument("trailing");
    } catch (const std::logic_error&) {
      throw SessionError(ErrorCode::bad_request, "prob_identity is not a number");
    }
  } else {
    throw SessionError(ErrorCode::bad_request, "prob_identity is not a number");
  }
  return Move::mixed(value);
}

}  // namespace qgame::server
