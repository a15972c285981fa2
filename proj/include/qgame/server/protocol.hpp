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

#ifndef QGAME_SERVER_PROTOCOL_HPP_
#define QGAME_SERVER_PROTOCOL_HPP_

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>

#include "json.hpp"
#include "qgame/server/session.hpp"

namespace qgame::server {

// Protocol v1. Every request is a JSON object
//
//   {"protocol_version": 1, "kind": K, "payload": {...}, "request_id": any?}
//
// and receives exactly one reply
//
//   {"protocol_version": 1, "kind": K, "request_id": ..., "ok": true,
//    "payload": {...}}
//
// or, on failure, kind "error" with ok false and payload
// {"code", "message", "request_kind"}. Reals may be sent as JSON numbers
// or decimal strings; the server always answers with decimal strings.
//
// Request payloads (session_id and token omitted from create and join):
//   create       {seed?}                              -> {session_id, seat, token, seed?}
//   join         {session_id}                         -> {session_id, seat, token}
//   configure    {alpha, beta, gamma, a_sq, auto_draw?} -> view
//   commit_move  {move}                               -> view
//   draw_card    {}                                   -> {card, decided, tie_break, round, state}
//   get_state    {}                                   -> view
//   what_if      {own, assumed_opponent}              -> {payoffs, best_response}
//
// Pushes have kind "state_push" and carry the recipient's view.
struct ServiceOptions {
  // Directory for <session_id>.jsonl audit logs; none when empty.
  std::filesystem::path log_dir;
  std::function<std::uint64_t()> seed_source;
  // Used for session ids and join tokens.
  std::function<std::string()> token_source;
  // Seat the built-in opponent once Bob's seat has stayed empty this long.
  std::optional<std::chrono::steady_clock::duration> bot_window;
  std::function<std::chrono::steady_clock::time_point()> clock;
};

using PushSink = std::function<void(const std::string& session_id, Seat seat,
                                    const nlohmann::ordered_json& push)>;

class SessionService {
 public:
  explicit SessionService(ServiceOptions options = {});
  ~SessionService();

  nlohmann::ordered_json handle(const nlohmann::ordered_json& request);
  // Parses `text` first; malformed JSON yields a bad_request reply.
  std::string handle_text(std::string_view text);

  // Receives a state_push for each human seat after every state change.
  void set_push_sink(PushSink sink);

  // The session and seat a request authenticates as, if any.
  std::optional<std::pair<std::string, Seat>> identify(
      const nlohmann::ordered_json& request) const;
  std::optional<nlohmann::ordered_json> state_push(const std::string& session_id,
                                                   Seat seat) const;

  // Seats the bot in every session whose window has elapsed.
  void tick();

  std::size_t session_count() const;
  std::optional<std::filesystem::path> log_path(const std::string& session_id) const;

 private:
  struct Entry;

  std::shared_ptr<Entry> find(const std::string& session_id) const;
  nlohmann::ordered_json dispatch(const std::string& kind,
                                  const nlohmann::ordered_json& payload);
  nlohmann::ordered_json create(const nlohmann::ordered_json& payload);
  nlohmann::ordered_json join(const nlohmann::ordered_json& payload);
  void maybe_seat_bot(Entry& entry);
  void push_all(Entry& entry);
  std::string next_token();

  ServiceOptions options_;
  mutable std::shared_mutex sessions_mutex_;
  std::map<std::string, std::shared_ptr<Entry>> sessions_;
  std::mutex source_mutex_;
  mutable std::mutex sink_mutex_;
  PushSink sink_;
};

nlohmann::ordered_json make_error(ErrorCode code, std::string_view message,
                                  std::string_view request_kind);

}  // namespace qgame::server

#endif  // QGAME_SERVER_PROTOCOL_HPP_
