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

#include "qgame/server/protocol.hpp"

#include <charconv>
#include <random>
#include <vector>

#include <fmt/format.h>

#include "qgame/server/session_log.hpp"

namespace qgame::server {

namespace {

using nlohmann::ordered_json;

const ordered_json& require(const ordered_json& payload, const char* name) {
  if (!payload.contains(name)) {
    throw SessionError(ErrorCode::bad_request, fmt::format("missing field '{}'", name));
  }
  return payload[name];
}

std::string string_field(const ordered_json& payload, const char* name) {
  const auto& v = require(payload, name);
  if (!v.is_string()) {
    throw SessionError(ErrorCode::bad_request, fmt::format("'{}' must be a string", name));
  }
  return v.get<std::string>();
}

template <typename T>
T parse_text(const std::string& text, const char* name) {
  T value{};
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw SessionError(ErrorCode::bad_request,
                       fmt::format("'{}' is not a decimal number", name));
  }
  return value;
}

double real_field(const ordered_json& payload, const char* name) {
  const auto& v = require(payload, name);
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return parse_text<double>(v.get<std::string>(), name);
  throw SessionError(ErrorCode::bad_request, fmt::format("'{}' must be a number", name));
}

std::uint64_t seed_field(const ordered_json& v) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return v.get<std::uint64_t>();
  if (v.is_string()) return parse_text<std::uint64_t>(v.get<std::string>(), "seed");
  throw SessionError(ErrorCode::bad_request, "'seed' must be a non-negative integer");
}

ordered_json push_message(ordered_json view) {
  return {{"protocol_version", kProtocolVersion},
          {"kind", "state_push"},
          {"payload", std::move(view)}};
}

bool is_session_kind(const std::string& kind) {
  return kind == "configure" || kind == "commit_move" || kind == "draw_card" ||
         kind == "get_state" || kind == "what_if";
}

}  // namespace

struct SessionService::Entry {
  std::mutex mutex;
  std::optional<SessionLog> log;
  std::unique_ptr<Session> session;
  std::chrono::steady_clock::time_point created;
};

ordered_json make_error(ErrorCode code, std::string_view message,
                        std::string_view request_kind) {
  return {{"code", std::string(to_string(code))},
          {"message", std::string(message)},
          {"request_kind", std::string(request_kind)}};
}

SessionService::SessionService(ServiceOptions options) : options_(std::move(options)) {
  if (!options_.seed_source || !options_.token_source) {
    auto gen = std::make_shared<std::mt19937_64>(std::random_device{}());
    if (!options_.seed_source) {
      options_.seed_source = [gen] { return (*gen)(); };
    }
    if (!options_.token_source) {
      options_.token_source = [gen] {
        return fmt::format("{:016x}{:016x}", (*gen)(), (*gen)());
      };
    }
  }
  if (!options_.clock) options_.clock = [] { return std::chrono::steady_clock::now(); };
}

SessionService::~SessionService() = default;

void SessionService::set_push_sink(PushSink sink) {
  std::lock_guard lock(sink_mutex_);
  sink_ = std::move(sink);
}

std::string SessionService::next_token() {
  std::lock_guard lock(source_mutex_);
  return options_.token_source();
}

std::shared_ptr<SessionService::Entry> SessionService::find(
    const std::string& session_id) const {
  std::shared_lock lock(sessions_mutex_);
  const auto it = sessions_.find(session_id);
  if (it == sessions_.end()) {
    throw SessionError(ErrorCode::unknown_session, "no session '" + session_id + "'");
  }
  return it->second;
}

std::size_t SessionService::session_count() const {
  std::shared_lock lock(sessions_mutex_);
  return sessions_.size();
}

std::optional<std::filesystem::path> SessionService::log_path(
    const std::string& session_id) const {
  try {
    const auto entry = find(session_id);
    std::lock_guard lock(entry->mutex);
    if (entry->log) return entry->log->path();
  } catch (const SessionError&) {
  }
  return std::nullopt;
}

void SessionService::push_all(Entry& entry) {
  PushSink sink;
  {
    std::lock_guard lock(sink_mutex_);
    sink = sink_;
  }
  if (!sink) return;
  const Session& s = *entry.session;
  for (Seat seat : {Seat::alice, Seat::bob}) {
    if (s.seat_filled(seat) && !s.is_bot(seat)) {
      sink(s.id(), seat, push_message(s.view(seat)));
    }
  }
}

void SessionService::maybe_seat_bot(Entry& entry) {
  Session& s = *entry.session;
  if (!options_.bot_window || s.phase() != Phase::lobby || s.seat_filled(Seat::bob)) {
    return;
  }
  if (options_.clock() - entry.created < *options_.bot_window) return;
  s.seat_bot();
  push_all(entry);
}

void SessionService::tick() {
  std::vector<std::shared_ptr<Entry>> entries;
  {
    std::shared_lock lock(sessions_mutex_);
    for (const auto& [id, entry] : sessions_) entries.push_back(entry);
  }
  for (const auto& entry : entries) {
    std::lock_guard lock(entry->mutex);
    maybe_seat_bot(*entry);
  }
}

std::optional<std::pair<std::string, Seat>> SessionService::identify(
    const ordered_json& request) const {
  if (!request.is_object() || !request.contains("payload")) return std::nullopt;
  const auto& payload = request["payload"];
  if (!payload.is_object() || !payload.contains("session_id") ||
      !payload.contains("token") || !payload["session_id"].is_string() ||
      !payload["token"].is_string()) {
    return std::nullopt;
  }
  try {
    const auto id = payload["session_id"].get<std::string>();
    const auto entry = find(id);
    std::lock_guard lock(entry->mutex);
    return std::pair{id, entry->session->authenticate(payload["token"].get<std::string>())};
  } catch (const SessionError&) {
    return std::nullopt;
  }
}

std::optional<ordered_json> SessionService::state_push(const std::string& session_id,
                                                       Seat seat) const {
  try {
    const auto entry = find(session_id);
    std::lock_guard lock(entry->mutex);
    if (!entry->session->seat_filled(seat)) return std::nullopt;
    return push_message(entry->session->view(seat));
  } catch (const SessionError&) {
    return std::nullopt;
  }
}

ordered_json SessionService::create(const ordered_json& payload) {
  std::optional<std::uint64_t> requested;
  if (payload.contains("seed") && !payload["seed"].is_null()) {
    requested = seed_field(payload["seed"]);
  }
  std::uint64_t seed = 0;
  if (requested) {
    seed = *requested;
  } else {
    std::lock_guard lock(source_mutex_);
    seed = options_.seed_source();
  }
  const std::string token = next_token();

  auto entry = std::make_shared<Entry>();
  entry->created = options_.clock();
  std::string id;
  {
    std::unique_lock lock(sessions_mutex_);
    do {
      id = next_token();
    } while (sessions_.count(id) != 0);
    if (!options_.log_dir.empty()) entry->log.emplace(options_.log_dir, id);
    Entry* raw = entry.get();
    entry->session = std::make_unique<Session>(id, seed, token, [raw](const ordered_json& e) {
      if (raw->log) raw->log->append(e);
    });
    sessions_.emplace(id, entry);
  }

  ordered_json reply{{"session_id", id}, {"seat", "alice"}, {"token", token}};
  // A server-chosen seed stays private: it determines every card.
  if (requested) reply["seed"] = std::to_string(seed);
  return reply;
}

ordered_json SessionService::join(const ordered_json& payload) {
  const auto entry = find(string_field(payload, "session_id"));
  std::lock_guard lock(entry->mutex);
  maybe_seat_bot(*entry);
  const std::string token = next_token();
  entry->session->join(token);
  push_all(*entry);
  return {{"session_id", entry->session->id()}, {"seat", "bob"}, {"token", token}};
}

ordered_json SessionService::dispatch(const std::string& kind,
                                      const ordered_json& payload) {
  if (kind == "create") return create(payload);
  if (kind == "join") return join(payload);
  if (!is_session_kind(kind)) {
    throw SessionError(ErrorCode::bad_request, "unknown message kind '" + kind + "'");
  }

  const auto entry = find(string_field(payload, "session_id"));
  std::lock_guard lock(entry->mutex);
  maybe_seat_bot(*entry);
  Session& s = *entry->session;
  const Seat seat = s.authenticate(string_field(payload, "token"));

  if (kind == "get_state") return s.view(seat);

  if (kind == "what_if") {
    const double own = real_field(payload, "own");
    const double opponent = real_field(payload, "assumed_opponent");
    const WhatIfResult r = s.what_if(seat, own, opponent);
    return {{"payoffs",
             {{"alice", wire_decimal(r.payoffs.alice)},
              {"bob", wire_decimal(r.payoffs.bob)}}},
            {"best_response", std::string(core::to_string(r.best_response))}};
  }

  if (kind == "configure") {
    GameSetup setup;
    const double alpha = real_field(payload, "alpha");
    const double beta = real_field(payload, "beta");
    const double gamma = real_field(payload, "gamma");
    const double a_sq = real_field(payload, "a_sq");
    if (payload.contains("auto_draw")) {
      if (!payload["auto_draw"].is_boolean()) {
        throw SessionError(ErrorCode::bad_request, "'auto_draw' must be a boolean");
      }
      setup.auto_draw = payload["auto_draw"].get<bool>();
    }
    try {
      setup.payoffs = core::PayoffMatrix(alpha, beta, gamma);
      setup.state = core::EntangledState(a_sq);
    } catch (const std::domain_error& e) {
      throw SessionError(ErrorCode::out_of_range, e.what());
    }
    s.configure(setup);
    push_all(*entry);
    return s.view(seat);
  }

  if (kind == "commit_move") {
    s.commit(seat, move_from_json(require(payload, "move")));
    push_all(*entry);
    return s.view(seat);
  }

  // draw_card
  const DrawResult r = s.draw_card();
  push_all(*entry);
  return {{"card", {{"digit", r.digit}, {"lower", r.lower}, {"upper", r.upper}}},
          {"decided", r.decided},
          {"tie_break", r.tie_break},
          {"round", r.round ? round_to_json(*r.round) : ordered_json(nullptr)},
          {"state", s.view(seat)}};
}

ordered_json SessionService::handle(const ordered_json& request) {
  std::string kind;
  ordered_json reply{{"protocol_version", kProtocolVersion}};
  auto fail = [&](ErrorCode code, std::string_view message) {
    reply["kind"] = "error";
    if (request.is_object() && request.contains("request_id")) {
      reply["request_id"] = request["request_id"];
    }
    reply["ok"] = false;
    reply["payload"] = make_error(code, message, kind);
    return reply;
  };

  if (!request.is_object()) return fail(ErrorCode::bad_request, "request must be an object");
  if (request.contains("kind") && request["kind"].is_string()) {
    kind = request["kind"].get<std::string>();
  }
  if (!request.contains("protocol_version")) {
    return fail(ErrorCode::bad_request, "missing protocol_version");
  }
  if (request["protocol_version"] != kProtocolVersion) {
    return fail(ErrorCode::unsupported_version, "only protocol_version 1 is supported");
  }
  if (kind.empty()) return fail(ErrorCode::bad_request, "missing kind");
  ordered_json payload = ordered_json::object();
  if (request.contains("payload") && !request["payload"].is_null()) {
    payload = request["payload"];
    if (!payload.is_object()) return fail(ErrorCode::bad_request, "payload must be an object");
  }

  ordered_json result;
  try {
    result = dispatch(kind, payload);
  } catch (const SessionError& e) {
    return fail(e.code(), e.what());
  } catch (const std::domain_error& e) {
    return fail(ErrorCode::out_of_range, e.what());
  } catch (const std::exception& e) {
    return fail(ErrorCode::bad_request, e.what());
  }
  reply["kind"] = kind;
  if (request.contains("request_id")) reply["request_id"] = request["request_id"];
  reply["ok"] = true;
  reply["payload"] = std::move(result);
  return reply;
}

std::string SessionService::handle_text(std::string_view text) {
  ordered_json request;
  try {
    request = ordered_json::parse(text);
  } catch (const ordered_json::parse_error&) {
    ordered_json reply{{"protocol_version", kProtocolVersion},
                       {"kind", "error"},
                       {"ok", false},
                       {"payload", make_error(ErrorCode::bad_request,
                                              "malformed JSON", "")}};
    return reply.dump();
  }
  return handle(request).dump();
}

}  // namespace qgame::server
