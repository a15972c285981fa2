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

#include "qgame/server/session_log.hpp"

#include <charconv>
#include <stdexcept>

#include "qgame/server/session.hpp"

namespace qgame::server {

namespace {

using nlohmann::ordered_json;

double parse_decimal(const ordered_json& j) {
  const auto text = j.get<std::string>();
  double value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw std::runtime_error("bad decimal in log: " + text);
  }
  return value;
}

Seat seat_from(const ordered_json& j) {
  return j.get<std::string>() == "alice" ? Seat::alice : Seat::bob;
}

}  // namespace

SessionLog::SessionLog(const std::filesystem::path& dir,
                       const std::string& session_id)
    : path_(dir / (session_id + ".jsonl")) {
  std::filesystem::create_directories(dir);
  out_.open(path_, std::ios::app | std::ios::binary);
  if (!out_) throw std::runtime_error("cannot open session log " + path_.string());
}

void SessionLog::append(const ordered_json& event) {
  out_ << event.dump() << '\n';
  out_.flush();
}

std::vector<std::string> read_log_lines(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

std::vector<std::string> replay_events(const std::vector<std::string>& lines) {
  if (lines.empty()) throw std::runtime_error("empty log");
  const auto first = ordered_json::parse(lines.front());
  if (first.value("event", "") != "created") {
    throw std::runtime_error("log does not start with a created event");
  }
  const std::uint64_t seed = std::stoull(first["seed"].get<std::string>());

  std::vector<std::string> out;
  Session session("replay", seed, "alice",
                  [&out](const ordered_json& e) { out.push_back(e.dump()); });
  bool bot = false;
  bool auto_draw = false;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto e = ordered_json::parse(lines[i]);
    const auto kind = e.value("event", "");
    if (kind == "joined") {
      bot = e.value("bot", false);
      if (bot) {
        session.seat_bot();
      } else {
        session.join("bob");
      }
    } else if (kind == "configured") {
      const auto& g = e["game"];
      GameSetup setup{core::PayoffMatrix(parse_decimal(g["alpha"]),
                                         parse_decimal(g["beta"]),
                                         parse_decimal(g["gamma"])),
                      core::EntangledState(parse_decimal(g["a_sq"])),
                      g["auto_draw"].get<bool>()};
      auto_draw = setup.auto_draw;
      session.configure(setup);
    } else if (kind == "committed") {
      const Seat seat = seat_from(e["seat"]);
      if (!(bot && seat == Seat::bob)) session.commit(seat, move_from_json(e["move"]));
    } else if (kind == "card") {
      if (!auto_draw) session.draw_card();
    }
  }
  return out;
}

}  // namespace qgame::server
