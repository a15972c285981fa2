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

#ifndef QGAME_SERVER_SESSION_LOG_HPP_
#define QGAME_SERVER_SESSION_LOG_HPP_

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace qgame::server {

// Append-only JSON-lines file, one audit event per line, flushed per line.
class SessionLog {
 public:
  SessionLog(const std::filesystem::path& dir, const std::string& session_id);

  const std::filesystem::path& path() const { return path_; }
  void append(const nlohmann::ordered_json& event);

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

std::vector<std::string> read_log_lines(const std::filesystem::path& path);

// Re-drives a fresh session from the joined, configured, committed and card
// events in `lines` and returns the event lines it emits. A faithful log
// replays to itself.
std::vector<std::string> replay_events(const std::vector<std::string>& lines);

}  // namespace qgame::server

#endif  // QGAME_SERVER_SESSION_LOG_HPP_
