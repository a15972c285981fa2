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

#ifndef QGAME_SIM_TRANSCRIPT_JSON_HPP_
#define QGAME_SIM_TRANSCRIPT_JSON_HPP_

#include "json.hpp"
#include "qgame/sim/measurement.hpp"

namespace qgame::sim {

// Flat transcript record shared by the experiment reports, the session
// service and its logs. Keys, in order:
//
//   backend          "machine" | "cards"
//   outcome          "OO" | "OT" | "TO" | "TT" | "up" | "down" | "A" | "B"
//   branch           "A" | "B" | null (single-sphere measurements)
//   charge_fraction  shortest round-trip decimal string, or null for cards
//   digits           array of drawn card digits (empty for the machine)
//   draws_used       integer
//   tie_break        boolean
nlohmann::ordered_json transcript_to_json(const MeasurementTranscript& t);

// Throws nlohmann::json::exception or std::invalid_argument on malformed
// input.
MeasurementTranscript transcript_from_json(const nlohmann::ordered_json& j);

}  // namespace qgame::sim

#endif  // QGAME_SIM_TRANSCRIPT_JSON_HPP_
