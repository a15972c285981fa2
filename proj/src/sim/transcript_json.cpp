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

#include "qgame/sim/transcript_json.hpp"

#include <charconv>
#include <stdexcept>
#include <string>

namespace qgame::sim {

namespace {

std::string measured_to_string(const MeasuredValue& value) {
  return std::visit([](auto v) { return std::string(to_string(v)); }, value);
}

MeasuredValue measured_from_string(const std::string& text) {
  if (text == "up") return SpinOutcome::up;
  if (text == "down") return SpinOutcome::down;
  if (text == "A") return Branch::A;
  if (text == "B") return Branch::B;
  return core::outcome_from_string(text);
}

}  // namespace

nlohmann::ordered_json transcript_to_json(const MeasurementTranscript& t) {
  nlohmann::ordered_json j;
  j["backend"] = std::string(to_string(t.backend));
  j["outcome"] = measured_to_string(t.outcome);
  j["branch"] = t.branch ? nlohmann::ordered_json(std::string(to_string(*t.branch)))
                         : nlohmann::ordered_json(nullptr);
  j["charge_fraction"] =
      t.charge_fraction
          ? nlohmann::ordered_json(shortest_decimal(*t.charge_fraction))
          : nlohmann::ordered_json(nullptr);
  auto digits = nlohmann::ordered_json::array();
  for (auto d : t.digits) digits.push_back(static_cast<int>(d));
  j["digits"] = std::move(digits);
  j["draws_used"] = t.draws_used;
  j["tie_break"] = t.tie_break;
  return j;
}

MeasurementTranscript transcript_from_json(const nlohmann::ordered_json& j) {
  MeasurementTranscript t;
  t.backend = backend_from_string(j.at("backend").get<std::string>());
  t.outcome = measured_from_string(j.at("outcome").get<std::string>());
  if (const auto& b = j.at("branch"); !b.is_null()) {
    const auto text = b.get<std::string>();
    if (text != "A" && text != "B") {
      throw std::invalid_argument("branch must be A or B");
    }
    t.branch = text == "A" ? Branch::A : Branch::B;
  }
  if (const auto& c = j.at("charge_fraction"); !c.is_null()) {
    const auto text = c.get<std::string>();
    double value = 0.0;
    const auto [end, ec] =
        std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size()) {
      throw std::invalid_argument("bad charge_fraction '" + text + "'");
    }
    t.charge_fraction = value;
  }
  for (const auto& d : j.at("digits")) {
    const int digit = d.get<int>();
    if (digit < 0 || digit > 9) throw std::invalid_argument("bad card digit");
    t.digits.push_back(static_cast<std::uint8_t>(digit));
  }
  t.draws_used = j.at("draws_used").get<int>();
  t.tie_break = j.at("tie_break").get<bool>();
  return t;
}

}  // namespace qgame::sim
