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

#include "qgame/sim/card_interval.hpp"

#include <array>
#include <charconv>
#include <stdexcept>

namespace qgame::sim {

std::string_view to_string(Branch branch) {
  return branch == Branch::A ? "A" : "B";
}

std::string shortest_decimal(double value) {
  std::array<char, 512> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(),
                                       value, std::chars_format::fixed);
  if (ec != std::errc{}) {
    throw std::domain_error("value has no finite decimal representation");
  }
  return std::string(buf.data(), end);
}

CardTarget::CardTarget(const core::EntangledState& state) {
  const double a_sq = state.a_sq();
  if (a_sq == 1.0) {
    is_one_ = true;
    return;
  }
  const std::string text = shortest_decimal(a_sq);
  const auto point = text.find('.');
  if (point != std::string::npos) digits_ = text.substr(point + 1);
  while (!digits_.empty() && digits_.back() == '0') digits_.pop_back();
}

std::optional<Branch> CardTarget::compare(std::size_t position,
                                          int digit) const {
  // Every interval [d/10, (d+1)/10) already lies at or below 1.
  if (is_one_) return Branch::A;
  const int target =
      position <= digits_.size() ? digits_[position - 1] - '0' : 0;
  if (digit < target) return Branch::A;
  if (digit > target) return Branch::B;
  // lo equals |a|^2 exactly; lo >= |a|^2 assigns it to B.
  if (position >= digits_.size()) return Branch::B;
  return std::nullopt;
}

std::optional<Branch> CardInterval::push(int digit) {
  if (decision_) throw std::logic_error("card measurement already decided");
  if (digit < 0 || digit > 9) throw std::domain_error("card digit must be 0..9");
  digits_.push_back(static_cast<std::uint8_t>(digit));
  decision_ = target_.compare(digits_.size(), digit);
  return decision_;
}

std::string CardInterval::lower_decimal() const {
  if (digits_.empty()) return "0";
  std::string out = "0.";
  for (auto d : digits_) out.push_back(static_cast<char>('0' + d));
  return out;
}

std::string CardInterval::upper_decimal() const {
  if (digits_.empty()) return "1";
  std::string frac;
  for (auto d : digits_) frac.push_back(static_cast<char>('0' + d));
  int i = static_cast<int>(frac.size()) - 1;
  while (i >= 0 && frac[i] == '9') frac[i--] = '0';
  if (i < 0) return "1";
  ++frac[i];
  return "0." + frac;
}

}  // namespace qgame::sim
