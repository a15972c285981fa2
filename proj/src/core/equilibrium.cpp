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

#include "qgame/core/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qgame::core {

namespace {

void require_probability(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::domain_error(std::string(name) + " must lie in [0, 1]");
  }
}

BestResponse classify(double coefficient) {
  if (coefficient > kTieTolerance) return BestResponse::identity;
  if (coefficient < -kTieTolerance) return BestResponse::flip;
  return BestResponse::any;
}

// Closed axis-aligned box in the (p, q) square.
struct Box {
  Range p;
  Range q;

  bool contains(const Box& other, double tol) const {
    return other.p.lo >= p.lo - tol && other.p.hi <= p.hi + tol &&
           other.q.lo >= q.lo - tol && other.q.hi <= q.hi + tol;
  }
  bool is_point(double tol) const {
    return p.hi - p.lo <= tol && q.hi - q.lo <= tol;
  }
};

// Best-response graph of a player whose slope in their own probability is
// slope(t) = t * cross + base, where t is the opponent's probability. Boxes
// are expressed as (own, opponent) ranges.
std::vector<Box> response_graph(double cross, double base) {
  std::vector<Box> pieces;
  if (std::abs(cross) <= kTieTolerance) {
    switch (classify(0.5 * cross + base)) {
      case BestResponse::identity: pieces.push_back({{1, 1}, {0, 1}}); break;
      case BestResponse::flip: pieces.push_back({{0, 0}, {0, 1}}); break;
      case BestResponse::any: pieces.push_back({{0, 1}, {0, 1}}); break;
    }
    return pieces;
  }
  const double root = -base / cross;
  // Opponent ranges where the slope is negative (own response 0) and
  // positive (own response 1).
  Range below{0.0, std::min(root, 1.0)};
  Range above{std::max(root, 0.0), 1.0};
  const bool has_below = root > 0.0;
  const bool has_above = root < 1.0;
  const Range* negative = cross > 0 ? (has_below ? &below : nullptr)
                                    : (has_above ? &above : nullptr);
  const Range* positive = cross > 0 ? (has_above ? &above : nullptr)
                                    : (has_below ? &below : nullptr);
  if (negative != nullptr) pieces.push_back({{0, 0}, *negative});
  if (positive != nullptr) pieces.push_back({{1, 1}, *positive});
  if (root >= 0.0 && root <= 1.0) pieces.push_back({{0, 1}, {root, root}});
  return pieces;
}

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

bool is_endpoint(double x) { return x == 0.0 || x == 1.0; }

}  // namespace

std::string_view to_string(BestResponse response) {
  switch (response) {
    case BestResponse::flip: return "{0}";
    case BestResponse::identity: return "{1}";
    case BestResponse::any: return "[0,1]";
  }
  return "?";
}

bool contains(BestResponse response, double x) {
  switch (response) {
    case BestResponse::flip: return std::abs(x) <= kTieTolerance;
    case BestResponse::identity: return std::abs(x - 1.0) <= kTieTolerance;
    case BestResponse::any: return x >= 0.0 && x <= 1.0;
  }
  return false;
}

std::string_view to_string(EquilibriumKind kind) {
  switch (kind) {
    case EquilibriumKind::pure: return "pure";
    case EquilibriumKind::mixed: return "mixed";
    case EquilibriumKind::component: return "component";
  }
  return "?";
}

double alice_coefficient(double q, const EntangledState& state,
                         const PayoffMatrix& payoffs) {
  const double cross = payoffs.alpha() + payoffs.beta() - 2.0 * payoffs.gamma();
  return q * cross - payoffs.alpha() * state.b_sq() -
         payoffs.beta() * state.a_sq() + payoffs.gamma();
}

double bob_coefficient(double p, const EntangledState& state,
                       const PayoffMatrix& payoffs) {
  const double cross = payoffs.alpha() + payoffs.beta() - 2.0 * payoffs.gamma();
  return p * cross - payoffs.alpha() * state.a_sq() -
         payoffs.beta() * state.b_sq() + payoffs.gamma();
}

BestResponse best_response_alice(double q, const EntangledState& state,
                                 const PayoffMatrix& payoffs) {
  require_probability(q, "q");
  return classify(alice_coefficient(q, state, payoffs));
}

BestResponse best_response_bob(double p, const EntangledState& state,
                               const PayoffMatrix& payoffs) {
  require_probability(p, "p");
  return classify(bob_coefficient(p, state, payoffs));
}

std::vector<Equilibrium> nash_equilibria(const EntangledState& state,
                                         const PayoffMatrix& payoffs) {
  const double cross = payoffs.alpha() + payoffs.beta() - 2.0 * payoffs.gamma();
  const double alice_base = alice_coefficient(0.0, state, payoffs);
  const double bob_base = bob_coefficient(0.0, state, payoffs);

  // Alice's graph is already (p, q); Bob's comes back as (q, p).
  const std::vector<Box> alice = response_graph(cross, alice_base);
  std::vector<Box> bob = response_graph(cross, bob_base);
  for (Box& b : bob) std::swap(b.p, b.q);

  constexpr double kMergeTol = 1e-9;
  std::vector<Box> found;
  for (const Box& a : alice) {
    for (const Box& b : bob) {
      Box cut{{std::max(a.p.lo, b.p.lo), std::min(a.p.hi, b.p.hi)},
              {std::max(a.q.lo, b.q.lo), std::min(a.q.hi, b.q.hi)}};
      if (cut.p.lo > cut.p.hi + kTieTolerance ||
          cut.q.lo > cut.q.hi + kTieTolerance) {
        continue;
      }
      cut.p.hi = std::max(cut.p.lo, cut.p.hi);
      cut.q.hi = std::max(cut.q.lo, cut.q.hi);
      found.push_back(cut);
    }
  }

  // Drop anything covered by another piece (duplicates keep the first).
  std::vector<Box> kept;
  for (std::size_t i = 0; i < found.size(); ++i) {
    bool covered = false;
    for (std::size_t j = 0; j < found.size() && !covered; ++j) {
      if (i == j || !found[j].contains(found[i], kMergeTol)) continue;
      covered = !found[i].contains(found[j], kMergeTol) || j < i;
    }
    if (!covered) kept.push_back(found[i]);
  }

  std::vector<Equilibrium> result;
  for (const Box& box : kept) {
    Equilibrium eq;
    eq.p_range = {clamp01(box.p.lo), clamp01(box.p.hi)};
    eq.q_range = {clamp01(box.q.lo), clamp01(box.q.hi)};
    const double p = clamp01(0.5 * (eq.p_range.lo + eq.p_range.hi));
    const double q = clamp01(0.5 * (eq.q_range.lo + eq.q_range.hi));
    eq.profile = StrategyProfile(p, q);
    eq.payoffs = expected_payoffs(eq.profile, state, payoffs);
    if (!box.is_point(kTieTolerance)) {
      eq.kind = EquilibriumKind::component;
    } else if (is_endpoint(p) && is_endpoint(q)) {
      eq.kind = EquilibriumKind::pure;
    } else {
      eq.kind = EquilibriumKind::mixed;
    }
    result.push_back(eq);
  }

  std::sort(result.begin(), result.end(),
            [](const Equilibrium& x, const Equilibrium& y) {
              if (x.kind != y.kind) return x.kind < y.kind;
              if (x.profile.p() != y.profile.p()) {
                return x.profile.p() > y.profile.p();
              }
              return x.profile.q() > y.profile.q();
            });
  return result;
}

}  // namespace qgame::core
