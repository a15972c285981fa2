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

#include "qgame/experiments/equilibrium_grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qgame::experiments {

namespace {

struct Pair {
  double alice = 0.0;
  double bob = 0.0;
};

// Expectation over (Alice action, Bob action, branch), evaluated directly
// from the bimatrix.
Pair enumerate_payoffs(double p, double q, double a_sq,
                       const core::PayoffMatrix& m) {
  Pair total;
  for (int alice_flips = 0; alice_flips < 2; ++alice_flips) {
    for (int bob_flips = 0; bob_flips < 2; ++bob_flips) {
      const double weight =
          (alice_flips ? 1.0 - p : p) * (bob_flips ? 1.0 - q : q);
      for (int branch_a = 0; branch_a < 2; ++branch_a) {
        const double w = weight * (branch_a ? a_sq : 1.0 - a_sq);
        const bool alice_o = (branch_a == 1) != (alice_flips == 1);
        const bool bob_o = (branch_a == 1) != (bob_flips == 1);
        if (alice_o && bob_o) {
          total.alice += w * m.alpha();
          total.bob += w * m.beta();
        } else if (!alice_o && !bob_o) {
          total.alice += w * m.beta();
          total.bob += w * m.alpha();
        } else {
          total.alice += w * m.gamma();
          total.bob += w * m.gamma();
        }
      }
    }
  }
  return total;
}

int sign_with_band(double x) {
  if (x > kGridDeviationTolerance) return 1;
  if (x < -kGridDeviationTolerance) return -1;
  return 0;
}

bool brackets(double lo, double hi) {
  return sign_with_band(lo) * sign_with_band(hi) <= 0;
}

double range_distance(double x, const core::Range& r) {
  if (x < r.lo) return r.lo - x;
  if (x > r.hi) return x - r.hi;
  return 0.0;
}

double distance_to(const core::Equilibrium& eq, double p, double q) {
  return std::max(range_distance(p, eq.p_range), range_distance(q, eq.q_range));
}

}  // namespace

bool EquilibriumGridReport::all_closed_form_matched() const {
  return std::all_of(closed_form.begin(), closed_form.end(),
                     [](const ClosedFormMatch& m) { return m.matched; });
}

bool EquilibriumGridReport::all_isolated_cells_matched() const {
  return std::all_of(cells.begin(), cells.end(), [](const GridCell& c) {
    return !c.isolated || c.matched;
  });
}

EquilibriumGridReport equilibrium_oracle_grid(const core::EntangledState& state,
                                              const core::PayoffMatrix& payoffs,
                                              double step) {
  if (!(step > 0.0 && step <= 0.1)) {
    throw std::domain_error("grid step must lie in (0, 0.1]");
  }
  std::vector<double> axis;
  const auto n = static_cast<std::size_t>(std::floor(1.0 / step + 1e-9));
  for (std::size_t i = 0; i <= n; ++i) {
    axis.push_back(std::min(1.0, static_cast<double>(i) * step));
  }
  if (axis.back() < 1.0 - 1e-12) {
    axis.push_back(1.0);
  } else {
    axis.back() = 1.0;
  }
  const std::size_t size = axis.size();
  const double a_sq = state.a_sq();

  std::vector<Pair> table(size * size);
  auto at = [&](std::size_t i, std::size_t j) -> Pair& {
    return table[i * size + j];
  };
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) {
      at(i, j) = enumerate_payoffs(axis[i], axis[j], a_sq, payoffs);
    }
  }

  // Best deviation payoffs: Alice over her row index at fixed q, Bob over
  // his column index at fixed p.
  std::vector<double> alice_best(size, -INFINITY);
  std::vector<double> bob_best(size, -INFINITY);
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) {
      alice_best[j] = std::max(alice_best[j], at(i, j).alice);
      bob_best[i] = std::max(bob_best[i], at(i, j).bob);
    }
  }
  std::vector<char> flagged(size * size, 0);
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) {
      flagged[i * size + j] =
          alice_best[j] - at(i, j).alice <= kGridDeviationTolerance &&
          bob_best[i] - at(i, j).bob <= kGridDeviationTolerance;
    }
  }
  auto is_flagged = [&](std::ptrdiff_t i, std::ptrdiff_t j) {
    const auto s = static_cast<std::ptrdiff_t>(size);
    if (i < 0 || j < 0 || i >= s || j >= s) return false;
    return flagged[static_cast<std::size_t>(i * s + j)] != 0;
  };

  EquilibriumGridReport report;
  report.step = step;
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) {
      if (!flagged[i * size + j]) continue;
      GridCell cell;
      cell.p = axis[i];
      cell.q = axis[j];
      const auto si = static_cast<std::ptrdiff_t>(i);
      const auto sj = static_cast<std::ptrdiff_t>(j);
      for (std::ptrdiff_t di = -1; di <= 1 && cell.isolated; ++di) {
        for (std::ptrdiff_t dj = -1; dj <= 1; ++dj) {
          if ((di != 0 || dj != 0) && is_flagged(si + di, sj + dj)) {
            cell.isolated = false;
            break;
          }
        }
      }
      report.cells.push_back(cell);
    }
  }

  // Advantage of identity over flip: Alice's along q, Bob's along p.
  std::vector<double> alice_adv(size);
  std::vector<double> bob_adv(size);
  for (std::size_t k = 0; k < size; ++k) {
    alice_adv[k] = at(size - 1, k).alice - at(0, k).alice;
    bob_adv[k] = at(k, size - 1).bob - at(k, 0).bob;
  }
  for (std::size_t i = 0; i + 1 < size; ++i) {
    if (!brackets(bob_adv[i], bob_adv[i + 1])) continue;
    for (std::size_t j = 0; j + 1 < size; ++j) {
      if (!brackets(alice_adv[j], alice_adv[j + 1])) continue;
      if (flagged[i * size + j] && flagged[(i + 1) * size + j] &&
          flagged[i * size + j + 1] && flagged[(i + 1) * size + j + 1]) {
        continue;
      }
      GridCell cell;
      cell.source = GridCell::Source::bracket;
      cell.p = 0.5 * (axis[i] + axis[i + 1]);
      cell.q = 0.5 * (axis[j] + axis[j + 1]);
      report.cells.push_back(cell);
    }
  }

  const double reach = step + 1e-9;
  for (const core::Equilibrium& eq : core::nash_equilibria(state, payoffs)) {
    ClosedFormMatch match{eq, false, INFINITY};
    for (const GridCell& cell : report.cells) {
      match.distance = std::min(match.distance, distance_to(eq, cell.p, cell.q));
    }
    match.matched = match.distance <= reach;
    report.closed_form.push_back(match);
  }
  for (GridCell& cell : report.cells) {
    for (const ClosedFormMatch& m : report.closed_form) {
      if (distance_to(m.equilibrium, cell.p, cell.q) <= reach) {
        cell.matched = true;
        break;
      }
    }
  }
  return report;
}

}  // namespace qgame::experiments
