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

#ifndef QGAME_EXPERIMENTS_EQUILIBRIUM_GRID_HPP_
#define QGAME_EXPERIMENTS_EQUILIBRIUM_GRID_HPP_

#include <vector>

#include "qgame/core/equilibrium.hpp"
#include "qgame/core/game.hpp"

namespace qgame::experiments {

inline constexpr double kGridDeviationTolerance = 1e-9;

// Brute-force equilibrium search on a (p, q) grid, independent of the
// closed-form solver. Payoffs are evaluated by enumerating both players'
// actions and both measurement branches.
//
// Two kinds of cells are reported:
//  * grid points where neither player gains more than 1e-9 by moving to any
//    other grid value of their own strategy;
//  * bracket squares [p_i, p_i+1] x [q_j, q_j+1] across which Alice's
//    advantage of identity over flip changes sign in q and Bob's changes
//    sign in p, so an off-grid mixed equilibrium lies inside. Squares whose
//    four corners are already grid-point equilibria are omitted.
struct GridCell {
  enum class Source { grid_point, bracket };

  Source source = Source::grid_point;
  // Grid point, or the centre of a bracket square.
  double p = 0.0;
  double q = 0.0;
  // A grid point with no flagged neighbour (8-connectivity); bracket squares
  // always count as isolated.
  bool isolated = true;
  // Within one grid step (Chebyshev) of a closed-form equilibrium.
  bool matched = false;
};

struct ClosedFormMatch {
  core::Equilibrium equilibrium;
  // Within one grid step of some oracle cell.
  bool matched = false;
  double distance = 0.0;
};

struct EquilibriumGridReport {
  double step = 0.0;
  std::vector<GridCell> cells;
  std::vector<ClosedFormMatch> closed_form;

  bool all_closed_form_matched() const;
  bool all_isolated_cells_matched() const;
  bool agrees() const {
    return all_closed_form_matched() && all_isolated_cells_matched();
  }
};

// Throws std::domain_error unless 0 < step <= 0.1.
EquilibriumGridReport equilibrium_oracle_grid(const core::EntangledState& state,
                                              const core::PayoffMatrix& payoffs,
                                              double step);

}  // namespace qgame::experiments

#endif  // QGAME_EXPERIMENTS_EQUILIBRIUM_GRID_HPP_
