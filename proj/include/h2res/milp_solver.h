// Copyright 2026 The h2res Authors.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef H2RES_MILP_SOLVER_H_
#define H2RES_MILP_SOLVER_H_

#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "h2res/lp_data.h"
#include "h2res/milp_model.h"

namespace h2res {

enum class SolveStatus { kOptimal, kFeasible, kInfeasible, kUnbounded, kLimit, kError };
const char* to_string(SolveStatus status);

enum class Branching { kMostFractional, kPseudoCost };

struct SolverOptions {
  double mip_gap = 1e-6;  // relative, against max(|incumbent|, 1)
  double feas_tol = 1e-9;
  double integrality_tol = 1e-6;
  double dual_tol = 1e-9;   // LP reduced-cost optimality
  double pivot_tol = 1e-9;  // smallest accepted simplex pivot
  int degeneracy_threshold = 200;  // degenerate pivots before Bland's rule
  double time_limit = std::numeric_limits<double>::infinity();
  long node_limit = std::numeric_limits<long>::max();
  Branching branching = Branching::kMostFractional;
  bool heuristic_enabled = true;
  int flip_budget = 48;            // repair LPs per group
  std::ostream* log = nullptr;     // diagnostic stream for progress lines
  int log_interval = 50;           // nodes between progress lines
};

struct SolveStats {
  long nodes = 0;  // branch-and-bound nodes processed after the root
  long lp_iterations = 0;
  long lp_solves = 0;
  double wall_time = 0.0;
  std::vector<double> bound_trace;      // best bound after each node
  std::vector<double> incumbent_trace;  // incumbent after each node
  std::vector<double> node_bounds;      // LP objective of each solved node
};

struct Solution {
  SolveStatus status = SolveStatus::kError;
  double objective = std::numeric_limits<double>::infinity();
  std::vector<double> values;
  double bound = -std::numeric_limits<double>::infinity();
  double gap = std::numeric_limits<double>::infinity();
  SolveStats stats;
  std::vector<double> duals;  // per constraint index, LP solves only
  std::vector<std::string> binding_tags;
  Basis basis;

  bool has_values() const {
    return status == SolveStatus::kOptimal || status == SolveStatus::kFeasible;
  }
};

// LP relaxation: binaries become [lower, upper] continuous.
Solution solve_lp(const MilpModel& model, const SolverOptions& options = {});
double dual_of(const MilpModel& model, const Solution& solution, const std::string& tag);

Solution branch_and_bound(const MilpModel& model, const SolverOptions& options = {});

// Thresholds the relaxed binaries, then repairs infeasibility by flipping
// exclusion binaries first and commitment binaries second.
Solution round_and_repair(const MilpModel& model, const Solution& relaxed,
                          const SolverOptions& options = {});

// Exhaustive oracle over every binary assignment, one LP each.
Solution enumerate_binaries(const MilpModel& model, const SolverOptions& options = {});

}  // namespace h2res

#endif  // H2RES_MILP_SOLVER_H_
