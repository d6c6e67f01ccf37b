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

#ifndef H2RES_DUAL_SIMPLEX_H_
#define H2RES_DUAL_SIMPLEX_H_

#include <memory>
#include <vector>

#include "h2res/basis_factor.h"
#include "h2res/lp_data.h"

namespace h2res {

struct LpOptions {
  double primal_tol = 1e-9;
  double dual_tol = 1e-9;
  double pivot_tol = 1e-9;
  int refactor_interval = 100;
  long iteration_limit = 50'000'000;
  double time_limit = kInf;  // seconds
  // Consecutive degenerate pivots before switching to Bland's rule.
  int degeneracy_threshold = 200;
  bool perturb = true;
};

enum class LpStatus {
  kOptimal,
  kInfeasible,
  kUnbounded,
  kIterationLimit,
  kTimeLimit,
  kNumericalFailure
};

const char* to_string(LpStatus status);

struct LpResult {
  LpStatus status = LpStatus::kNumericalFailure;
  double objective = 0.0;
  std::vector<double> x;             // structural values
  std::vector<double> row_activity;  // A x
  std::vector<double> duals;         // d objective / d row bound
  std::vector<double> reduced_costs;
  Basis basis;
  long iterations = 0;
  // Rows combined in the infeasibility proof, strongest first.
  std::vector<int> certificate_rows;
};

// Bounded dual revised simplex with dual steepest-edge pricing and a Harris
// ratio test. One instance owns its workspace; reuse it across warm solves.
class DualSimplex {
 public:
  explicit DualSimplex(const LpData& lp, LpOptions options = {});
  ~DualSimplex();

  LpResult solve(const std::vector<double>& col_lower,
                 const std::vector<double>& col_upper,
                 const Basis* warm = nullptr);
  LpResult solve() { return solve(lp_.col_lower, lp_.col_upper); }

  const LpData& data() const { return lp_; }
  LpOptions& options() { return options_; }

 private:
  enum class Finish { kDone, kContinue, kUnbounded };

  bool refactor();
  void compute_primal();
  void compute_dual();
  void repair_dual_signs(bool allow_shift);
  void place_nonbasic(int j, double dj);
  void make_artificial(int j, bool upper_side);
  double nonbasic_value(int j) const;
  Finish finish();
  int choose_row() const;
  void fill_result(LpResult& out, LpStatus status);

  const LpData& lp_;
  LpOptions options_;
  int m_ = 0;
  int n_ = 0;
  std::unique_ptr<BasisFactor> factor_;

  std::vector<double> lower_, upper_;
  std::vector<double> base_lower_, base_upper_;
  std::vector<bool> artificial_;
  std::vector<double> cost_, base_cost_;
  std::vector<double> x_, d_;
  std::vector<int> head_;
  std::vector<VarStatus> status_;
  std::vector<double> weight_;
  bool cost_modified_ = false;
  int finish_rounds_ = 0;

  std::vector<double> rho_, alpha_, tau_, arow_;
  std::vector<int> touched_;
  std::vector<char> mark_;
};

}  // namespace h2res

#endif  // H2RES_DUAL_SIMPLEX_H_
