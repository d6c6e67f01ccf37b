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

#ifndef H2RES_LP_DATA_H_
#define H2RES_LP_DATA_H_

#include <cstdint>
#include <limits>
#include <vector>

namespace h2res {

class MilpModel;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Compressed sparse storage along the major dimension.
struct SparseMatrix {
  int major = 0;
  int minor = 0;
  std::vector<int> start;  // size major + 1
  std::vector<int> index;
  std::vector<double> value;
};

// Bounded-row LP: row_lower <= A x <= row_upper, col_lower <= x <= col_upper.
struct LpData {
  int num_rows = 0;
  int num_cols = 0;
  SparseMatrix by_col;
  SparseMatrix by_row;
  std::vector<double> cost;
  std::vector<double> col_lower;
  std::vector<double> col_upper;
  std::vector<double> row_lower;
  std::vector<double> row_upper;
  std::vector<bool> integer;
};

LpData lp_from_model(const MilpModel& model);
// Restricts the rows to the listed model constraints, in that order.
LpData lp_from_model(const MilpModel& model, const std::vector<int>& row_subset);

enum class VarStatus : std::int8_t { kBasic, kAtLower, kAtUpper, kAtZero };

// Simplex basis over structural columns [0, n) and row logicals [n, n + m).
struct Basis {
  std::vector<int> head;
  std::vector<VarStatus> status;

  bool empty() const { return head.empty(); }
};

}  // namespace h2res

#endif  // H2RES_LP_DATA_H_
