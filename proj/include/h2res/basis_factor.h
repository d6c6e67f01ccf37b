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

#ifndef H2RES_BASIS_FACTOR_H_
#define H2RES_BASIS_FACTOR_H_

#include <memory>
#include <vector>

#include "h2res/lp_data.h"

namespace h2res {

// LU of the simplex basis B = [A_S, -I_L] with product-form updates.
//
// Logical columns are unit vectors, so only the kernel formed by the basic
// structural columns and the rows not covered by a basic logical is handed to
// the sparse LU. Position space indexes basis slots, row space indexes rows.
class BasisFactor {
 public:
  explicit BasisFactor(const LpData& lp);
  ~BasisFactor();
  BasisFactor(const BasisFactor&) = delete;
  BasisFactor& operator=(const BasisFactor&) = delete;

  // Factorizes the basis in head. Basic structurals that make the kernel
  // singular are replaced by the logicals of uncovered rows; their indices are
  // appended to evicted. Returns false if repair fails.
  bool factor(std::vector<int>& head, std::vector<int>& evicted);

  // Solves B w = b. Input in row space, output in position space.
  void ftran(std::vector<double>& b) const;
  // Solves B^T v = c. Input in position space, output in row space.
  void btran(std::vector<double>& c) const;

  // Replaces the column at position r; alpha is B^{-1} a_q before the change.
  void update(int r, const std::vector<double>& alpha);

  int num_updates() const { return static_cast<int>(etas_.size()); }
  int kernel_size() const { return static_cast<int>(kernel_cols_.size()); }

 private:
  struct Eta {
    int pos;
    double pivot;
    std::vector<int> index;
    std::vector<double> value;
  };
  struct Klu;

  void release();
  bool factor_kernel(const std::vector<int>& head, std::vector<int>& bad_cols,
                     std::vector<int>& bad_rows);

  const LpData& lp_;
  int m_;
  int n_;
  std::unique_ptr<Klu> klu_;
  // Kernel bookkeeping.
  std::vector<int> kernel_cols_;    // structural variable per kernel column
  std::vector<int> kernel_pos_;     // basis position per kernel column
  std::vector<int> kernel_rows_;    // original row per kernel row
  std::vector<int> row_to_kernel_;  // -1 for rows covered by a logical
  std::vector<int> logical_pos_;    // basis position of the logical of row i
  std::vector<Eta> etas_;
  mutable std::vector<double> work_;
};

}  // namespace h2res

#endif  // H2RES_BASIS_FACTOR_H_
