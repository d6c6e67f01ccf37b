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

#ifndef H2RES_MILP_MODEL_H_
#define H2RES_MILP_MODEL_H_

#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace h2res {

enum class VarKind { kContinuous, kBinary };
enum class Sense { kLe, kEq, kGe };

struct VariableHandle {
  int index = -1;
  VarKind kind = VarKind::kContinuous;
  double lower = 0.0;
  double upper = 0.0;
  std::string tag;  // e.g. "P_DG[8,12]"
};

struct Term {
  int var = -1;
  double coef = 0.0;
};

struct LinearConstraint {
  std::vector<Term> coefficients;
  Sense sense = Sense::kLe;
  double rhs = 0.0;
  std::string tag;  // "Eq<NN><suffix>[asset,hour]" optionally followed by "/facet"
};

// Constraint tag decomposition; asset ids are strings ("8", "ST", "H2").
struct ParsedTag {
  int equation = 0;
  std::string suffix;
  std::string asset;
  int hour = 0;
  int facet = -1;
};
std::optional<ParsedTag> parse_constraint_tag(const std::string& tag);
std::string constraint_tag(int equation, const std::string& suffix,
                           const std::string& asset, int hour, int facet = -1);
std::string variable_tag(const std::string& name, const std::string& asset,
                         int hour);

// Minimization model with sparse rows and a dense objective.
class MilpModel {
 public:
  int add_variable(std::string tag, VarKind kind, double lower, double upper);
  int add_constraint(std::string tag, std::vector<Term> terms, Sense sense,
                     double rhs);
  void add_objective(int var, double coef);

  void set_bounds(int var, double lower, double upper);
  void set_constraint_rhs(int row, double rhs);
  void set_constraint_sense(int row, Sense sense);

  int num_variables() const { return static_cast<int>(variables_.size()); }
  int num_constraints() const { return static_cast<int>(constraints_.size()); }
  int num_binaries() const;

  const std::vector<VariableHandle>& variables() const { return variables_; }
  const std::vector<LinearConstraint>& constraints() const { return constraints_; }
  const VariableHandle& variable(int i) const { return variables_[i]; }
  const LinearConstraint& constraint(int i) const { return constraints_[i]; }
  const std::vector<double>& objective() const { return objective_; }
  std::vector<Term> objective_terms() const;

  // -1 when unknown.
  int find_variable(const std::string& tag) const;
  int find_constraint(const std::string& tag) const;

  int horizon = 0;
  double dt = 1.0;

  // Structural problems: dangling indices, empty rows, bad bounds.
  std::vector<std::string> check_invariants() const;

  // Row activity a^T x.
  double activity(int row, const std::vector<double>& x) const;
  double objective_value(const std::vector<double>& x) const;
  // Largest violation of rows and bounds by x.
  double max_violation(const std::vector<double>& x) const;

 private:
  std::vector<VariableHandle> variables_;
  std::vector<LinearConstraint> constraints_;
  std::vector<double> objective_;
  std::unordered_map<std::string, int> var_by_tag_;
  std::unordered_map<std::string, int> row_by_tag_;
};

}  // namespace h2res

#endif  // H2RES_MILP_MODEL_H_
