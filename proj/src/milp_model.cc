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

#include "h2res/milp_model.h"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <cmath>

#include "h2res/error.h"

namespace h2res {

std::optional<ParsedTag> parse_constraint_tag(const std::string& tag) {
  // Eq<digits><letters>[asset,hour](/facet)?
  if (tag.size() < 7 || tag.compare(0, 2, "Eq") != 0) return std::nullopt;
  size_t i = 2;
  const size_t digits_begin = i;
  while (i < tag.size() && std::isdigit(static_cast<unsigned char>(tag[i]))) ++i;
  if (i == digits_begin) return std::nullopt;
  ParsedTag out;
  out.equation = std::stoi(tag.substr(digits_begin, i - digits_begin));
  const size_t suffix_begin = i;
  while (i < tag.size() && std::islower(static_cast<unsigned char>(tag[i]))) ++i;
  out.suffix = tag.substr(suffix_begin, i - suffix_begin);
  if (i >= tag.size() || tag[i] != '[') return std::nullopt;
  const size_t comma = tag.find(',', i);
  const size_t close = tag.find(']', i);
  if (comma == std::string::npos || close == std::string::npos || comma > close) {
    return std::nullopt;
  }
  out.asset = tag.substr(i + 1, comma - i - 1);
  if (out.asset.empty()) return std::nullopt;
  const std::string hour = tag.substr(comma + 1, close - comma - 1);
  if (hour.empty() || !std::all_of(hour.begin(), hour.end(), [](char c) {
        return std::isdigit(static_cast<unsigned char>(c));
      })) {
    return std::nullopt;
  }
  out.hour = std::stoi(hour);
  i = close + 1;
  if (i < tag.size()) {
    if (tag[i] != '/' || i + 1 >= tag.size()) return std::nullopt;
    const std::string facet = tag.substr(i + 1);
    if (!std::all_of(facet.begin(), facet.end(), [](char c) {
          return std::isdigit(static_cast<unsigned char>(c));
        })) {
      return std::nullopt;
    }
    out.facet = std::stoi(facet);
  }
  return out;
}

std::string constraint_tag(int equation, const std::string& suffix,
                           const std::string& asset, int hour, int facet) {
  if (facet >= 0) return fmt::format("Eq{}{}[{},{}]/{}", equation, suffix, asset, hour, facet);
  return fmt::format("Eq{}{}[{},{}]", equation, suffix, asset, hour);
}

std::string variable_tag(const std::string& name, const std::string& asset,
                         int hour) {
  return fmt::format("{}[{},{}]", name, asset, hour);
}

int MilpModel::add_variable(std::string tag, VarKind kind, double lower,
                            double upper) {
  if (lower > upper) throw BuildError(tag, "variable lower bound above upper bound");
  if (kind == VarKind::kBinary && (lower < 0.0 || upper > 1.0)) {
    throw BuildError(tag, "binary bounds must lie within [0,1]");
  }
  const int index = num_variables();
  if (!var_by_tag_.emplace(tag, index).second) {
    throw BuildError(tag, "duplicate variable tag");
  }
  variables_.push_back({index, kind, lower, upper, std::move(tag)});
  objective_.push_back(0.0);
  return index;
}

int MilpModel::add_constraint(std::string tag, std::vector<Term> terms,
                              Sense sense, double rhs) {
  // Merge duplicates and drop exact zeros so rows stay canonical.
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.var < b.var; });
  std::vector<Term> merged;
  for (const Term& t : terms) {
    if (t.var < 0 || t.var >= num_variables()) {
      throw BuildError(tag, "constraint references an unknown variable");
    }
    if (!merged.empty() && merged.back().var == t.var) {
      merged.back().coef += t.coef;
    } else {
      merged.push_back(t);
    }
  }
  std::erase_if(merged, [](const Term& t) { return t.coef == 0.0; });
  if (merged.empty()) throw BuildError(tag, "constraint has no nonzero coefficient");
  if (!std::isfinite(rhs)) throw BuildError(tag, "constraint rhs is not finite");
  const int index = num_constraints();
  if (!row_by_tag_.emplace(tag, index).second) {
    throw BuildError(tag, "duplicate constraint tag");
  }
  constraints_.push_back({std::move(merged), sense, rhs, std::move(tag)});
  return index;
}

void MilpModel::add_objective(int var, double coef) { objective_.at(var) += coef; }

void MilpModel::set_bounds(int var, double lower, double upper) {
  VariableHandle& v = variables_.at(var);
  if (lower > upper) throw BuildError(v.tag, "variable lower bound above upper bound");
  v.lower = lower;
  v.upper = upper;
}

void MilpModel::set_constraint_rhs(int row, double rhs) { constraints_.at(row).rhs = rhs; }
void MilpModel::set_constraint_sense(int row, Sense sense) { constraints_.at(row).sense = sense; }

int MilpModel::num_binaries() const {
  return static_cast<int>(std::count_if(variables_.begin(), variables_.end(), [](const auto& v) {
    return v.kind == VarKind::kBinary;
  }));
}

std::vector<Term> MilpModel::objective_terms() const {
  std::vector<Term> out;
  for (int j = 0; j < num_variables(); ++j) {
    if (objective_[j] != 0.0) out.push_back({j, objective_[j]});
  }
  return out;
}

int MilpModel::find_variable(const std::string& tag) const {
  const auto it = var_by_tag_.find(tag);
  return it == var_by_tag_.end() ? -1 : it->second;
}

int MilpModel::find_constraint(const std::string& tag) const {
  const auto it = row_by_tag_.find(tag);
  return it == row_by_tag_.end() ? -1 : it->second;
}

std::vector<std::string> MilpModel::check_invariants() const {
  std::vector<std::string> out;
  for (const auto& v : variables_) {
    if (v.lower > v.upper) out.push_back(v.tag + ": lower > upper");
    if (v.kind == VarKind::kBinary && (v.lower < 0.0 || v.upper > 1.0)) {
      out.push_back(v.tag + ": binary bounds outside [0,1]");
    }
  }
  for (const auto& c : constraints_) {
    if (c.coefficients.empty()) out.push_back(c.tag + ": empty row");
    if (!std::isfinite(c.rhs)) out.push_back(c.tag + ": non-finite rhs");
    for (const Term& t : c.coefficients) {
      if (t.var < 0 || t.var >= num_variables()) out.push_back(c.tag + ": dangling variable");
    }
  }
  if (objective_.size() != variables_.size()) out.emplace_back("objective size mismatch");
  return out;
}

double MilpModel::activity(int row, const std::vector<double>& x) const {
  double s = 0.0;
  for (const Term& t : constraints_[row].coefficients) s += t.coef * x[t.var];
  return s;
}

double MilpModel::objective_value(const std::vector<double>& x) const {
  double s = 0.0;
  for (int j = 0; j < num_variables(); ++j) s += objective_[j] * x[j];
  return s;
}

double MilpModel::max_violation(const std::vector<double>& x) const {
  double worst = 0.0;
  for (int j = 0; j < num_variables(); ++j) {
    worst = std::max({worst, variables_[j].lower - x[j], x[j] - variables_[j].upper});
  }
  for (int i = 0; i < num_constraints(); ++i) {
    const double a = activity(i, x);
    const auto& c = constraints_[i];
    double v = 0.0;
    switch (c.sense) {
      case Sense::kLe: v = a - c.rhs; break;
      case Sense::kGe: v = c.rhs - a; break;
      case Sense::kEq: v = std::abs(a - c.rhs); break;
    }
    worst = std::max(worst, v);
  }
  return worst;
}

}  // namespace h2res
