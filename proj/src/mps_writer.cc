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


#include "h2res/mps_writer.h"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "h2res/lp_data.h"

namespace h2res {
namespace {

constexpr char kObjective[] = "COST";
constexpr char kRhs[] = "RHS";
constexpr char kBounds[] = "BND";

std::string row_name(int k) { return fmt::format("R{:07d}", k + 1); }
std::string col_name(int j) { return fmt::format("C{:07d}", j + 1); }

// Fields start in columns 2, 5, 15 and 25.
std::string entry(const char* type, const std::string& a, const std::string& b,
                  const std::string& number) {
  std::string line = fmt::format(" {:<2} {:<8}  {:<8}  {:>12}", type, a, b, number);
  while (!line.empty() && line.back() == ' ') line.pop_back();
  return line + "\n";
}

std::string marker(int id, bool open) {
  return fmt::format("    M{:<7d}  'MARKER'                 '{}'\n", id,
                     open ? "INTORG" : "INTEND");
}

// Drops a leading zero and exponent padding: "-0.5e-05" becomes "-.5e-5".
std::string compact(std::string s) {
  const size_t lead = s[0] == '-' ? 1 : 0;
  if (s.compare(lead, 2, "0.") == 0) s.erase(lead, 1);
  const size_t e = s.find('e');
  if (e != std::string::npos) {
    size_t digits = e + 1;
    if (s[digits] == '+') {
      s.erase(digits, 1);
    } else if (s[digits] == '-') {
      ++digits;
    }
    while (digits + 1 < s.size() && s[digits] == '0') s.erase(digits, 1);
  }
  return s;
}

}  // namespace

std::string mps_number(double value) {
  if (value == 0.0) return "0";
  if (value == std::trunc(value) && std::abs(value) < 1e11) {
    return fmt::format("{:.0f}", value);
  }
  for (int digits = 17; digits >= 1; --digits) {
    std::string s = compact(fmt::format("{:.{}g}", value, digits));
    if (s.size() <= 12) return s;
  }
  return fmt::format("{:.0e}", value);
}

std::string export_interchange(const MilpModel& model, const std::string& name) {
  const int n = model.num_variables();
  const int m = model.num_constraints();
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const auto& ta = model.constraint(a).tag;
    const auto& tb = model.constraint(b).tag;
    return ta != tb ? ta < tb : a < b;
  });

  // Column-major view with rows in output order.
  std::vector<std::vector<std::pair<int, double>>> cols(n);
  for (int k = 0; k < m; ++k) {
    for (const Term& t : model.constraint(order[k]).coefficients) {
      cols[t.var].emplace_back(k, t.coef);
    }
  }

  std::string out;
  out += fmt::format("NAME          {}\n", name);
  out += "* rows\n";
  for (int k = 0; k < m; ++k) {
    out += fmt::format("* {} {}\n", row_name(k), model.constraint(order[k]).tag);
  }
  out += "* columns\n";
  for (int j = 0; j < n; ++j) out += fmt::format("* {} {}\n", col_name(j), model.variable(j).tag);

  out += "ROWS\n";
  out += fmt::format(" N  {}\n", kObjective);
  for (int k = 0; k < m; ++k) {
    const Sense s = model.constraint(order[k]).sense;
    const char* type = s == Sense::kLe ? "L" : s == Sense::kGe ? "G" : "E";
    out += fmt::format(" {}  {}\n", type, row_name(k));
  }

  out += "COLUMNS\n";
  const std::vector<double>& cost = model.objective();
  bool in_int = false;
  int markers = 0;
  for (int j = 0; j < n; ++j) {
    const bool is_int = model.variable(j).kind == VarKind::kBinary;
    if (is_int != in_int) {
      out += marker(markers++, is_int);
      in_int = is_int;
    }
    const std::string c = col_name(j);
    bool wrote = false;
    if (cost[j] != 0.0) {
      out += entry("", c, kObjective, mps_number(cost[j]));
      wrote = true;
    }
    for (const auto& [k, v] : cols[j]) {
      out += entry("", c, row_name(k), mps_number(v));
      wrote = true;
    }
    // Keep columns that appear nowhere so the variable count matches.
    if (!wrote) out += entry("", c, kObjective, "0");
  }
  if (in_int) out += marker(markers++, false);

  out += "RHS\n";
  for (int k = 0; k < m; ++k) {
    const double rhs = model.constraint(order[k]).rhs;
    if (rhs != 0.0) out += entry("", kRhs, row_name(k), mps_number(rhs));
  }

  out += "BOUNDS\n";
  for (int j = 0; j < n; ++j) {
    const VariableHandle& v = model.variable(j);
    const std::string c = col_name(j);
    const double lo = v.lower, up = v.upper;
    if (lo == up) {
      out += entry("FX", kBounds, c, mps_number(lo));
    } else if (lo == -kInf && up == kInf) {
      out += entry("FR", kBounds, c, "");
    } else if (v.kind == VarKind::kBinary && lo == 0.0 && up == 1.0) {
      out += entry("UP", kBounds, c, "1");
    } else {
      if (lo == -kInf) {
        out += entry("MI", kBounds, c, "");
      } else if (lo != 0.0 || up < 0.0) {
        out += entry("LO", kBounds, c, mps_number(lo));
      }
      if (up != kInf) out += entry("UP", kBounds, c, mps_number(up));
    }
  }
  out += "ENDATA\n";
  return out;
}

}  // namespace h2res
