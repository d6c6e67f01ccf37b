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

#include "h2res/dual_simplex.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>

#include "h2res/milp_model.h"

namespace h2res {

namespace {

constexpr double kArtificialBound = 1e6;
constexpr double kWeightFloor = 1e-6;
constexpr double kDropTol = 1e-14;
constexpr int kMaxFinishRounds = 20;

// Deterministic value in [0, 1) keyed by column index.
double hash_unit(std::uint64_t j) {
  std::uint64_t z = j + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return static_cast<double>(z >> 11) * 0x1.0p-53;
}

SparseMatrix transpose(const SparseMatrix& a) {
  SparseMatrix t;
  t.major = a.minor;
  t.minor = a.major;
  t.start.assign(t.major + 1, 0);
  for (int idx : a.index) ++t.start[idx + 1];
  for (int i = 0; i < t.major; ++i) t.start[i + 1] += t.start[i];
  t.index.resize(a.index.size());
  t.value.resize(a.value.size());
  std::vector<int> next(t.start.begin(), t.start.end() - 1);
  for (int j = 0; j < a.major; ++j) {
    for (int e = a.start[j]; e < a.start[j + 1]; ++e) {
      const int slot = next[a.index[e]]++;
      t.index[slot] = j;
      t.value[slot] = a.value[e];
    }
  }
  return t;
}

}  // namespace

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
    case LpStatus::kIterationLimit: return "iteration_limit";
    case LpStatus::kTimeLimit: return "time_limit";
    case LpStatus::kNumericalFailure: return "numerical_failure";
  }
  return "unknown";
}

LpData lp_from_model(const MilpModel& model) {
  std::vector<int> rows(model.num_constraints());
  for (int i = 0; i < model.num_constraints(); ++i) rows[i] = i;
  return lp_from_model(model, rows);
}

LpData lp_from_model(const MilpModel& model, const std::vector<int>& row_subset) {
  LpData lp;
  lp.num_rows = static_cast<int>(row_subset.size());
  lp.num_cols = model.num_variables();
  lp.cost = model.objective();
  lp.col_lower.resize(lp.num_cols);
  lp.col_upper.resize(lp.num_cols);
  lp.integer.resize(lp.num_cols);
  for (int j = 0; j < lp.num_cols; ++j) {
    const auto& v = model.variable(j);
    lp.col_lower[j] = v.lower;
    lp.col_upper[j] = v.upper;
    lp.integer[j] = v.kind == VarKind::kBinary;
  }
  SparseMatrix rows;
  rows.major = lp.num_rows;
  rows.minor = lp.num_cols;
  rows.start.assign(1, 0);
  lp.row_lower.resize(lp.num_rows);
  lp.row_upper.resize(lp.num_rows);
  for (int k = 0; k < lp.num_rows; ++k) {
    const auto& c = model.constraint(row_subset[k]);
    for (const Term& t : c.coefficients) {
      rows.index.push_back(t.var);
      rows.value.push_back(t.coef);
    }
    rows.start.push_back(static_cast<int>(rows.index.size()));
    lp.row_lower[k] = c.sense == Sense::kLe ? -kInf : c.rhs;
    lp.row_upper[k] = c.sense == Sense::kGe ? kInf : c.rhs;
  }
  lp.by_col = transpose(rows);
  lp.by_row = std::move(rows);
  return lp;
}

DualSimplex::DualSimplex(const LpData& lp, LpOptions options)
    : lp_(lp), options_(options), m_(lp.num_rows), n_(lp.num_cols),
      factor_(std::make_unique<BasisFactor>(lp)) {}

DualSimplex::~DualSimplex() = default;

double DualSimplex::nonbasic_value(int j) const {
  switch (status_[j]) {
    case VarStatus::kAtLower: return lower_[j];
    case VarStatus::kAtUpper: return upper_[j];
    default: return 0.0;
  }
}

void DualSimplex::make_artificial(int j, bool upper_side) {
  artificial_[j] = true;
  if (upper_side) {
    upper_[j] = std::max(lower_[j], 0.0) + kArtificialBound;
    status_[j] = VarStatus::kAtUpper;
  } else {
    lower_[j] = std::min(upper_[j], 0.0) - kArtificialBound;
    status_[j] = VarStatus::kAtLower;
  }
}

// Chooses the bound of a nonbasic variable that agrees with its reduced cost.
void DualSimplex::place_nonbasic(int j, double dj) {
  const double tol = options_.dual_tol;
  const bool lo = std::isfinite(lower_[j]);
  const bool up = std::isfinite(upper_[j]);
  if (lo && up && lower_[j] == upper_[j]) {
    status_[j] = VarStatus::kAtLower;
  } else if (dj > tol) {
    if (lo) status_[j] = VarStatus::kAtLower; else make_artificial(j, false);
  } else if (dj < -tol) {
    if (up) status_[j] = VarStatus::kAtUpper; else make_artificial(j, true);
  } else if (status_[j] == VarStatus::kAtLower && lo) {
  } else if (status_[j] == VarStatus::kAtUpper && up) {
  } else if (lo) {
    status_[j] = VarStatus::kAtLower;
  } else if (up) {
    status_[j] = VarStatus::kAtUpper;
  } else {
    status_[j] = VarStatus::kAtZero;
  }
}

bool DualSimplex::refactor() {
  std::vector<int> evicted;
  if (!factor_->factor(head_, evicted)) return false;
  if (!evicted.empty()) {
    for (int p = 0; p < m_; ++p) status_[head_[p]] = VarStatus::kBasic;
    for (int v : evicted) status_[v] = VarStatus::kAtZero;
    std::fill(weight_.begin(), weight_.end(), 1.0);
    compute_dual();
    for (int v : evicted) place_nonbasic(v, d_[v]);
  }
  return true;
}

void DualSimplex::compute_primal() {
  std::vector<double> rhs(m_, 0.0);
  const int total = n_ + m_;
  for (int j = 0; j < total; ++j) {
    if (status_[j] == VarStatus::kBasic) continue;
    const double v = nonbasic_value(j);
    x_[j] = v;
    if (v == 0.0) continue;
    if (j < n_) {
      for (int e = lp_.by_col.start[j]; e < lp_.by_col.start[j + 1]; ++e) {
        rhs[lp_.by_col.index[e]] -= lp_.by_col.value[e] * v;
      }
    } else {
      rhs[j - n_] += v;
    }
  }
  factor_->ftran(rhs);
  for (int p = 0; p < m_; ++p) x_[head_[p]] = rhs[p];
}

void DualSimplex::compute_dual() {
  std::vector<double> y(m_);
  for (int p = 0; p < m_; ++p) y[p] = cost_[head_[p]];
  factor_->btran(y);
  for (int j = 0; j < n_; ++j) {
    if (status_[j] == VarStatus::kBasic) {
      d_[j] = 0.0;
      continue;
    }
    double s = cost_[j];
    for (int e = lp_.by_col.start[j]; e < lp_.by_col.start[j + 1]; ++e) {
      s -= lp_.by_col.value[e] * y[lp_.by_col.index[e]];
    }
    d_[j] = s;
  }
  for (int i = 0; i < m_; ++i) {
    const int j = n_ + i;
    d_[j] = status_[j] == VarStatus::kBasic ? 0.0 : cost_[j] + y[i];
  }
}

// Restores dual feasibility after a recomputation: boxed variables flip,
// the rest absorb the error as a cost shift (removed before termination).
void DualSimplex::repair_dual_signs(bool allow_shift) {
  const double tol = options_.dual_tol;
  const int total = n_ + m_;
  for (int j = 0; j < total; ++j) {
    const VarStatus s = status_[j];
    if (s == VarStatus::kBasic) continue;
    const double dj = d_[j];
    const bool wrong = (s == VarStatus::kAtLower && dj < -tol && lower_[j] != upper_[j]) ||
                       (s == VarStatus::kAtUpper && dj > tol && lower_[j] != upper_[j]) ||
                       (s == VarStatus::kAtZero && std::abs(dj) > tol);
    if (!wrong) continue;
    const bool boxed = std::isfinite(lower_[j]) && std::isfinite(upper_[j]);
    if (boxed && !artificial_[j]) {
      status_[j] = dj > 0 ? VarStatus::kAtLower : VarStatus::kAtUpper;
    } else if (allow_shift) {
      cost_[j] -= dj;
      d_[j] = 0.0;
      cost_modified_ = true;
    } else {
      place_nonbasic(j, dj);
    }
  }
}

int DualSimplex::choose_row() const {
  const double tol = options_.primal_tol;
  int best = -1;
  double best_score = 0.0;
  for (int p = 0; p < m_; ++p) {
    const int v = head_[p];
    const double xv = x_[v];
    double infeas;
    if (xv < lower_[v] - tol) {
      infeas = lower_[v] - xv;
    } else if (xv > upper_[v] + tol) {
      infeas = xv - upper_[v];
    } else {
      continue;
    }
    const double score = infeas * infeas / weight_[p];
    if (score > best_score) {
      best_score = score;
      best = p;
    }
  }
  return best;
}

DualSimplex::Finish DualSimplex::finish() {
  if (++finish_rounds_ > kMaxFinishRounds) return Finish::kDone;
  bool changed = false;
  if (cost_modified_) {
    cost_ = base_cost_;
    cost_modified_ = false;
    compute_dual();
    const double tol = options_.dual_tol;
    const int total = n_ + m_;
    for (int j = 0; j < total; ++j) {
      const VarStatus s = status_[j];
      if (s == VarStatus::kBasic || lower_[j] == upper_[j]) continue;
      const double dj = d_[j];
      if ((s == VarStatus::kAtLower && dj < -tol) || (s == VarStatus::kAtUpper && dj > tol) ||
          (s == VarStatus::kAtZero && std::abs(dj) > tol)) {
        if (dj > 0) {
          if (std::isfinite(lower_[j])) status_[j] = VarStatus::kAtLower; else make_artificial(j, false);
        } else {
          if (std::isfinite(upper_[j])) status_[j] = VarStatus::kAtUpper; else make_artificial(j, true);
        }
        changed = true;
      }
    }
    // Flips onto fresh artificial bounds need another optimization pass
    // before an artificial bound can certify anything.
    if (changed) {
      compute_primal();
      return Finish::kContinue;
    }
  }
  // Variables resting on an artificial bound either return to a real bound or
  // certify an unbounded ray.
  const int total = n_ + m_;
  for (int j = 0; j < total; ++j) {
    if (!artificial_[j]) continue;
    const VarStatus s = status_[j];
    const bool on_art = (s == VarStatus::kAtLower && !std::isfinite(base_lower_[j])) ||
                        (s == VarStatus::kAtUpper && !std::isfinite(base_upper_[j]));
    if (s == VarStatus::kBasic || !on_art) {
      if (s != VarStatus::kBasic || (x_[j] > base_lower_[j] - options_.primal_tol &&
                                     x_[j] < base_upper_[j] + options_.primal_tol)) {
        lower_[j] = base_lower_[j];
        upper_[j] = base_upper_[j];
        artificial_[j] = false;
      }
      continue;
    }
    if (std::abs(d_[j]) > options_.dual_tol) {
      return Finish::kUnbounded;
    }
    lower_[j] = base_lower_[j];
    upper_[j] = base_upper_[j];
    artificial_[j] = false;
    if (std::isfinite(lower_[j])) {
      status_[j] = VarStatus::kAtLower;
    } else if (std::isfinite(upper_[j])) {
      status_[j] = VarStatus::kAtUpper;
    } else {
      status_[j] = VarStatus::kAtZero;
    }
    changed = true;
  }
  if (changed) {
    compute_primal();
    return Finish::kContinue;
  }
  // Guard against drift: recompute from a fresh factorization once.
  if (factor_->num_updates() > 0) {
    if (!refactor()) return Finish::kDone;
    compute_primal();
    compute_dual();
    repair_dual_signs(false);
    compute_primal();
    if (choose_row() >= 0) return Finish::kContinue;
  }
  return Finish::kDone;
}

void DualSimplex::fill_result(LpResult& out, LpStatus status) {
  out.status = status;
  out.x.assign(x_.begin(), x_.begin() + n_);
  out.row_activity.assign(x_.begin() + n_, x_.end());
  out.reduced_costs.assign(d_.begin(), d_.begin() + n_);
  std::vector<double> y(m_);
  for (int p = 0; p < m_; ++p) y[p] = cost_[head_[p]];
  factor_->btran(y);
  out.duals = std::move(y);
  out.objective = 0.0;
  for (int j = 0; j < n_; ++j) out.objective += lp_.cost[j] * x_[j];
  out.basis.head = head_;
  out.basis.status = status_;
  for (int j = 0; j < n_ + m_; ++j) {
    // Statuses on artificial bounds are meaningless to a later solve.
    if (artificial_[j] && status_[j] != VarStatus::kBasic) out.basis.status[j] = VarStatus::kAtZero;
  }
}

LpResult DualSimplex::solve(const std::vector<double>& col_lower,
                            const std::vector<double>& col_upper,
                            const Basis* warm) {
  const auto t0 = std::chrono::steady_clock::now();
  const int total = n_ + m_;
  LpResult result;
  lower_.resize(total);
  upper_.resize(total);
  for (int j = 0; j < n_; ++j) {
    lower_[j] = col_lower[j];
    upper_[j] = col_upper[j];
  }
  for (int i = 0; i < m_; ++i) {
    lower_[n_ + i] = lp_.row_lower[i];
    upper_[n_ + i] = lp_.row_upper[i];
  }
  base_lower_ = lower_;
  base_upper_ = upper_;
  artificial_.assign(total, false);
  x_.assign(total, 0.0);
  d_.assign(total, 0.0);
  weight_.assign(m_, 1.0);
  rho_.assign(m_, 0.0);
  arow_.assign(total, 0.0);
  mark_.assign(total, 0);
  touched_.clear();
  finish_rounds_ = 0;
  for (int j = 0; j < total; ++j) {
    if (lower_[j] > upper_[j] + options_.primal_tol) {
      x_.assign(total, 0.0);
      head_.clear();
      status_.assign(total, VarStatus::kAtLower);
      result.status = LpStatus::kInfeasible;
      result.x.assign(n_, 0.0);
      if (j >= n_) result.certificate_rows.push_back(j - n_);
      return result;
    }
  }

  base_cost_.assign(total, 0.0);
  std::copy(lp_.cost.begin(), lp_.cost.end(), base_cost_.begin());
  cost_ = base_cost_;
  cost_modified_ = false;
  if (options_.perturb) {
    double cmax = 0.0;
    for (int j = 0; j < n_; ++j) cmax = std::max(cmax, std::abs(lp_.cost[j]));
    const double base = 1e-7 * std::max(1.0, std::min(cmax, 1e3));
    for (int j = 0; j < n_; ++j) {
      const bool lo = std::isfinite(lower_[j]);
      const bool up = std::isfinite(upper_[j]);
      if (lo && up && lower_[j] == upper_[j]) continue;
      const double xi = base * (1.0 + std::abs(lp_.cost[j]) / std::max(cmax, 1.0)) *
                        (1.0 + hash_unit(static_cast<std::uint64_t>(j)));
      double sign;
      if (lo && !up) {
        sign = 1.0;
      } else if (up && !lo) {
        sign = -1.0;
      } else if (lo && up) {
        sign = lp_.cost[j] >= 0.0 ? 1.0 : -1.0;
      } else {
        continue;
      }
      cost_[j] += sign * xi;
      cost_modified_ = true;
    }
  }

  const bool use_warm = warm && static_cast<int>(warm->head.size()) == m_ &&
                        static_cast<int>(warm->status.size()) == total;
  if (use_warm) {
    head_ = warm->head;
    status_ = warm->status;
    for (int j = 0; j < total; ++j) {
      if (status_[j] == VarStatus::kBasic) status_[j] = VarStatus::kAtZero;
    }
    for (int p = 0; p < m_; ++p) status_[head_[p]] = VarStatus::kBasic;
  } else {
    head_.resize(m_);
    status_.assign(total, VarStatus::kAtZero);
    for (int i = 0; i < m_; ++i) {
      head_[i] = n_ + i;
      status_[n_ + i] = VarStatus::kBasic;
    }
  }
  if (!refactor()) {
    fill_result(result, LpStatus::kNumericalFailure);
    return result;
  }
  compute_dual();
  for (int j = 0; j < total; ++j) {
    if (status_[j] != VarStatus::kBasic) {
      // Warm statuses stay when already consistent with the reduced cost.
      if (status_[j] == VarStatus::kAtLower && !std::isfinite(lower_[j])) status_[j] = VarStatus::kAtZero;
      if (status_[j] == VarStatus::kAtUpper && !std::isfinite(upper_[j])) status_[j] = VarStatus::kAtZero;
      place_nonbasic(j, d_[j]);
    }
  }
  compute_primal();

  long iter = 0;
  int degenerate_run = 0;
  bool bland = false;
  int unstable_retries = 0;
  const double ptol = options_.primal_tol;
  const double dtol = options_.dual_tol;
  rho_.assign(m_, 0.0);
  for (;;) {
    if (iter >= options_.iteration_limit) {
      fill_result(result, LpStatus::kIterationLimit);
      result.iterations = iter;
      return result;
    }
    if (iter % 64 == 0 && std::isfinite(options_.time_limit)) {
      const double el = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      if (el > options_.time_limit) {
        fill_result(result, LpStatus::kTimeLimit);
        result.iterations = iter;
        return result;
      }
    }
    if (factor_->num_updates() >= options_.refactor_interval) {
      if (!refactor()) {
        fill_result(result, LpStatus::kNumericalFailure);
        result.iterations = iter;
        return result;
      }
      compute_dual();
      repair_dual_signs(true);
      compute_primal();
    }

    int r;
    if (bland) {
      r = -1;
      int best_var = total;
      for (int p = 0; p < m_; ++p) {
        const int v = head_[p];
        if ((x_[v] < lower_[v] - ptol || x_[v] > upper_[v] + ptol) && v < best_var) {
          best_var = v;
          r = p;
        }
      }
    } else {
      r = choose_row();
    }
    if (r < 0) {
      const Finish f = finish();
      if (f == Finish::kContinue) continue;
      fill_result(result, f == Finish::kDone ? LpStatus::kOptimal : LpStatus::kUnbounded);
      result.iterations = iter;
      return result;
    }

    const int leaving = head_[r];
    const bool to_lower = x_[leaving] < lower_[leaving];
    const double delta = to_lower ? x_[leaving] - lower_[leaving] : x_[leaving] - upper_[leaving];
    const double sgn = delta > 0.0 ? 1.0 : -1.0;

    // Pivot row: rho = B^{-T} e_r, alpha_r = rho^T [A -I] over nonbasics.
    std::fill(rho_.begin(), rho_.end(), 0.0);
    rho_[r] = 1.0;
    factor_->btran(rho_);
    for (int j : touched_) {
      arow_[j] = 0.0;
      mark_[j] = 0;
    }
    touched_.clear();
    double rho_norm2 = 0.0;
    for (int i = 0; i < m_; ++i) {
      const double ri = rho_[i];
      if (std::abs(ri) <= kDropTol) continue;
      rho_norm2 += ri * ri;
      const int lj = n_ + i;
      if (status_[lj] != VarStatus::kBasic) {
        arow_[lj] = -ri;
        mark_[lj] = 1;
        touched_.push_back(lj);
      }
      for (int e = lp_.by_row.start[i]; e < lp_.by_row.start[i + 1]; ++e) {
        const int j = lp_.by_row.index[e];
        if (status_[j] == VarStatus::kBasic) continue;
        if (!mark_[j]) {
          mark_[j] = 1;
          touched_.push_back(j);
        }
        arow_[j] += ri * lp_.by_row.value[e];
      }
    }

    // Harris two-pass ratio test on alpha_hat = sgn * alpha_r.
    const double ptol_piv = options_.pivot_tol;
    double tmax = kInf;
    for (int j : touched_) {
      if (lower_[j] == upper_[j]) continue;
      const double a = sgn * arow_[j];
      if (std::abs(a) <= ptol_piv) continue;
      const VarStatus s = status_[j];
      if (s == VarStatus::kAtLower && a > 0.0) {
        tmax = std::min(tmax, (d_[j] + dtol) / a);
      } else if (s == VarStatus::kAtUpper && a < 0.0) {
        tmax = std::min(tmax, (d_[j] - dtol) / a);
      } else if (s == VarStatus::kAtZero) {
        tmax = std::min(tmax, (std::abs(d_[j]) + dtol) / std::abs(a));
      }
    }
    int q = -1;
    if (std::isfinite(tmax)) {
      double best = -1.0;
      double best_ratio = kInf;
      for (int j : touched_) {
        if (lower_[j] == upper_[j]) continue;
        const double a = sgn * arow_[j];
        if (std::abs(a) <= ptol_piv) continue;
        const VarStatus s = status_[j];
        double ratio;
        if (s == VarStatus::kAtLower && a > 0.0) {
          ratio = d_[j] / a;
        } else if (s == VarStatus::kAtUpper && a < 0.0) {
          ratio = d_[j] / a;
        } else if (s == VarStatus::kAtZero) {
          ratio = std::abs(d_[j]) / std::abs(a);
        } else {
          continue;
        }
        if (bland) {
          const double rr = std::max(ratio, 0.0);
          if (q < 0 || rr < best_ratio - 1e-12 || (rr <= best_ratio + 1e-12 && j < q)) {
            best_ratio = rr;
            q = j;
          }
        } else if (ratio <= tmax && (std::abs(a) > best || (std::abs(a) == best && j < q))) {
          best = std::abs(a);
          q = j;
        }
      }
    }
    if (q < 0) {
      if (factor_->num_updates() > 0 && unstable_retries < 3) {
        ++unstable_retries;
        if (!refactor()) {
          fill_result(result, LpStatus::kNumericalFailure);
          result.iterations = iter;
          return result;
        }
        compute_dual();
        repair_dual_signs(true);
        compute_primal();
        continue;
      }
      fill_result(result, LpStatus::kInfeasible);
      std::vector<std::pair<double, int>> support;
      for (int i = 0; i < m_; ++i) {
        if (std::abs(rho_[i]) > 1e-9) support.emplace_back(-std::abs(rho_[i]), i);
      }
      std::sort(support.begin(), support.end());
      for (const auto& [mag, i] : support) result.certificate_rows.push_back(i);
      result.iterations = iter;
      return result;
    }

    // Entering column and stability check.
    alpha_.assign(m_, 0.0);
    if (q < n_) {
      for (int e = lp_.by_col.start[q]; e < lp_.by_col.start[q + 1]; ++e) {
        alpha_[lp_.by_col.index[e]] = lp_.by_col.value[e];
      }
    } else {
      alpha_[q - n_] = -1.0;
    }
    factor_->ftran(alpha_);
    const double apiv = alpha_[r];
    if (std::abs(apiv - arow_[q]) > 1e-7 * (1.0 + std::abs(apiv)) || std::abs(apiv) <= 1e-11) {
      if (factor_->num_updates() > 0 && unstable_retries < 5) {
        ++unstable_retries;
        if (!refactor()) {
          fill_result(result, LpStatus::kNumericalFailure);
          result.iterations = iter;
          return result;
        }
        compute_dual();
        repair_dual_signs(true);
        compute_primal();
        continue;
      }
      if (std::abs(apiv) <= 1e-11) {
        fill_result(result, LpStatus::kNumericalFailure);
        result.iterations = iter;
        return result;
      }
    }
    unstable_retries = 0;

    // Dual step.
    const double ahat_q = sgn * arow_[q];
    double t = d_[q] / ahat_q;
    if (t < 0.0) {
      cost_[q] -= d_[q];
      d_[q] = 0.0;
      cost_modified_ = true;
      t = 0.0;
    }
    const double theta_d = sgn * t;
    if (t <= 1e-12) {
      if (++degenerate_run > options_.degeneracy_threshold) bland = true;
    } else {
      degenerate_run = 0;
      bland = false;
    }
    if (theta_d != 0.0) {
      for (int j : touched_) d_[j] -= theta_d * arow_[j];
    }
    d_[leaving] = -theta_d;
    d_[q] = 0.0;

    // Steepest-edge weights need tau = B^{-1} rho before the basis changes.
    tau_ = rho_;
    factor_->ftran(tau_);

    // Primal step.
    const double theta_p = delta / apiv;
    for (int p = 0; p < m_; ++p) {
      if (alpha_[p] != 0.0) x_[head_[p]] -= theta_p * alpha_[p];
    }
    x_[q] += theta_p;
    x_[leaving] = to_lower ? lower_[leaving] : upper_[leaving];
    status_[leaving] = to_lower ? VarStatus::kAtLower : VarStatus::kAtUpper;

    const double wr = std::max(rho_norm2, kWeightFloor);
    for (int p = 0; p < m_; ++p) {
      if (p == r || alpha_[p] == 0.0) continue;
      const double ratio = alpha_[p] / apiv;
      weight_[p] = std::max(weight_[p] + ratio * (ratio * wr - 2.0 * tau_[p]), kWeightFloor);
    }
    weight_[r] = std::max(wr / (apiv * apiv), kWeightFloor);

    head_[r] = q;
    status_[q] = VarStatus::kBasic;
    factor_->update(r, alpha_);
    ++iter;
  }
}

}  // namespace h2res
