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

#include "h2res/milp_solver.h"

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <memory>
#include <ostream>
#include <set>
#include <tuple>

#include "h2res/dual_simplex.h"
#include "h2res/error.h"

namespace h2res {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double relative_gap(double incumbent, double bound) {
  if (!std::isfinite(incumbent) || !std::isfinite(bound)) return kInf;
  return std::max(0.0, incumbent - bound) / std::max(std::abs(incumbent), 1.0);
}

// One LP workspace shared by every solve on a model.
//
// Polygon facet rows (tags with a "/k" suffix) start out inactive and are
// added once violated, so the LP only carries the facets that matter. Every
// result and warm basis crossing this interface is in full model row space.
class LpEngine {
 public:
  explicit LpEngine(const MilpModel& model, const SolverOptions& options)
      : model_(model), feas_tol_(options.feas_tol), options_(options) {
    const int m = model.num_constraints();
    local_.assign(m, -1);
    for (int i = 0; i < m; ++i) {
      if (model.constraint(i).tag.find('/') == std::string::npos) activate(i);
    }
    rebuild();
    for (int j = 0; j < lp_.num_cols; ++j) {
      if (lp_.integer[j]) binaries_.push_back(j);
    }
  }

  LpResult solve(const std::vector<double>& lo, const std::vector<double>& up,
                 const Basis* warm, SolveStats& stats, double time_left) {
    const auto t0 = Clock::now();
    Basis local;
    const Basis* start = nullptr;
    if (warm && !warm->empty()) {
      const int n = lp_.num_cols;
      bool grew = false;
      for (int i = 0; i < model_.num_constraints(); ++i) {
        if (local_[i] < 0 && warm->status[n + i] != VarStatus::kBasic) {
          activate(i);
          grew = true;
        }
      }
      if (grew) rebuild();
      local = to_local(*warm);
      start = &local;
    }
    LpResult r;
    for (;;) {
      simplex_->options().time_limit = time_left - seconds_since(t0);
      r = simplex_->solve(lo, up, start);
      stats.lp_iterations += r.iterations;
      ++stats.lp_solves;
      if (r.status != LpStatus::kOptimal) break;
      clamp(r.x, lo, up);
      const int before = static_cast<int>(active_.size());
      for (int i = 0; i < model_.num_constraints(); ++i) {
        if (local_[i] < 0 && violated(i, r.x)) activate(i);
      }
      if (static_cast<int>(active_.size()) == before) break;
      local = std::move(r.basis);
      for (int k = before; k < static_cast<int>(active_.size()); ++k) {
        local.head.push_back(lp_.num_cols + k);
        local.status.push_back(VarStatus::kBasic);
      }
      rebuild();
      start = &local;
    }
    return to_full(std::move(r));
  }

  // Snaps binaries to integers and re-solves so continuous values match.
  LpResult polish(const LpResult& r, std::vector<double> lo, std::vector<double> up,
                  SolveStats& stats, double time_left) {
    for (int j : binaries_) {
      const double v = std::clamp(std::round(r.x[j]), lo[j], up[j]);
      lo[j] = up[j] = v;
    }
    LpResult p = solve(lo, up, &r.basis, stats, time_left);
    if (p.status == LpStatus::kOptimal) {
      for (int j : binaries_) p.x[j] = lo[j];
    }
    return p;
  }

  std::vector<std::string> tags_for(const std::vector<int>& rows, size_t limit = 24) const {
    std::vector<std::string> out;
    for (int i : rows) {
      if (out.size() >= limit) break;
      out.push_back(model_.constraint(i).tag);
    }
    return out;
  }

  // Column data; row data covers only the active rows.
  const LpData& lp() const { return lp_; }
  const std::vector<int>& binaries() const { return binaries_; }

 private:
  static void clamp(std::vector<double>& x, const std::vector<double>& lo,
                    const std::vector<double>& up) {
    for (size_t j = 0; j < x.size(); ++j) x[j] = std::clamp(x[j], lo[j], up[j]);
  }

  void activate(int row) {
    local_[row] = static_cast<int>(active_.size());
    active_.push_back(row);
  }

  void rebuild() {
    lp_ = lp_from_model(model_, active_);
    LpOptions o;
    o.primal_tol = feas_tol_;
    o.dual_tol = options_.dual_tol;
    o.pivot_tol = options_.pivot_tol;
    o.degeneracy_threshold = options_.degeneracy_threshold;
    simplex_ = std::make_unique<DualSimplex>(lp_, o);
  }

  bool violated(int row, const std::vector<double>& x) const {
    const LinearConstraint& c = model_.constraint(row);
    double act = 0.0;
    for (const Term& t : c.coefficients) act += t.coef * x[t.var];
    const double tol = feas_tol_ * std::max(1.0, std::abs(c.rhs));
    if (c.sense != Sense::kGe && act > c.rhs + tol) return true;
    if (c.sense != Sense::kLe && act < c.rhs - tol) return true;
    return false;
  }

  Basis to_local(const Basis& full) const {
    const int n = lp_.num_cols;
    Basis b;
    b.status.resize(n + active_.size());
    for (int j = 0; j < n; ++j) b.status[j] = full.status[j];
    for (size_t k = 0; k < active_.size(); ++k) b.status[n + k] = full.status[n + active_[k]];
    for (int v : full.head) {
      if (v < n) {
        b.head.push_back(v);
      } else if (local_[v - n] >= 0) {
        b.head.push_back(n + local_[v - n]);
      }
    }
    return b;
  }

  LpResult to_full(LpResult r) const {
    const int n = lp_.num_cols;
    const int m = model_.num_constraints();
    if (!r.basis.empty()) {
      Basis b;
      b.status.assign(n + m, VarStatus::kBasic);
      for (int j = 0; j < n; ++j) b.status[j] = r.basis.status[j];
      for (size_t k = 0; k < active_.size(); ++k) b.status[n + active_[k]] = r.basis.status[n + k];
      for (int v : r.basis.head) b.head.push_back(v < n ? v : n + active_[v - n]);
      for (int i = 0; i < m; ++i) {
        if (local_[i] < 0) b.head.push_back(n + i);
      }
      r.basis = std::move(b);
    }
    if (!r.duals.empty()) {
      std::vector<double> duals(m, 0.0);
      for (size_t k = 0; k < active_.size(); ++k) duals[active_[k]] = r.duals[k];
      r.duals = std::move(duals);
    }
    if (!r.x.empty()) {
      r.row_activity.assign(m, 0.0);
      for (int i = 0; i < m; ++i) {
        for (const Term& t : model_.constraint(i).coefficients) r.row_activity[i] += t.coef * r.x[t.var];
      }
    }
    for (int& row : r.certificate_rows) row = active_[row];
    return r;
  }

  const MilpModel& model_;
  double feas_tol_;
  SolverOptions options_;
  std::vector<int> active_;  // model rows in LP order
  std::vector<int> local_;   // LP row of each model row, -1 while inactive
  LpData lp_;
  std::unique_ptr<DualSimplex> simplex_;
  std::vector<int> binaries_;
};

SolveStatus map_lp_status(LpStatus s) {
  switch (s) {
    case LpStatus::kOptimal: return SolveStatus::kOptimal;
    case LpStatus::kInfeasible: return SolveStatus::kInfeasible;
    case LpStatus::kUnbounded: return SolveStatus::kUnbounded;
    case LpStatus::kIterationLimit:
    case LpStatus::kTimeLimit: return SolveStatus::kLimit;
    case LpStatus::kNumericalFailure: return SolveStatus::kError;
  }
  return SolveStatus::kError;
}

bool is_integral(const LpResult& r, const std::vector<int>& binaries, double tol) {
  return std::all_of(binaries.begin(), binaries.end(), [&](int j) {
    return std::abs(r.x[j] - std::round(r.x[j])) <= tol;
  });
}

}  // namespace

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kFeasible: return "feasible";
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kUnbounded: return "unbounded";
    case SolveStatus::kLimit: return "limit";
    case SolveStatus::kError: return "error";
  }
  return "unknown";
}

Solution solve_lp(const MilpModel& model, const SolverOptions& options) {
  const auto t0 = Clock::now();
  LpEngine engine(model, options);
  Solution sol;
  const LpData& lp = engine.lp();
  LpResult r = engine.solve(lp.col_lower, lp.col_upper, nullptr, sol.stats, options.time_limit);
  sol.status = map_lp_status(r.status);
  if (r.status == LpStatus::kOptimal) {
    sol.objective = r.objective;
    sol.bound = r.objective;
    sol.gap = 0.0;
    sol.values = std::move(r.x);
    sol.duals = std::move(r.duals);
  } else if (r.status == LpStatus::kInfeasible) {
    sol.binding_tags = engine.tags_for(r.certificate_rows);
  }
  sol.basis = std::move(r.basis);
  sol.stats.wall_time = seconds_since(t0);
  return sol;
}

double dual_of(const MilpModel& model, const Solution& solution, const std::string& tag) {
  const int row = model.find_constraint(tag);
  if (row < 0) throw InvalidArgument("unknown constraint tag " + tag);
  if (solution.duals.empty()) throw InvalidArgument("solution carries no duals");
  return solution.duals[row];
}

namespace {

struct PseudoCost {
  double sum_down = 0.0, sum_up = 0.0;
  int n_down = 0, n_up = 0;
};

struct Node {
  int id = 0;
  double bound = -kInf;
  std::vector<std::pair<int, double>> fixes;
  std::shared_ptr<const Basis> basis;
  int branch_var = -1;
  double branch_frac = 0.0;
  bool up = false;
};

int pick_branch(const LpResult& r, const std::vector<int>& binaries, const SolverOptions& o,
                const std::vector<PseudoCost>& pc) {
  int best = -1;
  double best_score = -1.0;
  for (int j : binaries) {
    const double f = r.x[j] - std::floor(r.x[j]);
    if (f <= o.integrality_tol || f >= 1.0 - o.integrality_tol) continue;
    double score;
    if (o.branching == Branching::kPseudoCost && pc[j].n_down > 0 && pc[j].n_up > 0) {
      const double down = pc[j].sum_down / pc[j].n_down * f;
      const double up = pc[j].sum_up / pc[j].n_up * (1.0 - f);
      score = 1.0 + std::max(down, 1e-6) * std::max(up, 1e-6);
    } else {
      score = std::min(f, 1.0 - f);
    }
    if (score > best_score) {
      best_score = score;
      best = j;
    }
  }
  return best;
}

// Nodes between dives inside the tree search.
constexpr long kDiveInterval = 100;

// Fractional diving: fixes the least fractional binary to its nearest value
// and re-solves, trying the other value once when that is infeasible. Returns
// an integral optimum of the final LP or a non-optimal status on failure.
LpResult dive(LpEngine& engine, LpResult r, std::vector<double> lo, std::vector<double> up,
              const SolverOptions& o, double cutoff, SolveStats& stats,
              const std::function<double()>& time_left) {
  const std::vector<int>& binaries = engine.binaries();
  const size_t max_solves = 2 * binaries.size() + 8;
  for (size_t solves = 0; solves < max_solves && time_left() > 0.0;) {
    int pick = -1;
    double closest = kInf;
    for (int j : binaries) {
      const double f = r.x[j] - std::floor(r.x[j]);
      const double frac = std::min(f, 1.0 - f);
      if (frac <= o.integrality_tol) continue;
      if (frac < closest) {
        closest = frac;
        pick = j;
      }
    }
    if (pick < 0) return engine.polish(r, lo, up, stats, time_left());
    const double v = std::round(r.x[pick]);
    lo[pick] = up[pick] = v;
    LpResult next = engine.solve(lo, up, &r.basis, stats, time_left());
    ++solves;
    if (next.status == LpStatus::kInfeasible) {
      lo[pick] = up[pick] = 1.0 - v;
      next = engine.solve(lo, up, &r.basis, stats, time_left());
      ++solves;
    }
    if (next.status != LpStatus::kOptimal) return next;
    if (next.objective >= cutoff) {
      next.status = LpStatus::kInfeasible;
      return next;
    }
    r = std::move(next);
  }
  r.status = LpStatus::kIterationLimit;
  return r;
}

}  // namespace

Solution branch_and_bound(const MilpModel& model, const SolverOptions& options) {
  const auto t0 = Clock::now();
  LpEngine engine(model, options);
  const LpData& lp = engine.lp();
  const std::vector<int>& binaries = engine.binaries();
  Solution sol;
  auto time_left = [&] { return options.time_limit - seconds_since(t0); };
  auto finish = [&](Solution& s) {
    s.stats.wall_time = seconds_since(t0);
    s.gap = relative_gap(s.objective, s.bound);
    return s;
  };

  LpResult root = engine.solve(lp.col_lower, lp.col_upper, nullptr, sol.stats, time_left());
  if (root.status != LpStatus::kOptimal) {
    sol.status = map_lp_status(root.status);
    if (root.status == LpStatus::kInfeasible) sol.binding_tags = engine.tags_for(root.certificate_rows);
    return finish(sol);
  }
  sol.bound = root.objective;

  double incumbent = kInf;
  std::vector<double> best_x;
  Basis best_basis;
  auto offer = [&](const LpResult& r) {
    if (r.status == LpStatus::kOptimal && r.objective < incumbent) {
      incumbent = r.objective;
      best_x = r.x;
      best_basis = r.basis;
    }
  };

  if (is_integral(root, binaries, options.integrality_tol)) {
    offer(engine.polish(root, lp.col_lower, lp.col_upper, sol.stats, time_left()));
  } else if (options.heuristic_enabled) {
    Solution relaxed;
    relaxed.status = SolveStatus::kOptimal;
    relaxed.objective = root.objective;
    relaxed.values = root.x;
    relaxed.basis = root.basis;
    SolverOptions h = options;
    h.log = nullptr;
    h.flip_budget = std::min(options.flip_budget, 8);
    Solution heur = round_and_repair(model, relaxed, h);
    sol.stats.lp_iterations += heur.stats.lp_iterations;
    sol.stats.lp_solves += heur.stats.lp_solves;
    if (heur.has_values() && heur.objective < incumbent) {
      incumbent = heur.objective;
      best_x = heur.values;
      best_basis = heur.basis;
    }
  }

  const bool root_integral = is_integral(root, binaries, options.integrality_tol);
  if (!root_integral && options.heuristic_enabled &&
      incumbent - root.objective > options.mip_gap * std::max(std::abs(incumbent), 1.0)) {
    offer(dive(engine, root, lp.col_lower, lp.col_upper, options, incumbent, sol.stats,
               time_left));
  }

  auto cmp = [](const Node& a, const Node& b) {
    return std::tie(a.bound, a.id) < std::tie(b.bound, b.id);
  };
  std::set<Node, decltype(cmp)> open(cmp);
  std::vector<PseudoCost> pc(lp.num_cols);
  int next_id = 1;
  auto branch = [&](const LpResult& r, const std::vector<std::pair<int, double>>& fixes) {
    const int j = pick_branch(r, binaries, options, pc);
    if (j < 0) return false;
    auto shared = std::make_shared<const Basis>(r.basis);
    const double f = r.x[j] - std::floor(r.x[j]);
    for (int dir = 0; dir < 2; ++dir) {
      Node child;
      child.id = next_id++;
      child.bound = r.objective;
      child.fixes = fixes;
      child.fixes.emplace_back(j, dir == 0 ? std::floor(r.x[j]) : std::ceil(r.x[j]));
      child.basis = shared;
      child.branch_var = j;
      child.branch_frac = f;
      child.up = dir == 1;
      open.insert(std::move(child));
    }
    return true;
  };

  const auto prune_threshold = [&] {
    if (!std::isfinite(incumbent)) return kInf;
    return incumbent - options.mip_gap * std::max(std::abs(incumbent), 1.0);
  };
  if (!(is_integral(root, binaries, options.integrality_tol)) && root.objective < prune_threshold()) {
    branch(root, {});
  }

  bool hit_limit = false;
  double pruned_min = kInf;
  // Any of these is a valid lower bound; the running maximum is reported.
  auto global_lb = [&] {
    double lb = std::min(incumbent, pruned_min);
    if (!open.empty()) lb = std::min(lb, open.begin()->bound);
    return lb;
  };
  auto gap_abs = [&] { return options.mip_gap * std::max(std::abs(incumbent), 1.0); };
  std::vector<double> lo = lp.col_lower, up = lp.col_upper;
  while (!open.empty()) {
    const double lb = global_lb();
    if (std::isfinite(lb)) sol.bound = std::max(sol.bound, lb);
    if (std::isfinite(incumbent) && incumbent - sol.bound <= gap_abs()) break;
    if (sol.stats.nodes >= options.node_limit || time_left() <= 0.0) {
      hit_limit = true;
      break;
    }
    Node node = *open.begin();
    open.erase(open.begin());
    if (node.bound >= prune_threshold()) {
      pruned_min = std::min(pruned_min, node.bound);
      continue;
    }

    lo = lp.col_lower;
    up = lp.col_upper;
    for (const auto& [j, v] : node.fixes) lo[j] = up[j] = v;
    LpResult r = engine.solve(lo, up, node.basis.get(), sol.stats, time_left());
    ++sol.stats.nodes;
    if (r.status == LpStatus::kTimeLimit || r.status == LpStatus::kIterationLimit) {
      open.insert(std::move(node));
      hit_limit = true;
      break;
    }
    if (r.status == LpStatus::kOptimal) {
      sol.stats.node_bounds.push_back(r.objective);
      if (node.branch_var >= 0) {
        const double gain = std::max(0.0, r.objective - node.bound);
        PseudoCost& p = pc[node.branch_var];
        if (node.up) {
          p.sum_up += gain / std::max(1.0 - node.branch_frac, 1e-6);
          ++p.n_up;
        } else {
          p.sum_down += gain / std::max(node.branch_frac, 1e-6);
          ++p.n_down;
        }
      }
      if (r.objective >= prune_threshold()) {
        pruned_min = std::min(pruned_min, r.objective);
      } else if (is_integral(r, binaries, options.integrality_tol)) {
        offer(engine.polish(r, lo, up, sol.stats, time_left()));
      } else {
        if (options.heuristic_enabled && sol.stats.nodes % kDiveInterval == 0) {
          offer(dive(engine, r, lo, up, options, prune_threshold(), sol.stats, time_left));
        }
        if (r.objective < prune_threshold()) branch(r, node.fixes);
      }
    }
    const double after = global_lb();
    if (std::isfinite(after)) sol.bound = std::max(sol.bound, after);
    sol.stats.bound_trace.push_back(sol.bound);
    sol.stats.incumbent_trace.push_back(incumbent);
    if (options.log && sol.stats.nodes % options.log_interval == 0) {
      *options.log << fmt::format("node={} bound={:.10g} incumbent={:.10g} gap={:.3e}\n",
                                  sol.stats.nodes, sol.bound, incumbent,
                                  relative_gap(incumbent, sol.bound));
    }
  }
  if (!std::isfinite(incumbent)) {
    sol.status = hit_limit ? SolveStatus::kLimit : SolveStatus::kInfeasible;
    if (!hit_limit) sol.binding_tags = engine.tags_for(root.certificate_rows);
    return finish(sol);
  }
  if (!hit_limit) sol.bound = std::max(sol.bound, global_lb());
  sol.bound = std::min(sol.bound, incumbent);
  sol.objective = incumbent;
  sol.values = std::move(best_x);
  sol.basis = std::move(best_basis);
  sol.status = relative_gap(incumbent, sol.bound) <= options.mip_gap ? SolveStatus::kOptimal
                                                                     : SolveStatus::kFeasible;
  if (options.log) {
    *options.log << fmt::format("node={} bound={:.10g} incumbent={:.10g} gap={:.3e}\n", sol.stats.nodes,
                                sol.bound, incumbent, relative_gap(incumbent, sol.bound));
  }
  return finish(sol);
}

namespace {

int repair_group(const std::string& tag) {
  if (tag.rfind("psi_", 0) == 0) return 0;
  if (tag.rfind("x_", 0) == 0) return 1;
  return 2;
}

// Thresholds each binary at 0.5 in index order. When the threshold value
// would break a row at the relaxed point and the opposite value would not,
// the opposite value is taken; row activities follow every decision.
std::vector<double> round_binaries(const MilpModel& model, const std::vector<double>& relaxed,
                                   const std::vector<int>& binaries, double feas_tol) {
  const int m = model.num_constraints();
  std::vector<double> x = relaxed;
  std::vector<double> act(m, 0.0);
  std::vector<std::vector<std::pair<int, double>>> col(model.num_variables());
  for (int i = 0; i < m; ++i) {
    for (const Term& t : model.constraint(i).coefficients) {
      act[i] += t.coef * x[t.var];
      col[t.var].emplace_back(i, t.coef);
    }
  }
  auto fits = [&](int j, double value) {
    const VariableHandle& v = model.variable(j);
    if (value < v.lower || value > v.upper) return false;
    for (const auto& [i, a] : col[j]) {
      const LinearConstraint& c = model.constraint(i);
      const double next = act[i] + a * (value - x[j]);
      const double tol = feas_tol * std::max(1.0, std::abs(c.rhs));
      if (c.sense != Sense::kGe && next > c.rhs + tol) return false;
      if (c.sense != Sense::kLe && next < c.rhs - tol) return false;
    }
    return true;
  };
  for (int j : binaries) {
    const VariableHandle& v = model.variable(j);
    const double first = std::clamp(x[j] >= 0.5 ? 1.0 : 0.0, v.lower, v.upper);
    const double second = std::clamp(1.0 - first, v.lower, v.upper);
    const double pick = fits(j, first) || !fits(j, second) ? first : second;
    for (const auto& [i, a] : col[j]) act[i] += a * (pick - x[j]);
    x[j] = pick;
  }
  return x;
}

}  // namespace

Solution round_and_repair(const MilpModel& model, const Solution& relaxed,
                          const SolverOptions& options) {
  const auto t0 = Clock::now();
  if (static_cast<int>(relaxed.values.size()) != model.num_variables()) {
    throw InvalidArgument("round_and_repair needs a relaxed solution with values");
  }
  LpEngine engine(model, options);
  const LpData& lp = engine.lp();
  Solution sol;
  auto time_left = [&] { return options.time_limit - seconds_since(t0); };

  std::vector<double> lo = lp.col_lower, up = lp.col_upper;
  std::vector<double> assigned = round_binaries(model, relaxed.values, engine.binaries(),
                                                options.feas_tol);
  for (int j : engine.binaries()) lo[j] = up[j] = assigned[j];
  const Basis* warm = relaxed.basis.empty() ? nullptr : &relaxed.basis;
  LpResult r = engine.solve(lo, up, warm, sol.stats, time_left());

  if (r.status == LpStatus::kInfeasible) {
    std::vector<char> flipped(lp.num_cols, 0);
    std::vector<int> flips;
    int budget = std::max(options.flip_budget, 0) * 2;
    Basis last_basis = r.basis;
    while (r.status == LpStatus::kInfeasible && budget-- > 0 && time_left() > 0.0) {
      // Binaries named by the current infeasibility proof come first.
      std::vector<char> in_cert(lp.num_cols, 0);
      for (int row : r.certificate_rows) {
        for (const Term& t : model.constraint(row).coefficients) in_cert[t.var] = 1;
      }
      int pick = -1;
      std::tuple<int, int, double, int> best{2, 3, 0.0, 0};
      for (int j : engine.binaries()) {
        if (flipped[j] || lp.col_lower[j] == lp.col_upper[j]) continue;
        const std::tuple<int, int, double, int> key{in_cert[j] ? 0 : 1,
                                                    repair_group(model.variable(j).tag),
                                                    std::abs(relaxed.values[j] - 0.5), j};
        if (pick < 0 || key < best) {
          best = key;
          pick = j;
        }
      }
      if (pick < 0) break;
      flipped[pick] = 1;
      flips.push_back(pick);
      assigned[pick] = 1.0 - assigned[pick];
      lo[pick] = up[pick] = assigned[pick];
      r = engine.solve(lo, up, &last_basis, sol.stats, time_left());
      if (r.status == LpStatus::kInfeasible) last_basis = r.basis;
    }
    if (r.status == LpStatus::kOptimal) {
      // Drop flips that turned out unnecessary, newest first.
      for (auto it = flips.rbegin(); it != flips.rend() && time_left() > 0.0; ++it) {
        const int j = *it;
        const double keep = assigned[j];
        lo[j] = up[j] = 1.0 - keep;
        LpResult trial = engine.solve(lo, up, &r.basis, sol.stats, time_left());
        if (trial.status == LpStatus::kOptimal && trial.objective <= r.objective) {
          assigned[j] = 1.0 - keep;
          r = std::move(trial);
        } else {
          lo[j] = up[j] = keep;
        }
      }
    }
  }

  sol.stats.wall_time = seconds_since(t0);
  if (r.status != LpStatus::kOptimal) {
    sol.status = r.status == LpStatus::kInfeasible ? SolveStatus::kInfeasible : map_lp_status(r.status);
    sol.binding_tags = engine.tags_for(r.certificate_rows);
    sol.bound = relaxed.objective;
    return sol;
  }
  for (int j : engine.binaries()) r.x[j] = assigned[j];
  sol.objective = r.objective;
  sol.values = std::move(r.x);
  sol.basis = std::move(r.basis);
  sol.bound = std::isfinite(relaxed.bound) ? relaxed.bound : relaxed.objective;
  sol.bound = std::min(sol.bound, sol.objective);
  sol.gap = relative_gap(sol.objective, sol.bound);
  sol.status = sol.gap <= options.mip_gap ? SolveStatus::kOptimal : SolveStatus::kFeasible;
  return sol;
}

Solution enumerate_binaries(const MilpModel& model, const SolverOptions& options) {
  const auto t0 = Clock::now();
  LpEngine engine(model, options);
  const LpData& lp = engine.lp();
  std::vector<int> free_bins;
  for (int j : engine.binaries()) {
    if (lp.col_lower[j] < lp.col_upper[j]) free_bins.push_back(j);
  }
  if (free_bins.size() > 24) throw InvalidArgument("too many binaries to enumerate");
  Solution sol;
  std::vector<double> lo = lp.col_lower, up = lp.col_upper;
  for (int j : free_bins) lo[j] = up[j] = 0.0;
  Basis warm;
  const unsigned long count = 1UL << free_bins.size();
  unsigned long prev_gray = 0;
  for (unsigned long k = 0; k < count; ++k) {
    const unsigned long gray = k ^ (k >> 1);
    const unsigned long diff = gray ^ prev_gray;
    for (size_t b = 0; b < free_bins.size(); ++b) {
      if (diff & (1UL << b)) {
        const int j = free_bins[b];
        lo[j] = up[j] = (gray >> b) & 1UL ? 1.0 : 0.0;
      }
    }
    prev_gray = gray;
    LpResult r = engine.solve(lo, up, warm.empty() ? nullptr : &warm, sol.stats, kInf);
    ++sol.stats.nodes;
    warm = r.basis;
    if (r.status == LpStatus::kOptimal && r.objective < sol.objective) {
      sol.objective = r.objective;
      sol.values = r.x;
      sol.basis = r.basis;
    }
  }
  sol.stats.wall_time = seconds_since(t0);
  if (sol.values.empty()) {
    sol.status = SolveStatus::kInfeasible;
    return sol;
  }
  sol.status = SolveStatus::kOptimal;
  sol.bound = sol.objective;
  sol.gap = 0.0;
  return sol;
}

}  // namespace h2res
