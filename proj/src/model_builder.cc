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

#include "h2res/model_builder.h"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "h2res/error.h"

namespace h2res {

namespace {

std::string node_id(int node) { return std::to_string(node); }

int require_var(const MilpModel& model, const std::string& tag) {
  const int v = model.find_variable(tag);
  if (v < 0) throw BuildError(tag, "variable missing");
  return v;
}

int var_or_none(const MilpModel& model, const std::string& name, int node, int hour) {
  return model.find_variable(variable_tag(name, node_id(node), hour));
}

void check_profile(const std::string& tag, size_t size, int horizon) {
  if (static_cast<int>(size) != horizon) {
    throw BuildError(tag, fmt::format("profile has {} entries, horizon is {}", size, horizon));
  }
}

void check_node(const Network& network, int node, const std::string& tag) {
  if (node < 0 || node >= network.num_nodes()) {
    throw BuildError(tag, fmt::format("node {} is not in the network", node));
  }
}

template <typename Params>
void check_params(const Params& p, const std::string& tag) {
  const auto problems = validate(p);
  if (!problems.empty()) throw BuildError(tag, problems.front());
}

}  // namespace

void linearize_cone(MilpModel& model, const std::vector<Term>& p_expr, int q_var,
                    double s_cap, int segments, int equation, const std::string& asset,
                    int hour) {
  if (segments < 4 || segments % 2 != 0) {
    throw InvalidArgument(fmt::format("cone segments must be even and >= 4, got {}", segments));
  }
  if (!(s_cap > 0.0)) {
    throw InvalidArgument(fmt::format("cone capacity must be positive, got {}", s_cap));
  }
  const double pi = std::numbers::pi;
  const double apothem = s_cap * std::cos(pi / segments);
  for (int k = 0; k < segments; ++k) {
    // Edge between vertices at angles 2*pi*k/m and 2*pi*(k+1)/m.
    const double phi = (2.0 * k + 1.0) * pi / segments;
    double c = std::cos(phi);
    double s = std::sin(phi);
    if (std::abs(c) < 1e-15) c = 0.0;
    if (std::abs(s) < 1e-15) s = 0.0;
    std::vector<Term> terms;
    for (const Term& t : p_expr) terms.push_back({t.var, t.coef * c});
    terms.push_back({q_var, s});
    model.add_constraint(constraint_tag(equation, "", asset, hour, k), std::move(terms),
                         Sense::kLe, apothem);
  }
}

void linearize_cone(MilpModel& model, int p_var, int q_var, double s_cap, int segments,
                    int equation, const std::string& asset, int hour) {
  linearize_cone(model, std::vector<Term>{{p_var, 1.0}}, q_var, s_cap, segments, equation,
                 asset, hour);
}

void add_substation_block(MilpModel& model, const Network& network, double price,
                          const BlockContext& ctx) {
  const double s = network.substation_s_max;
  if (!(s > 0.0)) throw BuildError("P_ST[0,*]", "substation rating must be positive");
  const int p = model.add_variable(variable_tag("P_ST", "0", ctx.hour), VarKind::kContinuous, -s, s);
  const int q = model.add_variable(variable_tag("Q_ST", "0", ctx.hour), VarKind::kContinuous, -s, s);
  model.add_objective(p, price * ctx.dt * ctx.s_base);
  linearize_cone(model, p, q, s, ctx.segments, 14, "ST", ctx.hour);
}

void add_dg_block(MilpModel& model, const DgParams& dg, const BlockContext& ctx) {
  const std::string a = node_id(dg.node);
  const int t = ctx.hour;
  const double sb = ctx.s_base;
  const double p_max = dg.p_max / sb;
  const double p_min = dg.p_min / sb;
  const double q_min = dg.q_min / sb;
  const double q_max = dg.q_max / sb;
  const int p = model.add_variable(variable_tag("P_DG", a, t), VarKind::kContinuous,
                                   std::min(0.0, p_min), p_max);
  const int q = model.add_variable(variable_tag("Q_DG", a, t), VarKind::kContinuous,
                                   std::min(0.0, q_min), std::max(0.0, q_max));
  const int x = model.add_variable(variable_tag("x_DG", a, t), VarKind::kBinary, 0.0, 1.0);
  // Transition costs never exceed one event price at the optimum.
  const int su = model.add_variable(variable_tag("C_SU", a, t), VarKind::kContinuous, 0.0,
                                    dg.startup_price);
  const int sd = model.add_variable(variable_tag("C_SD", a, t), VarKind::kContinuous, 0.0,
                                    dg.shutdown_price);
  model.add_objective(x, dg.fixed_cost * ctx.dt);
  model.add_objective(p, dg.marginal_cost * ctx.dt * sb);
  model.add_objective(su, 1.0);
  model.add_objective(sd, 1.0);

  model.add_constraint(constraint_tag(3, "a", a, t), {{p, 1.0}, {x, -p_min}}, Sense::kGe, 0.0);
  model.add_constraint(constraint_tag(3, "b", a, t), {{p, 1.0}, {x, -p_max}}, Sense::kLe, 0.0);
  model.add_constraint(constraint_tag(4, "a", a, t), {{q, 1.0}, {x, -q_min}}, Sense::kGe, 0.0);
  model.add_constraint(constraint_tag(4, "b", a, t), {{q, 1.0}, {x, -q_max}}, Sense::kLe, 0.0);
  linearize_cone(model, p, q, dg.s_rating / sb, ctx.segments, 5, a, t);

  const double ramp_up = dg.ramp_up * ctx.dt / sb;
  const double ramp_down = dg.ramp_down * ctx.dt / sb;
  if (t == 1) {
    const double x0 = dg.initial_status;
    const double p0 = dg.initial_power / sb;
    model.add_constraint(constraint_tag(6, "", a, t), {{su, 1.0}, {x, -dg.startup_price}},
                         Sense::kGe, -dg.startup_price * x0);
    model.add_constraint(constraint_tag(8, "", a, t), {{sd, 1.0}, {x, dg.shutdown_price}},
                         Sense::kGe, dg.shutdown_price * x0);
    model.add_constraint(constraint_tag(10, "a", a, t), {{p, 1.0}}, Sense::kLe, ramp_up + p0);
    model.add_constraint(constraint_tag(10, "b", a, t), {{p, -1.0}}, Sense::kLe, ramp_down - p0);
  } else {
    const int x_prev = require_var(model, variable_tag("x_DG", a, t - 1));
    const int p_prev = require_var(model, variable_tag("P_DG", a, t - 1));
    model.add_constraint(constraint_tag(6, "", a, t),
                         {{su, 1.0}, {x, -dg.startup_price}, {x_prev, dg.startup_price}},
                         Sense::kGe, 0.0);
    model.add_constraint(constraint_tag(8, "", a, t),
                         {{sd, 1.0}, {x, dg.shutdown_price}, {x_prev, -dg.shutdown_price}},
                         Sense::kGe, 0.0);
    model.add_constraint(constraint_tag(10, "a", a, t), {{p, 1.0}, {p_prev, -1.0}}, Sense::kLe,
                         ramp_up);
    model.add_constraint(constraint_tag(10, "b", a, t), {{p_prev, 1.0}, {p, -1.0}}, Sense::kLe,
                         ramp_down);
  }
}

void add_pv_block(MilpModel& model, const PvParams& pv, double profile, const BlockContext& ctx) {
  const std::string a = node_id(pv.node);
  const int t = ctx.hour;
  const double avail = std::max(0.0, pv.p_max_profile_scale * profile) / ctx.s_base;
  const double s = pv.s_rating / ctx.s_base;
  const int p = model.add_variable(variable_tag("P_PV", a, t), VarKind::kContinuous, 0.0,
                                   std::min(avail, s));
  const int q = model.add_variable(variable_tag("Q_PV", a, t), VarKind::kContinuous, -s, s);
  model.add_objective(p, pv.marginal_cost * ctx.dt * ctx.s_base);
  linearize_cone(model, p, q, s, ctx.segments, 13, a, t);
}

void add_h2_block(MilpModel& model, const H2SystemParams& h2, double demand_kg_per_h,
                  const BlockContext& ctx) {
  const std::string a = node_id(h2.node);
  const int t = ctx.hour;
  const double sb = ctx.s_base;
  const double dt = ctx.dt;
  const double s = h2.s_inverter / sb;
  const int pel = model.add_variable(variable_tag("P_EL", a, t), VarKind::kContinuous, 0.0,
                                     h2.p_el_max / sb);
  const int pfc = model.add_variable(variable_tag("P_FC", a, t), VarKind::kContinuous, 0.0,
                                     h2.p_fc_max / sb);
  const int qel = model.add_variable(variable_tag("Q_EL", a, t), VarKind::kContinuous, 0.0,
                                     h2.el_q_max);
  const int qfc = model.add_variable(variable_tag("Q_FC", a, t), VarKind::kContinuous, 0.0,
                                     h2.fc_q_max);
  const int psi = model.add_variable(variable_tag("psi_HS", a, t), VarKind::kBinary, 0.0, 1.0);
  const int moh = model.add_variable(variable_tag("MOH", a, t), VarKind::kContinuous,
                                     h2.moh_min, h2.moh_max);
  const int qhs = model.add_variable(variable_tag("Q_HS", a, t), VarKind::kContinuous, -s, s);

  model.add_constraint(constraint_tag(15, "", a, t),
                       {{qel, 1.0}, {pel, -h2.lambda_el * h2.eta_el * sb}}, Sense::kEq, 0.0);
  model.add_constraint(constraint_tag(16, "", a, t),
                       {{pfc, sb}, {qfc, -h2.lambda_fc * h2.eta_fc}}, Sense::kEq, 0.0);
  model.add_constraint(constraint_tag(17, "a", a, t), {{qel, 1.0}, {psi, -h2.el_q_max}},
                       Sense::kLe, 0.0);
  model.add_constraint(constraint_tag(17, "b", a, t), {{qel, 1.0}, {psi, -h2.el_q_min}},
                       Sense::kGe, 0.0);
  model.add_constraint(constraint_tag(18, "a", a, t), {{qfc, 1.0}, {psi, h2.fc_q_max}},
                       Sense::kLe, h2.fc_q_max);
  model.add_constraint(constraint_tag(18, "b", a, t), {{qfc, 1.0}, {psi, h2.fc_q_min}},
                       Sense::kGe, h2.fc_q_min);

  // Implicit dissipation keeps the recursion linear.
  std::vector<Term> tank{{moh, 1.0 + h2.dissipation_rate * dt}, {qel, -dt}, {qfc, dt}};
  double rhs = -dt * demand_kg_per_h;
  if (t == 1) {
    rhs += h2.initial_moh < 0.0 ? h2.moh_min : h2.initial_moh;
  } else {
    tank.push_back({require_var(model, variable_tag("MOH", a, t - 1)), -1.0});
  }
  model.add_constraint(constraint_tag(19, "", a, t), std::move(tank), Sense::kEq, rhs);
  linearize_cone(model, {{pel, 1.0}, {pfc, -1.0}}, qhs, s, ctx.segments, 22, a, t);
}

void add_h2_reserve_row(MilpModel& model, const std::vector<H2SystemParams>& h2, double alpha,
                        const BlockContext& ctx) {
  const std::string tag = constraint_tag(21, "", "H2", ctx.hour);
  if (!(alpha >= 0.0) || alpha > 1.0) {
    throw BuildError(tag, fmt::format("reserve fraction {} outside [0,1]", alpha));
  }
  if (h2.empty()) return;
  std::vector<Term> terms;
  double total = 0.0;
  for (const auto& u : h2) {
    terms.push_back({require_var(model, variable_tag("MOH", node_id(u.node), ctx.hour)), 1.0});
    total += u.moh_max;
  }
  model.add_constraint(tag, std::move(terms), Sense::kGe, alpha * total);
}

void add_battery_block(MilpModel& model, const BatteryParams& b, const BlockContext& ctx) {
  const std::string a = node_id(b.node);
  const int t = ctx.hour;
  const double sb = ctx.s_base;
  const int ch = model.add_variable(variable_tag("P_CH", a, t), VarKind::kContinuous, 0.0,
                                    b.p_rating / sb);
  const int dis = model.add_variable(variable_tag("P_DIS", a, t), VarKind::kContinuous, 0.0,
                                     b.p_rating / sb);
  const int soc = model.add_variable(variable_tag("SOC", a, t), VarKind::kContinuous,
                                     b.soc_min(), b.energy_capacity());
  std::vector<Term> terms{{soc, 1.0}, {ch, -ctx.dt * b.eta_ch * sb}, {dis, ctx.dt * sb / b.eta_dis}};
  double rhs = 0.0;
  if (t == 1) {
    rhs = b.initial_soc();
  } else {
    terms.push_back({require_var(model, variable_tag("SOC", a, t - 1)), -1.0});
  }
  model.add_constraint(constraint_tag(32, "", a, t), std::move(terms), Sense::kEq, rhs);
}

void add_network_block(MilpModel& model, const Network& network,
                       const std::vector<double>& load_p, const std::vector<double>& load_q,
                       double voll, const BlockContext& ctx, const BuildOptions& options) {
  const int t = ctx.hour;
  const double sb = ctx.s_base;
  const int n = network.num_nodes();
  std::vector<int> v(n), fp(n, -1), fq(n, -1), shp(n), shq(n);
  for (const Node& node : network.nodes) {
    const double lo = node.is_root ? 1.0 : node.v_min_sq;
    const double hi = node.is_root ? 1.0 : node.v_max_sq;
    v[node.id] = model.add_variable(variable_tag("V", node_id(node.id), t), VarKind::kContinuous, lo, hi);
  }
  for (const Line& line : network.lines) {
    const std::string a = node_id(line.to_node);
    fp[line.to_node] = model.add_variable(variable_tag("fp", a, t), VarKind::kContinuous,
                                          -line.s_max, line.s_max);
    fq[line.to_node] = model.add_variable(variable_tag("fq", a, t), VarKind::kContinuous,
                                          -line.s_max, line.s_max);
  }
  for (int i = 0; i < n; ++i) {
    const std::string a = node_id(i);
    const double pl = load_p[i] / sb;
    const double ql = load_q[i] / sb;
    shp[i] = model.add_variable(variable_tag("P_Shd", a, t), VarKind::kContinuous, 0.0,
                                std::max(pl, 0.0));
    shq[i] = model.add_variable(variable_tag("Q_Shd", a, t), VarKind::kContinuous,
                                std::min(ql, 0.0), std::max(ql, 0.0));
    model.add_objective(shp[i], voll * ctx.dt * sb);
    if (pl > 0.0) {
      model.add_constraint(constraint_tag(30, "", a, t), {{shq[i], 1.0}, {shp[i], -ql / pl}},
                           Sense::kEq, 0.0);
    } else if (ql != 0.0 && !options.zero_load_fallback) {
      throw BuildError(constraint_tag(30, "", a, t),
                       "active load is zero while reactive load is not; enable the zero-load fallback");
    }
  }
  for (const Line& line : network.lines) {
    const int i = line.to_node;
    const std::string a = node_id(i);
    model.add_constraint(constraint_tag(23, "", a, t),
                         {{v[i], 1.0}, {v[line.from_node], -1.0}, {fp[i], 2.0 * line.r_pu},
                          {fq[i], 2.0 * line.x_pu}},
                         Sense::kEq, 0.0);
    linearize_cone(model, fp[i], fq[i], line.s_max, ctx.segments, 27, a, t);
  }

  const auto children = downstream_sets(network);
  for (int i = 0; i < n; ++i) {
    const std::string a = node_id(i);
    std::vector<Term> bp, bq;
    if (network.nodes[i].is_root) {
      bp.push_back({require_var(model, variable_tag("P_ST", "0", t)), 1.0});
      bq.push_back({require_var(model, variable_tag("Q_ST", "0", t)), 1.0});
    } else {
      bp.push_back({fp[i], 1.0});
      bq.push_back({fq[i], 1.0});
    }
    for (int li : children[i]) {
      const int c = network.lines[li].to_node;
      bp.push_back({fp[c], -1.0});
      bq.push_back({fq[c], -1.0});
    }
    auto add_if = [&](std::vector<Term>& row, const char* name, double sign) {
      const int var = var_or_none(model, name, i, t);
      if (var >= 0) row.push_back({var, sign});
    };
    add_if(bp, "P_DG", 1.0);
    add_if(bq, "Q_DG", 1.0);
    add_if(bp, "P_PV", 1.0);
    add_if(bq, "Q_PV", 1.0);
    add_if(bp, "P_FC", 1.0);
    add_if(bp, "P_EL", -1.0);
    add_if(bq, "Q_HS", -1.0);
    add_if(bp, "P_DIS", 1.0);
    add_if(bp, "P_CH", -1.0);
    bp.push_back({shp[i], 1.0});
    bq.push_back({shq[i], 1.0});
    model.add_constraint(constraint_tag(25, "", a, t), std::move(bp), Sense::kEq, load_p[i] / sb);
    model.add_constraint(constraint_tag(26, "", a, t), std::move(bq), Sense::kEq, load_q[i] / sb);
  }
}

MilpModel build_model(const Network& network, const DeviceFleet& fleet, const Scenario& scenario,
                      const BuildOptions& options) {
  const auto problems = validate_radial(network);
  if (!problems.empty()) throw BuildError("network", problems.front());
  const int T = scenario.horizon;
  if (T <= 0) throw BuildError("scenario.horizon", "horizon must be positive");
  if (!(scenario.dt > 0.0)) throw BuildError("scenario.dt", "time step must be positive");
  if (!(scenario.voll > 0.0)) throw BuildError("scenario.voll", "VOLL must be positive");
  check_profile("scenario.price", scenario.price.size(), T);
  check_profile("scenario.alpha", scenario.alpha.size(), T);
  if (static_cast<int>(scenario.load_p.size()) != network.num_nodes() ||
      static_cast<int>(scenario.load_q.size()) != network.num_nodes()) {
    throw BuildError("scenario.load", "load profiles must cover every node");
  }
  for (int i = 0; i < network.num_nodes(); ++i) {
    check_profile(fmt::format("scenario.load_p[{}]", i), scenario.load_p[i].size(), T);
    check_profile(fmt::format("scenario.load_q[{}]", i), scenario.load_q[i].size(), T);
  }
  if (scenario.pv_profile.size() != fleet.pv.size()) {
    throw BuildError("scenario.pv_profile", "one profile per PV unit is required");
  }
  if (scenario.h2_demand.size() != fleet.h2.size()) {
    throw BuildError("scenario.h2_demand", "one demand profile per H2 system is required");
  }
  for (size_t k = 0; k < fleet.pv.size(); ++k) {
    check_profile(fmt::format("scenario.pv_profile[{}]", k), scenario.pv_profile[k].size(), T);
  }
  for (size_t k = 0; k < fleet.h2.size(); ++k) {
    check_profile(fmt::format("scenario.h2_demand[{}]", k), scenario.h2_demand[k].size(), T);
  }
  for (const auto& dg : fleet.dg) {
    const std::string tag = variable_tag("P_DG", node_id(dg.node), 1);
    check_node(network, dg.node, tag);
    check_params(dg, tag);
  }
  for (const auto& pv : fleet.pv) {
    const std::string tag = variable_tag("P_PV", node_id(pv.node), 1);
    check_node(network, pv.node, tag);
    check_params(pv, tag);
  }
  for (const auto& h2 : fleet.h2) {
    const std::string tag = variable_tag("MOH", node_id(h2.node), 1);
    check_node(network, h2.node, tag);
    check_params(h2, tag);
  }
  for (const auto& b : fleet.battery) {
    const std::string tag = variable_tag("SOC", node_id(b.node), 1);
    check_node(network, b.node, tag);
    check_params(b, tag);
  }

  MilpModel model;
  model.horizon = T;
  model.dt = scenario.dt;
  BlockContext ctx;
  ctx.dt = scenario.dt;
  ctx.s_base = network.s_base_mva;
  ctx.segments = options.cone_segments;
  std::vector<double> lp(network.num_nodes()), lq(network.num_nodes());
  for (int t = 1; t <= T; ++t) {
    ctx.hour = t;
    add_substation_block(model, network, scenario.price[t - 1], ctx);
    for (const auto& dg : fleet.dg) add_dg_block(model, dg, ctx);
    for (size_t k = 0; k < fleet.pv.size(); ++k) {
      add_pv_block(model, fleet.pv[k], scenario.pv_profile[k][t - 1], ctx);
    }
    for (size_t k = 0; k < fleet.h2.size(); ++k) {
      add_h2_block(model, fleet.h2[k], scenario.h2_demand[k][t - 1], ctx);
    }
    add_h2_reserve_row(model, fleet.h2, scenario.alpha[t - 1], ctx);
    for (const auto& b : fleet.battery) add_battery_block(model, b, ctx);
    for (int i = 0; i < network.num_nodes(); ++i) {
      lp[i] = scenario.load_p[i][t - 1];
      lq[i] = scenario.load_q[i][t - 1];
    }
    add_network_block(model, network, lp, lq, scenario.voll, ctx, options);
  }
  apply_outage(model, scenario.outages);
  return model;
}

void apply_outage(MilpModel& model, const std::vector<OutageWindow>& outages) {
  const int T = model.horizon;
  for (const OutageWindow& w : outages) {
    if (w.from_hour > w.to_hour || w.from_hour < 1) {
      throw BuildError(w.asset, fmt::format("bad outage window {}..{}", w.from_hour, w.to_hour));
    }
    std::vector<std::string> names;
    std::string asset;
    bool is_dg = false;
    if (w.asset == "substation") {
      names = {"P_ST", "Q_ST"};
      asset = "0";
    } else if (w.asset.rfind("dg:", 0) == 0) {
      names = {"x_DG"};
      asset = w.asset.substr(3);
      is_dg = true;
    } else if (w.asset.rfind("line:", 0) == 0) {
      names = {"fp", "fq"};
      asset = w.asset.substr(5);
    } else {
      throw BuildError(w.asset, "unknown outage asset id");
    }
    for (const auto& name : names) {
      if (model.find_variable(variable_tag(name, asset, 1)) < 0) {
        throw BuildError(w.asset, "unknown outage asset id");
      }
    }
    const int first = w.from_hour;
    const int last = std::min(w.to_hour, T);
    for (int t = first; t <= last; ++t) {
      for (const auto& name : names) {
        model.set_bounds(require_var(model, variable_tag(name, asset, t)), 0.0, 0.0);
      }
    }
    if (is_dg && first <= last) {
      // A forced trip is not a scheduled ramp: the unit may drop from any output.
      const int row = model.find_constraint(constraint_tag(10, "b", asset, first));
      const int p = require_var(model, variable_tag("P_DG", asset, first));
      if (row >= 0) {
        const double relaxed = model.variable(p).upper + std::abs(model.constraint(row).rhs);
        model.set_constraint_rhs(row, std::max(model.constraint(row).rhs, relaxed));
      }
    }
  }
}

ModelCounts expected_counts(const Network& network, const DeviceFleet& fleet,
                            const Scenario& scenario, const BuildOptions& options) {
  const int T = scenario.horizon;
  const int m = options.cone_segments;
  const int nn = network.num_nodes();
  const int nl = network.num_lines();
  const int ndg = static_cast<int>(fleet.dg.size());
  const int npv = static_cast<int>(fleet.pv.size());
  const int nh2 = static_cast<int>(fleet.h2.size());
  const int nb = static_cast<int>(fleet.battery.size());
  ModelCounts c;
  const int vars_per_hour = 2 + 5 * ndg + 2 * npv + 7 * nh2 + 3 * nb + 3 * nn + 2 * nl;
  c.variables = T * vars_per_hour;
  c.binaries = T * (ndg + nh2);
  const int rows_per_hour = m + ndg * (8 + m) + npv * m + nh2 * (7 + m) + (nh2 > 0 ? 1 : 0) + nb +
                            nl * (1 + m) + 2 * nn;
  c.constraints = T * rows_per_hour;
  for (int i = 0; i < nn; ++i) {
    for (int t = 0; t < T; ++t) {
      if (scenario.load_p[i][t] / network.s_base_mva > 0.0) ++c.constraints;
    }
  }
  return c;
}

}  // namespace h2res
