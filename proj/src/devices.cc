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

#include "h2res/devices.h"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <json.hpp>

#include "h2res/error.h"
#include "h2res/io.h"

namespace h2res {

using nlohmann::json;

H2SystemParams make_h2_system(int node, double p_el_max, double p_fc_max,
                              double eta_el, double eta_fc,
                              double specific_energy_kwh_per_kg, double moh_min,
                              double moh_max, double dissipation_rate,
                              double s_inverter) {
  H2SystemParams h;
  h.node = node;
  h.p_el_max = p_el_max;
  h.p_fc_max = p_fc_max;
  h.eta_el = eta_el;
  h.eta_fc = eta_fc;
  h.lambda_el = 1000.0 / specific_energy_kwh_per_kg;
  h.lambda_fc = specific_energy_kwh_per_kg / 1000.0;
  h.el_q_min = 0.0;
  h.el_q_max = h.lambda_el * p_el_max * eta_el;
  h.fc_q_min = 0.0;
  h.fc_q_max = p_fc_max / (h.lambda_fc * eta_fc);
  h.moh_min = moh_min;
  h.moh_max = moh_max;
  h.dissipation_rate = dissipation_rate;
  h.s_inverter = s_inverter;
  return h;
}

double electrolyzer_h2_rate(double p_el, const H2SystemParams& params) {
  if (p_el < 0.0) throw InvalidArgument("electrolyzer power must be nonnegative");
  return params.lambda_el * p_el * params.eta_el;
}

double fuel_cell_power(double q_fc, const H2SystemParams& params) {
  if (q_fc < 0.0) throw InvalidArgument("fuel-cell hydrogen flow must be nonnegative");
  return params.lambda_fc * q_fc * params.eta_fc;
}

double tank_step(double moh_prev, double q_el, double q_dem, double q_fc,
                 double dt, const H2SystemParams& params) {
  return (moh_prev + (q_el - q_dem - q_fc) * dt) /
         (1.0 + params.dissipation_rate * dt);
}

double dg_cost(int x, double p, const DgParams& params) {
  if (x != 0 && x != 1) throw ContractViolation("DG status must be 0 or 1");
  if (x == 0 && p != 0.0) throw ContractViolation("DG produces power while off");
  return x * params.fixed_cost + params.marginal_cost * p;
}

TransitionCost startup_shutdown_cost(int x_t, int x_prev, const DgParams& params) {
  if ((x_t != 0 && x_t != 1) || (x_prev != 0 && x_prev != 1)) {
    throw ContractViolation("DG status must be 0 or 1");
  }
  return {std::max(0.0, (x_t - x_prev) * params.startup_price),
          std::max(0.0, (x_prev - x_t) * params.shutdown_price)};
}

double battery_soc_step(double soc_prev, double p_ch, double p_dis, double dt,
                        const BatteryParams& params) {
  if (p_ch < 0.0 || p_dis < 0.0) {
    throw ContractViolation("battery powers must be nonnegative");
  }
  if (p_ch > 0.0 && p_dis > 0.0) {
    throw ContractViolation("battery cannot charge and discharge together");
  }
  return soc_prev + (params.eta_ch * p_ch - p_dis / params.eta_dis) * dt;
}

std::vector<std::string> validate(const DgParams& p) {
  std::vector<std::string> out;
  const std::string who = fmt::format("dg at node {}", p.node);
  if (p.p_min > p.p_max) out.push_back(who + ": p_min > p_max");
  if (p.q_min > p.q_max) out.push_back(who + ": q_min > q_max");
  if (p.ramp_up < 0.0 || p.ramp_down < 0.0) out.push_back(who + ": negative ramp limit");
  if (!(p.s_rating > 0.0)) out.push_back(who + ": s_rating must be positive");
  if (p.p_min > p.s_rating) out.push_back(who + ": p_min exceeds s_rating");
  if (p.initial_status != 0 && p.initial_status != 1) {
    out.push_back(who + ": initial_status must be 0 or 1");
  }
  return out;
}

std::vector<std::string> validate(const PvParams& p) {
  std::vector<std::string> out;
  const std::string who = fmt::format("pv at node {}", p.node);
  if (p.p_max_profile_scale < 0.0) out.push_back(who + ": negative profile scale");
  if (!(p.s_rating > 0.0)) out.push_back(who + ": s_rating must be positive");
  return out;
}

std::vector<std::string> validate(const H2SystemParams& p) {
  std::vector<std::string> out;
  const std::string who = fmt::format("h2 system at node {}", p.node);
  if (!(p.eta_el > 0.0 && p.eta_el <= 1.0)) out.push_back(who + ": eta_el outside (0,1]");
  if (!(p.eta_fc > 0.0 && p.eta_fc <= 1.0)) out.push_back(who + ": eta_fc outside (0,1]");
  if (!(p.moh_min < p.moh_max)) out.push_back(who + ": moh_min must be below moh_max");
  if (!(p.p_el_max > 0.0) || !(p.p_fc_max > 0.0)) out.push_back(who + ": ratings must be positive");
  if (p.el_q_min < 0.0 || p.fc_q_min < 0.0) out.push_back(who + ": negative flow minimum");
  if (p.el_q_min > p.el_q_max) out.push_back(who + ": el_q_min > el_q_max");
  if (p.fc_q_min > p.fc_q_max) out.push_back(who + ": fc_q_min > fc_q_max");
  if (p.lambda_el <= 0.0 || p.lambda_fc <= 0.0) out.push_back(who + ": conversion factors must be positive");
  if (p.dissipation_rate < 0.0) out.push_back(who + ": negative dissipation rate");
  if (!(p.s_inverter > 0.0)) out.push_back(who + ": s_inverter must be positive");
  if (p.initial_moh >= 0.0 && (p.initial_moh < p.moh_min || p.initial_moh > p.moh_max)) {
    out.push_back(who + ": initial_moh outside tank limits");
  }
  return out;
}

std::vector<std::string> validate(const BatteryParams& p) {
  std::vector<std::string> out;
  const std::string who = fmt::format("battery at node {}", p.node);
  if (!(p.p_rating > 0.0)) out.push_back(who + ": p_rating must be positive");
  if (!(p.duration_h > 0.0)) out.push_back(who + ": duration must be positive");
  if (!(p.eta_ch > 0.0 && p.eta_ch <= 1.0)) out.push_back(who + ": eta_ch outside (0,1]");
  if (!(p.eta_dis > 0.0 && p.eta_dis <= 1.0)) out.push_back(who + ": eta_dis outside (0,1]");
  if (p.soc_min_frac < 0.0 || p.soc_min_frac >= 1.0) out.push_back(who + ": soc_min_frac outside [0,1)");
  return out;
}

namespace {

template <typename T>
void get_to(const json& j, const char* key, T& field, bool required) {
  if (j.contains(key)) {
    j.at(key).get_to(field);
  } else if (required) {
    throw IoError(std::string("fleet file: missing field '") + key + "'");
  }
}

DgParams dg_from(const json& j) {
  DgParams p;
  get_to(j, "node", p.node, true);
  get_to(j, "p_min", p.p_min, true);
  get_to(j, "p_max", p.p_max, true);
  get_to(j, "q_min", p.q_min, true);
  get_to(j, "q_max", p.q_max, true);
  get_to(j, "s_rating", p.s_rating, true);
  get_to(j, "fixed_cost", p.fixed_cost, true);
  get_to(j, "marginal_cost", p.marginal_cost, true);
  get_to(j, "startup_price", p.startup_price, true);
  get_to(j, "shutdown_price", p.shutdown_price, true);
  get_to(j, "ramp_up", p.ramp_up, true);
  get_to(j, "ramp_down", p.ramp_down, true);
  get_to(j, "initial_status", p.initial_status, false);
  get_to(j, "initial_power", p.initial_power, false);
  return p;
}

PvParams pv_from(const json& j) {
  PvParams p;
  get_to(j, "node", p.node, true);
  get_to(j, "p_max_profile_scale", p.p_max_profile_scale, true);
  get_to(j, "s_rating", p.s_rating, true);
  get_to(j, "marginal_cost", p.marginal_cost, true);
  return p;
}

H2SystemParams h2_from(const json& j) {
  H2SystemParams p;
  get_to(j, "node", p.node, true);
  get_to(j, "el_q_min", p.el_q_min, true);
  get_to(j, "el_q_max", p.el_q_max, true);
  get_to(j, "fc_q_min", p.fc_q_min, true);
  get_to(j, "fc_q_max", p.fc_q_max, true);
  get_to(j, "eta_el", p.eta_el, true);
  get_to(j, "eta_fc", p.eta_fc, true);
  get_to(j, "lambda_el", p.lambda_el, true);
  get_to(j, "lambda_fc", p.lambda_fc, true);
  get_to(j, "moh_min", p.moh_min, true);
  get_to(j, "moh_max", p.moh_max, true);
  get_to(j, "dissipation_rate", p.dissipation_rate, true);
  get_to(j, "s_inverter", p.s_inverter, true);
  get_to(j, "p_el_max", p.p_el_max, true);
  get_to(j, "p_fc_max", p.p_fc_max, true);
  get_to(j, "initial_moh", p.initial_moh, false);
  return p;
}

BatteryParams battery_from(const json& j) {
  BatteryParams p;
  get_to(j, "node", p.node, true);
  get_to(j, "p_rating", p.p_rating, true);
  get_to(j, "duration_h", p.duration_h, true);
  get_to(j, "eta_ch", p.eta_ch, false);
  get_to(j, "eta_dis", p.eta_dis, false);
  get_to(j, "soc_min_frac", p.soc_min_frac, false);
  get_to(j, "initial_soc_frac", p.initial_soc_frac, false);
  return p;
}

}  // namespace

DeviceFleet parse_fleet_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw IoError(std::string("fleet file: ") + e.what());
  }
  DeviceFleet fleet;
  try {
    for (const auto& j : doc.value("dg", json::array())) fleet.dg.push_back(dg_from(j));
    for (const auto& j : doc.value("pv", json::array())) fleet.pv.push_back(pv_from(j));
    for (const auto& j : doc.value("h2", json::array())) fleet.h2.push_back(h2_from(j));
    for (const auto& j : doc.value("battery", json::array())) {
      fleet.battery.push_back(battery_from(j));
    }
  } catch (const json::exception& e) {
    throw IoError(std::string("fleet file: ") + e.what());
  }
  return fleet;
}

DeviceFleet read_fleet_json(const std::string& path) {
  return parse_fleet_json(read_text_file(path));
}

std::string fleet_to_json(const DeviceFleet& fleet) {
  json doc;
  doc["dg"] = json::array();
  for (const auto& p : fleet.dg) {
    doc["dg"].push_back({{"node", p.node},
                         {"p_min", p.p_min},
                         {"p_max", p.p_max},
                         {"q_min", p.q_min},
                         {"q_max", p.q_max},
                         {"s_rating", p.s_rating},
                         {"fixed_cost", p.fixed_cost},
                         {"marginal_cost", p.marginal_cost},
                         {"startup_price", p.startup_price},
                         {"shutdown_price", p.shutdown_price},
                         {"ramp_up", p.ramp_up},
                         {"ramp_down", p.ramp_down},
                         {"initial_status", p.initial_status},
                         {"initial_power", p.initial_power}});
  }
  doc["pv"] = json::array();
  for (const auto& p : fleet.pv) {
    doc["pv"].push_back({{"node", p.node},
                         {"p_max_profile_scale", p.p_max_profile_scale},
                         {"s_rating", p.s_rating},
                         {"marginal_cost", p.marginal_cost}});
  }
  doc["h2"] = json::array();
  for (const auto& p : fleet.h2) {
    json j = {{"node", p.node},
              {"el_q_min", p.el_q_min},
              {"el_q_max", p.el_q_max},
              {"fc_q_min", p.fc_q_min},
              {"fc_q_max", p.fc_q_max},
              {"eta_el", p.eta_el},
              {"eta_fc", p.eta_fc},
              {"lambda_el", p.lambda_el},
              {"lambda_fc", p.lambda_fc},
              {"moh_min", p.moh_min},
              {"moh_max", p.moh_max},
              {"dissipation_rate", p.dissipation_rate},
              {"s_inverter", p.s_inverter},
              {"p_el_max", p.p_el_max},
              {"p_fc_max", p.p_fc_max}};
    if (p.initial_moh >= 0.0) j["initial_moh"] = p.initial_moh;
    doc["h2"].push_back(j);
  }
  doc["battery"] = json::array();
  for (const auto& p : fleet.battery) {
    json j = {{"node", p.node},
              {"p_rating", p.p_rating},
              {"duration_h", p.duration_h},
              {"eta_ch", p.eta_ch},
              {"eta_dis", p.eta_dis},
              {"soc_min_frac", p.soc_min_frac}};
    if (p.initial_soc_frac >= 0.0) j["initial_soc_frac"] = p.initial_soc_frac;
    doc["battery"].push_back(j);
  }
  return doc.dump(2) + "\n";
}

}  // namespace h2res
