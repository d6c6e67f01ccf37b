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

#ifndef H2RES_DEVICES_H_
#define H2RES_DEVICES_H_

#include <string>
#include <utility>
#include <vector>

namespace h2res {

// Power quantities are MW / MVAr / MVA, costs in $, hydrogen in kg.

struct DgParams {
  int node = 0;
  double p_min = 0.0;
  double p_max = 0.0;
  double q_min = 0.0;
  double q_max = 0.0;
  double s_rating = 0.0;
  double fixed_cost = 0.0;     // $/h while committed
  double marginal_cost = 0.0;  // $/MWh
  double startup_price = 0.0;  // $ per start
  double shutdown_price = 0.0;
  double ramp_up = 0.0;  // MW/h
  double ramp_down = 0.0;
  int initial_status = 0;
  double initial_power = 0.0;
};

struct PvParams {
  int node = 0;
  double p_max_profile_scale = 1.0;  // MW at a normalized profile value of 1
  double s_rating = 0.0;
  double marginal_cost = 0.0;
};

struct H2SystemParams {
  int node = 0;
  double el_q_min = 0.0;  // kg/h
  double el_q_max = 0.0;
  double fc_q_min = 0.0;
  double fc_q_max = 0.0;
  double eta_el = 1.0;
  double eta_fc = 1.0;
  double lambda_el = 0.0;  // kg/MWh
  double lambda_fc = 0.0;  // MWh/kg
  double moh_min = 0.0;    // kg
  double moh_max = 0.0;
  double dissipation_rate = 0.0;  // fraction of the current mass per hour
  double s_inverter = 0.0;
  double p_el_max = 0.0;
  double p_fc_max = 0.0;
  double initial_moh = -1.0;  // negative: start at moh_min
};

struct BatteryParams {
  int node = 0;
  double p_rating = 0.0;  // MW, both directions
  double duration_h = 0.0;
  double eta_ch = 0.95;
  double eta_dis = 0.95;
  double soc_min_frac = 0.0;
  double initial_soc_frac = -1.0;  // negative: start at soc_min_frac

  double energy_capacity() const { return p_rating * duration_h; }
  double soc_min() const { return soc_min_frac * energy_capacity(); }
  double initial_soc() const {
    return (initial_soc_frac < 0.0 ? soc_min_frac : initial_soc_frac) *
           energy_capacity();
  }
};

struct SheddingParams {
  double voll = 500.0;  // $/MWh
};

struct DeviceFleet {
  std::vector<DgParams> dg;
  std::vector<PvParams> pv;
  std::vector<H2SystemParams> h2;
  std::vector<BatteryParams> battery;
};

// Electrolyzer and fuel-cell parameters from rated powers, efficiencies and
// the specific energy of hydrogen (kWh/kg).
H2SystemParams make_h2_system(int node, double p_el_max, double p_fc_max,
                              double eta_el, double eta_fc,
                              double specific_energy_kwh_per_kg, double moh_min,
                              double moh_max, double dissipation_rate,
                              double s_inverter);

double electrolyzer_h2_rate(double p_el, const H2SystemParams& params);
double fuel_cell_power(double q_fc, const H2SystemParams& params);

// Implicit tank balance solved for the new mass; dissipation acts on the
// end-of-step mass.
double tank_step(double moh_prev, double q_el, double q_dem, double q_fc,
                 double dt, const H2SystemParams& params);

double dg_cost(int x, double p, const DgParams& params);

struct TransitionCost {
  double startup = 0.0;
  double shutdown = 0.0;
};
TransitionCost startup_shutdown_cost(int x_t, int x_prev, const DgParams& params);

double battery_soc_step(double soc_prev, double p_ch, double p_dis, double dt,
                        const BatteryParams& params);

// Invariant checks; each returned string names the device and the problem.
std::vector<std::string> validate(const DgParams& p);
std::vector<std::string> validate(const PvParams& p);
std::vector<std::string> validate(const H2SystemParams& p);
std::vector<std::string> validate(const BatteryParams& p);

DeviceFleet read_fleet_json(const std::string& path);
DeviceFleet parse_fleet_json(const std::string& text);
std::string fleet_to_json(const DeviceFleet& fleet);

}  // namespace h2res

#endif  // H2RES_DEVICES_H_
