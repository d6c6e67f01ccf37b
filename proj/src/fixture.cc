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


#include "h2res/fixture.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <string>

#include "h2res/io.h"

namespace h2res {
namespace {

// Baran-Wu feeder, buses relabelled 0..32 with the substation at 0.
struct BranchRow {
  int from;
  int to;
  double r_ohm;
  double x_ohm;
};

constexpr BranchRow kBranches[] = {
    {0, 1, 0.0922, 0.0470},   {1, 2, 0.4930, 0.2511},   {2, 3, 0.3660, 0.1864},
    {3, 4, 0.3811, 0.1941},   {4, 5, 0.8190, 0.7070},   {5, 6, 0.1872, 0.6188},
    {6, 7, 0.7114, 0.2351},   {7, 8, 1.0300, 0.7400},   {8, 9, 1.0440, 0.7400},
    {9, 10, 0.1966, 0.0650},  {10, 11, 0.3744, 0.1238}, {11, 12, 1.4680, 1.1550},
    {12, 13, 0.5416, 0.7129}, {13, 14, 0.5910, 0.5260}, {14, 15, 0.7463, 0.5450},
    {15, 16, 1.2890, 1.7210}, {16, 17, 0.7320, 0.5740}, {1, 18, 0.1640, 0.1565},
    {18, 19, 1.5042, 1.3554}, {19, 20, 0.4095, 0.4784}, {20, 21, 0.7089, 0.9373},
    {2, 22, 0.4512, 0.3083},  {22, 23, 0.8980, 0.7091}, {23, 24, 0.8960, 0.7011},
    {5, 25, 0.2030, 0.1034},  {25, 26, 0.2842, 0.1447}, {26, 27, 1.0590, 0.9337},
    {27, 28, 0.8042, 0.7006}, {28, 29, 0.5075, 0.2585}, {29, 30, 0.9744, 0.9630},
    {30, 31, 0.3105, 0.3619}, {31, 32, 0.3410, 0.5302},
};

// Nominal loads in kW and kvar, indexed by node.
constexpr double kLoadKw[33] = {
    0,   100, 90,  120, 60,  60,  200, 200, 60,  60,  45,  60,  60,  120, 60,  60, 60,
    90,  90,  90,  90,  90,  90,  420, 420, 60,  60,  60,  120, 200, 150, 210, 60};
constexpr double kLoadKvar[33] = {
    0,  60, 40, 80, 30, 20, 100, 100, 20, 20, 30,  35, 35, 80, 10, 20, 20,
    40, 40, 40, 40, 40, 50, 200, 200, 25, 25, 20, 70, 600, 70, 100, 40};

constexpr double kLineRatingMva = 5.0;
constexpr double kSubstationMva = 6.0;
constexpr double kPeakFeederLoadMw = 4.0;
constexpr double kPvBaseMw = 0.26;
constexpr double kPvScale = 2.5;
constexpr double kFlatPrice = 40.0;
constexpr int kWeekHours = 168;

constexpr double kDayLoadScale[7] = {1.0, 0.98, 1.02, 1.0, 0.97, 0.9, 0.88};
constexpr double kDayClearness[7] = {1.0, 0.9, 0.75, 0.95, 0.85, 1.0, 0.7};
constexpr double kStationScale[3] = {1.0, 0.8, 1.2};

double bump(double x, double center, double width) {
  const double z = (x - center) / width;
  return std::exp(-z * z);
}

int day_of(int hour) { return ((hour - 1) / 24) % 7; }
// Midpoint of the hour interval, in hours after midnight.
double clock_of(int hour) { return ((hour - 1) % 24) + 0.5; }

double raw_load_shape(int hour) {
  const double c = clock_of(hour);
  const double daily = 0.55 + 0.30 * bump(c, 11.5, 3.5) + 0.45 * bump(c, 19.0, 2.2) -
                       0.10 * bump(c, 3.5, 2.5);
  return daily * kDayLoadScale[day_of(hour)];
}

double peak_raw_load() {
  double peak = 0.0;
  for (int h = 1; h <= kWeekHours; ++h) peak = std::max(peak, raw_load_shape(h));
  return peak;
}

DgParams make_dg(int node, double p_max, bool combined_cycle) {
  DgParams d;
  d.node = node;
  d.p_max = p_max;
  d.p_min = (combined_cycle ? 0.3 : 0.2) * p_max;
  d.q_min = -0.6 * p_max;
  d.q_max = 0.75 * p_max;
  d.s_rating = 1.25 * p_max;
  d.fixed_cost = combined_cycle ? 12.0 : 6.0;
  d.marginal_cost = combined_cycle ? 35.0 : 45.0;
  d.startup_price = combined_cycle ? 50.0 : 30.0;
  d.shutdown_price = combined_cycle ? 20.0 : 10.0;
  d.ramp_up = (combined_cycle ? 0.5 : 1.0) * p_max;
  d.ramp_down = d.ramp_up;
  return d;
}

}  // namespace

double fixture_load_factor(int hour) {
  static const double peak = peak_raw_load();
  double nominal = 0.0;
  for (double kw : kLoadKw) nominal += kw;
  return raw_load_shape(hour) / peak * (kPeakFeederLoadMw * 1000.0 / nominal);
}

double fixture_pv_factor(int hour) {
  const double c = clock_of(hour);
  constexpr double kSunrise = 6.0;
  constexpr double kDaylight = 13.0;
  if (c <= kSunrise || c >= kSunrise + kDaylight) return 0.0;
  const double s = std::sin(std::numbers::pi * (c - kSunrise) / kDaylight);
  return std::pow(s, 1.3) * kDayClearness[day_of(hour)];
}

double fixture_h2_demand(int hour, int station) {
  const double c = clock_of(hour);
  const double kg = 2.0 + 6.0 * bump(c, 8.0, 1.5) + 7.0 * bump(c, 17.5, 2.0);
  return kg * kStationScale[station % 3];
}

Fixture make_default_fixture() {
  Fixture f;
  Network& net = f.network;
  net.s_base_mva = 1.0;
  net.v_base_kv = 12.66;
  net.substation_s_max = to_per_unit(kSubstationMva, net.s_base_mva);
  const int n = 33;
  for (int i = 0; i < n; ++i) {
    Node node;
    node.id = i;
    node.is_root = (i == 0);
    net.nodes.push_back(node);
  }
  for (const BranchRow& b : kBranches) {
    Line line;
    line.from_node = b.from;
    line.to_node = b.to;
    line.r_pu = ohm_to_per_unit(b.r_ohm, net.v_base_kv, net.s_base_mva);
    line.x_pu = ohm_to_per_unit(b.x_ohm, net.v_base_kv, net.s_base_mva);
    line.s_max = to_per_unit(kLineRatingMva, net.s_base_mva);
    net.lines.push_back(line);
  }

  DeviceFleet& fleet = f.fleet;
  fleet.dg.push_back(make_dg(8, 0.8, true));
  fleet.dg.push_back(make_dg(13, 2.4, true));
  fleet.dg.push_back(make_dg(30, 1.0, false));
  for (int node : kFixturePvNodes) {
    PvParams pv;
    pv.node = node;
    pv.p_max_profile_scale = kPvBaseMw * kPvScale;
    pv.s_rating = 1.1 * pv.p_max_profile_scale;
    pv.marginal_cost = 0.0;
    fleet.pv.push_back(pv);
  }
  for (int node : kFixtureH2Nodes) {
    fleet.h2.push_back(make_h2_system(node, 3.0, 3.0, 0.6, 0.7, 56.4, 60.0, 600.0,
                                      0.00006, 3.3));
    BatteryParams bat;
    bat.node = node;
    bat.p_rating = 3.0;
    bat.duration_h = 8.0;
    bat.eta_ch = 0.95;
    bat.eta_dis = 0.95;
    fleet.battery.push_back(bat);
  }

  Scenario& sc = f.scenario;
  sc.horizon = kWeekHours;
  sc.dt = 1.0;
  sc.voll = 500.0;
  sc.price.assign(kWeekHours, kFlatPrice);
  sc.load_p.assign(n, std::vector<double>(kWeekHours, 0.0));
  sc.load_q.assign(n, std::vector<double>(kWeekHours, 0.0));
  for (int h = 1; h <= kWeekHours; ++h) {
    const double k = fixture_load_factor(h);
    for (int i = 0; i < n; ++i) {
      sc.load_p[i][h - 1] = kLoadKw[i] / 1000.0 * k;
      sc.load_q[i][h - 1] = kLoadKvar[i] / 1000.0 * k;
    }
  }
  sc.pv_profile.assign(fleet.pv.size(), std::vector<double>(kWeekHours, 0.0));
  for (std::size_t u = 0; u < fleet.pv.size(); ++u)
    for (int h = 1; h <= kWeekHours; ++h) sc.pv_profile[u][h - 1] = fixture_pv_factor(h);
  sc.h2_demand.assign(fleet.h2.size(), std::vector<double>(kWeekHours, 0.0));
  for (std::size_t s = 0; s < fleet.h2.size(); ++s)
    for (int h = 1; h <= kWeekHours; ++h)
      sc.h2_demand[s][h - 1] = fixture_h2_demand(h, static_cast<int>(s));

  // Reserve signal: normal level, all tanks full at the hour before the event.
  constexpr int kEventStart = 79;
  constexpr int kEventEnd = 128;
  f.alpha = {0.1, kEventStart - 1, 1.0};
  sc.alpha = alpha_trajectory(f.alpha, kWeekHours);
  f.meta = {net.s_base_mva, net.v_base_kv, kSubstationMva};
  for (const char* asset : {"substation", "dg:8", "dg:13", "dg:30"})
    sc.outages.push_back({asset, kEventStart, kEventEnd});
  return f;
}

void write_fixture_files(const Fixture& fixture, const std::string& dir) {
  const std::filesystem::path base(dir);
  write_scenario_files(dir, {fixture.scenario, fixture.alpha, fixture.meta});
  write_network_csv(fixture.network, (base / "branches.csv").string(),
                    (base / "nodes.csv").string());
  write_text_file((base / "fleet.json").string(), fleet_to_json(fixture.fleet));
}

}  // namespace h2res
