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


#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "h2res/devices.h"
#include "h2res/error.h"
#include "h2res/fixture.h"

namespace h2res {
namespace {

// Table values: 3 MW units, 60% / 70% efficiency, 56.4 kWh/kg, 60-600 kg.
H2SystemParams table_h2(double dissipation = 0.00006) {
  return make_h2_system(5, 3.0, 3.0, 0.6, 0.7, 56.4, 60.0, 600.0, dissipation, 3.3);
}

TEST(Electrolyzer, HydrogenRate) {
  const H2SystemParams h = table_h2();
  EXPECT_EQ(electrolyzer_h2_rate(0.0, h), 0.0);
  EXPECT_NEAR(electrolyzer_h2_rate(3.0, h), 3.0 * 1000.0 * 0.6 / 56.4, 1e-12);
  EXPECT_NEAR(electrolyzer_h2_rate(3.0, h), 31.915, 5e-4);
  EXPECT_NEAR(electrolyzer_h2_rate(1.0, h), 10.638, 5e-4);
  EXPECT_THROW(electrolyzer_h2_rate(-0.1, h), InvalidArgument);
}

TEST(FuelCell, Power) {
  const H2SystemParams h = table_h2();
  EXPECT_EQ(fuel_cell_power(0.0, h), 0.0);
  EXPECT_NEAR(fuel_cell_power(75.99, h), 3.0, 1e-4);
  EXPECT_NEAR(fuel_cell_power(10.0, h), 10.0 * 0.0564 * 0.7, 1e-12);
  EXPECT_NEAR(fuel_cell_power(10.0, h), 0.3948, 1e-9);
  EXPECT_THROW(fuel_cell_power(-1.0, h), InvalidArgument);
}

TEST(H2System, FlowLimitsFollowRatings) {
  const H2SystemParams h = table_h2();
  EXPECT_NEAR(h.lambda_el * h.lambda_fc, 1.0, 1e-15);
  EXPECT_NEAR(fuel_cell_power(h.fc_q_max, h), 3.0, 1e-12);
  EXPECT_NEAR(h.el_q_max, electrolyzer_h2_rate(3.0, h), 1e-12);
  EXPECT_TRUE(validate(h).empty());
}

TEST(H2System, RoundTripEfficiency) {
  const H2SystemParams h = table_h2();
  for (double p : {0.0, 0.5, 1.0, 2.2, 3.0}) {
    EXPECT_NEAR(fuel_cell_power(electrolyzer_h2_rate(p, h), h), 0.42 * p, 1e-12);
  }
}

TEST(Tank, Step) {
  H2SystemParams none = table_h2(0.0);
  EXPECT_EQ(tank_step(300, 0, 0, 0, 1.0, none), 300.0);
  EXPECT_NEAR(tank_step(600, 0, 10, 0, 1.0, table_h2()), 589.9646, 1e-4);
  EXPECT_NEAR(tank_step(600, 0, 10, 0, 1.0, table_h2()), 590.0 / 1.00006, 1e-12);
  EXPECT_NEAR(tank_step(60, 31.915, 0, 0, 1.0, none), 91.915, 1e-12);
}

TEST(Tank, SolvesImplicitBalance) {
  const H2SystemParams h = table_h2(0.01);
  const double prev = 250, el = 12, dem = 3, fc = 4, dt = 0.5;
  const double m = tank_step(prev, el, dem, fc, dt, h);
  EXPECT_NEAR(m, prev + (el - dem - fc - 0.01 * m) * dt, 1e-12);
}

TEST(Tank, Monotone) {
  const H2SystemParams h = table_h2();
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(0.0, 30.0), m(60.0, 600.0);
  for (int k = 0; k < 500; ++k) {
    const double prev = m(rng), el = u(rng), dem = u(rng), fc = u(rng), d = u(rng) + 0.1;
    const double base = tank_step(prev, el, dem, fc, 1.0, h);
    EXPECT_GE(tank_step(prev + d, el, dem, fc, 1.0, h), base);
    EXPECT_GE(tank_step(prev, el + d, dem, fc, 1.0, h), base);
    EXPECT_LE(tank_step(prev, el, dem + d, fc, 1.0, h), base);
    EXPECT_LE(tank_step(prev, el, dem, fc + d, 1.0, h), base);
  }
}

TEST(DgCost, Evaluation) {
  DgParams g;
  g.fixed_cost = 10;
  g.marginal_cost = 30;
  EXPECT_EQ(dg_cost(0, 0.0, g), 0.0);
  EXPECT_EQ(dg_cost(1, 0.0, g), 10.0);
  EXPECT_EQ(dg_cost(1, 2.0, g), 70.0);
  EXPECT_THROW(dg_cost(0, 0.5, g), ContractViolation);
  EXPECT_THROW(dg_cost(2, 0.0, g), ContractViolation);
}

TEST(DgCost, AffineInPower) {
  DgParams g;
  g.fixed_cost = 12;
  g.marginal_cost = 35;
  const double a = dg_cost(1, 0.3, g), b = dg_cost(1, 0.9, g), c = dg_cost(1, 1.5, g);
  EXPECT_NEAR(b - a, c - b, 1e-12);
}

TEST(Transitions, StartupShutdown) {
  DgParams g;
  g.startup_price = 50;
  g.shutdown_price = 20;
  auto c = startup_shutdown_cost(1, 1, g);
  EXPECT_EQ(c.startup, 0.0);
  EXPECT_EQ(c.shutdown, 0.0);
  c = startup_shutdown_cost(1, 0, g);
  EXPECT_EQ(c.startup, 50.0);
  EXPECT_EQ(c.shutdown, 0.0);
  c = startup_shutdown_cost(0, 1, g);
  EXPECT_EQ(c.startup, 0.0);
  EXPECT_EQ(c.shutdown, 20.0);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      c = startup_shutdown_cost(a, b, g);
      EXPECT_GE(c.startup, 0.0);
      EXPECT_GE(c.shutdown, 0.0);
      EXPECT_FALSE(c.startup > 0 && c.shutdown > 0);
    }
  EXPECT_THROW(startup_shutdown_cost(3, 0, g), ContractViolation);
}

TEST(Battery, SocStep) {
  BatteryParams b;
  b.p_rating = 3;
  b.duration_h = 8;
  EXPECT_EQ(battery_soc_step(5.0, 0, 0, 1.0, b), 5.0);
  EXPECT_NEAR(battery_soc_step(0.0, 3, 0, 1.0, b), 2.85, 1e-12);
  EXPECT_NEAR(battery_soc_step(6.0, 0, 3, 1.0, b), 6.0 - 3.0 / 0.95, 1e-12);
  EXPECT_NEAR(battery_soc_step(6.0, 0, 3, 1.0, b), 2.8421, 1e-4);
  EXPECT_THROW(battery_soc_step(1.0, 1, 1, 1.0, b), ContractViolation);
  EXPECT_THROW(battery_soc_step(1.0, -1, 0, 1.0, b), ContractViolation);
  EXPECT_EQ(b.energy_capacity(), 24.0);
}

TEST(Validate, FlagsBrokenRecords) {
  DgParams g;
  g.p_min = 2;
  g.p_max = 1;
  g.s_rating = 3;
  EXPECT_FALSE(validate(g).empty());
  H2SystemParams h = table_h2();
  h.eta_fc = 1.5;
  EXPECT_FALSE(validate(h).empty());
  h = table_h2();
  h.moh_min = 700;
  EXPECT_FALSE(validate(h).empty());
  BatteryParams b;
  EXPECT_FALSE(validate(b).empty());
  PvParams pv;
  EXPECT_FALSE(validate(pv).empty());
}

TEST(FleetJson, RoundTrip) {
  const DeviceFleet fleet = make_default_fixture().fleet;
  const DeviceFleet back = parse_fleet_json(fleet_to_json(fleet));
  ASSERT_EQ(back.dg.size(), 3u);
  ASSERT_EQ(back.pv.size(), 6u);
  ASSERT_EQ(back.h2.size(), 3u);
  ASSERT_EQ(back.battery.size(), fleet.battery.size());
  for (size_t k = 0; k < 3; ++k) {
    EXPECT_EQ(back.dg[k].node, fleet.dg[k].node);
    EXPECT_EQ(back.dg[k].p_max, fleet.dg[k].p_max);
    EXPECT_EQ(back.dg[k].startup_price, fleet.dg[k].startup_price);
    EXPECT_EQ(back.h2[k].lambda_el, fleet.h2[k].lambda_el);
    EXPECT_EQ(back.h2[k].moh_max, fleet.h2[k].moh_max);
    EXPECT_EQ(back.h2[k].dissipation_rate, fleet.h2[k].dissipation_rate);
  }
  EXPECT_EQ(fleet_to_json(back), fleet_to_json(fleet));
}

TEST(FleetJson, MissingFieldIsIoError) {
  EXPECT_THROW(parse_fleet_json(R"({"dg":[{"node":1}]})"), IoError);
  EXPECT_THROW(parse_fleet_json("{not json"), IoError);
}

TEST(Fixture, StatedSiting) {
  const Fixture f = make_default_fixture();
  ASSERT_EQ(f.fleet.dg.size(), 3u);
  EXPECT_EQ(f.fleet.dg[0].node, 8);
  EXPECT_EQ(f.fleet.dg[0].p_max, 0.8);
  EXPECT_EQ(f.fleet.dg[1].node, 13);
  EXPECT_EQ(f.fleet.dg[1].p_max, 2.4);
  EXPECT_EQ(f.fleet.dg[2].node, 30);
  EXPECT_EQ(f.fleet.dg[2].p_max, 1.0);
  EXPECT_EQ(f.fleet.pv.size(), 6u);
  ASSERT_EQ(f.fleet.h2.size(), 3u);
  for (const auto& h : f.fleet.h2) {
    EXPECT_EQ(h.moh_min, 60.0);
    EXPECT_EQ(h.moh_max, 600.0);
    EXPECT_EQ(h.eta_el, 0.6);
    EXPECT_EQ(h.eta_fc, 0.7);
    EXPECT_EQ(h.dissipation_rate, 0.00006);
  }
  for (const auto& d : f.fleet.dg) EXPECT_TRUE(validate(d).empty());
  for (const auto& p : f.fleet.pv) EXPECT_TRUE(validate(p).empty());
  for (const auto& b : f.fleet.battery) EXPECT_TRUE(validate(b).empty());
}

TEST(Fixture, OutageSet) {
  const Fixture f = make_default_fixture();
  ASSERT_EQ(f.scenario.outages.size(), 4u);
  std::vector<std::string> assets;
  for (const auto& w : f.scenario.outages) {
    assets.push_back(w.asset);
    EXPECT_EQ(w.from_hour, 79);
    EXPECT_EQ(w.to_hour, 128);
  }
  std::sort(assets.begin(), assets.end());
  EXPECT_EQ(assets, (std::vector<std::string>{"dg:13", "dg:30", "dg:8", "substation"}));
  EXPECT_EQ(f.scenario.horizon, 168);
  EXPECT_EQ(f.scenario.voll, 500.0);
}

}  // namespace
}  // namespace h2res
