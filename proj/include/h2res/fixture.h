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


#ifndef H2RES_FIXTURE_H_
#define H2RES_FIXTURE_H_

#include <string>

#include "h2res/devices.h"
#include "h2res/network.h"
#include "h2res/scenario.h"
#include "h2res/scenario_data.h"

namespace h2res {

// Default study: the Baran-Wu 33-node feeder with three DGs, six PV units and
// three hydrogen systems, one week at hourly resolution, and the
// substation-plus-DG outage over hours 79-128. Load, PV, price and
// hydrogen-demand series are synthetic shapes (see README).
struct Fixture {
  Network network;
  DeviceFleet fleet;
  Scenario scenario;
  AlphaSpec alpha;
  NetworkMeta meta;
};

Fixture make_default_fixture();

// Writes branches.csv, nodes.csv, fleet.json and the scenario files.
void write_fixture_files(const Fixture& fixture, const std::string& dir);

// Node ids of the default siting, 0-based with the substation at 0.
inline constexpr int kFixtureDgNodes[] = {8, 13, 30};
inline constexpr int kFixturePvNodes[] = {7, 14, 20, 24, 27, 31};
inline constexpr int kFixtureH2Nodes[] = {5, 18, 25};

// Normalized shape of the feeder load at the given hour (1-based).
double fixture_load_factor(int hour);
double fixture_pv_factor(int hour);
double fixture_h2_demand(int hour, int station);

}  // namespace h2res

#endif  // H2RES_FIXTURE_H_
