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

#ifndef H2RES_SCENARIO_DATA_H_
#define H2RES_SCENARIO_DATA_H_

#include <string>
#include <vector>

namespace h2res {

// Asset ids: "substation", "dg:<node>", "line:<to_node>". Hours are 1-based
// and inclusive on both ends.
struct OutageWindow {
  std::string asset;
  int from_hour = 0;
  int to_hour = 0;
};

struct Scenario {
  int horizon = 0;
  double dt = 1.0;                               // h
  std::vector<double> price;                     // $/MWh per hour
  std::vector<std::vector<double>> load_p;       // [node][hour-1], MW
  std::vector<std::vector<double>> load_q;       // [node][hour-1], MVAr
  std::vector<std::vector<double>> pv_profile;   // [pv unit][hour-1], normalized
  std::vector<std::vector<double>> h2_demand;    // [h2 unit][hour-1], kg/h
  std::vector<double> alpha;                     // reserve fraction per hour
  std::vector<OutageWindow> outages;
  double voll = 500.0;                           // $/MWh
};

}  // namespace h2res

#endif  // H2RES_SCENARIO_DATA_H_
