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


#ifndef H2RES_SCENARIO_H_
#define H2RES_SCENARIO_H_

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "h2res/devices.h"
#include "h2res/milp_solver.h"
#include "h2res/model_builder.h"
#include "h2res/network.h"
#include "h2res/scenario_data.h"

namespace h2res {

enum class StorageKind { kNone, kBattery, kHydrogen };

struct CaseSpec {
  int id = 1;
  StorageKind storage = StorageKind::kNone;
  double battery_duration_h = 0.0;
  bool zero_h2_demand = false;

  std::string label() const;
};

// The six storage cases of the comparison study, ids 1..6.
std::vector<CaseSpec> study_cases();
CaseSpec study_case(int id);

struct RunOptions {
  SolverOptions solver;
  BuildOptions build;
  // Exact branch-and-bound regardless of horizon.
  bool exact = false;
  // Horizons up to this length always use branch-and-bound.
  int exact_max_horizon = 48;
};

struct Series {
  std::string name;
  std::vector<double> values;
};

struct CaseResult {
  CaseSpec spec;
  SolveStatus status = SolveStatus::kError;
  std::string method;  // "branch_and_bound" or "lp_round_repair"
  double objective = 0.0;
  double bound = 0.0;
  double gap = 0.0;
  int horizon = 0;
  double dt = 1.0;
  double voll = 0.0;
  int event_start = 0;  // first outage hour, 0 without outages
  int event_end = 0;

  std::vector<Series> dispatch;  // per-hour columns, CSV order
  double ens = 0.0;              // MWh
  double ens_pre_event = 0.0;
  double ens_event = 0.0;
  double ens_post_event = 0.0;
  double total_load = 0.0;  // MWh
  double resilience_index = 0.0;
  std::vector<std::pair<std::string, double>> cost_breakdown;  // $
  std::vector<double> per_node_shed;                           // MWh
  SolveStats stats;

  const Series* find(const std::string& name) const;
};

double compute_resilience_index(double total_load, double curtailed);

DeviceFleet fleet_for_case(const DeviceFleet& fleet, const CaseSpec& spec);
Scenario scenario_for_case(const Scenario& scenario, const CaseSpec& spec);
Scenario truncate_scenario(const Scenario& scenario, int hours);

CaseResult run_case(const Network& network, const DeviceFleet& fleet,
                    const Scenario& scenario, const CaseSpec& spec,
                    const RunOptions& options = {});

// Dispatch series and metrics of a solved model.
CaseResult extract_case_result(const MilpModel& model, const Solution& solution,
                               const Network& network, const Scenario& scenario,
                               const CaseSpec& spec);

struct SuiteReport {
  std::vector<CaseResult> results;  // ordered by case id
  bool ens_strictly_decreasing = false;
  bool ri_strictly_increasing = false;
  double hydrogen_minus_battery8_ri = 0.0;  // percentage points
  std::vector<std::string> notes;
};

SuiteReport run_case_suite(const Network& network, const DeviceFleet& fleet,
                             const Scenario& scenario, const RunOptions& options = {},
                             std::ostream* progress = nullptr);

// Published comparison figures, kept as reference data for reports.
struct PublishedCase {
  int id;
  double ens_mwh;
  double ri_percent;
};
const std::vector<PublishedCase>& published_results();
double implied_total_load(const PublishedCase& c);
// Mean total load implied by cases 1-5.
double back_solved_total_load();

// Reserve signal: `normal` everywhere except `value` at `deadline_hour`.
struct AlphaSpec {
  double normal = 0.0;
  int deadline_hour = 0;  // 0 disables the preparation step
  double value = 1.0;
};
std::vector<double> alpha_trajectory(const AlphaSpec& spec, int horizon);

struct NetworkMeta {
  double s_base_mva = 1.0;
  double v_base_kv = 12.66;
  double substation_s_max_mva = 0.0;
};

// Scenario file with its profile CSVs resolved relative to the file.
struct ScenarioBundle {
  Scenario scenario;
  AlphaSpec alpha;
  NetworkMeta network;
};
// Only the "network" block of a scenario file.
NetworkMeta read_network_meta(const std::string& path);
ScenarioBundle read_scenario_json(const std::string& path, int num_nodes, int num_pv,
                                  int num_h2);
// Writes scenario.json plus price.csv, load.csv, pv.csv and h2_demand.csv.
void write_scenario_files(const std::string& dir, const ScenarioBundle& bundle);

}  // namespace h2res

#endif  // H2RES_SCENARIO_H_
