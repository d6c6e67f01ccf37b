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

#ifndef H2RES_MODEL_BUILDER_H_
#define H2RES_MODEL_BUILDER_H_

#include <string>
#include <vector>

#include "h2res/devices.h"
#include "h2res/milp_model.h"
#include "h2res/network.h"
#include "h2res/scenario_data.h"

namespace h2res {

struct BuildOptions {
  int cone_segments = 12;
  // Nodes with zero active load bound reactive shedding by the reactive load
  // instead of the proportional row. When false such nodes are a build error.
  bool zero_load_fallback = true;
};

// Everything a per-hour block needs besides its own parameters.
struct BlockContext {
  int hour = 1;
  double dt = 1.0;
  double s_base = 1.0;
  int segments = 12;
};

MilpModel build_model(const Network& network, const DeviceFleet& fleet,
                      const Scenario& scenario, const BuildOptions& options = {});

void add_substation_block(MilpModel& model, const Network& network, double price,
                          const BlockContext& ctx);
void add_dg_block(MilpModel& model, const DgParams& dg, const BlockContext& ctx);
void add_pv_block(MilpModel& model, const PvParams& pv, double profile,
                  const BlockContext& ctx);
void add_h2_block(MilpModel& model, const H2SystemParams& h2, double demand_kg_per_h,
                  const BlockContext& ctx);
void add_h2_reserve_row(MilpModel& model, const std::vector<H2SystemParams>& h2,
                        double alpha, const BlockContext& ctx);
void add_battery_block(MilpModel& model, const BatteryParams& battery,
                       const BlockContext& ctx);
// Voltage, flow, shedding and nodal balance; device blocks for the hour must
// already exist. Loads are per node in MW / MVAr.
void add_network_block(MilpModel& model, const Network& network,
                       const std::vector<double>& load_p, const std::vector<double>& load_q,
                       double voll, const BlockContext& ctx, const BuildOptions& options = {});

// Inner polygon of the disk p^2 + q^2 <= s_cap^2 with one row per edge,
// tagged Eq<equation>[asset,hour]/k.
void linearize_cone(MilpModel& model, int p_var, int q_var, double s_cap, int segments,
                    int equation, const std::string& asset, int hour);
void linearize_cone(MilpModel& model, const std::vector<Term>& p_expr, int q_var,
                    double s_cap, int segments, int equation, const std::string& asset,
                    int hour);

void apply_outage(MilpModel& model, const std::vector<OutageWindow>& outages);

// Closed-form variable and row counts for a model built from these inputs.
struct ModelCounts {
  int variables = 0;
  int binaries = 0;
  int constraints = 0;
};
ModelCounts expected_counts(const Network& network, const DeviceFleet& fleet,
                            const Scenario& scenario, const BuildOptions& options = {});

}  // namespace h2res

#endif  // H2RES_MODEL_BUILDER_H_
