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


#include "h2res/scenario.h"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <ostream>

#include <json.hpp>

#include "h2res/error.h"
#include "h2res/io.h"

namespace h2res {

std::string CaseSpec::label() const {
  switch (storage) {
    case StorageKind::kNone: return "no storage";
    case StorageKind::kBattery: return fmt::format("battery {}h", battery_duration_h);
    case StorageKind::kHydrogen: return "hydrogen";
  }
  return "unknown";
}

std::vector<CaseSpec> study_cases() {
  std::vector<CaseSpec> out;
  out.push_back({1, StorageKind::kNone, 0.0, true});
  for (int k = 0; k < 4; ++k) {
    out.push_back({2 + k, StorageKind::kBattery, 2.0 * (k + 1), true});
  }
  out.push_back({6, StorageKind::kHydrogen, 0.0, true});
  return out;
}

CaseSpec study_case(int id) {
  if (id < 1 || id > 6) throw InvalidArgument(fmt::format("case id {} outside 1..6", id));
  return study_cases()[id - 1];
}

const Series* CaseResult::find(const std::string& name) const {
  for (const Series& s : dispatch) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

double compute_resilience_index(double total_load, double curtailed) {
  if (!(total_load > 0.0)) throw InvalidArgument("total load must be positive");
  if (curtailed < 0.0) throw InvalidArgument("curtailed energy must be nonnegative");
  if (curtailed > total_load) throw InvalidArgument("curtailed energy exceeds total load");
  return (total_load - curtailed) / total_load * 100.0;
}

DeviceFleet fleet_for_case(const DeviceFleet& fleet, const CaseSpec& spec) {
  DeviceFleet out = fleet;
  switch (spec.storage) {
    case StorageKind::kNone:
      out.h2.clear();
      out.battery.clear();
      break;
    case StorageKind::kBattery: {
      const double d = spec.battery_duration_h;
      if (d != 2.0 && d != 4.0 && d != 6.0 && d != 8.0) {
        throw InvalidArgument(fmt::format("battery duration {} not in {{2,4,6,8}} h", d));
      }
      out.h2.clear();
      for (BatteryParams& b : out.battery) b.duration_h = d;
      break;
    }
    case StorageKind::kHydrogen:
      out.battery.clear();
      break;
  }
  return out;
}

Scenario scenario_for_case(const Scenario& scenario, const CaseSpec& spec) {
  Scenario out = scenario;
  if (spec.storage != StorageKind::kHydrogen) out.h2_demand.clear();
  if (spec.zero_h2_demand) {
    for (auto& series : out.h2_demand) std::fill(series.begin(), series.end(), 0.0);
  }
  return out;
}

Scenario truncate_scenario(const Scenario& scenario, int hours) {
  if (hours < 1 || hours > scenario.horizon) {
    throw InvalidArgument(fmt::format("cannot truncate a {} h scenario to {} h",
                                      scenario.horizon, hours));
  }
  Scenario out = scenario;
  out.horizon = hours;
  auto cut = [hours](std::vector<double>& v) {
    if (static_cast<int>(v.size()) > hours) v.resize(hours);
  };
  cut(out.price);
  cut(out.alpha);
  for (auto* group : {&out.load_p, &out.load_q, &out.pv_profile, &out.h2_demand}) {
    for (auto& v : *group) cut(v);
  }
  out.outages.clear();
  for (OutageWindow w : scenario.outages) {
    if (w.from_hour > hours) continue;
    w.to_hour = std::min(w.to_hour, hours);
    out.outages.push_back(w);
  }
  return out;
}

namespace {

struct VarKey {
  std::string name;
  std::string asset;
  int hour = 0;
};

VarKey split_variable(const std::string& tag) {
  VarKey k;
  const auto open = tag.find('[');
  const auto comma = tag.rfind(',');
  k.name = tag.substr(0, open);
  k.asset = tag.substr(open + 1, comma - open - 1);
  k.hour = std::stoi(tag.substr(comma + 1));
  return k;
}

const char* cost_group(const std::string& name) {
  if (name == "P_ST") return "grid";
  if (name == "P_DG" || name == "x_DG") return "dg";
  if (name == "C_SU") return "startup";
  if (name == "C_SD") return "shutdown";
  if (name == "P_PV") return "pv";
  if (name == "P_Shd") return "shed";
  return nullptr;
}

constexpr const char* kCostGroups[] = {"grid", "dg", "startup", "shutdown", "pv", "shed"};

}  // namespace

CaseResult extract_case_result(const MilpModel& model, const Solution& solution,
                               const Network& network, const Scenario& scenario,
                               const CaseSpec& spec) {
  if (!solution.has_values()) throw InvalidArgument("solution carries no values");
  CaseResult res;
  res.spec = spec;
  res.status = solution.status;
  res.objective = solution.objective;
  res.bound = solution.bound;
  res.gap = solution.gap;
  res.horizon = scenario.horizon;
  res.dt = scenario.dt;
  res.voll = scenario.voll;
  res.stats = solution.stats;
  for (const OutageWindow& w : scenario.outages) {
    if (w.from_hour > scenario.horizon) continue;
    res.event_start = res.event_start == 0 ? w.from_hour : std::min(res.event_start, w.from_hour);
    res.event_end = std::max(res.event_end, std::min(w.to_hour, scenario.horizon));
  }

  const int T = scenario.horizon;
  const double sb = network.s_base_mva;
  // Device columns in model order, grouped by variable name then asset.
  std::vector<std::string> names;
  std::map<std::string, std::vector<double>> columns;
  std::map<std::string, std::vector<double>> costs;
  for (const char* g : kCostGroups) costs[g].assign(T, 0.0);
  const std::vector<double>& c = model.objective();
  for (int j = 0; j < model.num_variables(); ++j) {
    const VarKey k = split_variable(model.variable(j).tag);
    if (k.hour < 1 || k.hour > T) continue;
    const double x = solution.values[j];
    if (const char* g = cost_group(k.name)) costs[g][k.hour - 1] += c[j] * x;
    // Flows are keyed by the receiving node.
    const std::string name = k.name == "fp" ? "P_line" : k.name == "fq" ? "Q_line" : k.name;
    const std::string col = name + "[" + k.asset + "]";
    auto [it, fresh] = columns.try_emplace(col, std::vector<double>(T, 0.0));
    if (fresh) names.push_back(col);
    // Voltages are stored squared; statuses, kg, kg/h, MWh and $ carry no power base.
    double v = x * sb;
    if (k.name == "V") {
      v = std::sqrt(std::max(x, 0.0));
    } else if (k.name == "x_DG" || k.name == "psi_HS" || k.name == "MOH" || k.name == "Q_EL" ||
               k.name == "Q_FC" || k.name == "SOC" || k.name.rfind("C_", 0) == 0) {
      v = x;
    }
    it->second[k.hour - 1] = v;
  }

  auto push = [&](std::string name, std::vector<double> values) {
    res.dispatch.push_back({std::move(name), std::move(values)});
  };
  std::vector<double> load_p(T, 0.0), load_q(T, 0.0);
  for (int t = 0; t < T; ++t) {
    for (size_t i = 0; i < scenario.load_p.size(); ++i) {
      load_p[t] += scenario.load_p[i][t];
      load_q[t] += scenario.load_q[i][t];
    }
  }
  std::vector<double> hours(T);
  for (int t = 0; t < T; ++t) hours[t] = t + 1;
  push("hour", hours);
  push("price", std::vector<double>(scenario.price.begin(), scenario.price.begin() + T));
  push("load_p", load_p);
  push("load_q", load_q);
  for (const std::string& n : names) push(n, columns[n]);

  std::vector<double> v_avg(T, 0.0), shed_total(T, 0.0);
  res.per_node_shed.assign(network.num_nodes(), 0.0);
  for (int i = 0; i < network.num_nodes(); ++i) {
    const auto v = columns.find(fmt::format("V[{}]", i));
    const auto s = columns.find(fmt::format("P_Shd[{}]", i));
    for (int t = 0; t < T; ++t) {
      if (v != columns.end()) v_avg[t] += v->second[t] / network.num_nodes();
      if (s != columns.end()) {
        shed_total[t] += s->second[t];
        res.per_node_shed[i] += s->second[t] * scenario.dt;
      }
    }
  }
  push("V_avg", v_avg);
  push("P_Shd_total", shed_total);
  for (const char* g : kCostGroups) push(std::string("cost_") + g, costs[g]);

  for (int t = 0; t < T; ++t) {
    const double e = shed_total[t] * scenario.dt;
    res.ens += e;
    res.total_load += load_p[t] * scenario.dt;
    const int hour = t + 1;
    if (res.event_start == 0 || hour < res.event_start) {
      res.ens_pre_event += e;
    } else if (hour <= res.event_end) {
      res.ens_event += e;
    } else {
      res.ens_post_event += e;
    }
  }
  res.resilience_index = compute_resilience_index(res.total_load, std::min(res.ens, res.total_load));
  // The reported objective is the cost of the reported dispatch.
  res.objective = 0.0;
  for (const char* g : kCostGroups) {
    double sum = 0.0;
    for (double v : costs[g]) sum += v;
    res.cost_breakdown.emplace_back(g, sum);
    res.objective += sum;
  }
  return res;
}

CaseResult run_case(const Network& network, const DeviceFleet& fleet, const Scenario& scenario,
                    const CaseSpec& spec, const RunOptions& options) {
  const DeviceFleet case_fleet = fleet_for_case(fleet, spec);
  const Scenario case_scenario = scenario_for_case(scenario, spec);
  const MilpModel model = build_model(network, case_fleet, case_scenario, options.build);
  const bool exact = options.exact || case_scenario.horizon <= options.exact_max_horizon;
  Solution sol;
  if (exact) {
    sol = branch_and_bound(model, options.solver);
  } else {
    Solution relaxed = solve_lp(model, options.solver);
    if (relaxed.status == SolveStatus::kOptimal) {
      Solution repaired = round_and_repair(model, relaxed, options.solver);
      repaired.stats.lp_iterations += relaxed.stats.lp_iterations;
      repaired.stats.lp_solves += relaxed.stats.lp_solves;
      repaired.stats.wall_time += relaxed.stats.wall_time;
      sol = std::move(repaired);
    } else {
      sol = std::move(relaxed);
    }
  }
  if (!sol.has_values()) {
    throw InfeasibleError(fmt::format("case {} ({}): solver returned {}", spec.id, spec.label(),
                                      to_string(sol.status)),
                          sol.binding_tags);
  }
  CaseResult res = extract_case_result(model, sol, network, case_scenario, spec);
  res.method = exact ? "branch_and_bound" : "lp_round_repair";
  return res;
}

const std::vector<PublishedCase>& published_results() {
  static const std::vector<PublishedCase> table = {
      {1, 101.9, 77.4}, {2, 91.8, 79.6}, {3, 85.3, 81.0},
      {4, 79.8, 82.3},  {5, 75.6, 83.2}, {6, 52.0, 89.2},
  };
  return table;
}

double implied_total_load(const PublishedCase& c) { return c.ens_mwh / (1.0 - c.ri_percent / 100.0); }

double back_solved_total_load() {
  double sum = 0.0;
  for (int k = 0; k < 5; ++k) sum += implied_total_load(published_results()[k]);
  return sum / 5.0;
}

SuiteReport run_case_suite(const Network& network, const DeviceFleet& fleet,
                             const Scenario& scenario, const RunOptions& options,
                             std::ostream* progress) {
  SuiteReport rep;
  for (const CaseSpec& spec : study_cases()) {
    try {
      rep.results.push_back(run_case(network, fleet, scenario, spec, options));
    } catch (const InfeasibleError& e) {
      throw InfeasibleError(fmt::format("case {}: {}", spec.id, e.what()), e.binding_tags());
    }
    if (progress) {
      const CaseResult& r = rep.results.back();
      *progress << fmt::format("case {} ({}): ens={:.4f} MWh ri={:.4f}% status={} time={:.1f}s\n",
                               spec.id, spec.label(), r.ens, r.resilience_index,
                               to_string(r.status), r.stats.wall_time);
    }
  }
  rep.ens_strictly_decreasing = true;
  rep.ri_strictly_increasing = true;
  for (size_t k = 1; k < rep.results.size(); ++k) {
    if (!(rep.results[k].ens < rep.results[k - 1].ens)) rep.ens_strictly_decreasing = false;
    if (!(rep.results[k].resilience_index > rep.results[k - 1].resilience_index)) {
      rep.ri_strictly_increasing = false;
    }
  }
  rep.hydrogen_minus_battery8_ri = rep.results[5].resilience_index - rep.results[4].resilience_index;
  if (!rep.ens_strictly_decreasing) rep.notes.push_back("ENS is not strictly decreasing over cases 1..6");
  if (!rep.ri_strictly_increasing) rep.notes.push_back("RI is not strictly increasing over cases 1..6");
  const double total = back_solved_total_load();
  const PublishedCase& c6 = published_results()[5];
  rep.notes.push_back(fmt::format(
      "published reference: cases 1-5 imply a total load of {:.1f} MWh, case 6 implies {:.1f} MWh; "
      "with {:.1f} MWh the case-6 RI would be {:.1f}% rather than the printed {:.1f}%",
      total, implied_total_load(c6), total, compute_resilience_index(total, c6.ens_mwh),
      c6.ri_percent));
  return rep;
}

std::vector<double> alpha_trajectory(const AlphaSpec& spec, int horizon) {
  if (spec.normal < 0.0 || spec.normal > 1.0 || spec.value < 0.0 || spec.value > 1.0) {
    throw InvalidArgument("reserve fractions must lie in [0,1]");
  }
  std::vector<double> a(horizon, spec.normal);
  if (spec.deadline_hour >= 1 && spec.deadline_hour <= horizon) a[spec.deadline_hour - 1] = spec.value;
  return a;
}

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::vector<std::vector<double>> read_wide(const std::string& path, int units, int horizon,
                                           const std::string& prefix) {
  const CsvTable t = read_csv(path);
  std::vector<std::vector<double>> out(units, std::vector<double>(horizon, 0.0));
  const int hc = t.column("hour");
  if (hc < 0) throw IoError(path + ": missing 'hour' column");
  std::vector<int> cols(units);
  for (int u = 0; u < units; ++u) {
    cols[u] = t.column(fmt::format("{}{}", prefix, u));
    if (cols[u] < 0) throw IoError(fmt::format("{}: missing column '{}{}'", path, prefix, u));
  }
  std::vector<char> seen(horizon, 0);
  for (const auto& row : t.rows) {
    const int h = parse_int(row[hc], path);
    if (h < 1 || h > horizon) continue;
    seen[h - 1] = 1;
    for (int u = 0; u < units; ++u) out[u][h - 1] = parse_double(row[cols[u]], path);
  }
  if (units > 0 && std::find(seen.begin(), seen.end(), 0) != seen.end()) {
    throw IoError(path + ": profile does not cover the horizon");
  }
  return out;
}

std::string write_wide(const std::vector<std::vector<double>>& series, int horizon,
                       const std::string& prefix) {
  std::string s = "hour";
  for (size_t u = 0; u < series.size(); ++u) s += fmt::format(",{}{}", prefix, u);
  s += "\n";
  for (int t = 0; t < horizon; ++t) {
    s += std::to_string(t + 1);
    for (const auto& v : series) s += "," + format_double(v[t]);
    s += "\n";
  }
  return s;
}

template <typename T>
T field(const json& j, const char* key, const std::string& path) {
  if (!j.contains(key)) throw IoError(fmt::format("{}: missing field '{}'", path, key));
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw IoError(fmt::format("{}: field '{}': {}", path, key, e.what()));
  }
}

}  // namespace

namespace {

json parse_scenario(const std::string& path) {
  try {
    return json::parse(read_text_file(path));
  } catch (const json::parse_error& e) {
    throw IoError(path + ": " + e.what());
  }
}

NetworkMeta meta_from(const json& j, const std::string& path) {
  NetworkMeta meta;
  if (j.contains("network")) {
    const json& n = j["network"];
    meta.s_base_mva = n.value("s_base_mva", 1.0);
    meta.v_base_kv = n.value("v_base_kv", 12.66);
    meta.substation_s_max_mva = field<double>(n, "substation_s_max_mva", path);
  }
  return meta;
}

}  // namespace

NetworkMeta read_network_meta(const std::string& path) {
  return meta_from(parse_scenario(path), path);
}

ScenarioBundle read_scenario_json(const std::string& path, int num_nodes, int num_pv,
                                  int num_h2) {
  const json j = parse_scenario(path);
  const fs::path base = fs::path(path).parent_path();
  auto ref = [&](const json& p, const char* key) {
    return (base / field<std::string>(p, key, path)).string();
  };
  ScenarioBundle b;
  Scenario& s = b.scenario;
  s.horizon = field<int>(j, "horizon", path);
  s.dt = j.value("dt", 1.0);
  s.voll = j.value("voll", 500.0);
  if (s.horizon < 1) throw IoError(path + ": horizon must be positive");
  b.network = meta_from(j, path);
  const json profiles = field<json>(j, "profiles", path);
  const int T = s.horizon;

  const std::string price_path = ref(profiles, "price");
  const CsvTable price = read_csv(price_path);
  s.price.assign(T, 0.0);
  {
    const int hc = price.column("hour"), pc = price.column("price");
    if (hc < 0 || pc < 0) throw IoError(price_path + ": header must be hour,price");
    std::vector<char> seen(T, 0);
    for (const auto& row : price.rows) {
      const int h = parse_int(row[hc], price_path);
      if (h < 1 || h > T) continue;
      s.price[h - 1] = parse_double(row[pc], price_path);
      seen[h - 1] = 1;
    }
    if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
      throw IoError(price_path + ": profile does not cover the horizon");
    }
  }

  const std::string load_path = ref(profiles, "load");
  const CsvTable load = read_csv(load_path);
  s.load_p.assign(num_nodes, std::vector<double>(T, 0.0));
  s.load_q.assign(num_nodes, std::vector<double>(T, 0.0));
  {
    const int hc = load.column("hour"), nc = load.column("node");
    const int pc = load.column("p_mw"), qc = load.column("q_mvar");
    if (hc < 0 || nc < 0 || pc < 0 || qc < 0) {
      throw IoError(load_path + ": header must be hour,node,p_mw,q_mvar");
    }
    for (const auto& row : load.rows) {
      const int h = parse_int(row[hc], load_path);
      const int n = parse_int(row[nc], load_path);
      if (n < 0 || n >= num_nodes) throw IoError(fmt::format("{}: unknown node {}", load_path, n));
      if (h < 1 || h > T) continue;
      s.load_p[n][h - 1] = parse_double(row[pc], load_path);
      s.load_q[n][h - 1] = parse_double(row[qc], load_path);
    }
  }
  s.pv_profile = num_pv > 0 ? read_wide(ref(profiles, "pv"), num_pv, T, "pv_")
                            : std::vector<std::vector<double>>{};
  if (num_h2 > 0 && profiles.contains("h2_demand")) {
    s.h2_demand = read_wide(ref(profiles, "h2_demand"), num_h2, T, "h2_");
  } else {
    s.h2_demand.assign(num_h2, std::vector<double>(T, 0.0));
  }

  if (j.contains("outages")) {
    for (const json& o : j["outages"]) {
      s.outages.push_back({field<std::string>(o, "asset", path), field<int>(o, "from_hour", path),
                           field<int>(o, "to_hour", path)});
    }
  }
  if (j.contains("alpha")) {
    const json& a = j["alpha"];
    b.alpha.normal = a.value("normal", 0.0);
    if (a.contains("preparation")) {
      b.alpha.deadline_hour = field<int>(a["preparation"], "deadline_hour", path);
      b.alpha.value = field<double>(a["preparation"], "value", path);
    }
  }
  try {
    s.alpha = alpha_trajectory(b.alpha, T);
  } catch (const InvalidArgument& e) {
    throw IoError(path + ": " + e.what());
  }
  return b;
}

void write_scenario_files(const std::string& dir, const ScenarioBundle& bundle) {
  const Scenario& s = bundle.scenario;
  const fs::path base(dir);
  std::error_code ec;
  fs::create_directories(base, ec);
  if (ec) throw IoError("cannot create " + dir + ": " + ec.message());
  const int T = s.horizon;

  std::string price = "hour,price\n";
  for (int t = 0; t < T; ++t) price += fmt::format("{},{}\n", t + 1, format_double(s.price[t]));
  write_text_file((base / "price.csv").string(), price);

  std::string load = "hour,node,p_mw,q_mvar\n";
  for (int t = 0; t < T; ++t) {
    for (size_t n = 0; n < s.load_p.size(); ++n) {
      load += fmt::format("{},{},{},{}\n", t + 1, n, format_double(s.load_p[n][t]),
                          format_double(s.load_q[n][t]));
    }
  }
  write_text_file((base / "load.csv").string(), load);
  write_text_file((base / "pv.csv").string(), write_wide(s.pv_profile, T, "pv_"));
  write_text_file((base / "h2_demand.csv").string(), write_wide(s.h2_demand, T, "h2_"));

  json j;
  j["horizon"] = T;
  j["dt"] = s.dt;
  j["voll"] = s.voll;
  j["network"] = {{"s_base_mva", bundle.network.s_base_mva},
                  {"v_base_kv", bundle.network.v_base_kv},
                  {"substation_s_max_mva", bundle.network.substation_s_max_mva}};
  j["profiles"] = {{"price", "price.csv"},
                   {"load", "load.csv"},
                   {"pv", "pv.csv"},
                   {"h2_demand", "h2_demand.csv"}};
  j["outages"] = json::array();
  for (const OutageWindow& w : s.outages) {
    j["outages"].push_back({{"asset", w.asset}, {"from_hour", w.from_hour}, {"to_hour", w.to_hour}});
  }
  j["alpha"] = {{"normal", bundle.alpha.normal},
                {"preparation",
                 {{"deadline_hour", bundle.alpha.deadline_hour}, {"value", bundle.alpha.value}}}};
  write_text_file((base / "scenario.json").string(), j.dump(2) + "\n");
}

}  // namespace h2res
