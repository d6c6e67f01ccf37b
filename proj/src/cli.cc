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


#include "h2res/cli.h"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <ostream>

#include "h2res/error.h"
#include "h2res/fixture.h"
#include "h2res/io.h"
#include "h2res/model_builder.h"
#include "h2res/mps_writer.h"
#include "h2res/report.h"
#include "h2res/scenario.h"

namespace h2res {
namespace {

namespace fs = std::filesystem;

enum class Verbosity { kQuiet, kInfo, kDebug };

Verbosity verbosity_from_env() {
  const char* v = std::getenv("H2RES_LOG");
  if (!v) return Verbosity::kInfo;
  const std::string s(v);
  if (s == "quiet" || s == "0") return Verbosity::kQuiet;
  if (s == "debug" || s == "2") return Verbosity::kDebug;
  return Verbosity::kInfo;
}

struct Inputs {
  std::string network, nodes, fleet, scenario, fixture;
  int case_id = 6;
  int hours = 0;
  bool exact = false;
  double mip_gap = 1e-6;
  int segments = 12;
  std::string out;
};

struct Study {
  Network network;
  DeviceFleet fleet;
  Scenario scenario;
};

void add_input_flags(CLI::App* cmd, Inputs& in) {
  cmd->add_option("--network", in.network, "branch CSV (from,to,r_ohm,x_ohm,s_max_mva)");
  cmd->add_option("--nodes", in.nodes, "node CSV (node,vmin_pu,vmax_pu); defaults to nodes.csv beside the branch file");
  cmd->add_option("--fleet", in.fleet, "device fleet JSON");
  cmd->add_option("--scenario", in.scenario, "scenario JSON");
  cmd->add_option("--fixture", in.fixture, "built-in study instead of files")->check(CLI::IsMember({"default"}));
}

void add_run_flags(CLI::App* cmd, Inputs& in) {
  cmd->add_option("--hours", in.hours, "truncate the horizon")->check(CLI::PositiveNumber);
  cmd->add_flag("--exact", in.exact, "branch-and-bound at any horizon");
  cmd->add_option("--mip-gap", in.mip_gap, "relative optimality gap")->check(CLI::PositiveNumber);
  cmd->add_option("--segments", in.segments, "polygon facets per apparent-power cap");
}

std::string node_file_for(const Inputs& in) {
  if (!in.nodes.empty()) return in.nodes;
  const fs::path sibling = fs::path(in.network).parent_path() / "nodes.csv";
  return fs::exists(sibling) ? sibling.string() : std::string();
}

Network load_network_only(const Inputs& in) {
  NetworkMeta meta;
  if (!in.scenario.empty()) meta = read_network_meta(in.scenario);
  return read_network_csv(in.network, node_file_for(in), meta.s_base_mva, meta.v_base_kv,
                          meta.substation_s_max_mva);
}

Study load_study(const Inputs& in) {
  Study s;
  if (!in.fixture.empty()) {
    if (!in.network.empty() || !in.fleet.empty() || !in.scenario.empty()) {
      throw InvalidArgument("--fixture cannot be combined with input files");
    }
    Fixture f = make_default_fixture();
    s.network = std::move(f.network);
    s.fleet = std::move(f.fleet);
    s.scenario = std::move(f.scenario);
  } else {
    if (in.network.empty() || in.fleet.empty() || in.scenario.empty()) {
      throw InvalidArgument("need --fixture default or all of --network, --fleet, --scenario");
    }
    s.network = load_network_only(in);
    s.fleet = read_fleet_json(in.fleet);
    s.scenario = read_scenario_json(in.scenario, s.network.num_nodes(),
                                    static_cast<int>(s.fleet.pv.size()),
                                    static_cast<int>(s.fleet.h2.size()))
                     .scenario;
  }
  const std::vector<std::string> issues = validate_radial(s.network);
  if (!issues.empty()) throw TopologyError(issues.front());
  if (in.hours > 0 && in.hours < s.scenario.horizon) {
    s.scenario = truncate_scenario(s.scenario, in.hours);
  }
  return s;
}

RunOptions run_options(const Inputs& in, Verbosity v, std::ostream& err) {
  RunOptions o;
  o.exact = in.exact;
  o.solver.mip_gap = in.mip_gap;
  o.build.cone_segments = in.segments;
  if (v == Verbosity::kDebug) o.solver.log = &err;
  return o;
}

int cmd_validate(const Inputs& in, std::ostream& out, std::ostream& err) {
  std::vector<std::string> issues;
  if (!in.fixture.empty()) {
    const Study s = load_study(in);
    build_model(s.network, s.fleet, s.scenario);
    out << "ok: default fixture\n";
    return kExitOk;
  }
  std::optional<Network> net;
  if (!in.network.empty()) {
    net = load_network_only(in);
    for (const std::string& msg : validate_radial(*net)) issues.push_back("network: " + msg);
  }
  std::optional<DeviceFleet> fleet;
  if (!in.fleet.empty()) {
    fleet = read_fleet_json(in.fleet);
    for (const auto& d : fleet->dg)
      for (const auto& msg : validate(d)) issues.push_back("fleet: " + msg);
    for (const auto& d : fleet->pv)
      for (const auto& msg : validate(d)) issues.push_back("fleet: " + msg);
    for (const auto& d : fleet->h2)
      for (const auto& msg : validate(d)) issues.push_back("fleet: " + msg);
    for (const auto& d : fleet->battery)
      for (const auto& msg : validate(d)) issues.push_back("fleet: " + msg);
  }
  if (issues.empty() && net && fleet && !in.scenario.empty()) {
    const Scenario sc = read_scenario_json(in.scenario, net->num_nodes(),
                                           static_cast<int>(fleet->pv.size()),
                                           static_cast<int>(fleet->h2.size()))
                            .scenario;
    try {
      build_model(*net, *fleet, sc);
    } catch (const BuildError& e) {
      issues.push_back(std::string("model: ") + e.what());
    }
  }
  if (in.network.empty() && in.fleet.empty() && in.scenario.empty()) {
    throw InvalidArgument("nothing to validate");
  }
  for (const std::string& msg : issues) err << "error: " << msg << "\n";
  if (!issues.empty()) return kExitValidation;
  out << "ok\n";
  return kExitOk;
}

void print_result(std::ostream& out, const CaseResult& r) {
  out << fmt::format("case {} ({}): status={} method={} ens={:.4f} MWh ri={:.4f}% cost={:.2f}\n",
                     r.spec.id, r.spec.label(), to_string(r.status), r.method, r.ens,
                     r.resilience_index, r.objective);
}

int cmd_solve(const Inputs& in, Verbosity v, std::ostream& out, std::ostream& err) {
  const Study s = load_study(in);
  const CaseSpec spec = study_case(in.case_id);
  const CaseResult r = run_case(s.network, s.fleet, s.scenario, spec, run_options(in, v, err));
  emit_reports({{r}, {}}, in.out);
  print_result(out, r);
  return kExitOk;
}

int cmd_suite(const Inputs& in, Verbosity v, std::ostream& out, std::ostream& err) {
  const Study s = load_study(in);
  SuiteReport rep = run_case_suite(s.network, s.fleet, s.scenario, run_options(in, v, err),
                                     v == Verbosity::kQuiet ? nullptr : &err);
  std::vector<std::string> notes = rep.notes;
  notes.insert(notes.begin(),
               fmt::format("hydrogen minus battery 8h RI: {:.4f} percentage points",
                           rep.hydrogen_minus_battery8_ri));
  emit_reports({rep.results, notes}, in.out);
  for (const CaseResult& r : rep.results) print_result(out, r);
  for (const std::string& n : notes) out << "note: " << n << "\n";
  return kExitOk;
}

int cmd_export(const Inputs& in, std::ostream& out) {
  const Study s = load_study(in);
  const CaseSpec spec = study_case(in.case_id);
  BuildOptions b;
  b.cone_segments = in.segments;
  const MilpModel model =
      build_model(s.network, fleet_for_case(s.fleet, spec), scenario_for_case(s.scenario, spec), b);
  const fs::path path(in.out.empty() ? "model.mps" : in.out);
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create " + path.parent_path().string());
  }
  write_text_file(path.string(), export_interchange(model));
  out << fmt::format("wrote {} ({} rows, {} columns)\n", path.string(), model.num_constraints(),
                     model.num_variables());
  return kExitOk;
}

int cmd_verify(const std::string& dir, std::ostream& out, std::ostream& err) {
  const std::vector<std::string> issues = verify_reports(dir);
  for (const std::string& msg : issues) err << "mismatch: " << msg << "\n";
  if (!issues.empty()) return kExitValidation;
  out << "verified " << dir << "\n";
  return kExitOk;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Resilience-oriented scheduling of hydrogen systems in distribution feeders", "h2res"};
  app.require_subcommand(1);
  Inputs in;
  std::string dir;

  auto* validate_cmd = app.add_subcommand("validate", "check input files without solving");
  add_input_flags(validate_cmd, in);

  auto* solve_cmd = app.add_subcommand("solve", "solve one case and write reports");
  add_input_flags(solve_cmd, in);
  add_run_flags(solve_cmd, in);
  solve_cmd->add_option("--case", in.case_id, "case id 1..6")->check(CLI::Range(1, 6));
  solve_cmd->add_option("--out", in.out, "report directory")->required();

  auto* suite_cmd = app.add_subcommand("suite", "solve all six cases and write reports");
  add_input_flags(suite_cmd, in);
  add_run_flags(suite_cmd, in);
  suite_cmd->add_option("--out", in.out, "report directory")->required();

  auto* export_cmd = app.add_subcommand("export-mps", "write one case as a fixed-format MPS file");
  add_input_flags(export_cmd, in);
  export_cmd->add_option("--case", in.case_id, "case id 1..6")->check(CLI::Range(1, 6));
  export_cmd->add_option("--hours", in.hours, "truncate the horizon")->check(CLI::PositiveNumber);
  export_cmd->add_option("--segments", in.segments, "polygon facets per apparent-power cap");
  export_cmd->add_option("--out", in.out, "output file (default model.mps)");

  auto* verify_cmd = app.add_subcommand("verify", "recompute summary.json from the dispatch CSVs");
  verify_cmd->add_option("--out", dir, "report directory")->required();

  auto* fixture_cmd = app.add_subcommand("write-fixture", "write the default study as input files");
  fixture_cmd->add_option("--out", dir, "target directory")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }

  const Verbosity v = verbosity_from_env();
  try {
    if (*validate_cmd) return cmd_validate(in, out, err);
    if (*solve_cmd) return cmd_solve(in, v, out, err);
    if (*suite_cmd) return cmd_suite(in, v, out, err);
    if (*export_cmd) return cmd_export(in, out);
    if (*verify_cmd) return cmd_verify(dir, out, err);
    if (*fixture_cmd) {
      write_fixture_files(make_default_fixture(), dir);
      out << "wrote default study to " << dir << "\n";
      return kExitOk;
    }
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << "\n";
    for (const std::string& tag : e.binding_tags()) err << "  binding: " << tag << "\n";
    return kExitInfeasible;
  } catch (const IoError& e) {
    err << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    err << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const TopologyError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const BuildError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ContractViolation& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitValidation;
}

}  // namespace h2res
