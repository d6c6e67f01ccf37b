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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "h2res/cli.h"
#include "h2res/devices.h"
#include "h2res/error.h"
#include "h2res/fixture.h"
#include "h2res/model_builder.h"
#include "h2res/mps_writer.h"
#include "h2res/network.h"
#include "h2res/report.h"
#include "h2res/scenario.h"

namespace py = pybind11;

namespace h2res {
namespace {

// Network, fleet and scenario of one study.
struct Study {
  Network network;
  DeviceFleet fleet;
  Scenario scenario;
};

Study default_study() {
  Fixture f = make_default_fixture();
  return {std::move(f.network), std::move(f.fleet), std::move(f.scenario)};
}

Study study_from_files(const std::string& network, const std::string& fleet,
                       const std::string& scenario, const std::string& nodes) {
  const NetworkMeta meta = read_network_meta(scenario);
  Study s;
  s.network = read_network_csv(network, nodes, meta.s_base_mva, meta.v_base_kv,
                               meta.substation_s_max_mva);
  s.fleet = read_fleet_json(fleet);
  s.scenario = read_scenario_json(scenario, s.network.num_nodes(),
                                  static_cast<int>(s.fleet.pv.size()),
                                  static_cast<int>(s.fleet.h2.size()))
                   .scenario;
  return s;
}

RunOptions make_options(bool exact, double mip_gap, int segments) {
  RunOptions o;
  o.exact = exact;
  o.solver.mip_gap = mip_gap;
  o.build.cone_segments = segments;
  return o;
}

py::dict dispatch_dict(const CaseResult& r) {
  py::dict d;
  for (const Series& s : r.dispatch) d[py::str(s.name)] = s.values;
  return d;
}

py::dict cost_dict(const CaseResult& r) {
  py::dict d;
  for (const auto& [name, v] : r.cost_breakdown) d[py::str(name)] = v;
  return d;
}

}  // namespace
}  // namespace h2res

PYBIND11_MODULE(_h2res, m) {
  using namespace h2res;
  m.doc() = "Resilience-oriented scheduling of hydrogen systems in radial feeders";

  static py::exception<InfeasibleError> infeasible(m, "InfeasibleError", PyExc_RuntimeError);
  static py::exception<TopologyError> topology(m, "TopologyError", PyExc_ValueError);
  static py::exception<BuildError> build(m, "BuildError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const InfeasibleError& e) {
      py::object err = py::handle(infeasible)(e.what());
      py::setattr(err, "binding_tags", py::cast(e.binding_tags()));
      py::set_error(infeasible, err);
    } catch (const TopologyError& e) {
      py::set_error(topology, e.what());
    } catch (const BuildError& e) {
      py::set_error(build, e.what());
    } catch (const IoError& e) {
      py::set_error(PyExc_OSError, e.what());
    } catch (const InvalidArgument& e) {
      py::set_error(PyExc_ValueError, e.what());
    } catch (const ContractViolation& e) {
      py::set_error(PyExc_ValueError, e.what());
    }
  });

  py::class_<Study>(m, "Study", "Network, device fleet and scenario of one study.")
      .def_static("default", &default_study, "The built-in 33-node study.")
      .def_static("from_files", &study_from_files, py::arg("network"), py::arg("fleet"),
                  py::arg("scenario"), py::arg("nodes") = "")
      .def_property_readonly("horizon", [](const Study& s) { return s.scenario.horizon; })
      .def_property_readonly("num_nodes", [](const Study& s) { return s.network.num_nodes(); })
      .def_property_readonly("outages",
                             [](const Study& s) {
                               py::list out;
                               for (const OutageWindow& w : s.scenario.outages)
                                 out.append(py::make_tuple(w.asset, w.from_hour, w.to_hour));
                               return out;
                             })
      .def("truncated",
           [](const Study& s, int hours) {
             Study t = s;
             t.scenario = truncate_scenario(s.scenario, hours);
             return t;
           },
           py::arg("hours"), "Copy limited to the first hours of the horizon.")
      .def("without_outages",
           [](const Study& s) {
             Study t = s;
             t.scenario.outages.clear();
             return t;
           })
      .def("with_alpha",
           [](const Study& s, double normal, int deadline_hour, double value) {
             Study t = s;
             t.scenario.alpha = alpha_trajectory({normal, deadline_hour, value}, s.scenario.horizon);
             return t;
           },
           py::arg("normal"), py::arg("deadline_hour"), py::arg("value") = 1.0,
           "Copy with a new hydrogen reserve trajectory.")
      .def("validate", [](const Study& s) { return validate_radial(s.network); },
           "Topology problems; empty when the feeder is a valid radial tree.")
      .def("model_size",
           [](const Study& s, int case_id, int segments) {
             const CaseSpec spec = study_case(case_id);
             BuildOptions b;
             b.cone_segments = segments;
             const MilpModel model = build_model(s.network, fleet_for_case(s.fleet, spec),
                                                 scenario_for_case(s.scenario, spec), b);
             py::dict d;
             d["variables"] = model.num_variables();
             d["constraints"] = model.num_constraints();
             d["binaries"] = model.num_binaries();
             return d;
           },
           py::arg("case_id") = 6, py::arg("segments") = 12)
      .def("export_mps",
           [](const Study& s, int case_id, int segments) {
             const CaseSpec spec = study_case(case_id);
             BuildOptions b;
             b.cone_segments = segments;
             return export_interchange(build_model(s.network, fleet_for_case(s.fleet, spec),
                                                   scenario_for_case(s.scenario, spec), b));
           },
           py::arg("case_id") = 6, py::arg("segments") = 12, "Fixed-format MPS text.");

  py::class_<CaseResult>(m, "CaseResult")
      .def_property_readonly("case_id", [](const CaseResult& r) { return r.spec.id; })
      .def_property_readonly("label", [](const CaseResult& r) { return r.spec.label(); })
      .def_property_readonly("status", [](const CaseResult& r) { return std::string(to_string(r.status)); })
      .def_readonly("method", &CaseResult::method)
      .def_readonly("objective", &CaseResult::objective)
      .def_readonly("bound", &CaseResult::bound)
      .def_readonly("gap", &CaseResult::gap)
      .def_readonly("horizon", &CaseResult::horizon)
      .def_readonly("event_start", &CaseResult::event_start)
      .def_readonly("event_end", &CaseResult::event_end)
      .def_readonly("ens", &CaseResult::ens)
      .def_readonly("ens_pre_event", &CaseResult::ens_pre_event)
      .def_readonly("ens_event", &CaseResult::ens_event)
      .def_readonly("ens_post_event", &CaseResult::ens_post_event)
      .def_readonly("total_load", &CaseResult::total_load)
      .def_readonly("resilience_index", &CaseResult::resilience_index)
      .def_readonly("per_node_shed", &CaseResult::per_node_shed)
      .def_property_readonly("costs", &cost_dict)
      .def_property_readonly("dispatch", &dispatch_dict, "Hourly columns by name.")
      .def("dispatch_csv", &dispatch_csv)
      .def("__repr__", [](const CaseResult& r) {
        std::ostringstream s;
        s << "<CaseResult case " << r.spec.id << " (" << r.spec.label() << ") ens=" << r.ens
          << " ri=" << r.resilience_index << ">";
        return s.str();
      });

  py::class_<SuiteReport>(m, "SuiteReport")
      .def_readonly("results", &SuiteReport::results)
      .def_readonly("notes", &SuiteReport::notes)
      .def_readonly("ens_strictly_decreasing", &SuiteReport::ens_strictly_decreasing)
      .def_readonly("ri_strictly_increasing", &SuiteReport::ri_strictly_increasing)
      .def_readonly("hydrogen_minus_battery8_ri", &SuiteReport::hydrogen_minus_battery8_ri);

  m.def("run_case",
        [](const Study& s, int case_id, bool exact, double mip_gap, int segments) {
          py::gil_scoped_release release;
          return run_case(s.network, s.fleet, s.scenario, study_case(case_id),
                          make_options(exact, mip_gap, segments));
        },
        py::arg("study"), py::arg("case_id"), py::arg("exact") = false, py::arg("mip_gap") = 1e-6,
        py::arg("segments") = 12, "Solve one of the six storage cases.");
  m.def("run_suite",
        [](const Study& s, bool exact, double mip_gap, int segments) {
          py::gil_scoped_release release;
          return run_case_suite(s.network, s.fleet, s.scenario,
                                  make_options(exact, mip_gap, segments));
        },
        py::arg("study"), py::arg("exact") = false, py::arg("mip_gap") = 1e-6,
        py::arg("segments") = 12, "Solve all six cases in id order.");
  m.def("emit_reports",
        [](const std::vector<CaseResult>& results, const std::string& out_dir,
           const std::vector<std::string>& notes) {
          return emit_reports({results, notes}, out_dir);
        },
        py::arg("results"), py::arg("out_dir"), py::arg("notes") = std::vector<std::string>{});
  m.def("verify_reports", &verify_reports, py::arg("out_dir"), py::arg("tol") = 1e-9,
        "Mismatches between summary.json and the dispatch files.");
  m.def("compute_resilience_index", &compute_resilience_index, py::arg("total_load"),
        py::arg("curtailed"));
  m.def("back_solved_total_load", &back_solved_total_load);
  m.def("case_labels", [] {
    std::vector<std::string> out;
    for (const CaseSpec& c : study_cases()) out.push_back(c.label());
    return out;
  });
  m.def("cli",
        [](const std::vector<std::string>& args) {
          std::ostringstream out, err;
          int code;
          {
            py::gil_scoped_release release;
            code = cli_main(args, out, err);
          }
          return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Run the command-line front end; returns (code, stdout, stderr).");
}
