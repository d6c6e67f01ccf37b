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

#include <chrono>
#include <cmath>
#include <sstream>

#include "h2res/error.h"
#include "h2res/fixture.h"
#include "h2res/milp_solver.h"
#include "h2res/model_builder.h"
#include "h2res/scenario.h"
#include "test_util.h"

namespace h2res {
namespace {

using testing::random_two_unit_instance;

MilpModel toy_milp() {
  MilpModel m;
  const int x = m.add_variable("x", VarKind::kBinary, 0, 1);
  const int y = m.add_variable("y", VarKind::kBinary, 0, 1);
  m.add_objective(x, -1.0);
  m.add_objective(y, -1.0);
  m.add_constraint("Eq1[toy,1]", {{x, 1.0}, {y, 1.0}}, Sense::kLe, 1.0);
  return m;
}

MilpModel instance_model(unsigned seed) {
  const auto in = random_two_unit_instance(seed);
  return build_model(in.network, in.fleet, in.scenario);
}

TEST(BranchAndBound, ToyTieBreaksToLowestIndex) {
  const Solution s = branch_and_bound(toy_milp());
  ASSERT_EQ(s.status, SolveStatus::kOptimal);
  EXPECT_NEAR(s.objective, -1.0, 1e-12);
  EXPECT_NEAR(s.values[0], 1.0, 1e-9);
  EXPECT_NEAR(s.values[1], 0.0, 1e-9);
  EXPECT_NEAR(enumerate_binaries(toy_milp()).objective, -1.0, 1e-12);
}

TEST(BranchAndBound, IntegralRelaxationNeedsNoNodes) {
  MilpModel m;
  const int x = m.add_variable("x", VarKind::kBinary, 0, 1);
  const int y = m.add_variable("y", VarKind::kContinuous, 0, 5);
  m.add_objective(x, 2.0);
  m.add_objective(y, 1.0);
  m.add_constraint("Eq1[a,1]", {{y, 1.0}, {x, 1.0}}, Sense::kGe, 3.0);
  const Solution s = branch_and_bound(m);
  ASSERT_EQ(s.status, SolveStatus::kOptimal);
  EXPECT_EQ(s.stats.nodes, 0);
  EXPECT_NEAR(s.objective, 3.0, 1e-12);
  EXPECT_EQ(s.gap, 0.0);
}

TEST(BranchAndBound, MatchesEnumerationOnRandomInstances) {
  const auto t0 = std::chrono::steady_clock::now();
  for (unsigned seed = 1; seed <= 24; ++seed) {
    const MilpModel m = instance_model(seed);
    ASSERT_EQ(m.num_binaries(), 12);
    const Solution bb = branch_and_bound(m);
    const Solution en = enumerate_binaries(m);
    ASSERT_EQ(bb.status, SolveStatus::kOptimal) << seed;
    ASSERT_EQ(en.status, SolveStatus::kOptimal) << seed;
    EXPECT_NEAR(bb.objective, en.objective, 1e-6) << seed;
    EXPECT_LE(m.max_violation(bb.values), 1e-7) << seed;
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  RecordProperty("seconds", std::to_string(secs));
}

// Cold LP per assignment, independent of the enumerator's warm starts.
TEST(Enumerate, AgreesWithColdFixings) {
  auto in = random_two_unit_instance(99);
  in.scenario = truncate_scenario(in.scenario, 3);
  in.scenario.outages = {{"substation", 2, 3}};
  const MilpModel m = build_model(in.network, in.fleet, in.scenario);
  std::vector<int> bins;
  for (const auto& v : m.variables())
    if (v.kind == VarKind::kBinary) bins.push_back(v.index);
  ASSERT_EQ(bins.size(), 6u);
  double best = kInf;
  for (int mask = 0; mask < 64; ++mask) {
    MilpModel fixed = m;
    for (int b = 0; b < 6; ++b) {
      const double v = (mask >> b) & 1;
      fixed.set_bounds(bins[b], v, v);
    }
    const Solution s = solve_lp(fixed);
    if (s.status == SolveStatus::kOptimal) best = std::min(best, s.objective);
  }
  EXPECT_NEAR(enumerate_binaries(m).objective, best, 1e-6);
  EXPECT_NEAR(branch_and_bound(m).objective, best, 1e-6);
}

TEST(BranchAndBound, BoundsAndIncumbentsAreConsistent) {
  for (unsigned seed : {3u, 8u, 17u}) {
    const MilpModel m = instance_model(seed);
    const Solution s = branch_and_bound(m);
    const auto& b = s.stats.bound_trace;
    const auto& inc = s.stats.incumbent_trace;
    ASSERT_EQ(b.size(), inc.size());
    for (size_t k = 0; k < b.size(); ++k) {
      if (k > 0) EXPECT_GE(b[k], b[k - 1] - 1e-9);
      EXPECT_LE(b[k], inc[k] + 1e-9);
    }
    EXPECT_LE(s.bound, s.objective + 1e-9);
    EXPECT_LE(solve_lp(m).objective, s.objective + 1e-9);
  }
}

TEST(BranchAndBound, Deterministic) {
  const MilpModel m = instance_model(5);
  const Solution a = branch_and_bound(m);
  const Solution b = branch_and_bound(m);
  EXPECT_EQ(a.objective, b.objective);
  EXPECT_EQ(a.values, b.values);
  EXPECT_EQ(a.stats.nodes, b.stats.nodes);
  EXPECT_EQ(a.stats.bound_trace, b.stats.bound_trace);
}

TEST(BranchAndBound, FixedBinariesGiveUpperBound) {
  const MilpModel m = instance_model(11);
  const Solution opt = branch_and_bound(m);
  for (int mask : {0, 0xfff, 0x0f0, 0x5a5}) {
    MilpModel fixed = m;
    int b = 0;
    for (const auto& v : m.variables()) {
      if (v.kind != VarKind::kBinary) continue;
      const double val = (mask >> b++) & 1;
      fixed.set_bounds(v.index, val, val);
    }
    const Solution s = solve_lp(fixed);
    if (s.status == SolveStatus::kOptimal) EXPECT_GE(s.objective, opt.objective - 1e-9);
  }
}

TEST(BranchAndBound, NodeLimitReportsGap) {
  const MilpModel m = instance_model(2);
  SolverOptions o;
  o.node_limit = 1;
  o.heuristic_enabled = true;
  const Solution s = branch_and_bound(m, o);
  EXPECT_TRUE(s.status == SolveStatus::kFeasible || s.status == SolveStatus::kOptimal ||
              s.status == SolveStatus::kLimit);
  if (s.status == SolveStatus::kFeasible) {
    EXPECT_GE(s.gap, 0.0);
    EXPECT_LE(s.bound, s.objective + 1e-9);
  }
}

TEST(BranchAndBound, PseudoCostBranchingAgrees) {
  for (unsigned seed : {4u, 6u}) {
    const MilpModel m = instance_model(seed);
    SolverOptions o;
    o.branching = Branching::kPseudoCost;
    EXPECT_NEAR(branch_and_bound(m, o).objective, branch_and_bound(m).objective, 1e-6);
  }
}

TEST(BranchAndBound, LogLines) {
  const MilpModel m = instance_model(7);
  std::ostringstream log;
  SolverOptions o;
  o.log = &log;
  o.log_interval = 1;
  branch_and_bound(m, o);
  const std::string text = log.str();
  EXPECT_NE(text.find("node="), std::string::npos);
  EXPECT_NE(text.find(" bound="), std::string::npos);
  EXPECT_NE(text.find(" incumbent="), std::string::npos);
  EXPECT_NE(text.find(" gap="), std::string::npos);
}

TEST(BranchAndBound, InfeasibleModel) {
  MilpModel m;
  const int x = m.add_variable("x", VarKind::kBinary, 0, 1);
  const int y = m.add_variable("y", VarKind::kContinuous, 0, 1);
  m.add_constraint("Eq1[a,1]", {{x, 1.0}, {y, 1.0}}, Sense::kGe, 3.0);
  const Solution s = branch_and_bound(m);
  EXPECT_EQ(s.status, SolveStatus::kInfeasible);
  EXPECT_FALSE(s.binding_tags.empty());
}

TEST(RoundAndRepair, IntegralRelaxationIsKept) {
  MilpModel m;
  const int x = m.add_variable("x", VarKind::kBinary, 0, 1);
  const int y = m.add_variable("y", VarKind::kContinuous, 0, 5);
  m.add_objective(x, 2.0);
  m.add_objective(y, 1.0);
  m.add_constraint("Eq1[a,1]", {{y, 1.0}, {x, 1.0}}, Sense::kGe, 3.0);
  const Solution lp = solve_lp(m);
  const Solution s = round_and_repair(m, lp);
  ASSERT_TRUE(s.has_values());
  EXPECT_EQ(s.gap, 0.0);
  EXPECT_NEAR(s.objective, lp.objective, 1e-12);
  for (int j = 0; j < m.num_variables(); ++j) EXPECT_NEAR(s.values[j], lp.values[j], 1e-9);
}

// One tank at its minimum faces a demand in hour 2 while electrolysis is
// blocked in hour 2, so only electrolyzer mode in hour 1 completes it.
TEST(RoundAndRepair, HalfExclusionBinaryGoesToElectrolysis) {
  const Network net = testing::chain_network(2);
  DeviceFleet fleet;
  fleet.h2.push_back(make_h2_system(1, 3, 3, 0.6, 0.7, 56.4, 60, 600, 0.0, 3.3));
  Scenario s = testing::flat_scenario(net, fleet, 3, 0.2);
  s.h2_demand[0] = {0.0, 20.0, 0.0};
  MilpModel m = build_model(net, fleet, s);
  const int psi1 = m.find_variable("psi_HS[1,1]");
  const int psi2 = m.find_variable("psi_HS[1,2]");
  m.set_bounds(psi2, 0.0, 0.0);
  Solution relaxed = solve_lp(m);
  ASSERT_EQ(relaxed.status, SolveStatus::kOptimal);
  relaxed.values[psi1] = 0.5;
  const Solution r = round_and_repair(m, relaxed);
  ASSERT_TRUE(r.has_values()) << to_string(r.status);
  EXPECT_EQ(r.values[psi1], 1.0);
  EXPECT_GE(r.values[m.find_variable("Q_EL[1,1]")], 20.0 - 1e-7);
  EXPECT_LE(m.max_violation(r.values), 1e-7);
}

// Rounding 0.5 up would strand a binary the rows forbid; repair flips it.
TEST(RoundAndRepair, RepairsInfeasibleThreshold) {
  MilpModel m;
  const int x = m.add_variable("x", VarKind::kBinary, 0, 1);
  const int y = m.add_variable("y", VarKind::kBinary, 0, 1);
  const int z = m.add_variable("z", VarKind::kContinuous, 0, 1);
  m.add_objective(x, -1.0);
  m.add_objective(y, -1.0);
  m.add_objective(z, 0.1);
  m.add_constraint("Eq1[a,1]", {{x, 1.0}, {y, 1.0}, {z, -1.0}}, Sense::kLe, 1.0);
  m.add_constraint("Eq2[a,1]", {{z, 1.0}}, Sense::kLe, 0.0);
  Solution relaxed = solve_lp(m);
  relaxed.values[x] = 0.5;
  relaxed.values[y] = 0.5;
  const Solution r = round_and_repair(m, relaxed);
  ASSERT_TRUE(r.has_values());
  EXPECT_NEAR(r.values[x] + r.values[y], 1.0, 1e-12);
  EXPECT_NEAR(r.objective, -1.0, 1e-9);
  EXPECT_LE(r.bound, r.objective + 1e-12);
}

TEST(RoundAndRepair, ReportsInfeasibility) {
  MilpModel m;
  const int x = m.add_variable("x", VarKind::kBinary, 0, 1);
  const int y = m.add_variable("y", VarKind::kContinuous, 0, 1);
  m.add_constraint("Eq1[a,1]", {{x, 2.0}, {y, 1.0}}, Sense::kGe, 1.5);
  m.add_constraint("Eq2[a,1]", {{x, 2.0}, {y, 1.0}}, Sense::kLe, 1.6);
  m.add_constraint("Eq3[a,1]", {{y, 1.0}}, Sense::kLe, 0.5);
  Solution relaxed = solve_lp(m);
  ASSERT_EQ(relaxed.status, SolveStatus::kOptimal);
  const Solution r = round_and_repair(m, relaxed);
  EXPECT_EQ(r.status, SolveStatus::kInfeasible);
  EXPECT_FALSE(r.binding_tags.empty());
}

TEST(RoundAndRepair, CloseToExactOnQuietDay) {
  Fixture fx = make_default_fixture();
  const CaseSpec spec = study_case(6);
  Scenario sc = truncate_scenario(scenario_for_case(fx.scenario, spec), 24);
  sc.outages.clear();
  const MilpModel m = build_model(fx.network, fleet_for_case(fx.fleet, spec), sc);
  const Solution exact = branch_and_bound(m);
  ASSERT_EQ(exact.status, SolveStatus::kOptimal);
  const Solution lp = solve_lp(m);
  const Solution heur = round_and_repair(m, lp);
  ASSERT_TRUE(heur.has_values());
  EXPECT_LE(heur.objective, exact.objective * 1.02 + 1e-9);
  EXPECT_GE(heur.objective, exact.objective - 1e-6 * std::abs(exact.objective));
  EXPECT_LE(lp.objective, exact.objective + 1e-6);
  EXPECT_LE(m.max_violation(heur.values), 1e-6);
}

TEST(SolveLp, DualsPerTag) {
  MilpModel m;
  const int a = m.add_variable("a", VarKind::kContinuous, 0, 3);
  const int b = m.add_variable("b", VarKind::kContinuous, 0, 3);
  m.add_objective(a, 2.0);
  m.add_objective(b, 3.0);
  m.add_constraint("Eq1[ab,1]", {{a, 1.0}, {b, 1.0}}, Sense::kGe, 4.0);
  const Solution s = solve_lp(m);
  ASSERT_EQ(s.status, SolveStatus::kOptimal);
  EXPECT_NEAR(s.objective, 9.0, 1e-12);
  EXPECT_NEAR(dual_of(m, s, "Eq1[ab,1]"), 3.0, 1e-9);
}

}  // namespace
}  // namespace h2res
