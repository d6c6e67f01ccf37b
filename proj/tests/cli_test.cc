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

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "h2res/cli.h"
#include "h2res/fixture.h"
#include "h2res/io.h"
#include "h2res/model_builder.h"
#include "h2res/mps_writer.h"
#include "h2res/scenario.h"
#include "test_util.h"

namespace h2res {
namespace {

namespace fs = std::filesystem;
using testing::TempDir;

struct CliRun {
  int code;
  std::string out, err;
};

CliRun cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli_main(args, out, err);
  return {code, out.str(), err.str()};
}

// Writes the default study and returns the flags that load it.
std::vector<std::string> file_flags(const TempDir& dir) {
  EXPECT_EQ(cli({"write-fixture", "--out", dir / "in"}).code, kExitOk);
  return {"--network", dir / "in/branches.csv", "--fleet", dir / "in/fleet.json", "--scenario",
          dir / "in/scenario.json"};
}

std::vector<std::string> cat(std::vector<std::string> a, const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

TEST(Cli, HelpAndUsageErrors) {
  const CliRun help = cli({"--help"});
  EXPECT_EQ(help.code, kExitOk);
  EXPECT_NE(help.out.find("export-mps"), std::string::npos);
  EXPECT_EQ(cli({}).code, kExitValidation);
  EXPECT_EQ(cli({"frobnicate"}).code, kExitValidation);
  EXPECT_EQ(cli({"solve", "--fixture", "default", "--case", "7", "--out", "x"}).code,
            kExitValidation);
  EXPECT_EQ(cli({"validate"}).code, kExitValidation);
}

TEST(Cli, ValidateFixtureAndFiles) {
  const CliRun fx = cli({"validate", "--fixture", "default"});
  EXPECT_EQ(fx.code, kExitOk) << fx.err;
  TempDir dir("h2res_cli_validate");
  const CliRun files = cli(cat({"validate"}, file_flags(dir)));
  EXPECT_EQ(files.code, kExitOk) << files.err;
  EXPECT_EQ(files.out, "ok\n");
}

TEST(Cli, CyclicNetworkIsValidationError) {
  TempDir dir("h2res_cli_cycle");
  const auto flags = file_flags(dir);
  std::string text = read_text_file(dir / "in/branches.csv");
  text += "7,20,0.5,0.5,4\n";
  write_text_file(dir / "in/branches.csv", text);
  const CliRun r = cli(cat({"validate"}, flags));
  EXPECT_EQ(r.code, kExitValidation);
  EXPECT_NE(r.err.find("cycle"), std::string::npos) << r.err;
  EXPECT_EQ(cli(cat({"solve", "--case", "1", "--hours", "2", "--out", dir / "o"}, flags)).code,
            kExitValidation);
}

TEST(Cli, MissingFileIsIoError) {
  const CliRun r = cli({"validate", "--network", "/nonexistent/branches.csv"});
  EXPECT_EQ(r.code, kExitIo);
  EXPECT_NE(r.err.find("io error"), std::string::npos);
  EXPECT_EQ(cli({"verify", "--out", "/nonexistent/reports"}).code, kExitIo);
}

TEST(Cli, FixtureAndFilesAreExclusive) {
  TempDir dir("h2res_cli_excl");
  const auto flags = file_flags(dir);
  EXPECT_EQ(cli(cat({"solve", "--fixture", "default", "--out", dir / "o"}, flags)).code,
            kExitValidation);
}

TEST(Cli, SolveThenVerify) {
  TempDir dir("h2res_cli_solve");
  const CliRun r = cli({"solve", "--fixture", "default", "--hours", "6", "--case", "6", "--out",
                     dir / "rep"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("case 6 (hydrogen)"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("status=optimal"), std::string::npos) << r.out;
  EXPECT_TRUE(fs::exists(dir.path / "rep" / "dispatch_case6.csv"));
  const CliRun v = cli({"verify", "--out", dir / "rep"});
  EXPECT_EQ(v.code, kExitOk) << v.err;

  auto doc = nlohmann::ordered_json::parse(read_text_file(dir / "rep/summary.json"));
  doc["cases"][0]["total_load"] = doc["cases"][0]["total_load"].get<double>() + 1.0;
  write_text_file(dir / "rep/summary.json", doc.dump(2));
  const CliRun bad = cli({"verify", "--out", dir / "rep"});
  EXPECT_EQ(bad.code, kExitValidation);
  EXPECT_NE(bad.err.find("mismatch: case 6: total_load"), std::string::npos) << bad.err;
}

TEST(Cli, SuiteOnShortHorizon) {
  TempDir dir("h2res_cli_suite");
  const CliRun r = cli({"suite", "--fixture", "default", "--hours", "6", "--out", dir / "rep"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  for (int id = 1; id <= 6; ++id) {
    EXPECT_NE(r.out.find("case " + std::to_string(id) + " ("), std::string::npos) << id;
    EXPECT_TRUE(fs::exists(dir.path / "rep" / ("dispatch_case" + std::to_string(id) + ".csv")));
  }
  EXPECT_NE(r.out.find("note: hydrogen minus battery 8h RI"), std::string::npos);
  EXPECT_EQ(cli({"verify", "--out", dir / "rep"}).code, kExitOk);
}

TEST(Cli, InfeasibleExitCodeListsTags) {
  TempDir dir("h2res_cli_infeasible");
  const auto flags = file_flags(dir);
  auto sc = nlohmann::ordered_json::parse(read_text_file(dir / "in/scenario.json"));
  sc["alpha"]["preparation"]["deadline_hour"] = 1;
  write_text_file(dir / "in/scenario.json", sc.dump(2));
  const CliRun r = cli(cat({"solve", "--case", "6", "--hours", "4", "--out", dir / "rep"}, flags));
  EXPECT_EQ(r.code, kExitInfeasible) << r.err;
  EXPECT_NE(r.err.find("infeasible"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("binding: Eq"), std::string::npos) << r.err;
  EXPECT_FALSE(fs::exists(dir.path / "rep" / "summary.json"));
}

TEST(Cli, ExportIsDeterministic) {
  TempDir dir("h2res_cli_mps");
  const std::vector<std::string> base = {"export-mps", "--fixture", "default", "--case", "6",
                                         "--hours", "3"};
  const CliRun a = cli(cat(base, {"--out", dir / "a.mps"}));
  const CliRun b = cli(cat(base, {"--out", dir / "sub/b.mps"}));
  ASSERT_EQ(a.code, kExitOk) << a.err;
  ASSERT_EQ(b.code, kExitOk) << b.err;
  EXPECT_EQ(read_text_file(dir / "a.mps"), read_text_file(dir / "sub/b.mps"));
  EXPECT_NE(a.out.find("columns"), std::string::npos);
}

TEST(Cli, QuietLogging) {
  TempDir dir("h2res_cli_quiet");
  setenv("H2RES_LOG", "quiet", 1);
  const CliRun r = cli({"suite", "--fixture", "default", "--hours", "2", "--out", dir / "rep"});
  unsetenv("H2RES_LOG");
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_TRUE(r.err.empty()) << r.err;
}

TEST(MpsNumber, FitsTwelveCharacters) {
  EXPECT_EQ(mps_number(0.0), "0");
  EXPECT_EQ(mps_number(2.0), "2");
  EXPECT_EQ(mps_number(-500.0), "-500");
  EXPECT_EQ(mps_number(0.1), ".1");
  EXPECT_EQ(mps_number(-0.70710678118654757), "-.7071067812");
  EXPECT_EQ(mps_number(2.5e-7), "2.5e-7");
  EXPECT_EQ(mps_number(-3.14159e20), "-3.14159e20");
  for (double v : {1.0 / 3.0, -2.0 / 7.0, 589.96460176991, 1e-13, -1.0 / 3e-5, 0.938}) {
    const std::string s = mps_number(v);
    EXPECT_LE(s.size(), 12u) << s;
    EXPECT_NEAR(std::stod(s), v, 1e-9 * std::abs(v)) << s;
  }
}

// Minimal reader for the sections this writer produces.
struct ParsedMps {
  std::vector<std::string> sections;
  std::map<std::string, char> row_type;
  std::map<std::string, std::map<std::string, double>> coef;  // column -> row -> value
  std::map<std::string, double> rhs;
  std::map<std::string, std::pair<double, double>> bounds;
  std::set<std::string> integer;
  int markers_open = 0, markers_close = 0;
};

ParsedMps parse_mps(const std::string& text) {
  ParsedMps p;
  std::istringstream in(text);
  std::string line, section;
  bool in_int = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '*') continue;
    std::istringstream f(line);
    std::vector<std::string> w;
    for (std::string s; f >> s;) w.push_back(s);
    if (line[0] != ' ') {
      section = w[0];
      p.sections.push_back(section);
      continue;
    }
    if (section == "ROWS") {
      p.row_type[w[1]] = w[0][0];
    } else if (section == "COLUMNS") {
      if (w.size() == 3 && w[1] == "'MARKER'") {
        in_int = w[2] == "'INTORG'";
        (in_int ? p.markers_open : p.markers_close)++;
        continue;
      }
      if (!p.bounds.count(w[0])) p.bounds[w[0]] = {0.0, kInf};
      p.coef[w[0]][w[1]] = std::stod(w[2]);
      if (in_int) p.integer.insert(w[0]);
    } else if (section == "RHS") {
      p.rhs[w[1]] = std::stod(w[2]);
    } else if (section == "BOUNDS") {
      auto& b = p.bounds[w[2]];
      if (w[0] == "FX") b = {std::stod(w[3]), std::stod(w[3])};
      if (w[0] == "FR") b = {-kInf, kInf};
      if (w[0] == "MI") b.first = -kInf;
      if (w[0] == "LO") b.first = std::stod(w[3]);
      if (w[0] == "UP") b.second = std::stod(w[3]);
    }
  }
  return p;
}

TEST(Mps, RoundTripsTheModel) {
  const Fixture fx = make_default_fixture();
  const MilpModel model = build_model(fx.network, fx.fleet, truncate_scenario(fx.scenario, 2));
  const std::string text = export_interchange(model, "CHECK");
  EXPECT_EQ(text.rfind("NAME          CHECK\n", 0), 0u);
  const ParsedMps p = parse_mps(text);
  const std::vector<std::string> order = {"NAME", "ROWS", "COLUMNS", "RHS", "BOUNDS", "ENDATA"};
  EXPECT_EQ(p.sections, order);
  EXPECT_EQ(p.markers_open, p.markers_close);
  EXPECT_GE(p.markers_open, 1);
  ASSERT_EQ(static_cast<int>(p.coef.size()), model.num_variables());
  ASSERT_EQ(static_cast<int>(p.row_type.size()), model.num_constraints() + 1);
  EXPECT_EQ(static_cast<int>(p.integer.size()), model.num_binaries());

  // Row names follow the sorted tag order listed in the comment header.
  std::map<std::string, int> row_of;
  {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line) && line != "* columns") {
      if (line.rfind("* R", 0) != 0) continue;
      const std::string name = line.substr(2, 8);
      row_of[name] = model.find_constraint(line.substr(11));
    }
  }
  ASSERT_EQ(static_cast<int>(row_of.size()), model.num_constraints());
  // A 12-character field holds about ten significant digits.
  auto close = [](double a, double b) {
    return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b));
  };
  for (int j = 0; j < model.num_variables(); ++j) {
    char name[16];
    std::snprintf(name, sizeof name, "C%07d", j + 1);
    const auto& col = p.coef.at(name);
    const double cost = model.objective()[j];
    EXPECT_TRUE(close(col.count("COST") ? col.at("COST") : 0.0, cost)) << name;
    const VariableHandle& v = model.variable(j);
    EXPECT_EQ(p.integer.count(name) == 1, v.kind == VarKind::kBinary) << name;
    EXPECT_TRUE(close(p.bounds.at(name).first, v.lower)) << name;
    EXPECT_TRUE(close(p.bounds.at(name).second, v.upper)) << name;
  }
  for (const auto& [rname, k] : row_of) {
    ASSERT_GE(k, 0) << rname;
    const LinearConstraint& c = model.constraint(k);
    const char type = c.sense == Sense::kLe ? 'L' : c.sense == Sense::kGe ? 'G' : 'E';
    EXPECT_EQ(p.row_type.at(rname), type);
    EXPECT_TRUE(close(p.rhs.count(rname) ? p.rhs.at(rname) : 0.0, c.rhs)) << rname;
    for (const Term& t : c.coefficients) {
      char cname[16];
      std::snprintf(cname, sizeof cname, "C%07d", t.var + 1);
      EXPECT_TRUE(close(p.coef.at(cname).at(rname), t.coef)) << rname << " " << cname;
    }
  }
}

TEST(Mps, FixedColumnsLineUp) {
  const Fixture fx = make_default_fixture();
  const std::string text =
      export_interchange(build_model(fx.network, fx.fleet, truncate_scenario(fx.scenario, 1)));
  std::istringstream in(text);
  std::string line, section;
  int checked = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '*') continue;
    if (line[0] != ' ') {
      section = line.substr(0, line.find(' '));
      continue;
    }
    if (section != "COLUMNS" || line.find("MARKER") != std::string::npos) continue;
    ASSERT_GE(line.size(), 25u) << line;
    EXPECT_EQ(line[4], 'C') << line;
    EXPECT_NE(line[14], ' ') << line;
    EXPECT_EQ(line.substr(12, 2), "  ") << line;
    ++checked;
  }
  EXPECT_GT(checked, 100);
}

}  // namespace
}  // namespace h2res
