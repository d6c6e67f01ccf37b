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
#include <filesystem>
#include <fstream>
#include <random>
#include <set>

#include "h2res/error.h"
#include "h2res/fixture.h"
#include "h2res/network.h"

namespace h2res {
namespace {

Network chain(int n) {
  Network net;
  for (int i = 0; i < n; ++i) net.nodes.push_back({i, i == 0});
  for (int i = 1; i < n; ++i) net.lines.push_back({i - 1, i, 0.01, 0.01, 1.0});
  net.substation_s_max = 5.0;
  return net;
}

TEST(ValidateRadial, FeederIsATree) {
  const Fixture f = make_default_fixture();
  EXPECT_EQ(f.network.num_nodes(), 33);
  EXPECT_EQ(f.network.num_lines(), 32);
  EXPECT_TRUE(validate_radial(f.network).empty());
}

TEST(ValidateRadial, DisconnectedNode) {
  Network net;
  net.nodes = {{0, true}, {1, false}};
  const auto v = validate_radial(net);
  ASSERT_FALSE(v.empty());
  EXPECT_NE(std::find(v.begin(), v.end(), "node 1 unreachable"), v.end());
}

TEST(ValidateRadial, Cycle) {
  Network net;
  net.nodes = {{0, true}, {1, false}, {2, false}};
  net.lines = {{0, 1, 0.1, 0.1, 1}, {1, 2, 0.1, 0.1, 1}, {2, 0, 0.1, 0.1, 1}};
  const auto v = validate_radial(net);
  EXPECT_NE(std::find(v.begin(), v.end(), "cycle detected"), v.end());
}

TEST(ValidateRadial, ReversedLine) {
  Network net = chain(3);
  std::swap(net.lines[1].from_node, net.lines[1].to_node);
  EXPECT_FALSE(validate_radial(net).empty());
}

TEST(ValidateRadial, RejectsBadRatings) {
  Network net = chain(3);
  net.lines[0].s_max = 0.0;
  EXPECT_FALSE(validate_radial(net).empty());
  net = chain(3);
  net.lines[1].r_pu = -1e-3;
  EXPECT_FALSE(validate_radial(net).empty());
  net = chain(3);
  net.nodes[2].v_min_sq = net.nodes[2].v_max_sq;
  EXPECT_FALSE(validate_radial(net).empty());
}

TEST(PerUnit, Conversions) {
  EXPECT_DOUBLE_EQ(to_per_unit(2.4, 1.0), 2.4);
  EXPECT_DOUBLE_EQ(to_per_unit(0.0, 10.0), 0.0);
  EXPECT_NEAR(to_per_unit(3.0, 10.0), 0.3, 1e-15);
  EXPECT_THROW(to_per_unit(1.0, 0.0), InvalidArgument);
  EXPECT_THROW(to_per_unit(1.0, -2.0), InvalidArgument);
}

TEST(PerUnit, RoundTrip) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> value(-1e4, 1e4), base(1e-3, 1e3);
  for (int k = 0; k < 1000; ++k) {
    const double v = value(rng), b = base(rng);
    const double back = to_physical(to_per_unit(v, b), b);
    EXPECT_LE(std::abs(back - v), 1e-12 * std::max(1.0, std::abs(v)));
  }
}

TEST(PerUnit, OhmsUseImpedanceBase) {
  // Z_base = 12.66^2 / 1 = 160.2756 ohm
  EXPECT_NEAR(ohm_to_per_unit(160.2756, 12.66, 1.0), 1.0, 1e-12);
  EXPECT_NEAR(ohm_to_per_unit(0.0922, 12.66, 1.0), 0.0922 / 160.2756, 1e-15);
}

TEST(DownstreamSets, Chain) {
  const Network net = chain(3);
  const auto c = downstream_sets(net);
  ASSERT_EQ(c.size(), 3u);
  ASSERT_EQ(c[1].size(), 1u);
  EXPECT_EQ(net.lines[c[1][0]].to_node, 2);
  EXPECT_TRUE(c[2].empty());
}

TEST(DownstreamSets, Star) {
  Network net;
  for (int i = 0; i < 4; ++i) net.nodes.push_back({i, i == 0});
  for (int i = 1; i < 4; ++i) net.lines.push_back({0, i, 0.01, 0.01, 1.0});
  EXPECT_EQ(downstream_sets(net)[0].size(), 3u);
}

TEST(DownstreamSets, FeederLateralsAtSecondNode) {
  // Published node 2 is id 1; its laterals lead to published 3 and 19.
  const Fixture f = make_default_fixture();
  const auto c = downstream_sets(f.network);
  std::set<int> to;
  for (int k : c[1]) to.insert(f.network.lines[k].to_node);
  EXPECT_EQ(to, (std::set<int>{2, 18}));
}

TEST(DownstreamSets, PartitionsLines) {
  const Fixture f = make_default_fixture();
  const auto c = downstream_sets(f.network);
  std::vector<int> seen(f.network.num_lines(), 0);
  for (const auto& s : c)
    for (int k : s) ++seen[k];
  for (int k = 0; k < f.network.num_lines(); ++k) EXPECT_EQ(seen[k], 1) << k;
  std::vector<int> as_child(f.network.num_nodes(), 0);
  for (const Line& l : f.network.lines) ++as_child[l.to_node];
  EXPECT_EQ(as_child[0], 0);
  for (int i = 1; i < f.network.num_nodes(); ++i) EXPECT_EQ(as_child[i], 1);
}

TEST(DownstreamSets, RejectsNonRadial) {
  Network net;
  net.nodes = {{0, true}, {1, false}, {2, false}};
  net.lines = {{0, 1, 0.1, 0.1, 1}, {1, 2, 0.1, 0.1, 1}, {2, 0, 0.1, 0.1, 1}};
  EXPECT_THROW(downstream_sets(net), TopologyError);
}

TEST(ParentLines, MatchesLineInto) {
  const Fixture f = make_default_fixture();
  const auto p = parent_lines(f.network);
  EXPECT_EQ(p[0], -1);
  for (int i = 1; i < f.network.num_nodes(); ++i) {
    EXPECT_EQ(p[i], line_into(f.network, i));
    EXPECT_EQ(f.network.lines[p[i]].to_node, i);
  }
}

class NetworkCsv : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("h2res_net_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  void write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name)) << text;
  }
  std::filesystem::path dir_;
};

TEST_F(NetworkCsv, RoundTrip) {
  const Fixture f = make_default_fixture();
  write_network_csv(f.network, path("b.csv"), path("n.csv"));
  const Network back = read_network_csv(path("b.csv"), path("n.csv"), 1.0, 12.66,
                                        f.network.substation_s_max);
  ASSERT_EQ(back.num_lines(), f.network.num_lines());
  ASSERT_EQ(back.num_nodes(), f.network.num_nodes());
  for (int k = 0; k < back.num_lines(); ++k) {
    EXPECT_EQ(back.lines[k].from_node, f.network.lines[k].from_node);
    EXPECT_EQ(back.lines[k].to_node, f.network.lines[k].to_node);
    EXPECT_NEAR(back.lines[k].r_pu, f.network.lines[k].r_pu, 1e-12);
    EXPECT_NEAR(back.lines[k].x_pu, f.network.lines[k].x_pu, 1e-12);
    EXPECT_NEAR(back.lines[k].s_max, f.network.lines[k].s_max, 1e-12);
  }
  for (int i = 0; i < back.num_nodes(); ++i) {
    EXPECT_NEAR(back.nodes[i].v_min_sq, f.network.nodes[i].v_min_sq, 1e-12);
    EXPECT_NEAR(back.nodes[i].v_max_sq, f.network.nodes[i].v_max_sq, 1e-12);
  }
}

TEST_F(NetworkCsv, MissingNodeFileUsesDefaultBand) {
  write("b.csv", "from,to,r_ohm,x_ohm,s_max_mva\n0,1,1.0,2.0,3\n1,2,1.0,2.0,3\n");
  const Network net = read_network_csv(path("b.csv"), "", 1.0, 12.66, 4.0);
  ASSERT_EQ(net.num_nodes(), 3);
  EXPECT_TRUE(net.nodes[0].is_root);
  EXPECT_NEAR(net.nodes[2].v_min_sq, 0.9025, 1e-12);
  EXPECT_NEAR(net.nodes[2].v_max_sq, 1.1025, 1e-12);
  EXPECT_NEAR(net.lines[0].x_pu, 2.0 / 160.2756, 1e-12);
  EXPECT_NEAR(net.substation_s_max, 4.0, 1e-12);
}

TEST_F(NetworkCsv, BadHeaderAndMissingFile) {
  write("b.csv", "a,b,c\n0,1,2\n");
  EXPECT_THROW(read_network_csv(path("b.csv"), "", 1.0, 12.66, 4.0), IoError);
  EXPECT_THROW(read_network_csv(path("nope.csv"), "", 1.0, 12.66, 4.0), IoError);
}

TEST_F(NetworkCsv, CyclicFileStillLoadsForValidation) {
  write("b.csv", "from,to,r_ohm,x_ohm,s_max_mva\n0,1,1,1,1\n1,2,1,1,1\n2,0,1,1,1\n");
  const Network net = read_network_csv(path("b.csv"), "", 1.0, 12.66, 4.0);
  const auto v = validate_radial(net);
  EXPECT_NE(std::find(v.begin(), v.end(), "cycle detected"), v.end());
}

}  // namespace
}  // namespace h2res
