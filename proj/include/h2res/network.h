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

#ifndef H2RES_NETWORK_H_
#define H2RES_NETWORK_H_

#include <string>
#include <vector>

namespace h2res {

struct Node {
  int id = 0;
  bool is_root = false;
  // Squared per-unit voltage bounds.
  double v_min_sq = 0.95 * 0.95;
  double v_max_sq = 1.05 * 1.05;
};

// A feeder segment oriented parent -> child (from_node is nearer the root).
struct Line {
  int from_node = 0;
  int to_node = 0;
  double r_pu = 0.0;
  double x_pu = 0.0;
  double s_max = 0.0;  // per-unit MVA
};

struct Network {
  std::vector<Node> nodes;
  std::vector<Line> lines;
  double s_base_mva = 1.0;
  double v_base_kv = 12.66;
  double substation_s_max = 0.0;  // per-unit MVA, no default

  int num_nodes() const { return static_cast<int>(nodes.size()); }
  int num_lines() const { return static_cast<int>(lines.size()); }
};

// Lists topology problems; an empty result means the graph is a tree rooted
// at node 0 with every line oriented away from the root.
std::vector<std::string> validate_radial(const Network& network);

double to_per_unit(double value, double s_base_mva);
double to_physical(double value_pu, double s_base_mva);
double ohm_to_per_unit(double ohm, double v_base_kv, double s_base_mva);

// children[i] holds the indices of the lines leaving node i. Throws
// TopologyError if the network is not radial.
std::vector<std::vector<int>> downstream_sets(const Network& network);

// parent[i] is the index of the line feeding node i, -1 for the root.
std::vector<int> parent_lines(const Network& network);

// Index of the line whose to_node is `node`, or -1.
int line_into(const Network& network, int node);

// Branch CSV: from,to,r_ohm,x_ohm,s_max_mva. Node CSV: node,vmin_pu,vmax_pu.
// Node 0 is the substation. Throws IoError / InvalidArgument.
// An empty node_csv gives every line endpoint the default voltage band.
Network read_network_csv(const std::string& branch_csv,
                         const std::string& node_csv, double s_base_mva,
                         double v_base_kv, double substation_s_max_mva);
void write_network_csv(const Network& network, const std::string& branch_csv,
                       const std::string& node_csv);

}  // namespace h2res

#endif  // H2RES_NETWORK_H_
