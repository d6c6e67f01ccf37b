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

#include "h2res/network.h"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <sstream>

#include "h2res/error.h"
#include "h2res/io.h"

namespace h2res {
namespace {

int find_root(std::vector<int>& parent, int v) {
  while (parent[v] != v) {
    parent[v] = parent[parent[v]];
    v = parent[v];
  }
  return v;
}

}  // namespace

std::vector<std::string> validate_radial(const Network& network) {
  std::vector<std::string> out;
  const int n = network.num_nodes();
  if (n == 0) {
    out.emplace_back("network has no nodes");
    return out;
  }
  int roots = 0;
  for (int i = 0; i < n; ++i) {
    const Node& node = network.nodes[i];
    if (node.id != i) {
      out.push_back(fmt::format("node at position {} has id {}; ids must be "
                                "contiguous from 0",
                                i, node.id));
    }
    if (node.is_root) {
      ++roots;
      if (i != 0) out.push_back(fmt::format("root must be node 0, found {}", i));
    }
    if (!(node.v_min_sq < node.v_max_sq)) {
      out.push_back(fmt::format("node {}: v_min_sq must be below v_max_sq", i));
    }
  }
  if (roots != 1) out.push_back(fmt::format("expected one root, found {}", roots));

  bool endpoints_ok = true;
  for (int k = 0; k < network.num_lines(); ++k) {
    const Line& line = network.lines[k];
    if (line.from_node < 0 || line.from_node >= n || line.to_node < 0 ||
        line.to_node >= n) {
      out.push_back(fmt::format("line {} ({}->{}) references an unknown node", k,
                                line.from_node, line.to_node));
      endpoints_ok = false;
      continue;
    }
    if (line.from_node == line.to_node) {
      out.push_back(fmt::format("line {} is a self loop at node {}", k,
                                line.from_node));
    }
    if (line.r_pu < 0.0 || line.x_pu < 0.0) {
      out.push_back(fmt::format("line {} has negative impedance", k));
    }
    if (!(line.s_max > 0.0)) {
      out.push_back(fmt::format("line {} rating must be positive", k));
    }
  }
  if (!endpoints_ok) return out;

  // Cycles via union-find on the undirected graph.
  std::vector<int> uf(n);
  std::iota(uf.begin(), uf.end(), 0);
  bool cycle = false;
  for (const Line& line : network.lines) {
    const int a = find_root(uf, line.from_node);
    const int b = find_root(uf, line.to_node);
    if (a == b) {
      cycle = true;
    } else {
      uf[a] = b;
    }
  }
  if (cycle) out.emplace_back("cycle detected");

  std::vector<std::vector<int>> adj(n);
  for (int k = 0; k < network.num_lines(); ++k) {
    adj[network.lines[k].from_node].push_back(k);
    adj[network.lines[k].to_node].push_back(k);
  }
  std::vector<int> depth(n, -1);
  std::queue<int> frontier;
  depth[0] = 0;
  frontier.push(0);
  while (!frontier.empty()) {
    const int v = frontier.front();
    frontier.pop();
    for (int k : adj[v]) {
      const Line& line = network.lines[k];
      const int w = line.from_node == v ? line.to_node : line.from_node;
      if (depth[w] < 0) {
        depth[w] = depth[v] + 1;
        frontier.push(w);
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    if (depth[i] < 0) out.push_back(fmt::format("node {} unreachable", i));
  }
  if (cycle) return out;

  for (int k = 0; k < network.num_lines(); ++k) {
    const Line& line = network.lines[k];
    if (depth[line.from_node] >= 0 && depth[line.to_node] >= 0 &&
        depth[line.from_node] > depth[line.to_node]) {
      out.push_back(fmt::format("line {} ({}->{}) is oriented toward the root",
                                k, line.from_node, line.to_node));
    }
  }
  return out;
}

double to_per_unit(double value, double s_base_mva) {
  if (!(s_base_mva > 0.0)) throw InvalidArgument("per-unit base must be positive");
  return value / s_base_mva;
}

double to_physical(double value_pu, double s_base_mva) {
  if (!(s_base_mva > 0.0)) throw InvalidArgument("per-unit base must be positive");
  return value_pu * s_base_mva;
}

double ohm_to_per_unit(double ohm, double v_base_kv, double s_base_mva) {
  if (!(v_base_kv > 0.0)) throw InvalidArgument("voltage base must be positive");
  const double z_base = v_base_kv * v_base_kv / s_base_mva;
  return ohm / z_base;
}

std::vector<std::vector<int>> downstream_sets(const Network& network) {
  const auto violations = validate_radial(network);
  if (!violations.empty()) {
    std::ostringstream msg;
    msg << "network is not radial:";
    for (const auto& v : violations) msg << " " << v << ";";
    throw TopologyError(msg.str());
  }
  std::vector<std::vector<int>> children(network.nodes.size());
  for (int k = 0; k < network.num_lines(); ++k) {
    children[network.lines[k].from_node].push_back(k);
  }
  return children;
}

std::vector<int> parent_lines(const Network& network) {
  std::vector<int> parent(network.nodes.size(), -1);
  for (int k = 0; k < network.num_lines(); ++k) {
    const int to = network.lines[k].to_node;
    if (to >= 0 && to < network.num_nodes()) parent[to] = k;
  }
  return parent;
}

int line_into(const Network& network, int node) {
  for (int k = 0; k < network.num_lines(); ++k) {
    if (network.lines[k].to_node == node) return k;
  }
  return -1;
}

Network read_network_csv(const std::string& branch_csv,
                         const std::string& node_csv, double s_base_mva,
                         double v_base_kv, double substation_s_max_mva) {
  Network net;
  net.s_base_mva = s_base_mva;
  net.v_base_kv = v_base_kv;
  net.substation_s_max = to_per_unit(substation_s_max_mva, s_base_mva);

  if (!node_csv.empty()) {
    const CsvTable nodes = read_csv(node_csv);
    const int c_node = nodes.column("node");
    const int c_vmin = nodes.column("vmin_pu");
    const int c_vmax = nodes.column("vmax_pu");
    if (c_node < 0 || c_vmin < 0 || c_vmax < 0) {
      throw IoError(node_csv + ": expected header node,vmin_pu,vmax_pu");
    }
    for (const auto& row : nodes.rows) {
      Node node;
      node.id = parse_int(row[c_node], node_csv);
      node.is_root = node.id == 0;
      const double vmin = parse_double(row[c_vmin], node_csv);
      const double vmax = parse_double(row[c_vmax], node_csv);
      node.v_min_sq = vmin * vmin;
      node.v_max_sq = vmax * vmax;
      net.nodes.push_back(node);
    }
  }

  const CsvTable branches = read_csv(branch_csv);
  const int c_from = branches.column("from");
  const int c_to = branches.column("to");
  const int c_r = branches.column("r_ohm");
  const int c_x = branches.column("x_ohm");
  const int c_s = branches.column("s_max_mva");
  if (c_from < 0 || c_to < 0 || c_r < 0 || c_x < 0 || c_s < 0) {
    throw IoError(branch_csv + ": expected header from,to,r_ohm,x_ohm,s_max_mva");
  }
  for (const auto& row : branches.rows) {
    Line line;
    line.from_node = parse_int(row[c_from], branch_csv);
    line.to_node = parse_int(row[c_to], branch_csv);
    line.r_pu = ohm_to_per_unit(parse_double(row[c_r], branch_csv), v_base_kv,
                                s_base_mva);
    line.x_pu = ohm_to_per_unit(parse_double(row[c_x], branch_csv), v_base_kv,
                                s_base_mva);
    line.s_max = to_per_unit(parse_double(row[c_s], branch_csv), s_base_mva);
    net.lines.push_back(line);
  }
  if (node_csv.empty()) {
    // Without a node file every endpoint gets the default voltage band.
    int max_id = 0;
    for (const Line& line : net.lines) max_id = std::max({max_id, line.from_node, line.to_node});
    for (int i = 0; i <= max_id; ++i) {
      Node node;
      node.id = i;
      node.is_root = i == 0;
      net.nodes.push_back(node);
    }
  }
  return net;
}

void write_network_csv(const Network& network, const std::string& branch_csv,
                       const std::string& node_csv) {
  const double z_base =
      network.v_base_kv * network.v_base_kv / network.s_base_mva;
  std::string b = "from,to,r_ohm,x_ohm,s_max_mva\n";
  for (const Line& line : network.lines) {
    // Twelve digits undo the per-unit round trip of decimal ohm data.
    b += fmt::format("{},{},{:.12g},{:.12g},{}\n", line.from_node, line.to_node,
                     line.r_pu * z_base, line.x_pu * z_base,
                     format_double(line.s_max * network.s_base_mva));
  }
  write_text_file(branch_csv, b);
  std::string n = "node,vmin_pu,vmax_pu\n";
  for (const Node& node : network.nodes) {
    n += fmt::format("{},{},{}\n", node.id, format_double(std::sqrt(node.v_min_sq)),
                     format_double(std::sqrt(node.v_max_sq)));
  }
  write_text_file(node_csv, n);
}

}  // namespace h2res
