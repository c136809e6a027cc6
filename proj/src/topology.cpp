// Copyright 2026 The dpadmm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "topology.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <string>

#include "error.hpp"
#include "rng.hpp"

namespace dpadmm {

Topology Topology::build(const std::set<int>& node_ids,
                         const std::set<std::pair<int, int>>& edges) {
  if (node_ids.empty()) fail(ErrorCode::kUnknownNode, "empty node set");

  Topology t;
  t.nodes_ = node_ids;
  for (int v : node_ids) t.adj_[v];  // ensure isolated nodes have an entry
  for (const auto& [a, b] : edges) {
    if (a == b) {
      fail(ErrorCode::kSelfLoop, "self loop on node " + std::to_string(a));
    }
    if (!node_ids.count(a) || !node_ids.count(b)) {
      fail(ErrorCode::kUnknownNode, "edge endpoint outside node set: (" +
                                        std::to_string(a) + "," +
                                        std::to_string(b) + ")");
    }
    t.edges_.insert({std::min(a, b), std::max(a, b)});
    t.adj_[a].insert(b);
    t.adj_[b].insert(a);
  }

  // Breadth-first traversal from any node must reach all nodes.
  std::set<int> seen;
  std::deque<int> queue{*node_ids.begin()};
  seen.insert(*node_ids.begin());
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int w : t.adj_.at(v)) {
      if (seen.insert(w).second) queue.push_back(w);
    }
  }
  if (seen.size() != node_ids.size()) {
    fail(ErrorCode::kDisconnectedGraph,
         "graph is disconnected: reached " + std::to_string(seen.size()) +
             " of " + std::to_string(node_ids.size()) + " nodes");
  }
  return t;
}

Topology Topology::random_connected(int num_nodes, double avg_degree,
                                    uint64_t seed) {
  if (num_nodes < 1) {
    fail(ErrorCode::kInfeasibleDegree, "need at least one node");
  }
  std::set<int> nodes;
  for (int i = 0; i < num_nodes; ++i) nodes.insert(i);
  if (num_nodes == 1) return build(nodes, {});

  const long long max_edges =
      static_cast<long long>(num_nodes) * (num_nodes - 1) / 2;
  const long long target = std::llround(avg_degree * num_nodes / 2.0);
  if (target < num_nodes - 1 || target > max_edges) {
    fail(ErrorCode::kInfeasibleDegree,
         "average degree " + std::to_string(avg_degree) +
             " infeasible for " + std::to_string(num_nodes) + " nodes");
  }

  Rng rng(derive_seed(seed, StreamKind::kTopology));
  std::vector<int> perm(num_nodes);
  std::iota(perm.begin(), perm.end(), 0);
  rng.shuffle(perm);

  // Random spanning tree: each node attaches to a random earlier one.
  std::set<std::pair<int, int>> edges;
  for (int i = 1; i < num_nodes; ++i) {
    int j = rng.uniform_int(0, i - 1);
    edges.insert({std::min(perm[i], perm[j]), std::max(perm[i], perm[j])});
  }
  while (static_cast<long long>(edges.size()) < target) {
    int a = rng.uniform_int(0, num_nodes - 1);
    int b = rng.uniform_int(0, num_nodes - 1);
    if (a == b) continue;
    edges.insert({std::min(a, b), std::max(a, b)});
  }
  return build(nodes, edges);
}

Topology Topology::path(int num_nodes) {
  std::set<int> nodes;
  std::set<std::pair<int, int>> edges;
  for (int i = 0; i < num_nodes; ++i) nodes.insert(i);
  for (int i = 0; i + 1 < num_nodes; ++i) edges.insert({i, i + 1});
  return build(nodes, edges);
}

Topology Topology::ring(int num_nodes) {
  if (num_nodes <= 2) return path(num_nodes);
  std::set<int> nodes;
  std::set<std::pair<int, int>> edges;
  for (int i = 0; i < num_nodes; ++i) nodes.insert(i);
  for (int i = 0; i + 1 < num_nodes; ++i) edges.insert({i, i + 1});
  edges.insert({0, num_nodes - 1});
  return build(nodes, edges);
}

Topology Topology::star(int num_nodes) {
  std::set<int> nodes;
  std::set<std::pair<int, int>> edges;
  for (int i = 0; i < num_nodes; ++i) nodes.insert(i);
  for (int i = 1; i < num_nodes; ++i) edges.insert({0, i});
  return build(nodes, edges);
}

Topology Topology::complete(int num_nodes) {
  std::set<int> nodes;
  std::set<std::pair<int, int>> edges;
  for (int i = 0; i < num_nodes; ++i) nodes.insert(i);
  for (int i = 0; i < num_nodes; ++i)
    for (int j = i + 1; j < num_nodes; ++j) edges.insert({i, j});
  return build(nodes, edges);
}

const std::set<int>& Topology::neighbors(int v) const {
  auto it = adj_.find(v);
  if (it == adj_.end()) {
    fail(ErrorCode::kUnknownNode, "unknown node " + std::to_string(v));
  }
  return it->second;
}

TopologySchedule::TopologySchedule(std::vector<TopologyPhase> phases)
    : phases_(std::move(phases)) {
  if (phases_.empty()) {
    fail(ErrorCode::kIterOutOfRange, "schedule needs at least one phase");
  }
  for (const auto& p : phases_) {
    if (p.duration < 1) {
      fail(ErrorCode::kIterOutOfRange, "phase duration must be >= 1");
    }
    starts_.push_back(total_);
    total_ += p.duration;
  }
}

TopologySchedule TopologySchedule::single(Topology t, int duration) {
  return TopologySchedule({TopologyPhase{std::move(t), duration}});
}

const Topology& TopologySchedule::topology_at(int iter) const {
  if (iter < 0 || iter >= total_) {
    fail(ErrorCode::kIterOutOfRange,
         "iteration " + std::to_string(iter) + " outside [0, " +
             std::to_string(total_) + ")");
  }
  // Last phase whose start is <= iter.
  auto it = std::upper_bound(starts_.begin(), starts_.end(), iter);
  return phases_[static_cast<size_t>(it - starts_.begin()) - 1].topology;
}

std::set<int> TopologySchedule::all_node_ids() const {
  std::set<int> ids;
  for (const auto& p : phases_) {
    ids.insert(p.topology.node_ids().begin(), p.topology.node_ids().end());
  }
  return ids;
}

}  // namespace dpadmm
