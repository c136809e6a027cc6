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

#ifndef DPADMM_TOPOLOGY_HPP_
#define DPADMM_TOPOLOGY_HPP_

#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

namespace dpadmm {

// Undirected connected collaboration graph. Immutable after construction,
// safe to share across concurrent node workers.
class Topology {
 public:
  // Validates and builds. Edges are stored normalized with first < second.
  // Throws SelfLoop, UnknownNode (edge endpoint outside node set) or
  // DisconnectedGraph.
  static Topology build(const std::set<int>& node_ids,
                        const std::set<std::pair<int, int>>& edges);

  // Connected random graph on nodes 0..num_nodes-1: a random spanning tree
  // plus extra edges until the edge count reaches
  // round(avg_degree * num_nodes / 2). Deterministic for a fixed seed.
  // Throws InfeasibleDegree when that count is below num_nodes-1 or above
  // the complete graph.
  static Topology random_connected(int num_nodes, double avg_degree,
                                   uint64_t seed);

  static Topology path(int num_nodes);
  static Topology ring(int num_nodes);
  static Topology star(int num_nodes);  // center 0
  static Topology complete(int num_nodes);

  const std::set<int>& node_ids() const { return nodes_; }
  const std::set<std::pair<int, int>>& edges() const { return edges_; }
  int num_nodes() const { return static_cast<int>(nodes_.size()); }
  bool has_node(int v) const { return nodes_.count(v) > 0; }

  // Neighbor set of v. Throws UnknownNode.
  const std::set<int>& neighbors(int v) const;
  int degree(int v) const { return static_cast<int>(neighbors(v).size()); }

 private:
  Topology() = default;

  std::set<int> nodes_;
  std::set<std::pair<int, int>> edges_;
  std::map<int, std::set<int>> adj_;
};

struct TopologyPhase {
  Topology topology;
  int duration = 0;  // iterations spent in this phase, >= 1
};

// Piecewise-constant topology over the iterations of one learning run.
// Phase boundaries are half-open: iteration start+duration belongs to the
// next phase.
class TopologySchedule {
 public:
  explicit TopologySchedule(std::vector<TopologyPhase> phases);
  static TopologySchedule single(Topology t, int duration);

  // Topology governing the given iteration. Throws IterOutOfRange.
  const Topology& topology_at(int iter) const;

  int total_duration() const { return total_; }
  const std::vector<TopologyPhase>& phases() const { return phases_; }
  std::set<int> all_node_ids() const;

 private:
  std::vector<TopologyPhase> phases_;
  std::vector<int> starts_;
  int total_ = 0;
};

}  // namespace dpadmm

#endif  // DPADMM_TOPOLOGY_HPP_
