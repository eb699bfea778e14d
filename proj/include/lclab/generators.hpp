#pragma once

#include <cstdint>
#include <vector>

#include "lclab/graph.hpp"

namespace lclab {

// Simple d-regular graph via configuration-model stub pairing with rejection
// of self-loops/parallel edges; restarts from scratch on a dead end, capped
// at 10000 attempts.  Deterministic for a fixed (n, d, seed).
// Requires n*d even and n >= d+1.
Graph gen_random_regular(NodeId n, int d, std::uint64_t seed);

struct RegularTree {
  Graph graph;
  std::vector<int> level;  // depth of each node; root is node 0
  NodeId root = 0;
};

// Rooted tree: the root has d children, internal non-root nodes d-1 children,
// so every internal node has degree d.  Node ids are BFS order; each child's
// port 0 leads to its parent.
RegularTree gen_regular_tree(int d, int depth);

struct TwoColoredTree {
  Graph graph;
  std::vector<int> level;
  std::vector<int> side;  // 0 = even levels (V), 1 = odd levels (U)
  NodeId root = 0;
};

// gen_regular_tree with degree capital_d plus the level-parity bipartition.
TwoColoredTree gen_2colored_regular_tree(int capital_d, int depth);

// Graph with an edge {u,v} iff 1 <= dist_G(u,v) <= k.  Ports are assigned in
// insertion order (ascending u, then ascending v).
Graph power_graph(const Graph& g, int k);

}  // namespace lclab
