#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lclab/graph.hpp"

namespace lclab::reference {

// Plain serial implementations, written independently of the parallel
// kernels.  Tests use them as oracles; the benchmark uses them as the
// baseline.  Keep them simple rather than fast.

std::vector<int> bfs_distances(const Graph& g, NodeId source, int cap = -1);

bool all_degrees_are(const Graph& g, int d);

int count_within(const Graph& g, NodeId center, int radius);

bool is_independent_set(const Graph& g, const std::vector<char>& in_set);
bool is_maximal_independent_set(const Graph& g, const std::vector<char>& in_set);

// Nodes with fewer than k (capped: min(k, deg)) differently-colored
// neighbors, minus exempt ones.
std::vector<NodeId> partial_deficit_nodes(const Graph& g, std::span<const Label> color, int k,
                                          bool capped = false, const std::vector<char>* exempt = nullptr);

std::vector<NodeId> improper_nodes(const Graph& g, std::span<const Label> color);

// Nodes where flipping a two-coloring strictly increases the cut.
std::vector<NodeId> cut_improvable_nodes(const Graph& g, std::span<const Label> color);

// Nodes that see their own color within distance k.
std::vector<NodeId> distance_clash_nodes(const Graph& g, std::span<const Label> color, int k);

// Power-graph neighbor sets via pairwise BFS (quadratic; oracle only).
std::vector<std::vector<NodeId>> power_neighbors(const Graph& g, int k);

}  // namespace lclab::reference
