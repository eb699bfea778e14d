#include "lclab/generators.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "lclab/errors.hpp"
#include "lclab/parallel.hpp"

namespace lclab {

namespace {

constexpr int kRestartCap = 10000;

// One pairing attempt: draw random stub pairs, rejecting self-loops and
// parallel edges.  Returns false on a dead end (remaining stubs admit no
// valid pair within the retry allowance).
bool try_pairing(NodeId n, int d, std::mt19937_64& rng, GraphBuilder& builder) {
  std::vector<NodeId> stubs;
  stubs.reserve(static_cast<std::size_t>(n) * d);
  for (NodeId v = 0; v < n; ++v)
    for (int i = 0; i < d; ++i) stubs.push_back(v);

  const std::int64_t retry_allowance = 64 + 32 * static_cast<std::int64_t>(stubs.size());
  std::int64_t rejections = 0;
  while (stubs.size() >= 2) {
    std::uniform_int_distribution<std::size_t> pick(0, stubs.size() - 1);
    std::size_t i = pick(rng);
    std::size_t j = pick(rng);
    if (i == j) continue;
    NodeId u = stubs[i], v = stubs[j];
    if (u == v || builder.has_edge(u, v)) {
      if (++rejections > retry_allowance) return false;
      continue;
    }
    builder.add_edge(std::min(u, v), std::max(u, v));
    if (i < j) std::swap(i, j);
    stubs[i] = stubs.back();
    stubs.pop_back();
    stubs[j] = stubs.back();
    stubs.pop_back();
  }
  return true;
}

}  // namespace

Graph gen_random_regular(NodeId n, int d, std::uint64_t seed) {
  if (d < 0 || n < 1) throw precondition_error("gen_random_regular: need n >= 1, d >= 0");
  if ((static_cast<std::int64_t>(n) * d) % 2 != 0)
    throw precondition_error("gen_random_regular: n*d must be even");
  if (n < d + 1) throw precondition_error("gen_random_regular: need n >= d+1");

  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < kRestartCap; ++attempt) {
    GraphBuilder builder(n);
    if (try_pairing(n, d, rng, builder)) return std::move(builder).build();
  }
  throw budget_error("gen_random_regular: restart cap exhausted for seed " + std::to_string(seed));
}

RegularTree gen_regular_tree(int d, int depth) {
  if (d < 2) throw precondition_error("gen_regular_tree: need d >= 2");
  if (depth < 0) throw precondition_error("gen_regular_tree: need depth >= 0");

  RegularTree t;
  std::vector<std::pair<NodeId, int>> frontier{{0, 0}};  // (node, level)
  t.level.push_back(0);
  NodeId next = 1;
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (int level = 0; level < depth; ++level) {
    std::vector<std::pair<NodeId, int>> created;
    for (auto [v, lvl] : frontier) {
      const int children = (v == 0) ? d : d - 1;
      for (int c = 0; c < children; ++c) {
        edges.emplace_back(v, next);
        t.level.push_back(lvl + 1);
        created.emplace_back(next, lvl + 1);
        ++next;
      }
    }
    frontier = std::move(created);
  }
  GraphBuilder builder(next);
  // Creation order: the parent gets consecutive child ports after its own
  // parent port, and each child's port 0 points at its parent.
  for (auto [parent, child] : edges) builder.add_edge(parent, child);
  t.graph = std::move(builder).build();
  return t;
}

TwoColoredTree gen_2colored_regular_tree(int capital_d, int depth) {
  if (capital_d == 1) {
    // Degenerate host: a single edge.
    if (depth > 1) throw precondition_error("degree-1 tree cannot have depth > 1");
    TwoColoredTree t;
    GraphBuilder builder(depth == 0 ? 1 : 2);
    t.level = {0};
    t.side = {0};
    if (depth == 1) {
      builder.add_edge(0, 1);
      t.level.push_back(1);
      t.side.push_back(1);
    }
    t.graph = std::move(builder).build();
    return t;
  }
  RegularTree base = gen_regular_tree(capital_d, depth);
  TwoColoredTree t;
  t.graph = std::move(base.graph);
  t.level = std::move(base.level);
  t.side.reserve(t.level.size());
  for (int lvl : t.level) t.side.push_back(lvl % 2);
  return t;
}

Graph power_graph(const Graph& g, int k) {
  if (k < 1) throw precondition_error("power_graph: need k >= 1");
  const NodeId n = g.node_count();
  // Per-node truncated BFS; each row collects the node's power-neighbors.
  std::vector<std::vector<NodeId>> reach(n);
  parallel_for(n, true, [&](std::int64_t v) {
    auto dist = bfs_distances(g, static_cast<NodeId>(v), k);
    auto& row = reach[v];
    for (NodeId u = 0; u < n; ++u)
      if (u != v && dist[u] > 0) row.push_back(u);
  });
  GraphBuilder builder(n);
  for (NodeId v = 0; v < n; ++v)
    for (NodeId u : reach[v])
      if (u > v) builder.add_edge(v, u);
  return std::move(builder).build();
}

}  // namespace lclab
