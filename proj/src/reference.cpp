#include "lclab/reference.hpp"

#include <algorithm>
#include <deque>

namespace lclab::reference {

std::vector<int> bfs_distances(const Graph& g, NodeId source, int cap) {
  std::vector<int> dist(g.node_count(), -1);
  std::deque<NodeId> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    NodeId v = queue.front();
    queue.pop_front();
    if (cap >= 0 && dist[v] >= cap) continue;
    for (int p = 0; p < g.degree(v); ++p) {
      NodeId u = g.neighbor(v, p).node;
      if (dist[u] == -1) {
        dist[u] = dist[v] + 1;
        queue.push_back(u);
      }
    }
  }
  return dist;
}

bool all_degrees_are(const Graph& g, int d) {
  for (NodeId v = 0; v < g.node_count(); ++v)
    if (g.degree(v) != d) return false;
  return true;
}

int count_within(const Graph& g, NodeId center, int radius) {
  auto dist = reference::bfs_distances(g, center, radius);
  int count = 0;
  for (int x : dist)
    if (x >= 0 && x <= radius) ++count;
  return count;
}

bool is_independent_set(const Graph& g, const std::vector<char>& in_set) {
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (!in_set[v]) continue;
    for (int p = 0; p < g.degree(v); ++p)
      if (in_set[g.neighbor(v, p).node]) return false;
  }
  return true;
}

bool is_maximal_independent_set(const Graph& g, const std::vector<char>& in_set) {
  if (!is_independent_set(g, in_set)) return false;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (in_set[v]) continue;
    bool covered = false;
    for (int p = 0; p < g.degree(v) && !covered; ++p) covered = in_set[g.neighbor(v, p).node];
    if (!covered) return false;
  }
  return true;
}

std::vector<NodeId> partial_deficit_nodes(const Graph& g, std::span<const Label> color, int k,
                                          bool capped, const std::vector<char>* exempt) {
  std::vector<NodeId> out;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (exempt && (*exempt)[v]) continue;
    int differing = 0;
    for (int p = 0; p < g.degree(v); ++p)
      if (color[g.neighbor(v, p).node] != color[v]) ++differing;
    const int required = capped ? std::min(k, g.degree(v)) : k;
    if (differing < required) out.push_back(v);
  }
  return out;
}

std::vector<NodeId> improper_nodes(const Graph& g, std::span<const Label> color) {
  std::vector<NodeId> out;
  for (NodeId v = 0; v < g.node_count(); ++v)
    for (int p = 0; p < g.degree(v); ++p)
      if (color[g.neighbor(v, p).node] == color[v]) {
        out.push_back(v);
        break;
      }
  return out;
}

std::vector<NodeId> cut_improvable_nodes(const Graph& g, std::span<const Label> color) {
  std::vector<NodeId> out;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    int same = 0, diff = 0;
    for (int p = 0; p < g.degree(v); ++p)
      (color[g.neighbor(v, p).node] == color[v] ? same : diff)++;
    if (same > diff) out.push_back(v);
  }
  return out;
}

std::vector<NodeId> distance_clash_nodes(const Graph& g, std::span<const Label> color, int k) {
  std::vector<NodeId> out;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    auto dist = reference::bfs_distances(g, v, k);
    for (NodeId u = 0; u < g.node_count(); ++u)
      if (u != v && dist[u] > 0 && color[u] == color[v]) {
        out.push_back(v);
        break;
      }
  }
  return out;
}

std::vector<std::vector<NodeId>> power_neighbors(const Graph& g, int k) {
  std::vector<std::vector<NodeId>> out(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) {
    auto dist = reference::bfs_distances(g, v, k);
    for (NodeId u = 0; u < g.node_count(); ++u)
      if (u != v && dist[u] > 0 && dist[u] <= k) out[v].push_back(u);
  }
  return out;
}

}  // namespace lclab::reference
