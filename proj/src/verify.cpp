#include "lclab/verify.hpp"

#include <algorithm>
#include <sstream>

#include "lclab/errors.hpp"
#include "lclab/parallel.hpp"

namespace lclab {

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::PartialDeficit: return "PARTIAL_DEFICIT";
    case ViolationKind::ImproperEdge: return "IMPROPER_EDGE";
    case ViolationKind::Sink: return "SINK";
    case ViolationKind::CutImprovable: return "CUT_IMPROVABLE";
    case ViolationKind::DistanceClash: return "DISTANCE_CLASH";
  }
  return "?";
}

nlohmann::ordered_json Violation::to_json() const {
  nlohmann::ordered_json j;
  j["node"] = node;
  j["kind"] = to_string(kind);
  if (witness) j["witness"] = *witness;
  j["have"] = have;
  j["need"] = need;
  return j;
}

std::string violations_to_json_lines(const std::vector<Violation>& violations) {
  std::ostringstream out;
  for (const auto& v : violations) out << v.to_json().dump() << '\n';
  return out.str();
}

namespace {

// Per-node scan writing into an optional slot, then a serial compaction so
// the output order is independent of the thread schedule.
template <typename PerNode>
std::vector<Violation> scan(NodeId n, PerNode&& per_node) {
  std::vector<std::optional<Violation>> slots(n);
  parallel_for(n, true, [&](std::int64_t v) { slots[v] = per_node(static_cast<NodeId>(v)); });
  std::vector<Violation> out;
  for (auto& s : slots)
    if (s) out.push_back(*s);
  return out;
}

void check_color_size(const Graph& g, std::span<const Label> color, const char* who) {
  if (static_cast<NodeId>(color.size()) != g.node_count())
    throw precondition_error(std::string(who) + ": coloring must be total");
}

}  // namespace

std::vector<Violation> verify_partial_coloring(const Graph& g, std::span<const Label> color, int k,
                                               PartialPolicy policy, const std::vector<char>* exempt) {
  check_color_size(g, color, "verify_partial_coloring");
  return scan(g.node_count(), [&](NodeId v) -> std::optional<Violation> {
    if (exempt && (*exempt)[v]) return std::nullopt;
    const int required = policy == PartialPolicy::Capped ? std::min(k, g.degree(v)) : k;
    int differing = 0;
    for (const auto& t : g.ports(v)) differing += color[t.node] != color[v];
    if (differing >= required) return std::nullopt;
    return Violation{v, ViolationKind::PartialDeficit, std::nullopt, differing, required};
  });
}

std::vector<Violation> verify_proper_coloring(const Graph& g, std::span<const Label> color) {
  check_color_size(g, color, "verify_proper_coloring");
  return scan(g.node_count(), [&](NodeId v) -> std::optional<Violation> {
    int monochromatic = 0;
    std::optional<NodeId> witness;
    for (const auto& t : g.ports(v))
      if (color[t.node] == color[v]) {
        ++monochromatic;
        if (!witness) witness = t.node;
      }
    if (!witness) return std::nullopt;
    return Violation{v, ViolationKind::ImproperEdge, witness, monochromatic, 0};
  });
}

std::vector<Violation> verify_sinkless(const Graph& g, const Orientation& o,
                                       const std::vector<char>* exempt) {
  if (static_cast<NodeId>(o.out.size()) != g.node_count())
    throw precondition_error("verify_sinkless: orientation size mismatch");
  return scan(g.node_count(), [&](NodeId v) -> std::optional<Violation> {
    if (exempt && (*exempt)[v]) return std::nullopt;
    if (o.out_degree(v) > 0) return std::nullopt;
    return Violation{v, ViolationKind::Sink, std::nullopt, 0, 1};
  });
}

std::vector<Violation> verify_locally_optimal_cut(const Graph& g, std::span<const Label> color) {
  check_color_size(g, color, "verify_locally_optimal_cut");
  return scan(g.node_count(), [&](NodeId v) -> std::optional<Violation> {
    int same = 0, diff = 0;
    for (const auto& t : g.ports(v)) (color[t.node] == color[v] ? same : diff)++;
    if (same <= diff) return std::nullopt;
    return Violation{v, ViolationKind::CutImprovable, std::nullopt, diff, same};
  });
}

std::vector<Violation> verify_distance_coloring(const Graph& g, std::span<const Label> color, int k) {
  check_color_size(g, color, "verify_distance_coloring");
  if (k < 1) throw precondition_error("verify_distance_coloring: need k >= 1");
  return scan(g.node_count(), [&](NodeId v) -> std::optional<Violation> {
    // Truncated BFS; the first clashing node in BFS order is the witness.
    std::vector<NodeId> frontier{v};
    std::vector<NodeId> seen{v};
    std::vector<char> visited(g.node_count(), 0);
    visited[v] = 1;
    for (int level = 0; level < k && !frontier.empty(); ++level) {
      std::vector<NodeId> next;
      for (NodeId u : frontier)
        for (const auto& t : g.ports(u))
          if (!visited[t.node]) {
            visited[t.node] = 1;
            next.push_back(t.node);
          }
      std::sort(next.begin(), next.end());
      for (NodeId u : next)
        if (color[u] == color[v])
          return Violation{v, ViolationKind::DistanceClash, u, level + 1, 0};
      frontier = std::move(next);
    }
    return std::nullopt;
  });
}

}  // namespace lclab
