#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "lclab/coloring.hpp"
#include "lclab/graph.hpp"
#include "lclab/partial_coloring_types.hpp"

namespace lclab {

enum class ViolationKind {
  PartialDeficit,
  ImproperEdge,
  Sink,
  CutImprovable,
  DistanceClash,
};

std::string to_string(ViolationKind kind);

// One violation per offending node; `witness` is a neighbor (or clashing
// node) that exhibits the problem, `have`/`need` the failing counts.
struct Violation {
  NodeId node;
  ViolationKind kind;
  std::optional<NodeId> witness;
  std::int64_t have = 0;
  std::int64_t need = 0;

  nlohmann::ordered_json to_json() const;
};

std::string violations_to_json_lines(const std::vector<Violation>& violations);

enum class PartialPolicy { Strict, Capped };

// Definition check for k-partial colorings: every non-exempt node needs at
// least k (Strict) or min(k, deg) (Capped) differently-colored neighbors.
std::vector<Violation> verify_partial_coloring(const Graph& g, std::span<const Label> color, int k,
                                               PartialPolicy policy = PartialPolicy::Strict,
                                               const std::vector<char>* exempt = nullptr);

// Flags both endpoints of every monochromatic edge (one violation per node).
std::vector<Violation> verify_proper_coloring(const Graph& g, std::span<const Label> color);

// Flags non-exempt nodes with no outgoing edge.
std::vector<Violation> verify_sinkless(const Graph& g, const Orientation& o,
                                       const std::vector<char>* exempt = nullptr);

// Flags nodes whose color flip would strictly increase the cut size, i.e.
// nodes with more same-colored than differently-colored neighbors.
std::vector<Violation> verify_locally_optimal_cut(const Graph& g, std::span<const Label> color);

// Flags nodes that see their own color within distance k (truncated BFS).
std::vector<Violation> verify_distance_coloring(const Graph& g, std::span<const Label> color, int k);

inline std::vector<Violation> verify_partial_coloring(const Graph& g, const Coloring& c, int k,
                                                      PartialPolicy policy = PartialPolicy::Strict,
                                                      const std::vector<char>* exempt = nullptr) {
  return verify_partial_coloring(g, std::span<const Label>(c.assignment), k, policy, exempt);
}
inline std::vector<Violation> verify_proper_coloring(const Graph& g, const Coloring& c) {
  return verify_proper_coloring(g, std::span<const Label>(c.assignment));
}
inline std::vector<Violation> verify_distance_coloring(const Graph& g, const Coloring& c, int k) {
  return verify_distance_coloring(g, std::span<const Label>(c.assignment), k);
}

}  // namespace lclab
