#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "json.hpp"

#include "lclab/graph.hpp"

namespace lclab {

// Total assignment node -> color in [1, palette_size].
struct Coloring {
  std::vector<Label> assignment;
  Label palette_size = 0;

  Label operator[](NodeId v) const { return assignment[v]; }
  NodeId size() const { return static_cast<NodeId>(assignment.size()); }

  static Coloring from_assignment(std::vector<Label> a) {
    Coloring c;
    c.assignment = std::move(a);
    for (Label x : c.assignment) c.palette_size = std::max(c.palette_size, x);
    return c;
  }

  nlohmann::ordered_json to_json() const { return nlohmann::ordered_json(assignment); }
  static Coloring from_json(const nlohmann::json& j) {
    return from_assignment(j.get<std::vector<Label>>());
  }
};

}  // namespace lclab
