#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "json.hpp"

#include "lclab/graph.hpp"

namespace lclab {

// Per-edge direction, stored as an out-flag per (node, port).  When built
// from a proper coloring the orientation is acyclic and the inducing colors
// are kept as `rank` for sweep scheduling.
struct Orientation {
  std::vector<std::vector<char>> out;  // out[v][port]
  std::vector<Label> rank;             // inducing color per node; empty if none
  Label rank_count = 0;

  int out_degree(NodeId v) const {
    int d = 0;
    for (char f : out[v]) d += f != 0;
    return d;
  }
  bool is_out(NodeId v, int port) const { return out[v][port] != 0; }

  // Checks that every edge is directed exactly one way.
  void check_antisymmetry(const Graph& g) const;

  nlohmann::ordered_json to_json(const Graph& g) const;
  static Orientation from_json(const Graph& g, const nlohmann::json& j);

  std::string to_dot(const Graph& g) const;
};

enum class Decision : std::uint8_t { Keep, Special, Switch };

std::string to_string(Decision d);

// Decision-time audit record for one node of the second sweep; the counters
// are the ones the case analysis is stated in, so every inequality used in
// the analysis can be re-checked after the fact.
struct SweepRecord {
  Label rank = 0;        // initial proper color
  Label tentative = 0;   // first-sweep color
  Label final_color = 0;
  Decision tag = Decision::Keep;
  int above = 0;         // neighbors above
  int t = 0;             // above with a different tentative
  int r = 0;             // above with the same tentative
  int x = 0;             // below finalized to own tentative
  int y = 0;             // below finalized to another non-special color
  int z = 0;             // below finalized to the special color
  int free_count = 0;    // full-palette mode: available free colors
};

struct SweepState {
  std::vector<SweepRecord> node;
  int first_sweep_rounds = 0;
  int second_sweep_rounds = 0;
};

}  // namespace lclab
