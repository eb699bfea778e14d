#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lclab/coloring.hpp"
#include "lclab/graph.hpp"
#include "lclab/partial_coloring_types.hpp"
#include "lclab/symmetry_breaking.hpp"

namespace lclab {

// Orients every edge from the smaller to the bigger color of a proper
// coloring; the result is acyclic and every directed path is shorter than
// the palette.  Neighbors reached through outgoing edges are "above".
Orientation acyclic_orientation(const Graph& g, const Coloring& proper);

struct TentativeResult {
  Coloring tentative;       // colors in [1, palette]
  std::vector<int> above;   // per node
  std::vector<int> same;    // above with the same tentative (minority count)
  int rounds_used = 0;
};

// Top-down sweep (largest rank class first): every node takes the color in
// [1, palette] least used among its above-neighbors' tentative picks, ties
// to the smallest color.  The pick is a minority color:
// same * (palette - 1) <= above - same holds at every node (asserted).
TentativeResult first_sweep(const Graph& g, const Orientation& o, Label palette);

struct SweepResult {
  Coloring final_coloring;
  SweepState state;
};

// Bottom-up finalization for the 3-color mode (tentative palette {1,2},
// special color 3).  With a = own tentative, t = above with the other
// tentative, x/y/z = below finalized to a / the other non-special color /
// the special color, the first applicable case decides:
//   1. t+y+z >= k       keep a
//   2. x+y >= k         switch to the special color
//   3. otherwise        y must be 0; switch to the other color
// Requires a d-regular graph with d >= 3k-4 and k >= 3.
SweepResult second_sweep_three(const Graph& g, const Orientation& o, const TentativeResult& tentative,
                               int k);

// Bottom-up finalization for the full-palette mode (tentative palette
// [1, k-1], special color k).  Cases 1 and 2 as above; case 3 switches to a
// free color (non-special, != a, unused below) that at most d-k above
// neighbors picked tentatively; fewest such picks, ties to the smallest.
// Requires d-regular, d >= k+2, k >= 4.
SweepResult second_sweep_full(const Graph& g, const Orientation& o, const TentativeResult& tentative,
                              int k);

enum class TwoSweepMode { ThreeColor, FullPalette };

struct TwoSweepResult {
  Coloring final_coloring;
  SweepState state;
  Orientation orientation;
  Label initial_palette = 0;
  int base_rounds = 0;   // proper-coloring stage
  int sweep_rounds = 0;  // both sweeps
  int total_rounds() const { return base_rounds + sweep_rounds; }

  nlohmann::ordered_json decision_histogram() const;
};

// Full pipeline: proper coloring, orientation, both sweeps.  Produces a
// k-partial 3-coloring (ThreeColor) or k-partial k-coloring (FullPalette).
TwoSweepResult two_sweep_coloring(const Graph& g, int k, TwoSweepMode mode,
                                  std::span<const Label> ids);

// Pure decision rules, exposed for direct case testing.  Both return
// (tag, final color); decide_full picks from `free_picks` = tentative pick
// counts of each candidate free color among the above neighbors.
std::pair<Decision, Label> decide_three(Label a, int t, int x, int y, int z, int k);
std::pair<Decision, Label> decide_full(Label a, int t, int x, int y, int z, int k, int d,
                                       const std::vector<std::pair<Label, int>>& free_picks);

struct LayeredMisResult {
  Coloring coloring;
  std::vector<std::vector<char>> layers;  // membership mask per layer
  int rounds_used = 0;
};

// Peels c-1 maximal independent sets off the graph, coloring layer i with
// color i; whatever remains takes color c.  Yields a (c-1)-partial
// c-coloring on graphs of minimum degree >= c-1; c = 2 is weak 2-coloring.
LayeredMisResult layered_mis_coloring(const Graph& g, Label c, std::span<const Label> ids);

struct ComposeResult {
  Coloring coloring;
  Label class_palette = 0;  // colors used inside each partial-color class
  int rounds_used = 0;
};

// Turns a k-partial c-coloring with k >= (c-1)d/c + 1 into a proper coloring
// with at most c*(d-k+1) <= d colors: each monochromatic class (max degree
// <= d-k) is properly colored with d-k+1 colors and the pair (class, inner
// color) is flattened.
ComposeResult compose_proper_coloring(const Graph& g, const Coloring& pc, int k, Label c,
                                      std::span<const Label> ids);

}  // namespace lclab
