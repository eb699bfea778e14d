#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "lclab/coloring.hpp"
#include "lclab/engine.hpp"
#include "lclab/graph.hpp"

namespace lclab {

struct ColoringResult {
  Coloring coloring;
  int rounds_used = 0;
};

// One color-reduction step: node colors in [1, palette_before] are mapped to
// pairs (a, p(a)) over GF(q) with polynomials of degree <= poly_degree, so
// the palette shrinks to q^2 whenever q^2 < palette_before.
struct ReductionFamily {
  std::int64_t q = 0;
  int poly_degree = 0;
  std::int64_t palette_before = 0;
  std::int64_t palette_after = 0;  // q*q
};

// Deterministic per-round family schedule for starting palette `id_range`
// and maximum degree `max_deg`; every node derives the same schedule from
// (n, max_deg) alone.  Stops when no family makes progress.
std::vector<ReductionFamily> linial_schedule(std::int64_t id_range, int max_deg);

// Final palette the schedule settles at; <= linial_palette_bound(max_deg).
std::int64_t linial_final_palette(std::int64_t id_range, int max_deg);

// Documented bound: the schedule can always stop below 4*(2*max_deg + 1)^2.
std::int64_t linial_palette_bound(int max_deg);

// Iterated polynomial color reduction from unique ids.  ids must be unique
// and within [1, id_range]; id_range defaults to the (claimed) node count.
// Rounds track the iterated logarithm of the id range: every observed
// schedule satisfies rounds <= 2*log2*(id_range) + 3 (asserted in tests).
ColoringResult linial_coloring(const Graph& g, std::span<const Label> ids,
                               std::int64_t id_range = 0);

// The same algorithm as a reusable RoundAlgorithm (runs the schedule for
// (id_range, max_deg) and announces the final color).  Used by the
// distance-coloring simulation harness, where id_range is the lied size.
std::shared_ptr<RoundAlgorithm> linial_round_algorithm(std::int64_t id_range, int max_deg);

// Greedy palette reduction: one color class recolors per round, classes
// processed in descending order, until palette <= target.  Requires a proper
// input coloring and target >= max_deg + 1.
ColoringResult reduce_colors(const Graph& g, const Coloring& c0, Label target);

// linial_coloring followed by reduce_colors to min(palette, max_deg^2)
// (floored at max_deg + 1): palette <= max_deg^2 for max_deg >= 2.
ColoringResult compute_proper_coloring(const Graph& g, std::span<const Label> ids,
                                       std::int64_t id_range = 0);

struct MisResult {
  std::vector<char> in_set;
  int rounds_used = 0;
};

// Color classes join in ascending order unless a neighbor joined already.
MisResult mis_from_coloring(const Graph& g, const Coloring& c);

// Proper coloring of the k-th power graph; for a d-regular graph with d >= 2
// the palette is at most d^(2k).
ColoringResult distance_k_coloring(const Graph& g, int k, std::span<const Label> ids);

// Completes a partial distance-k coloring without touching precolored nodes.
// The completion uses a fresh palette above the precolored colors, so it can
// never clash with them; the precolored region itself must already be valid
// at distance k (checked).
ColoringResult complete_distance_coloring(const Graph& g, int k,
                                          const std::vector<std::optional<Label>>& precolored,
                                          std::span<const Label> ids);

}  // namespace lclab
