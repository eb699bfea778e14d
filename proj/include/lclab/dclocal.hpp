#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "lclab/engine.hpp"
#include "lclab/graph.hpp"

namespace lclab {

// Identifier replacement: nodes carry a coloring that is proper on the k-th
// power graph (distinct colors inside every distance-k ball) instead of
// unique ids.
struct DCInput {
  int k = 0;                    // distance parameter
  std::int64_t palette = 0;     // colors are in [1, palette]
  std::vector<Label> coloring;  // one color per node
};

struct ChosenSize {
  std::int64_t n = 0;  // the size the simulation will claim
  int t = 0;           // simulated round budget, f(n) + 1
};

// Smallest N with t = f_bound(N) + 1 and max_deg^(2(t+r)) < N; f_bound must
// be monotone nondecreasing.  Throws budget_error when no N below search_cap
// works.
ChosenSize choose_N(const std::function<int(std::int64_t)>& f_bound, int max_deg, int r,
                    std::int64_t search_cap = std::int64_t(1) << 62);

using BruteForceSolver =
    std::function<std::vector<std::int64_t>(const Graph&, const std::vector<Label>&)>;

// Runs a round algorithm under the distance-coloring identifier regime:
// every node gathers its radius-t ball (t = dc.k - r), substitutes colors
// for identifiers, and simulates the algorithm to completion while claiming
// the graph has n_lied nodes.  The algorithm must finish within t-1 rounds.
// Graphs of diameter < 2t are solved whole by the supplied brute-force
// solver instead.
std::vector<std::int64_t> dc_local_run(const Graph& g, const RoundAlgorithm& algo, const DCInput& dc,
                                       int r, std::int64_t n_lied,
                                       const BruteForceSolver& brute_force = nullptr,
                                       bool parallel = true);

}  // namespace lclab
