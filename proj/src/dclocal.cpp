#include "lclab/dclocal.hpp"

#include <sstream>

#include "lclab/errors.hpp"
#include "lclab/parallel.hpp"
#include "lclab/verify.hpp"

namespace lclab {

namespace {

using i128 = __int128;

i128 pow_sat(std::int64_t base, int exp) {
  i128 r = 1;
  for (int i = 0; i < exp; ++i) {
    r *= base;
    if (r > (i128(1) << 100)) return i128(1) << 100;
  }
  return r;
}

}  // namespace

ChosenSize choose_N(const std::function<int(std::int64_t)>& f_bound, int max_deg, int r,
                    std::int64_t search_cap) {
  if (max_deg < 1) throw precondition_error("choose_N: need max_deg >= 1");
  if (r < 0) throw precondition_error("choose_N: need r >= 0");
  // Jump search: for the t implied by the current candidate, the inequality
  // pins the least admissible N; repeat until the implied t stabilizes.
  // Monotone f_bound makes every skipped candidate infeasible.
  std::int64_t n = 1;
  int last_t = -1;
  while (n <= search_cap) {
    const int t = f_bound(n) + 1;
    if (t < last_t) throw precondition_error("choose_N: f_bound is not monotone");
    last_t = t;
    const i128 threshold = pow_sat(max_deg, 2 * (t + r));
    if (threshold < i128(n)) return {n, t};
    if (threshold >= i128(search_cap)) break;
    n = static_cast<std::int64_t>(threshold) + 1;
  }
  std::ostringstream msg;
  msg << "choose_N: no fixpoint below search cap " << search_cap;
  throw budget_error(msg.str());
}

std::vector<std::int64_t> dc_local_run(const Graph& g, const RoundAlgorithm& algo, const DCInput& dc,
                                       int r, std::int64_t n_lied, const BruteForceSolver& brute_force,
                                       bool parallel) {
  const int t = dc.k - r;
  if (t < 1) throw precondition_error("dc_local_run: need dc.k - r >= 1");
  if (static_cast<NodeId>(dc.coloring.size()) != g.node_count())
    throw precondition_error("dc_local_run: coloring must be total");
  for (Label c : dc.coloring)
    if (c < 1 || c > dc.palette)
      throw precondition_error("dc_local_run: color outside [1, palette]");
  if (pow_sat(g.max_degree(), 2 * dc.k) < i128(dc.palette))
    throw precondition_error("dc_local_run: palette exceeds max_deg^(2k)");

  auto clashes = verify_distance_coloring(g, std::span<const Label>(dc.coloring), dc.k);
  if (!clashes.empty()) {
    std::ostringstream msg;
    msg << "dc_local_run: invalid distance-" << dc.k << " coloring, e.g. nodes "
        << clashes.front().node << " and " << *clashes.front().witness;
    throw precondition_error(msg.str());
  }

  if (diameter(g) < 2 * t) {
    if (!brute_force)
      throw precondition_error("dc_local_run: diameter below 2t and no brute-force solver given");
    return brute_force(g, dc.coloring);
  }

  std::vector<std::int64_t> outputs(g.node_count());
  parallel_for_throwing(g.node_count(), parallel, [&](std::int64_t v) {
    Ball b = ball(g, static_cast<NodeId>(v), t, dc.coloring);
    outputs[v] = simulate_on_ball(b, algo, t - 1, n_lied);
  });
  return outputs;
}

}  // namespace lclab
