#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "lclab/engine.hpp"
#include "lclab/graph.hpp"

namespace lclab {

// Radius-bounded deterministic map from a node's local ball to an output.
// evaluate must depend only on the ball's structure, ports and labels, never
// on Ball::original (host bookkeeping): label-identical isomorphic balls get
// equal outputs.
struct ViewFunction {
  int radius = 0;
  std::function<std::int64_t(const Ball&)> evaluate;
};

// output[v] = f(ball(g, v, f.radius)) for every node.
std::vector<std::int64_t> run_view_based(const Graph& g, const ViewFunction& f,
                                         std::span<const Label> labels, bool parallel = true);

// Same contract, independent straight-line implementation kept as the serial
// baseline for tests and the benchmark.
std::vector<std::int64_t> run_view_serial(const Graph& g, const ViewFunction& f,
                                          std::span<const Label> labels);

// Isomorphism-invariant key for tree-shaped balls (children subtrees are
// serialized recursively and sorted).  Throws if the ball is not a tree.
std::string canonical_ball_key(const Ball& b);

// rounds -> view: simulate the algorithm on the ball; the center's answer
// after `rounds` rounds is a function of its radius-`rounds` ball.
ViewFunction rounds_to_view(std::shared_ptr<const RoundAlgorithm> algo, int rounds,
                            std::int64_t n_claimed = 0);

// view -> rounds: flood (label, degree, per-port neighbor labels) records for
// radius+1 rounds, reconstruct the induced ball, evaluate.  The extra round
// is what makes edges between two frontier nodes visible; the output is
// still a function of the radius-`radius` ball only.  Requires node labels
// to be globally unique.
std::shared_ptr<RoundAlgorithm> view_to_rounds(ViewFunction f);

}  // namespace lclab
