#include <numeric>
#include <set>

#include "doctest.h"

#include "lclab/errors.hpp"
#include "lclab/generators.hpp"
#include "lclab/partial_coloring.hpp"
#include "lclab/reference.hpp"
#include "lclab/verify.hpp"

using namespace lclab;

namespace {

Graph cycle(NodeId n) {
  GraphBuilder b(n);
  for (NodeId v = 0; v < n; ++v) b.add_edge(v, (v + 1) % n);
  return std::move(b).build();
}

std::vector<Label> identity_ids(NodeId n) {
  std::vector<Label> ids(n);
  std::iota(ids.begin(), ids.end(), 1);
  return ids;
}

// Kahn's algorithm as an independent acyclicity oracle.
bool orientation_is_acyclic(const Graph& g, const Orientation& o) {
  std::vector<int> indeg(g.node_count(), 0);
  for (NodeId v = 0; v < g.node_count(); ++v)
    for (int p = 0; p < g.degree(v); ++p)
      if (o.is_out(v, p)) ++indeg[g.neighbor(v, p).node];
  std::vector<NodeId> queue;
  for (NodeId v = 0; v < g.node_count(); ++v)
    if (indeg[v] == 0) queue.push_back(v);
  NodeId removed = 0;
  while (!queue.empty()) {
    NodeId v = queue.back();
    queue.pop_back();
    ++removed;
    for (int p = 0; p < g.degree(v); ++p)
      if (o.is_out(v, p) && --indeg[g.neighbor(v, p).node] == 0)
        queue.push_back(g.neighbor(v, p).node);
  }
  return removed == g.node_count();
}

// Complete bipartite K_{d,d}: the smallest d-regular bipartite graph.
Graph complete_bipartite(int d) {
  GraphBuilder b(2 * d);
  for (NodeId u = 0; u < d; ++u)
    for (NodeId v = 0; v < d; ++v) b.add_edge(u, d + v);
  return std::move(b).build();
}

// 3-regular cube graph with the popcount bipartition.
Graph cube_graph() {
  GraphBuilder b(8);
  for (NodeId v = 0; v < 8; ++v)
    for (int bit = 0; bit < 3; ++bit) {
      NodeId u = v ^ (1 << bit);
      if (u > v) b.add_edge(v, u);
    }
  return std::move(b).build();
}

// Re-derives every counter from scratch and checks the record.
void recount_sweep_records(const Graph& g, const TwoSweepResult& result, Label special) {
  const auto& recs = result.state.node;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const auto& rec = recs[v];
    int above = 0, t = 0, x = 0, y = 0, z = 0;
    for (const auto& port : g.ports(v)) {
      const auto& other = recs[port.node];
      if (other.rank > rec.rank) {
        ++above;
        if (other.tentative != rec.tentative) ++t;
      } else {
        if (other.final_color == rec.tentative)
          ++x;
        else if (other.final_color == special)
          ++z;
        else
          ++y;
      }
    }
    CHECK(rec.above == above);
    CHECK(rec.t == t);
    CHECK(rec.r == above - t);
    CHECK(rec.x == x);
    CHECK(rec.y == y);
    CHECK(rec.z == z);
  }
}

// The protection guarantee behind KEEP and SWITCH: no above neighbor whose
// tentative differed from the final choice may end on that color.
void check_sweep_safety(const Graph& g, const TwoSweepResult& result, Label special) {
  const auto& recs = result.state.node;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const auto& rec = recs[v];
    if (rec.tag == Decision::Special) continue;
    CHECK(rec.final_color != special);
    for (const auto& port : g.ports(v)) {
      const auto& other = recs[port.node];
      if (other.rank > rec.rank && other.tentative != rec.final_color)
        CHECK(other.final_color != rec.final_color);
    }
  }
}

}  // namespace

TEST_CASE("acyclic orientation: triangle, alternating C4, random instances") {
  Graph triangle = cycle(3);
  auto o = acyclic_orientation(triangle, Coloring::from_assignment({1, 2, 3}));
  CHECK(o.out_degree(0) == 2);  // 1 -> {2,3}
  CHECK(o.out_degree(1) == 1);  // 2 -> 3
  CHECK(o.out_degree(2) == 0);
  CHECK(orientation_is_acyclic(triangle, o));
  o.check_antisymmetry(triangle);

  Graph c4 = cycle(4);
  auto alt = acyclic_orientation(c4, Coloring::from_assignment({1, 2, 1, 2}));
  CHECK(alt.out_degree(0) == 2);
  CHECK(alt.out_degree(2) == 2);
  CHECK(alt.out_degree(1) == 0);
  CHECK(alt.out_degree(3) == 0);

  Graph g = gen_random_regular(200, 5, 31);
  auto colored = compute_proper_coloring(g, identity_ids(200));
  auto big = acyclic_orientation(g, colored.coloring);
  CHECK(orientation_is_acyclic(g, big));
  big.check_antisymmetry(g);

  CHECK_THROWS_AS(acyclic_orientation(c4, Coloring::from_assignment({1, 1, 2, 2})),
                  precondition_error);
}

TEST_CASE("first sweep: sinks take color 1, least-used wins, ties break low") {
  // v(rank 1) sees above {a:2, b:3, c:4}; p(rank 5) sits above b, so b sees
  // one tentative 1 and flips to 2, giving v the multiset {1,1,2}.
  GraphBuilder b(5);
  b.add_edge(0, 1);  // v-a
  b.add_edge(0, 2);  // v-b
  b.add_edge(0, 3);  // v-c
  b.add_edge(2, 4);  // b-p
  Graph g = std::move(b).build();
  Coloring ranks = Coloring::from_assignment({1, 2, 3, 4, 5});
  auto o = acyclic_orientation(g, ranks);
  auto res = first_sweep(g, o, 2);
  CHECK(res.tentative.assignment[4] == 1);  // sink
  CHECK(res.tentative.assignment[3] == 1);  // sink
  CHECK(res.tentative.assignment[1] == 1);  // sink
  CHECK(res.tentative.assignment[2] == 2);  // sees {1}
  CHECK(res.tentative.assignment[0] == 2);  // sees {1,1,2}
}

TEST_CASE("first sweep: minority property recount on a random 5-regular graph") {
  Graph g = gen_random_regular(500, 5, 8);
  auto colored = compute_proper_coloring(g, identity_ids(500));
  auto o = acyclic_orientation(g, colored.coloring);
  auto res = first_sweep(g, o, 2);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    int same = 0, diff = 0;
    for (const auto& port : g.ports(v)) {
      if (colored.coloring.assignment[port.node] < colored.coloring.assignment[v]) continue;
      if (res.tentative.assignment[port.node] == res.tentative.assignment[v])
        ++same;
      else
        ++diff;
    }
    CHECK(same <= diff);  // palette 2 minority
    CHECK(res.above[v] == same + diff);
    CHECK(res.same[v] == same);
  }
  CHECK(res.rounds_used <= colored.coloring.palette_size);
}

TEST_CASE("decide_three: case thresholds and the impossible branch") {
  // t = k with nothing below keeps the tentative color.
  CHECK(decide_three(1, 3, 0, 0, 0, 3) == std::pair{Decision::Keep, Label{1}});
  // The three cases of the 3-partial 3-coloring run at d = 5.
  CHECK(decide_three(1, 2, 1, 1, 0, 3) == std::pair{Decision::Keep, Label{1}});
  CHECK(decide_three(1, 1, 2, 1, 0, 3) == std::pair{Decision::Special, Label{3}});
  CHECK(decide_three(1, 2, 2, 0, 0, 3) == std::pair{Decision::Switch, Label{2}});
  CHECK(decide_three(2, 2, 2, 0, 0, 3) == std::pair{Decision::Switch, Label{1}});
  // Handing the rule inconsistent counters trips the internal guard.
  CHECK_THROWS_AS(decide_three(1, 1, 1, 1, 0, 3), internal_error);
}

TEST_CASE("decide_full: special color, qualifying free color, guards") {
  CHECK(decide_full(1, 4, 0, 0, 0, 4, 6, {}) == std::pair{Decision::Keep, Label{1}});
  CHECK(decide_full(1, 1, 3, 1, 0, 4, 6, {}) == std::pair{Decision::Special, Label{4}});
  // free colors carry (color, above tentative picks); d-k = 2 here
  std::vector<std::pair<Label, int>> picks{{2, 3}, {3, 1}};
  CHECK(decide_full(1, 2, 1, 0, 0, 4, 6, picks) == std::pair{Decision::Switch, Label{3}});
  std::vector<std::pair<Label, int>> tie{{2, 1}, {3, 1}};
  CHECK(decide_full(1, 2, 1, 0, 0, 4, 6, tie) == std::pair{Decision::Switch, Label{2}});
  CHECK_THROWS_AS(decide_full(1, 2, 1, 0, 0, 4, 6, {}), internal_error);
  std::vector<std::pair<Label, int>> overloaded{{2, 5}};
  CHECK_THROWS_AS(decide_full(1, 2, 1, 0, 0, 4, 6, overloaded), internal_error);
}

TEST_CASE("two-sweep three-color mode: verified k-partial 3-colorings") {
  for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull}) {
    Graph g = gen_random_regular(200, 5, seed);
    auto result = two_sweep_coloring(g, 3, TwoSweepMode::ThreeColor, identity_ids(200));
    CHECK(result.final_coloring.palette_size == 3);
    CHECK(verify_partial_coloring(g, result.final_coloring, 3).empty());
    CHECK(result.sweep_rounds <= 2 * result.initial_palette);
    recount_sweep_records(g, result, 3);
    check_sweep_safety(g, result, 3);
  }
}

TEST_CASE("two-sweep full-palette mode: verified k-partial k-colorings") {
  struct Case {
    int k, d;
  };
  for (Case c : {Case{4, 6}, Case{5, 7}}) {
    Graph g = gen_random_regular(210, c.d, 11);
    auto result = two_sweep_coloring(g, c.k, TwoSweepMode::FullPalette, identity_ids(g.node_count()));
    CHECK(result.final_coloring.palette_size == c.k);
    CHECK(verify_partial_coloring(g, result.final_coloring, c.k).empty());
    recount_sweep_records(g, result, c.k);
    check_sweep_safety(g, result, c.k);
  }
}

TEST_CASE("two-sweep rejects parameter and regularity violations") {
  Graph g4 = gen_random_regular(100, 4, 5);
  CHECK_THROWS_AS(two_sweep_coloring(g4, 3, TwoSweepMode::ThreeColor, identity_ids(100)),
                  precondition_error);  // d = 4 < 3k-4 = 5
  Graph g5 = gen_random_regular(100, 5, 5);
  CHECK_THROWS_AS(two_sweep_coloring(g5, 4, TwoSweepMode::FullPalette, identity_ids(100)),
                  precondition_error);  // d = 5 < k+2 = 6
  CHECK_THROWS_AS(two_sweep_coloring(g5, 2, TwoSweepMode::ThreeColor, identity_ids(100)),
                  precondition_error);  // k < 3

  auto tree = gen_regular_tree(3, 2);  // not regular (leaves)
  CHECK_THROWS_AS(
      two_sweep_coloring(tree.graph, 3, TwoSweepMode::ThreeColor, identity_ids(10)),
      precondition_error);
}

TEST_CASE("layered MIS coloring: weak 2-coloring and deeper palettes") {
  // c = 2 on a cycle: a weak 2-coloring.
  Graph c7 = cycle(7);
  auto weak = layered_mis_coloring(c7, 2, identity_ids(7));
  CHECK(verify_partial_coloring(c7, weak.coloring, 1).empty());
  CHECK(reference::is_maximal_independent_set(c7, weak.layers[0]));

  // c = 3 on C7: a 2-partial 3-coloring.
  auto res3 = layered_mis_coloring(c7, 3, identity_ids(7));
  CHECK(verify_partial_coloring(c7, res3.coloring, 2).empty());

  // c = 4 on a random 3-regular graph: a 3-partial 4-coloring.
  Graph g = gen_random_regular(200, 3, 77);
  auto res4 = layered_mis_coloring(g, 4, identity_ids(200));
  CHECK(verify_partial_coloring(g, res4.coloring, 3).empty());

  // every layer is independent and maximal in its residual graph
  std::vector<char> remaining(g.node_count(), 1);
  for (const auto& layer : res4.layers) {
    auto [sub, old_of] = induced_subgraph(g, remaining);
    std::vector<char> sub_layer(sub.node_count(), 0);
    for (NodeId i = 0; i < sub.node_count(); ++i) sub_layer[i] = layer[old_of[i]];
    CHECK(reference::is_maximal_independent_set(sub, sub_layer));
    for (NodeId v = 0; v < g.node_count(); ++v)
      if (layer[v]) remaining[v] = 0;
  }

  CHECK_THROWS_AS(layered_mis_coloring(c7, 4, identity_ids(7)), precondition_error);  // deg 2 < 3
}

TEST_CASE("compose_proper_coloring: proper palettes within c*(d-k+1) <= d") {
  // C6 with its proper 2-coloring as a 2-partial input.
  Graph c6 = cycle(6);
  Coloring pc6 = Coloring::from_assignment({1, 2, 1, 2, 1, 2});
  auto res = compose_proper_coloring(c6, pc6, 2, 2, identity_ids(6));
  CHECK(verify_proper_coloring(c6, res.coloring).empty());
  CHECK(res.coloring.palette_size <= 2);

  // Cube: 3-regular, its bipartition is a 3-partial 2-coloring.
  Graph q3 = cube_graph();
  std::vector<Label> parity(8);
  for (NodeId v = 0; v < 8; ++v) parity[v] = 1 + (__builtin_popcount(v) % 2);
  auto cube = compose_proper_coloring(q3, Coloring::from_assignment(parity), 3, 2, identity_ids(8));
  CHECK(verify_proper_coloring(q3, cube.coloring).empty());
  std::set<Label> used(cube.coloring.assignment.begin(), cube.coloring.assignment.end());
  CHECK(used.size() <= 2);  // monochromatic degree 0

  // K_{6,6}: 6-regular, bipartition read as a 5-partial 2-coloring.
  Graph k66 = complete_bipartite(6);
  std::vector<Label> sides(12);
  for (NodeId v = 0; v < 12; ++v) sides[v] = v < 6 ? 1 : 2;
  auto big = compose_proper_coloring(k66, Coloring::from_assignment(sides), 5, 2, identity_ids(12));
  CHECK(verify_proper_coloring(k66, big.coloring).empty());
  CHECK(big.coloring.palette_size == 4);  // 2 * (6-5+1)
  std::set<Label> palette(big.coloring.assignment.begin(), big.coloring.assignment.end());
  CHECK(palette.size() <= 4);
}

TEST_CASE("compose_proper_coloring rejects bad inputs") {
  Graph c6 = cycle(6);
  // inequality k >= (c-1)d/c + 1 fails: k=1, c=2, d=2 needs k >= 2
  CHECK_THROWS_AS(compose_proper_coloring(c6, Coloring::from_assignment({1, 2, 1, 2, 1, 2}), 1, 2,
                                          identity_ids(6)),
                  precondition_error);
  // invalid partial coloring input
  CHECK_THROWS_AS(compose_proper_coloring(c6, Coloring::from_assignment({1, 1, 1, 1, 1, 1}), 2, 2,
                                          identity_ids(6)),
                  precondition_error);
}

TEST_CASE("two-sweep round counts scale with the square of the degree") {
  // Sweep length tracks the initial palette, which settles near d^2.
  std::vector<int> rounds;
  for (int d : {5, 8, 11}) {
    Graph g = gen_random_regular(200, d, 9);
    auto result = two_sweep_coloring(g, 3, TwoSweepMode::ThreeColor, identity_ids(200));
    CHECK(verify_partial_coloring(g, result.final_coloring, 3).empty());
    CHECK(result.total_rounds() <= 8 * d * d);
    rounds.push_back(result.total_rounds());
  }
  CHECK(rounds[0] < rounds[1]);
  CHECK(rounds[1] < rounds[2]);
}

TEST_CASE("orientation JSON round-trip") {
  Graph g = cycle(5);
  auto o = acyclic_orientation(g, Coloring::from_assignment({1, 2, 1, 2, 3}));
  auto j = o.to_json(g);
  auto back = Orientation::from_json(g, j);
  CHECK(back.to_json(g) == j);
  CHECK(j["directed_edges"].size() == 5);
}
