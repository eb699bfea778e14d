#include <numeric>
#include <set>

#include "doctest.h"

#include "lclab/errors.hpp"
#include "lclab/generators.hpp"
#include "lclab/reduction.hpp"
#include "lclab/reference.hpp"
#include "lclab/verify.hpp"
#include "lclab/view.hpp"

using namespace lclab;

namespace {

TwoColoredTree star_host_24() { return gen_2colored_regular_tree(24, 1); }

// All 2^n black/white labelings of n slots.
std::vector<std::vector<std::int64_t>> all_labelings(int n) {
  std::vector<std::vector<std::int64_t>> out;
  for (int mask = 0; mask < (1 << n); ++mask) {
    std::vector<std::int64_t> lab(n);
    for (int i = 0; i < n; ++i) lab[i] = (mask >> i) & 1 ? kBlack : kWhite;
    out.push_back(std::move(lab));
  }
  return out;
}

// 2-partial validity of a labeling at one node of a graph (capped at deg).
bool valid_at(const Graph& g, const std::vector<std::int64_t>& lab, NodeId v) {
  int differing = 0;
  for (const auto& t : g.ports(v)) differing += lab[t.node] != lab[v];
  return differing >= std::min(2, g.degree(v));
}

Gadget bare_gadget(int d, int k) {
  Gadget g;
  g.tree = gen_regular_tree(d, k);
  g.colors.assign(g.tree.level.size(), 0);
  g.degree = d;
  g.depth = k;
  g.root_output = kWhite;
  return g;
}

}  // namespace

TEST_CASE("gadget source tree and gadget extraction counts") {
  auto src = gadget_source_tree(3, 2);
  CHECK(src.tree.graph.node_count() == 94);  // depth k+3 = 5: 1 + 3*(2^5 - 1)
  std::set<Label> distinct(src.colors.begin(), src.colors.end());
  CHECK(distinct.size() == src.colors.size());

  auto colors = gadget_ball_colors(src.tree.graph, src.tree.root, 3, 2, src.colors);
  CHECK(colors.size() == 10);  // 1 + 3 + 6
}

TEST_CASE("build_gadget_pair: memoized oracle yields opposite roots, constant white disqualifies") {
  auto host = star_host_24();
  auto oracle = make_memoized_oracle(host, 3, 2);
  auto [t_white, t_black] = build_gadget_pair(oracle.view, 3, 2);
  CHECK(t_white.root_output == kWhite);
  CHECK(t_black.root_output == kBlack);
  CHECK(t_white.colors.size() == 10);
  CHECK(t_black.colors.size() == 10);
  CHECK(t_white.colors[0] != t_black.colors[0]);

  CHECK_THROWS_AS(build_gadget_pair(constant_white_oracle(2), 3, 2), disqualified_error);
}

TEST_CASE("build_gadget_pair: odd candidate radius rounds the geometry up") {
  // Radius-1 candidate: white iff the center color is even.  On the
  // all-distinct source colors the root has enough differing neighbors.
  ViewFunction parity{1, [](const Ball& b) { return b.label[0] % 2 == 0 ? kWhite : kBlack; }};
  auto [w, b] = build_gadget_pair(parity, 3, 1);
  CHECK(w.depth == 2);  // rounded up to even
  CHECK(b.depth == 2);
  CHECK(w.colors.size() == 10);
}

TEST_CASE("verify_gadget_property: trivial root, constructed negative") {
  Gadget root_only = bare_gadget(2, 0);
  std::vector<std::int64_t> one{kWhite};
  CHECK(verify_gadget_property(root_only, one));

  Gadget g32 = bare_gadget(3, 2);
  // depth-2 nodes all opposite to the root
  std::vector<std::int64_t> lab(10, kWhite);
  for (NodeId v = 0; v < 10; ++v)
    if (g32.tree.level[v] == 2) lab[v] = kBlack;
  CHECK(!verify_gadget_property(g32, lab));
  lab[4] = kWhite;  // one root-colored node at distance 2 flips it back
  CHECK(verify_gadget_property(g32, lab));
}

TEST_CASE("gadget property holds for every labeling valid at the internal nodes (d=3, k=2)") {
  Gadget g32 = bare_gadget(3, 2);
  const Graph& tree = g32.tree.graph;
  int valid_count = 0;
  for (const auto& lab : all_labelings(10)) {
    bool valid = valid_at(tree, lab, 0);
    for (NodeId v = 1; v < 10 && valid; ++v)
      if (g32.tree.level[v] == 1) valid = valid_at(tree, lab, v);
    if (!valid) continue;
    ++valid_count;
    CHECK(verify_gadget_property(g32, lab));
  }
  CHECK(valid_count > 0);
}

TEST_CASE("gadget property holds for every valid labeling (d=2, k=2)") {
  Gadget g22 = bare_gadget(2, 2);
  const Graph& tree = g22.tree.graph;
  int valid_count = 0;
  for (const auto& lab : all_labelings(5)) {
    bool valid = valid_at(tree, lab, 0);
    for (NodeId v = 1; v < 5 && valid; ++v)
      if (g22.tree.level[v] == 1) valid = valid_at(tree, lab, v);
    if (!valid) continue;
    ++valid_count;
    CHECK(verify_gadget_property(g22, lab));
  }
  CHECK(valid_count > 0);
}

TEST_CASE("virtual graph: degenerate d=2, k=1 host edge gives two merged paths") {
  auto host = gen_2colored_regular_tree(1, 1);  // a single V-U edge
  Gadget w = bare_gadget(2, 1), b = bare_gadget(2, 1);
  // hand-made disjoint colors so the k=1 geometry stays valid
  w.colors = {1, 2, 3};
  b.colors = {4, 5, 6};
  auto vg = build_virtual_graph(host, 2, 1, w, b);
  CHECK(vg.graph.node_count() == 9);  // two 5-node paths sharing one node
  CHECK(vg.merged.size() == 1);
  CHECK(vg.pendants.empty());  // d-2 = 0
  CHECK(vg.graph.degree(vg.merged[0].vg_node) == 2);
  CHECK(verify_distance_coloring(vg.graph, std::span<const Label>(vg.colors), 2).empty());
}

TEST_CASE("virtual graph over the 24-star host: bookkeeping and coloring") {
  auto host = star_host_24();
  auto oracle = make_memoized_oracle(host, 3, 2);
  auto [t_white, t_black] = build_gadget_pair(oracle.view, 3, 2);

  for (auto mode : {CompletionMode::Efficient, CompletionMode::Distinct}) {
    auto vg = build_virtual_graph(host, 3, 2, t_white, t_black, mode);
    CHECK(vg.merged.size() == host.graph.edge_count());  // 24
    CHECK(vg.graph.node_count() == 1150);
    CHECK(vg.pendants.size() == 24);  // d-2 = 1 per merged node
    for (const auto& e : vg.merged) CHECK(vg.graph.degree(e.vg_node) == 3);
    vg.graph.check_port_symmetry();

    // precolored root balls equal the gadgets node-for-node
    for (NodeId x = 0; x < host.graph.node_count(); ++x) {
      const Gadget& expected = host.side[x] == 0 ? t_white : t_black;
      auto got = gadget_ball_colors(vg.graph, vg.tvirt_root[x], 3, 2,
                                    std::span<const Label>(vg.colors));
      CHECK(got == expected.colors);
    }

    // the completed coloring is a valid distance-(k+1) coloring
    CHECK(verify_distance_coloring(vg.graph, std::span<const Label>(vg.colors), 3).empty());
  }
}

TEST_CASE("virtual graph rejects a host with the wrong degree") {
  auto wrong = gen_2colored_regular_tree(6, 1);  // needs 24 for d=3, k=2
  Gadget w = bare_gadget(3, 2), b = bare_gadget(3, 2);
  CHECK_THROWS_AS(build_virtual_graph(wrong, 3, 2, w, b), precondition_error);

  auto host = star_host_24();
  Gadget shallow = bare_gadget(3, 1);  // wrong depth for k = 2
  CHECK_THROWS_AS(build_virtual_graph(host, 3, 2, shallow, shallow), precondition_error);
}

TEST_CASE("extract_orientation: rule application and the all-black degenerate case") {
  auto host = star_host_24();
  auto oracle = make_memoized_oracle(host, 3, 2);
  auto [t_white, t_black] = build_gadget_pair(oracle.view, 3, 2);
  auto vg = build_virtual_graph(host, 3, 2, t_white, t_black, CompletionMode::Distinct);

  // white merged node on a V-U edge orients V -> U
  std::map<NodeId, std::int64_t> outputs;
  for (const auto& e : vg.merged) outputs[e.vg_node] = kWhite;
  auto o = extract_orientation(vg, outputs);
  for (const auto& e : vg.merged) {
    const NodeId v_side = vg.host_side[e.host_u] == 0 ? e.host_u : e.host_v;
    CHECK(o.out_degree(v_side) > 0);
  }

  // all black: every edge points U -> V, so the V-side root is a sink
  for (auto& [node, color] : outputs) color = kBlack;
  auto all_black = extract_orientation(vg, outputs);
  auto exempt = leaves_of(host.graph);
  auto sinks = verify_sinkless(host.graph, all_black, &exempt);
  REQUIRE(sinks.size() == 1);
  CHECK(sinks[0].node == host.root);

  std::map<NodeId, std::int64_t> missing;
  CHECK_THROWS_AS(extract_orientation(vg, missing), precondition_error);
}

TEST_CASE("run_reduction: memoized oracle produces a sinkless orientation") {
  auto host = star_host_24();
  auto oracle = make_memoized_oracle(host, 3, 2);
  auto report = run_reduction(host, oracle.view, 3, 2, CompletionMode::Distinct);
  CHECK(!report.disqualified);
  CHECK(report.merged_count == 24);
  CHECK(report.host_edges == 24);
  CHECK(report.roots_consistent);
  CHECK(report.partial_violations == 0);
  CHECK(report.sinkless_violations == 0);
  CHECK(report.sound);
}

TEST_CASE("run_reduction: constant white disqualifies at the gadget stage") {
  auto host = star_host_24();
  auto report = run_reduction(host, constant_white_oracle(2), 3, 2);
  CHECK(report.disqualified);
  CHECK(!report.sound);
}

TEST_CASE("run_reduction: a tampered candidate is reported and sinklessness is not claimed") {
  auto host = star_host_24();
  auto oracle = make_memoized_oracle(host, 3, 2);
  auto gadgets = build_gadget_pair(oracle.view, 3, 2);
  auto vg = build_virtual_graph(host, 3, 2, gadgets.first, gadgets.second,
                                CompletionMode::Distinct);

  // Corrupt a copy of the table: one merged node, its tree parents and its
  // pendant all get the same output, so the merged node has no differing
  // neighbor left.
  auto table = std::make_shared<std::map<std::string, std::int64_t>>(*oracle.table);
  const auto& entry = vg.merged.front();
  std::vector<NodeId> forced{entry.vg_node};
  for (const auto& t : vg.graph.ports(entry.vg_node)) forced.push_back(t.node);
  for (NodeId v : forced)
    (*table)[canonical_ball_key(ball(vg.graph, v, 2, vg.colors))] = kWhite;
  ViewFunction tampered{2, [table](const Ball& b) {
                          auto it = table->find(canonical_ball_key(b));
                          if (it == table->end()) throw internal_error("unknown ball");
                          return it->second;
                        }};

  auto report = run_reduction(host, tampered, 3, 2, CompletionMode::Distinct);
  CHECK(!report.disqualified);
  CHECK(report.partial_violations > 0);
  CHECK(!report.partial_ok);
  CHECK(!report.sound);
}

TEST_CASE("run_reduction stays sound on a deeper host and on d = 4") {
  // depth-2 host: internal host nodes merge on both sides
  auto deep = gen_2colored_regular_tree(24, 2);
  auto deep_oracle = make_memoized_oracle(deep, 3, 2);
  auto deep_report = run_reduction(deep, deep_oracle.view, 3, 2, CompletionMode::Distinct);
  CHECK(deep_report.sound);
  CHECK(deep_report.merged_count == deep.graph.edge_count());
  CHECK(deep_report.vg_nodes == 26542);

  // d = 4: two pendants per merged node
  auto host4 = gen_2colored_regular_tree(4 * 3 * 3 * 3, 1);
  auto oracle4 = make_memoized_oracle(host4, 4, 2);
  auto report4 = run_reduction(host4, oracle4.view, 4, 2, CompletionMode::Distinct);
  CHECK(report4.sound);
  CHECK(report4.merged_count == 108);
}

TEST_CASE("no memoized oracle exists for degree-2 hosts") {
  // With d = 2 the virtual graph is a path, a valid 2-partial 2-coloring of
  // a path alternates properly, and the pinned roots lie at even distances
  // with opposite outputs: the finite instance is infeasible.
  auto host = gen_2colored_regular_tree(2, 1);
  CHECK_THROWS_AS(make_memoized_oracle(host, 2, 2), precondition_error);
}

TEST_CASE("memoized oracle replays the stored coloring on the source tree") {
  auto host = star_host_24();
  auto oracle = make_memoized_oracle(host, 3, 2);
  auto src = gadget_source_tree(3, 2);
  auto outputs = run_view_based(src.tree.graph, oracle.view, src.colors);
  for (NodeId v = 0; v < src.tree.graph.node_count(); ++v)
    CHECK(outputs[v] == (src.tree.level[v] % 2 == 0 ? kWhite : kBlack));
}

TEST_CASE("solve_two_partial_two_coloring: feasible and infeasible instances") {
  // On a path every internal node needs both neighbors to differ, so the
  // coloring must alternate properly; equal pinned endpoints at even
  // distance are feasible, opposite ones are not.
  GraphBuilder b(5);
  for (NodeId v = 0; v + 1 < 5; ++v) b.add_edge(v, v + 1);
  Graph p5 = std::move(b).build();
  std::vector<std::optional<std::int64_t>> fixed(5);
  fixed[0] = kWhite;
  fixed[4] = kWhite;
  auto solved = solve_two_partial_two_coloring(p5, fixed);
  REQUIRE(solved.has_value());
  CHECK((*solved)[0] == kWhite);
  CHECK((*solved)[4] == kWhite);
  CHECK(*solved == std::vector<std::int64_t>{kWhite, kBlack, kWhite, kBlack, kWhite});

  std::vector<std::optional<std::int64_t>> impossible(5);
  impossible[0] = kWhite;
  impossible[4] = kBlack;
  CHECK(!solve_two_partial_two_coloring(p5, impossible).has_value());
  auto exempt = leaves_of(p5);
  CHECK(verify_partial_coloring(p5, std::span<const Label>(*solved), 2, PartialPolicy::Capped,
                                &exempt)
            .empty());

  // Star with everything pinned white: the center cannot find two differing
  // neighbors.
  GraphBuilder sb(4);
  sb.add_edge(0, 1);
  sb.add_edge(0, 2);
  sb.add_edge(0, 3);
  Graph star = std::move(sb).build();
  std::vector<std::optional<std::int64_t>> all_white(4, kWhite);
  CHECK(!solve_two_partial_two_coloring(star, all_white).has_value());
}
