#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "lclab/coloring.hpp"
#include "lclab/generators.hpp"
#include "lclab/graph.hpp"
#include "lclab/partial_coloring_types.hpp"
#include "lclab/view.hpp"

namespace lclab {

// Two-coloring outputs used throughout the reduction pipeline.
inline constexpr std::int64_t kWhite = 1;
inline constexpr std::int64_t kBlack = 2;

// Depth-k rooted subtree with stored distance-(k+1) colors and the output
// the candidate algorithm produced at its root.  Stored in canonical shape
// (gen_regular_tree(d, k)); colors are indexed by that tree's node ids.
struct Gadget {
  RegularTree tree;
  std::vector<Label> colors;
  std::int64_t root_output = 0;
  int degree = 0;
  int depth = 0;
};

// Source instance the gadgets are cut from: a d-regular depth-(k+3) tree,
// distance-(k+1) colored with all-distinct colors.
struct GadgetSource {
  RegularTree tree;
  std::vector<Label> colors;
};

GadgetSource gadget_source_tree(int d, int k);

// Colors of the radius-k ball around `root`, listed in the canonical
// d-regular-tree order used by Gadget::colors.  Throws when the ball does
// not have that shape.
std::vector<Label> gadget_ball_colors(const Graph& g, NodeId root, int d, int k,
                                      std::span<const Label> colors);

// Runs the candidate on the source root and its neighbors and cuts the
// depth-k subtrees rooted at a white node and a black node.  Throws
// disqualified_error when the candidate's outputs at the root and all its
// neighbors coincide (it then cannot be a valid 2-partial 2-coloring
// algorithm).  Odd candidate radii are rounded up to the next even k for the
// geometry; the candidate is still evaluated at its own radius.
std::pair<Gadget, Gadget> build_gadget_pair(const ViewFunction& a, int d, int k);

// true iff for every even distance 2t <= depth some node at distance 2t from
// the gadget root has the root's output.
bool verify_gadget_property(const Gadget& gadget, std::span<const std::int64_t> outputs);

enum class CompletionMode {
  Efficient,  // complete_distance_coloring on top of the gadget colors
  Distinct,   // fresh distinct colors, as the memoized oracle requires
};

struct VirtualGraph {
  Graph graph;
  std::vector<Label> colors;  // total distance-(k+1) coloring
  Graph host;
  std::vector<int> host_side;  // 0 = white side (V), 1 = black side (U)

  struct MergedEntry {
    NodeId host_u, host_v;  // host_u < host_v
    int port_u, port_v;
    NodeId vg_node;
  };
  std::vector<MergedEntry> merged;     // one per host edge
  std::vector<NodeId> tvirt_root;      // per host node
  std::vector<NodeId> pendants;
  std::vector<char> is_merged;         // per vg node
  std::vector<char> is_pendant;
  std::vector<NodeId> precolored;      // vg nodes carrying gadget colors
  int d = 0, k = 0;

  nlohmann::ordered_json sidecar_json() const;
};

// Glues a d-regular depth-2k virtual tree over every host node, merging
// leaves along host edges (port i of v meets port j of u), attaches d-2
// pendants per merged node, precolors every radius-k root ball with the
// matching gadget and completes the distance-(k+1) coloring.  Internal host
// nodes must have degree d*(d-1)^(2k-1), the leaf count of the virtual tree.
VirtualGraph build_virtual_graph(const TwoColoredTree& host, int d, int k, const Gadget& t_white,
                                 const Gadget& t_black, CompletionMode mode = CompletionMode::Efficient);

// Orients host edge {y,z} from y to z iff the merged node's output equals
// the output of y's side (white for V, black for U).  Exactly one endpoint
// matches, so every host edge gets exactly one direction.
Orientation extract_orientation(const VirtualGraph& vg,
                                const std::map<NodeId, std::int64_t>& merged_outputs);

struct ReductionReport {
  bool disqualified = false;
  std::string disqualification_reason;
  NodeId host_nodes = 0;
  std::size_t host_edges = 0;
  NodeId vg_nodes = 0;
  std::size_t merged_count = 0;
  std::size_t partial_violations = 0;   // candidate outputs as a 2-partial
                                        // 2-coloring on vg, capped, degree-1 exempt
  std::size_t sinkless_violations = 0;  // host leaves exempt
  bool roots_consistent = false;        // candidate output at tree roots matches the side
  bool partial_ok = false;
  bool sinkless_ok = false;
  bool sound = false;  // sinkless claim is only made when the coloring is valid
  Orientation orientation;

  nlohmann::ordered_json to_json() const;
};

// Full pipeline: gadgets from the candidate, virtual graph, candidate
// evaluated everywhere, orientation extracted and checked.
ReductionReport run_reduction(const TwoColoredTree& host, const ViewFunction& a, int d, int k,
                              CompletionMode mode = CompletionMode::Efficient);

// Finite-instance "algorithm" for exercising the pipeline: a valid 2-partial
// 2-coloring is solved globally on the gadget source tree and on the virtual
// graph the pipeline will build, and the view function answers by canonical
// ball lookup.  The table is exposed so tests can corrupt copies of it.
struct MemoizedOracle {
  ViewFunction view;
  std::shared_ptr<std::map<std::string, std::int64_t>> table;
};

MemoizedOracle make_memoized_oracle(const TwoColoredTree& host, int d, int k);

ViewFunction constant_white_oracle(int k);

// Exact solver for 2-partial 2-colorings of trees with fixed outputs at some
// nodes and per-node requirement min(2, deg) (degree-1 nodes exempt).
// Returns nullopt when no valid coloring exists.
std::optional<std::vector<std::int64_t>> solve_two_partial_two_coloring(
    const Graph& tree, const std::vector<std::optional<std::int64_t>>& fixed);

}  // namespace lclab
