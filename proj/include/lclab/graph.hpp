#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace lclab {

using NodeId = std::int32_t;
using Label = std::int64_t;

// Endpoint of a port: the neighbor node and the port index under which this
// node appears in the neighbor's adjacency list.
struct PortTarget {
  NodeId node;
  int port;
  bool operator==(const PortTarget&) const = default;
};

// Undirected port-numbered graph.  The position of a neighbor in a node's
// adjacency list is its port number; port symmetry is validated on build.
// Graphs are immutable after construction.
class Graph {
 public:
  Graph() = default;

  NodeId node_count() const { return static_cast<NodeId>(adjacency_.size()); }
  int degree(NodeId v) const { return static_cast<int>(adjacency_[v].size()); }
  const PortTarget& neighbor(NodeId v, int port) const { return adjacency_[v][port]; }
  const std::vector<PortTarget>& ports(NodeId v) const { return adjacency_[v]; }

  std::size_t edge_count() const { return edge_count_; }
  int max_degree() const;
  int min_degree() const;
  // Uniform degree if the graph is regular, nullopt otherwise.
  std::optional<int> regular_degree() const;

  bool has_edge(NodeId u, NodeId v) const;

  // Full-scan port symmetry check; throws internal_error on violation.
  void check_port_symmetry() const;

  bool operator==(const Graph& other) const { return adjacency_ == other.adjacency_; }

 private:
  friend class GraphBuilder;
  std::vector<std::vector<PortTarget>> adjacency_;
  std::size_t edge_count_ = 0;
};

// Incremental construction; ports are assigned in insertion order unless
// add_edge_at pins them explicitly (used by file input).
class GraphBuilder {
 public:
  explicit GraphBuilder(NodeId n);

  // Appends the edge at the next free port of each endpoint.
  void add_edge(NodeId u, NodeId v);
  // Places the edge at the given ports; gaps must be filled before build().
  void add_edge_at(NodeId u, int pu, NodeId v, int pv);

  bool has_edge(NodeId u, NodeId v) const;
  int degree(NodeId u) const { return static_cast<int>(adjacency_[u].size()); }

  // Validates (no self-loops, no parallel edges, port symmetry, no gaps)
  // and freezes the graph.
  Graph build() &&;

 private:
  std::vector<std::vector<std::optional<PortTarget>>> adjacency_;
  std::size_t edge_count_ = 0;
};

// Radius-bounded view of a node: the subgraph induced by all nodes at
// distance <= radius from the center, with host port numbers preserved and a
// label payload copied verbatim.  Local ids are BFS order, ties broken by
// original id; local id 0 is the center.
struct Ball {
  NodeId center_original = 0;
  int radius = 0;
  std::vector<NodeId> original;  // local id -> host id
  std::vector<int> dist;         // from the center
  std::vector<Label> label;
  std::vector<int> host_degree;  // full degree in the host graph
  // adj[local][host port]: in-ball neighbor as (local id, host back-port),
  // or nullopt when that port leads outside the ball.
  std::vector<std::vector<std::optional<PortTarget>>> adj;

  NodeId size() const { return static_cast<NodeId>(original.size()); }
  std::size_t internal_edge_count() const;
  bool is_tree() const { return internal_edge_count() + 1 == original.size(); }
};

Ball ball(const Graph& g, NodeId center, int radius);
Ball ball(const Graph& g, NodeId center, int radius, std::span<const Label> labels);

// Single-source BFS distances (-1 = unreachable); cap < 0 means unbounded.
std::vector<int> bfs_distances(const Graph& g, NodeId source, int cap = -1);
int diameter(const Graph& g);

// Induced subgraph on `keep` (ports in insertion order by ascending old node
// and old port).  Returns the subgraph and the old-id of each new node.
std::pair<Graph, std::vector<NodeId>> induced_subgraph(const Graph& g, const std::vector<char>& keep);

std::vector<char> leaves_of(const Graph& g);  // degree-1 mask

// Text edge-list format: header "n m d", then one line "u v pu pv" per edge,
// emitted in canonical order (ascending u, then ascending pu, u < v).
// write(read(s)) == s for files produced by write.
std::string write_edge_list(const Graph& g);
Graph read_edge_list(const std::string& text);
void write_edge_list_file(const Graph& g, const std::string& path);
Graph read_edge_list_file(const std::string& path);

std::string to_dot(const Graph& g);

}  // namespace lclab
