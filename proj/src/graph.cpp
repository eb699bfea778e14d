#include "lclab/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <queue>
#include <sstream>

#include "lclab/errors.hpp"

namespace lclab {

int Graph::max_degree() const {
  int d = 0;
  for (const auto& a : adjacency_) d = std::max(d, static_cast<int>(a.size()));
  return d;
}

int Graph::min_degree() const {
  if (adjacency_.empty()) return 0;
  int d = degree(0);
  for (const auto& a : adjacency_) d = std::min(d, static_cast<int>(a.size()));
  return d;
}

std::optional<int> Graph::regular_degree() const {
  if (adjacency_.empty()) return 0;
  int d = degree(0);
  for (const auto& a : adjacency_)
    if (static_cast<int>(a.size()) != d) return std::nullopt;
  return d;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  for (const auto& t : adjacency_[u])
    if (t.node == v) return true;
  return false;
}

void Graph::check_port_symmetry() const {
  for (NodeId v = 0; v < node_count(); ++v) {
    for (int p = 0; p < degree(v); ++p) {
      const PortTarget& t = adjacency_[v][p];
      if (t.node < 0 || t.node >= node_count() || t.port < 0 || t.port >= degree(t.node))
        throw internal_error("port target out of range");
      const PortTarget& back = adjacency_[t.node][t.port];
      if (back.node != v || back.port != p) throw internal_error("port symmetry violated");
    }
  }
}

GraphBuilder::GraphBuilder(NodeId n) : adjacency_(static_cast<std::size_t>(n)) {
  if (n < 0) throw precondition_error("negative node count");
}

void GraphBuilder::add_edge(NodeId u, NodeId v) {
  const int pu = static_cast<int>(adjacency_[u].size());
  const int pv = static_cast<int>(adjacency_[v].size()) + (u == v ? 1 : 0);
  adjacency_[u].push_back(PortTarget{v, pv});
  adjacency_[v].push_back(PortTarget{u, pu});
  ++edge_count_;
}

void GraphBuilder::add_edge_at(NodeId u, int pu, NodeId v, int pv) {
  auto place = [this](NodeId a, int pa, NodeId b, int pb) {
    auto& row = adjacency_[a];
    if (static_cast<int>(row.size()) <= pa) row.resize(pa + 1);
    if (row[pa].has_value()) throw precondition_error("port already occupied");
    row[pa] = PortTarget{b, pb};
  };
  place(u, pu, v, pv);
  place(v, pv, u, pu);
  ++edge_count_;
}

bool GraphBuilder::has_edge(NodeId u, NodeId v) const {
  for (const auto& t : adjacency_[u])
    if (t && t->node == v) return true;
  return false;
}

Graph GraphBuilder::build() && {
  Graph g;
  g.adjacency_.resize(adjacency_.size());
  for (NodeId v = 0; v < static_cast<NodeId>(adjacency_.size()); ++v) {
    g.adjacency_[v].reserve(adjacency_[v].size());
    for (const auto& slot : adjacency_[v]) {
      if (!slot) throw precondition_error("gap in port numbering");
      g.adjacency_[v].push_back(*slot);
    }
  }
  g.edge_count_ = edge_count_;
  // no self-loops / parallel edges
  for (NodeId v = 0; v < g.node_count(); ++v) {
    for (int p = 0; p < g.degree(v); ++p) {
      const auto& t = g.adjacency_[v][p];
      if (t.node == v) throw precondition_error("self-loop");
      for (int q = p + 1; q < g.degree(v); ++q)
        if (g.adjacency_[v][q].node == t.node) throw precondition_error("parallel edge");
    }
  }
  g.check_port_symmetry();
  return g;
}

std::size_t Ball::internal_edge_count() const {
  std::size_t twice = 0;
  for (const auto& row : adj)
    for (const auto& slot : row)
      if (slot) ++twice;
  return twice / 2;
}

static Ball ball_impl(const Graph& g, NodeId center, int radius, std::span<const Label> labels) {
  if (radius < 0) throw precondition_error("negative ball radius");
  Ball b;
  b.center_original = center;
  b.radius = radius;

  std::vector<int> dist(g.node_count(), -1);
  dist[center] = 0;
  std::vector<NodeId> frontier{center}, order{center};
  for (int level = 0; level < radius && !frontier.empty(); ++level) {
    std::vector<NodeId> next;
    for (NodeId v : frontier)
      for (const auto& t : g.ports(v))
        if (dist[t.node] < 0) {
          dist[t.node] = level + 1;
          next.push_back(t.node);
        }
    std::sort(next.begin(), next.end());
    order.insert(order.end(), next.begin(), next.end());
    frontier = std::move(next);
  }

  std::vector<NodeId> local(g.node_count(), -1);
  for (std::size_t i = 0; i < order.size(); ++i) local[order[i]] = static_cast<NodeId>(i);

  b.original = order;
  b.dist.reserve(order.size());
  b.label.reserve(order.size());
  b.host_degree.reserve(order.size());
  b.adj.reserve(order.size());
  for (NodeId host : order) {
    b.dist.push_back(dist[host]);
    b.label.push_back(labels.empty() ? 0 : labels[host]);
    b.host_degree.push_back(g.degree(host));
    std::vector<std::optional<PortTarget>> row(g.degree(host));
    for (int p = 0; p < g.degree(host); ++p) {
      const auto& t = g.neighbor(host, p);
      if (local[t.node] >= 0) row[p] = PortTarget{local[t.node], t.port};
    }
    b.adj.push_back(std::move(row));
  }
  return b;
}

Ball ball(const Graph& g, NodeId center, int radius) { return ball_impl(g, center, radius, {}); }

Ball ball(const Graph& g, NodeId center, int radius, std::span<const Label> labels) {
  if (!labels.empty() && static_cast<NodeId>(labels.size()) != g.node_count())
    throw precondition_error("label vector size mismatch");
  return ball_impl(g, center, radius, labels);
}

std::vector<int> bfs_distances(const Graph& g, NodeId source, int cap) {
  std::vector<int> dist(g.node_count(), -1);
  dist[source] = 0;
  std::queue<NodeId> q;
  q.push(source);
  while (!q.empty()) {
    NodeId v = q.front();
    q.pop();
    if (cap >= 0 && dist[v] >= cap) continue;
    for (const auto& t : g.ports(v))
      if (dist[t.node] < 0) {
        dist[t.node] = dist[v] + 1;
        q.push(t.node);
      }
  }
  return dist;
}

int diameter(const Graph& g) {
  int diam = 0;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    auto dist = bfs_distances(g, v);
    for (int d : dist) {
      if (d < 0) throw precondition_error("diameter of a disconnected graph");
      diam = std::max(diam, d);
    }
  }
  return diam;
}

std::pair<Graph, std::vector<NodeId>> induced_subgraph(const Graph& g, const std::vector<char>& keep) {
  std::vector<NodeId> old_of;
  std::vector<NodeId> new_of(g.node_count(), -1);
  for (NodeId v = 0; v < g.node_count(); ++v)
    if (keep[v]) {
      new_of[v] = static_cast<NodeId>(old_of.size());
      old_of.push_back(v);
    }
  GraphBuilder builder(static_cast<NodeId>(old_of.size()));
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (!keep[v]) continue;
    for (const auto& t : g.ports(v))
      if (keep[t.node] && t.node > v) builder.add_edge(new_of[v], new_of[t.node]);
  }
  return {std::move(builder).build(), std::move(old_of)};
}

std::vector<char> leaves_of(const Graph& g) {
  std::vector<char> mask(g.node_count(), 0);
  for (NodeId v = 0; v < g.node_count(); ++v) mask[v] = g.degree(v) == 1;
  return mask;
}

std::string write_edge_list(const Graph& g) {
  std::ostringstream out;
  out << g.node_count() << ' ' << g.edge_count() << ' ' << g.max_degree() << '\n';
  for (NodeId u = 0; u < g.node_count(); ++u)
    for (int p = 0; p < g.degree(u); ++p) {
      const auto& t = g.neighbor(u, p);
      if (t.node > u) out << u << ' ' << t.node << ' ' << p << ' ' << t.port << '\n';
    }
  return out.str();
}

Graph read_edge_list(const std::string& text) {
  std::istringstream in(text);
  std::int64_t n = 0, m = 0, d = 0;
  if (!(in >> n >> m >> d)) throw precondition_error("bad edge-list header");
  GraphBuilder builder(static_cast<NodeId>(n));
  for (std::int64_t i = 0; i < m; ++i) {
    std::int64_t u, v, pu, pv;
    if (!(in >> u >> v >> pu >> pv)) throw precondition_error("truncated edge list");
    builder.add_edge_at(static_cast<NodeId>(u), static_cast<int>(pu), static_cast<NodeId>(v),
                        static_cast<int>(pv));
  }
  return std::move(builder).build();
}

void write_edge_list_file(const Graph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw precondition_error("cannot open for writing: " + path);
  out << write_edge_list(g);
}

Graph read_edge_list_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw precondition_error("cannot open for reading: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return read_edge_list(buf.str());
}

std::string to_dot(const Graph& g) {
  std::ostringstream out;
  out << "graph G {\n";
  for (NodeId u = 0; u < g.node_count(); ++u)
    for (int p = 0; p < g.degree(u); ++p) {
      const auto& t = g.neighbor(u, p);
      if (t.node > u) out << "  " << u << " -- " << t.node << ";\n";
    }
  out << "}\n";
  return out.str();
}

}  // namespace lclab
