#include "lclab/view.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "lclab/errors.hpp"
#include "lclab/parallel.hpp"

namespace lclab {

std::vector<std::int64_t> run_view_based(const Graph& g, const ViewFunction& f,
                                         std::span<const Label> labels, bool parallel) {
  const NodeId n = g.node_count();
  if (static_cast<NodeId>(labels.size()) != n)
    throw precondition_error("run_view_based: labels must cover every node");
  std::vector<std::int64_t> out(n);
  parallel_for_throwing(n, parallel, [&](std::int64_t v) {
    out[v] = f.evaluate(ball(g, static_cast<NodeId>(v), f.radius, labels));
  });
  return out;
}

std::vector<std::int64_t> run_view_serial(const Graph& g, const ViewFunction& f,
                                          std::span<const Label> labels) {
  std::vector<std::int64_t> out(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v)
    out[v] = f.evaluate(ball(g, v, f.radius, labels));
  return out;
}

namespace {

std::string subtree_key(const Ball& b, NodeId node, NodeId parent) {
  std::vector<std::string> child_keys;
  for (const auto& slot : b.adj[node]) {
    if (!slot || slot->node == parent) continue;
    child_keys.push_back(subtree_key(b, slot->node, node));
  }
  std::sort(child_keys.begin(), child_keys.end());
  std::string key = "(" + std::to_string(b.label[node]) + "#" + std::to_string(b.host_degree[node]);
  for (const auto& c : child_keys) key += c;
  key += ")";
  return key;
}

}  // namespace

std::string canonical_ball_key(const Ball& b) {
  if (!b.is_tree()) throw precondition_error("canonical_ball_key: ball is not a tree");
  return subtree_key(b, 0, -1);
}

ViewFunction rounds_to_view(std::shared_ptr<const RoundAlgorithm> algo, int rounds,
                            std::int64_t n_claimed) {
  ViewFunction f;
  f.radius = rounds;
  f.evaluate = [algo, rounds, n_claimed](const Ball& b) {
    return simulate_on_ball(b, *algo, rounds, n_claimed ? n_claimed : b.size());
  };
  return f;
}

namespace {

// One flooded record: everything a node ever says about itself.
struct NodeRecord {
  Label label = 0;
  int degree = 0;
  // per port: (neighbor label, neighbor back-port); missing until learned
  std::vector<std::optional<std::pair<Label, int>>> nbr;

  bool complete() const {
    for (const auto& s : nbr)
      if (!s) return false;
    return true;
  }
};

using Knowledge = std::map<Label, NodeRecord>;

Message encode_knowledge(const Knowledge& k) {
  std::ostringstream out;
  for (const auto& [label, rec] : k) {
    out << label << ' ' << rec.degree;
    for (const auto& s : rec.nbr) {
      if (s)
        out << ' ' << s->first << ' ' << s->second;
      else
        out << " ? ?";
    }
    out << '\n';
  }
  return out.str();
}

Knowledge decode_knowledge(const Message& m) {
  Knowledge k;
  std::istringstream in(m);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    NodeRecord rec;
    Label label;
    ls >> label >> rec.degree;
    rec.nbr.resize(rec.degree);
    for (int p = 0; p < rec.degree; ++p) {
      std::string a, b;
      ls >> a >> b;
      if (a != "?") rec.nbr[p] = std::make_pair(std::stoll(a), std::stoi(b));
    }
    k.emplace(label, std::move(rec));
  }
  return k;
}

void merge_record(Knowledge& k, Label label, const NodeRecord& rec) {
  auto [it, inserted] = k.try_emplace(label, rec);
  if (inserted) return;
  NodeRecord& mine = it->second;
  if (mine.degree != rec.degree)
    throw precondition_error("view_to_rounds: duplicate node labels in the input");
  for (int p = 0; p < rec.degree; ++p) {
    if (!rec.nbr[p]) continue;
    if (mine.nbr[p] && *mine.nbr[p] != *rec.nbr[p])
      throw precondition_error("view_to_rounds: duplicate node labels in the input");
    mine.nbr[p] = rec.nbr[p];
  }
}

struct FloodState {
  Knowledge knowledge;
  Label own = 0;
};

class FloodAlgorithm : public RoundAlgorithm {
 public:
  explicit FloodAlgorithm(ViewFunction f) : f_(std::move(f)) {}

  InitResult init(Label input, const StepContext& ctx) const override {
    FloodState s;
    s.own = input;
    NodeRecord rec;
    rec.label = input;
    rec.degree = ctx.degree;
    rec.nbr.resize(ctx.degree);
    s.knowledge.emplace(input, std::move(rec));
    if (f_.radius == 0) {
      const std::int64_t out = evaluate(s);
      return {std::move(s), out};
    }
    return {std::move(s), std::nullopt};
  }

  std::vector<std::optional<Message>> send(const std::any& state, const StepContext& ctx) const override {
    const auto& s = std::any_cast<const FloodState&>(state);
    // The payload carries the sender's port index so the receiver can fill
    // in its own adjacency-by-labels row.
    std::vector<std::optional<Message>> out(ctx.degree);
    for (int p = 0; p < ctx.degree; ++p)
      out[p] = std::to_string(s.own) + " " + std::to_string(p) + "\n" + encode_knowledge(s.knowledge);
    return out;
  }

  ReceiveResult receive(std::any state, const Inbox& inbox, const StepContext& ctx) const override {
    FloodState s = std::any_cast<FloodState>(std::move(state));
    for (int p = 0; p < static_cast<int>(inbox.size()); ++p) {
      if (!inbox[p]) continue;
      const Message& m = *inbox[p];
      const auto header_end = m.find('\n');
      std::istringstream hs(m.substr(0, header_end));
      Label sender;
      int sender_port;
      hs >> sender >> sender_port;
      auto& mine = s.knowledge.at(s.own);
      if (mine.nbr[p] && (mine.nbr[p]->first != sender || mine.nbr[p]->second != sender_port))
        throw precondition_error("view_to_rounds: duplicate node labels in the input");
      mine.nbr[p] = std::make_pair(sender, sender_port);
      Knowledge theirs = decode_knowledge(m.substr(header_end + 1));
      for (const auto& [label, rec] : theirs) merge_record(s.knowledge, label, rec);
    }
    if (ctx.round >= f_.radius + 1) {
      std::int64_t out = evaluate(s);
      return {std::move(s), out};
    }
    return {std::move(s), std::nullopt};
  }

 private:
  std::int64_t evaluate(const FloodState& s) const {
    // Reconstruct the induced radius-r ball from the flooded records.
    const int r = f_.radius;
    std::map<Label, int> dist;
    dist[s.own] = 0;
    std::vector<Label> order{s.own};
    std::vector<Label> frontier{s.own};
    for (int level = 0; level < r && !frontier.empty(); ++level) {
      std::vector<Label> next;
      for (Label v : frontier) {
        const auto& rec = s.knowledge.at(v);
        for (const auto& slot : rec.nbr) {
          if (!slot) throw internal_error("flood: incomplete record inside the ball");
          if (!dist.count(slot->first)) {
            dist[slot->first] = level + 1;
            next.push_back(slot->first);
          }
        }
      }
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      order.insert(order.end(), next.begin(), next.end());
      frontier = std::move(next);
    }
    std::sort(order.begin() + 1, order.end(),
              [&](Label a, Label b) { return std::pair(dist[a], a) < std::pair(dist[b], b); });

    std::map<Label, NodeId> local;
    for (std::size_t i = 0; i < order.size(); ++i) local[order[i]] = static_cast<NodeId>(i);

    Ball b;
    b.center_original = 0;
    b.radius = r;
    for (Label lab : order) {
      const auto& rec = s.knowledge.at(lab);
      b.original.push_back(local[lab]);  // host ids are unknown here
      b.dist.push_back(dist[lab]);
      b.label.push_back(lab);
      b.host_degree.push_back(rec.degree);
      std::vector<std::optional<PortTarget>> row(rec.degree);
      for (int p = 0; p < rec.degree; ++p) {
        if (!rec.nbr[p]) continue;
        auto it = local.find(rec.nbr[p]->first);
        if (it != local.end()) row[p] = PortTarget{it->second, rec.nbr[p]->second};
      }
      b.adj.push_back(std::move(row));
    }
    return f_.evaluate(b);
  }

  ViewFunction f_;
};

}  // namespace

std::shared_ptr<RoundAlgorithm> view_to_rounds(ViewFunction f) {
  return std::make_shared<FloodAlgorithm>(std::move(f));
}

}  // namespace lclab
