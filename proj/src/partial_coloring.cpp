#include "lclab/partial_coloring.hpp"

#include <algorithm>
#include <sstream>

#include "lclab/errors.hpp"
#include "lclab/verify.hpp"

namespace lclab {

void Orientation::check_antisymmetry(const Graph& g) const {
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (static_cast<int>(out[v].size()) != g.degree(v))
      throw internal_error("orientation: port-flag size mismatch");
    for (int p = 0; p < g.degree(v); ++p) {
      const PortTarget& t = g.neighbor(v, p);
      if ((out[v][p] != 0) == (out[t.node][t.port] != 0))
        throw internal_error("orientation: edge not directed exactly once");
    }
  }
}

nlohmann::ordered_json Orientation::to_json(const Graph& g) const {
  nlohmann::ordered_json edges = nlohmann::ordered_json::array();
  for (NodeId v = 0; v < g.node_count(); ++v)
    for (int p = 0; p < g.degree(v); ++p)
      if (out[v][p]) edges.push_back({v, g.neighbor(v, p).node});
  nlohmann::ordered_json j;
  j["directed_edges"] = std::move(edges);
  return j;
}

Orientation Orientation::from_json(const Graph& g, const nlohmann::json& j) {
  Orientation o;
  o.out.resize(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) o.out[v].assign(g.degree(v), 0);
  for (const auto& e : j.at("directed_edges")) {
    const NodeId from = e.at(0).get<NodeId>(), to = e.at(1).get<NodeId>();
    bool found = false;
    for (int p = 0; p < g.degree(from) && !found; ++p)
      if (g.neighbor(from, p).node == to) {
        o.out[from][p] = 1;
        found = true;
      }
    if (!found) throw precondition_error("orientation refers to a missing edge");
  }
  o.check_antisymmetry(g);
  return o;
}

std::string Orientation::to_dot(const Graph& g) const {
  std::ostringstream s;
  s << "digraph G {\n";
  for (NodeId v = 0; v < g.node_count(); ++v)
    for (int p = 0; p < g.degree(v); ++p)
      if (out[v][p]) s << "  " << v << " -> " << g.neighbor(v, p).node << ";\n";
  s << "}\n";
  return s.str();
}

std::string to_string(Decision d) {
  switch (d) {
    case Decision::Keep: return "KEEP";
    case Decision::Special: return "SPECIAL";
    case Decision::Switch: return "SWITCH";
  }
  return "?";
}

Orientation acyclic_orientation(const Graph& g, const Coloring& proper) {
  if (static_cast<NodeId>(proper.assignment.size()) != g.node_count())
    throw precondition_error("acyclic_orientation: coloring must be total");
  Orientation o;
  o.out.resize(g.node_count());
  o.rank = proper.assignment;
  o.rank_count = proper.palette_size;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    o.out[v].assign(g.degree(v), 0);
    for (int p = 0; p < g.degree(v); ++p) {
      const Label mine = proper.assignment[v];
      const Label theirs = proper.assignment[g.neighbor(v, p).node];
      if (mine == theirs) throw precondition_error("acyclic_orientation: coloring not proper");
      o.out[v][p] = mine < theirs;
    }
  }
  return o;
}

namespace {

// Sweep messages carry (rank, tentative, final) packed into one word.
Message pack_sweep(Label rank, Label tentative, Label final_color) {
  return pack_i64(rank | (tentative << 32) | (final_color << 48));
}

struct SweepMsg {
  Label rank, tentative, final_color;
};

SweepMsg unpack_sweep(const Message& m) {
  const std::int64_t x = unpack_i64(m);
  return {x & 0xffffffff, (x >> 32) & 0xffff, (x >> 48) & 0xffff};
}

struct SweepNodeState {
  Label rank = 0;
  Label tentative = 0;
  Label final_color = 0;
};

// Top-down tentative pass; class `rank_count + 1 - round` decides in each
// round, so every node's above-neighbors are already decided.
class FirstSweepAlgorithm : public RoundAlgorithm {
 public:
  FirstSweepAlgorithm(Label rank_count, Label palette, NodeId n)
      : rank_count_(rank_count), palette_(palette), above_(n, 0), same_(n, 0) {}

  InitResult init(Label input, const StepContext&) const override {
    SweepNodeState s;
    s.rank = input;
    if (rank_count_ == 0) throw internal_error("first sweep: empty rank palette");
    return {s, std::nullopt};
  }

  std::vector<std::optional<Message>> send(const std::any& state, const StepContext& ctx) const override {
    const auto& s = std::any_cast<const SweepNodeState&>(state);
    return broadcast(ctx.degree, pack_sweep(s.rank, s.tentative, 0));
  }

  ReceiveResult receive(std::any state, const Inbox& inbox, const StepContext& ctx) const override {
    SweepNodeState s = std::any_cast<SweepNodeState>(std::move(state));
    if (s.rank == rank_count_ + 1 - ctx.round) {
      std::vector<int> used(palette_ + 1, 0);
      int above = 0;
      for (const auto& slot : inbox) {
        if (!slot) continue;
        const SweepMsg m = unpack_sweep(*slot);
        if (m.rank <= s.rank) continue;
        ++above;
        if (m.tentative < 1 || m.tentative > palette_)
          throw internal_error("first sweep: above neighbor undecided");
        ++used[m.tentative];
      }
      Label pick = 1;
      for (Label c = 2; c <= palette_; ++c)
        if (used[c] < used[pick]) pick = c;
      s.tentative = pick;
      above_[ctx.node] = above;
      same_[ctx.node] = used[pick];
      // Minority property: the least-used count r satisfies
      // r * (palette - 1) <= above - r.
      if (static_cast<std::int64_t>(used[pick]) * (palette_ - 1) > above - used[pick])
        throw internal_error("first sweep: minority property violated");
    }
    if (ctx.round == rank_count_) return {s, s.tentative};
    return {s, std::nullopt};
  }

  const std::vector<int>& above() const { return above_; }
  const std::vector<int>& same() const { return same_; }

 private:
  Label rank_count_;
  Label palette_;
  mutable std::vector<int> above_;  // audit slots, one writer per node
  mutable std::vector<int> same_;
};

}  // namespace

TentativeResult first_sweep(const Graph& g, const Orientation& o, Label palette) {
  if (o.rank.empty()) throw precondition_error("first_sweep: orientation carries no ranks");
  if (palette < 1) throw precondition_error("first_sweep: palette must be positive");
  FirstSweepAlgorithm algo(o.rank_count, palette, g.node_count());
  auto report = run_rounds(g, algo, o.rank, static_cast<int>(o.rank_count));
  TentativeResult r;
  r.tentative.assignment = std::move(report.outputs);
  r.tentative.palette_size = palette;
  r.above = algo.above();
  r.same = algo.same();
  r.rounds_used = report.rounds_used;
  return r;
}

std::pair<Decision, Label> decide_three(Label a, int t, int x, int y, int z, int k) {
  const Label b = 3 - a;
  if (t + y + z >= k) return {Decision::Keep, a};
  if (x + y >= k) return {Decision::Special, 3};
  if (y != 0)
    throw internal_error("second sweep (3-color): case 3 reached with y != 0");
  return {Decision::Switch, b};
}

std::pair<Decision, Label> decide_full(Label a, int t, int x, int y, int z, int k, int d,
                                       const std::vector<std::pair<Label, int>>& free_picks) {
  if (t + y + z >= k) return {Decision::Keep, a};
  if (x + y >= k) return {Decision::Special, k};
  if (free_picks.empty())
    throw internal_error("second sweep (full palette): case 3 reached with no free color");
  Label best = 0;
  int best_picks = 0;
  for (const auto& [color, picks] : free_picks) {
    if (picks > d - k) continue;
    if (best == 0 || picks < best_picks || (picks == best_picks && color < best)) {
      best = color;
      best_picks = picks;
    }
  }
  if (best == 0)
    throw internal_error("second sweep (full palette): every free color picked by more than d-k above");
  return {Decision::Switch, best};
}

namespace {

// Bottom-up finalization; class `round` decides, below-neighbors are final.
class SecondSweepAlgorithm : public RoundAlgorithm {
 public:
  SecondSweepAlgorithm(Label rank_count, Label palette, Label special, int k, int d, bool full_mode,
                       NodeId n)
      : rank_count_(rank_count),
        palette_(palette),
        special_(special),
        k_(k),
        d_(d),
        full_mode_(full_mode),
        records_(n) {}

  InitResult init(Label input, const StepContext&) const override {
    SweepNodeState s;
    s.rank = input & 0xffffffff;
    s.tentative = input >> 32;
    return {s, std::nullopt};
  }

  std::vector<std::optional<Message>> send(const std::any& state, const StepContext& ctx) const override {
    const auto& s = std::any_cast<const SweepNodeState&>(state);
    return broadcast(ctx.degree, pack_sweep(s.rank, s.tentative, s.final_color));
  }

  ReceiveResult receive(std::any state, const Inbox& inbox, const StepContext& ctx) const override {
    SweepNodeState s = std::any_cast<SweepNodeState>(std::move(state));
    if (s.rank == ctx.round) {
      const Label a = s.tentative;
      int above = 0, t = 0, x = 0, y = 0, z = 0;
      std::vector<int> below_used(special_ + 1, 0);
      std::vector<int> above_picks(palette_ + 1, 0);
      for (const auto& slot : inbox) {
        if (!slot) continue;
        const SweepMsg m = unpack_sweep(*slot);
        if (m.rank > s.rank) {
          ++above;
          if (m.tentative != a) ++t;
          ++above_picks[m.tentative];
        } else {
          if (m.final_color < 1 || m.final_color > special_)
            throw internal_error("second sweep: below neighbor not finalized");
          ++below_used[m.final_color];
          if (m.final_color == a)
            ++x;
          else if (m.final_color == special_)
            ++z;
          else
            ++y;
        }
      }

      Decision tag;
      Label final_color;
      int free_count = 0;
      if (full_mode_) {
        std::vector<std::pair<Label, int>> free_picks;
        for (Label c = 1; c < special_; ++c)
          if (c != a && below_used[c] == 0) free_picks.emplace_back(c, above_picks[c]);
        free_count = static_cast<int>(free_picks.size());
        std::tie(tag, final_color) = decide_full(a, t, x, y, z, k_, d_, free_picks);
      } else {
        std::tie(tag, final_color) = decide_three(a, t, x, y, z, k_);
      }
      s.final_color = final_color;

      SweepRecord& rec = records_[ctx.node];
      rec.rank = s.rank;
      rec.tentative = a;
      rec.final_color = final_color;
      rec.tag = tag;
      rec.above = above;
      rec.t = t;
      rec.r = above - t;
      rec.x = x;
      rec.y = y;
      rec.z = z;
      rec.free_count = free_count;
    }
    if (ctx.round == rank_count_) return {s, s.final_color};
    return {s, std::nullopt};
  }

  std::vector<SweepRecord>& records() const { return records_; }

 private:
  Label rank_count_;
  Label palette_;  // tentative palette
  Label special_;
  int k_;
  int d_;
  bool full_mode_;
  mutable std::vector<SweepRecord> records_;
};

SweepResult run_second_sweep(const Graph& g, const Orientation& o, const TentativeResult& tentative,
                             int k, bool full_mode) {
  const Label palette = tentative.tentative.palette_size;
  const Label special = full_mode ? k : 3;
  const auto reg = g.regular_degree();
  if (!reg) throw precondition_error("second sweep: graph must be regular");
  SecondSweepAlgorithm algo(o.rank_count, palette, special, k, *reg, full_mode, g.node_count());
  std::vector<Label> inputs(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v)
    inputs[v] = o.rank[v] | (tentative.tentative.assignment[v] << 32);
  auto report = run_rounds(g, algo, inputs, static_cast<int>(o.rank_count));
  SweepResult r;
  r.final_coloring.assignment = std::move(report.outputs);
  r.final_coloring.palette_size = special;
  r.state.node = std::move(algo.records());
  r.state.second_sweep_rounds = report.rounds_used;
  return r;
}

}  // namespace

SweepResult second_sweep_three(const Graph& g, const Orientation& o, const TentativeResult& tentative,
                               int k) {
  if (k < 3) throw precondition_error("second_sweep_three: need k >= 3");
  const auto d = g.regular_degree();
  if (!d || *d < 3 * k - 4)
    throw precondition_error("second_sweep_three: need a d-regular graph with d >= 3k-4");
  if (tentative.tentative.palette_size != 2)
    throw precondition_error("second_sweep_three: tentative palette must be 2");
  return run_second_sweep(g, o, tentative, k, false);
}

SweepResult second_sweep_full(const Graph& g, const Orientation& o, const TentativeResult& tentative,
                              int k) {
  if (k < 4) throw precondition_error("second_sweep_full: need k >= 4");
  const auto d = g.regular_degree();
  if (!d || *d < k + 2)
    throw precondition_error("second_sweep_full: need a d-regular graph with d >= k+2");
  if (tentative.tentative.palette_size != k - 1)
    throw precondition_error("second_sweep_full: tentative palette must be k-1");
  return run_second_sweep(g, o, tentative, k, true);
}

nlohmann::ordered_json TwoSweepResult::decision_histogram() const {
  std::int64_t keep = 0, special = 0, sw = 0;
  for (const auto& rec : state.node) {
    if (rec.tag == Decision::Keep) ++keep;
    if (rec.tag == Decision::Special) ++special;
    if (rec.tag == Decision::Switch) ++sw;
  }
  nlohmann::ordered_json j;
  j["KEEP"] = keep;
  j["SPECIAL"] = special;
  j["SWITCH"] = sw;
  return j;
}

TwoSweepResult two_sweep_coloring(const Graph& g, int k, TwoSweepMode mode,
                                  std::span<const Label> ids) {
  const auto d = g.regular_degree();
  if (!d) throw precondition_error("two_sweep_coloring: graph must be d-regular");
  if (mode == TwoSweepMode::ThreeColor) {
    if (k < 3) throw precondition_error("two_sweep_coloring: three-color mode needs k >= 3");
    if (*d < 3 * k - 4)
      throw precondition_error("two_sweep_coloring: three-color mode needs d >= 3k-4");
  } else {
    if (k < 4) throw precondition_error("two_sweep_coloring: full-palette mode needs k >= 4");
    if (*d < k + 2) throw precondition_error("two_sweep_coloring: full-palette mode needs d >= k+2");
  }

  auto base = compute_proper_coloring(g, ids);
  TwoSweepResult result;
  result.orientation = acyclic_orientation(g, base.coloring);
  result.initial_palette = base.coloring.palette_size;
  result.base_rounds = base.rounds_used;

  const Label palette = mode == TwoSweepMode::ThreeColor ? 2 : k - 1;
  auto ts = first_sweep(g, result.orientation, palette);
  auto sweep = mode == TwoSweepMode::ThreeColor
                   ? second_sweep_three(g, result.orientation, ts, k)
                   : second_sweep_full(g, result.orientation, ts, k);
  sweep.state.first_sweep_rounds = ts.rounds_used;
  result.final_coloring = std::move(sweep.final_coloring);
  result.state = std::move(sweep.state);
  result.sweep_rounds = ts.rounds_used + result.state.second_sweep_rounds;
  return result;
}

LayeredMisResult layered_mis_coloring(const Graph& g, Label c, std::span<const Label> ids) {
  if (c < 2) throw precondition_error("layered_mis_coloring: need c >= 2");
  if (g.min_degree() < c - 1)
    throw precondition_error("layered_mis_coloring: min degree below c-1");
  if (static_cast<NodeId>(ids.size()) != g.node_count())
    throw precondition_error("layered_mis_coloring: ids must cover every node");

  LayeredMisResult result;
  result.coloring.assignment.assign(g.node_count(), c);
  result.coloring.palette_size = c;
  std::vector<char> remaining(g.node_count(), 1);

  for (Label layer = 1; layer <= c - 1; ++layer) {
    auto [sub, old_of] = induced_subgraph(g, remaining);
    std::vector<char> mask(g.node_count(), 0);
    if (sub.node_count() > 0) {
      std::vector<Label> sub_ids;
      sub_ids.reserve(old_of.size());
      for (NodeId old : old_of) sub_ids.push_back(ids[old]);
      auto colored = compute_proper_coloring(sub, sub_ids);
      auto mis = mis_from_coloring(sub, colored.coloring);
      result.rounds_used += colored.rounds_used + mis.rounds_used;
      for (NodeId i = 0; i < sub.node_count(); ++i)
        if (mis.in_set[i]) {
          mask[old_of[i]] = 1;
          result.coloring.assignment[old_of[i]] = layer;
          remaining[old_of[i]] = 0;
        }
    }
    result.layers.push_back(std::move(mask));
  }
  return result;
}

ComposeResult compose_proper_coloring(const Graph& g, const Coloring& pc, int k, Label c,
                                      std::span<const Label> ids) {
  const auto d = g.regular_degree();
  if (!d) throw precondition_error("compose_proper_coloring: graph must be d-regular");
  for (Label x : pc.assignment)
    if (x < 1 || x > c) throw precondition_error("compose_proper_coloring: color outside [1, c]");
  // k >= (c-1)d/c + 1, kept in integers.
  if (static_cast<std::int64_t>(k) * c < (c - 1) * static_cast<std::int64_t>(*d) + c)
    throw precondition_error("compose_proper_coloring: need k >= (c-1)d/c + 1");
  if (!verify_partial_coloring(g, pc, k).empty())
    throw precondition_error("compose_proper_coloring: input is not a valid k-partial coloring");

  const Label class_palette = *d - k + 1;
  ComposeResult result;
  result.class_palette = class_palette;
  result.coloring.assignment.assign(g.node_count(), 0);
  result.coloring.palette_size = c * class_palette;
  if (result.coloring.palette_size > *d)
    throw internal_error("compose_proper_coloring: palette bound c*(d-k+1) <= d violated");

  for (Label cls = 1; cls <= c; ++cls) {
    std::vector<char> mask(g.node_count(), 0);
    NodeId count = 0;
    for (NodeId v = 0; v < g.node_count(); ++v)
      if (pc.assignment[v] == cls) {
        mask[v] = 1;
        ++count;
      }
    if (count == 0) continue;
    auto [sub, old_of] = induced_subgraph(g, mask);
    if (sub.max_degree() > *d - k)
      throw internal_error("compose_proper_coloring: monochromatic degree above d-k");
    std::vector<Label> sub_ids;
    sub_ids.reserve(old_of.size());
    for (NodeId old : old_of) sub_ids.push_back(ids[old]);
    auto base = compute_proper_coloring(sub, sub_ids);
    auto reduced = reduce_colors(sub, base.coloring, class_palette);
    // All classes run simultaneously; the slowest one sets the round count.
    result.rounds_used = std::max(result.rounds_used, base.rounds_used + reduced.rounds_used);
    for (NodeId i = 0; i < sub.node_count(); ++i)
      result.coloring.assignment[old_of[i]] =
          (cls - 1) * class_palette + reduced.coloring.assignment[i];
  }
  return result;
}

}  // namespace lclab
