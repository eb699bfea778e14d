#include "lclab/symmetry_breaking.hpp"

#include <algorithm>
#include <memory>
#include <unordered_set>

#include "lclab/errors.hpp"
#include "lclab/generators.hpp"

namespace lclab {

namespace {

using i128 = __int128;

bool is_prime(std::int64_t x) {
  if (x < 2) return false;
  for (std::int64_t p = 2; p * p <= x; ++p)
    if (x % p == 0) return false;
  return true;
}

std::int64_t next_prime(std::int64_t x) {
  while (!is_prime(x)) ++x;
  return x;
}

// x^e with saturation, enough to compare against 64-bit palettes.
i128 ipow_sat(std::int64_t x, int e) {
  i128 r = 1;
  for (int i = 0; i < e; ++i) {
    r *= x;
    if (r > (i128(1) << 100)) return i128(1) << 100;
  }
  return r;
}

// Smallest x >= 2 with x^e >= m.
std::int64_t iroot_ceil(std::int64_t m, int e) {
  std::int64_t lo = 2, hi = m;
  while (lo < hi) {
    std::int64_t mid = lo + (hi - lo) / 2;
    if (ipow_sat(mid, e) >= m)
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

// Best single-round family for the current palette m: a prime field GF(q)
// and polynomial degree k with q > max_deg * k (so some evaluation point
// avoids all neighbors' polynomials) and q^(k+1) >= m (so every current
// color has a distinct polynomial).
std::optional<ReductionFamily> best_family(std::int64_t m, int max_deg) {
  std::optional<ReductionFamily> best;
  for (int k = 1; k <= 64; ++k) {
    const std::int64_t floor_q = static_cast<std::int64_t>(max_deg) * k + 1;
    if (best && i128(floor_q) * floor_q >= best->palette_after) break;
    std::int64_t q = std::max<std::int64_t>(floor_q, iroot_ceil(m, k + 1));
    q = next_prime(q);
    if (ipow_sat(q, k + 1) < m) continue;  // can't happen; kept as a guard
    const std::int64_t palette = q * q;
    if (palette < m && (!best || palette < best->palette_after))
      best = ReductionFamily{q, k, m, palette};
  }
  return best;
}

}  // namespace

std::vector<ReductionFamily> linial_schedule(std::int64_t id_range, int max_deg) {
  std::vector<ReductionFamily> schedule;
  if (max_deg < 1) return schedule;
  std::int64_t m = id_range;
  while (auto fam = best_family(m, max_deg)) {
    schedule.push_back(*fam);
    m = fam->palette_after;
  }
  return schedule;
}

std::int64_t linial_final_palette(std::int64_t id_range, int max_deg) {
  auto schedule = linial_schedule(id_range, max_deg);
  return schedule.empty() ? id_range : schedule.back().palette_after;
}

std::int64_t linial_palette_bound(int max_deg) {
  const std::int64_t q = 2 * max_deg + 1;
  return 4 * q * q;
}

namespace {

class LinialAlgorithm : public RoundAlgorithm {
 public:
  LinialAlgorithm(std::vector<ReductionFamily> schedule, std::int64_t id_range)
      : schedule_(std::move(schedule)), id_range_(id_range) {}

  InitResult init(Label input, const StepContext&) const override {
    if (input < 1 || input > id_range_)
      throw precondition_error("linial: id outside [1, id_range]");
    if (schedule_.empty()) return {input, input};
    return {input, std::nullopt};
  }

  std::vector<std::optional<Message>> send(const std::any& state, const StepContext& ctx) const override {
    return broadcast(ctx.degree, pack_i64(std::any_cast<Label>(state)));
  }

  ReceiveResult receive(std::any state, const Inbox& inbox, const StepContext& ctx) const override {
    const ReductionFamily& fam = schedule_[ctx.round - 1];
    const Label mine = std::any_cast<Label>(state);
    auto poly = [&](Label color) {
      std::vector<std::int64_t> digits(fam.poly_degree + 1);
      std::int64_t rest = color - 1;
      for (int i = 0; i <= fam.poly_degree; ++i) {
        digits[i] = rest % fam.q;
        rest /= fam.q;
      }
      return digits;
    };
    auto eval = [&](const std::vector<std::int64_t>& digits, std::int64_t a) {
      std::int64_t acc = 0;
      for (int i = fam.poly_degree; i >= 0; --i) acc = (acc * a + digits[i]) % fam.q;
      return acc;
    };
    const auto mine_poly = poly(mine);
    std::vector<std::vector<std::int64_t>> nbr_polys;
    for (const auto& slot : inbox)
      if (slot) nbr_polys.push_back(poly(unpack_i64(*slot)));

    std::int64_t chosen = -1, value = 0;
    for (std::int64_t a = 0; a < fam.q && chosen < 0; ++a) {
      const std::int64_t va = eval(mine_poly, a);
      bool clean = true;
      for (const auto& np : nbr_polys)
        if (eval(np, a) == va) {
          clean = false;
          break;
        }
      if (clean) {
        chosen = a;
        value = va;
      }
    }
    if (chosen < 0)
      throw internal_error("linial: no separating evaluation point (duplicate ids?)");
    const Label next = chosen * fam.q + value + 1;
    if (ctx.round == static_cast<int>(schedule_.size())) return {next, next};
    return {next, std::nullopt};
  }

 private:
  std::vector<ReductionFamily> schedule_;
  std::int64_t id_range_;
};

void require_unique_ids(std::span<const Label> ids) {
  std::unordered_set<Label> seen;
  for (Label id : ids)
    if (!seen.insert(id).second) throw precondition_error("duplicate ids");
}

}  // namespace

std::shared_ptr<RoundAlgorithm> linial_round_algorithm(std::int64_t id_range, int max_deg) {
  return std::make_shared<LinialAlgorithm>(linial_schedule(id_range, max_deg), id_range);
}

ColoringResult linial_coloring(const Graph& g, std::span<const Label> ids, std::int64_t id_range) {
  if (static_cast<NodeId>(ids.size()) != g.node_count())
    throw precondition_error("linial_coloring: ids must cover every node");
  require_unique_ids(ids);
  Label max_id = 0;
  for (Label id : ids) max_id = std::max(max_id, id);
  if (id_range == 0) id_range = std::max<std::int64_t>(g.node_count(), max_id);
  const int max_deg = g.max_degree();

  if (max_deg == 0) {
    Coloring c;
    c.assignment.assign(g.node_count(), 1);
    c.palette_size = 1;
    return {std::move(c), 0};
  }

  auto schedule = linial_schedule(id_range, max_deg);
  LinialAlgorithm algo(schedule, id_range);
  auto report = run_rounds(g, algo, ids, static_cast<int>(schedule.size()));

  Coloring c;
  c.assignment = std::move(report.outputs);
  c.palette_size = schedule.empty() ? id_range : schedule.back().palette_after;
  for (Label x : c.assignment)
    if (x < 1 || x > c.palette_size) throw internal_error("linial: color outside declared palette");
  if (c.palette_size > std::max<std::int64_t>(id_range, linial_palette_bound(max_deg)))
    throw internal_error("linial: palette bound violated");
  return {std::move(c), report.rounds_used};
}

namespace {

// One class per round, ascending above-target classes; class (target + round)
// recolors to the smallest color in [1, target] unused by its neighbors.
class GreedyReduceAlgorithm : public RoundAlgorithm {
 public:
  GreedyReduceAlgorithm(Label target, int rounds) : target_(target), rounds_(rounds) {}

  InitResult init(Label input, const StepContext&) const override {
    if (rounds_ == 0) return {input, input};
    return {input, std::nullopt};
  }

  std::vector<std::optional<Message>> send(const std::any& state, const StepContext& ctx) const override {
    return broadcast(ctx.degree, pack_i64(std::any_cast<Label>(state)));
  }

  ReceiveResult receive(std::any state, const Inbox& inbox, const StepContext& ctx) const override {
    Label color = std::any_cast<Label>(state);
    if (color == target_ + ctx.round) {
      std::vector<char> used(target_ + 1, 0);
      for (const auto& slot : inbox)
        if (slot) {
          const Label c = unpack_i64(*slot);
          if (c <= target_) used[c] = 1;
        }
      Label pick = 0;
      for (Label c = 1; c <= target_; ++c)
        if (!used[c]) {
          pick = c;
          break;
        }
      if (pick == 0) throw internal_error("reduce_colors: no free color below target");
      color = pick;
    }
    if (ctx.round == rounds_) return {color, color};
    return {color, std::nullopt};
  }

 private:
  Label target_;
  int rounds_;
};

}  // namespace

ColoringResult reduce_colors(const Graph& g, const Coloring& c0, Label target) {
  if (static_cast<NodeId>(c0.assignment.size()) != g.node_count())
    throw precondition_error("reduce_colors: coloring must be total");
  if (target < g.max_degree() + 1)
    throw precondition_error("reduce_colors: target below max_degree + 1");
  for (NodeId v = 0; v < g.node_count(); ++v)
    for (const auto& t : g.ports(v))
      if (c0.assignment[t.node] == c0.assignment[v])
        throw precondition_error("reduce_colors: input coloring not proper");

  if (c0.palette_size <= target) return {c0, 0};

  const int rounds = static_cast<int>(c0.palette_size - target);
  GreedyReduceAlgorithm algo(target, rounds);
  auto report = run_rounds(g, algo, c0.assignment, rounds);
  Coloring c;
  c.assignment = std::move(report.outputs);
  c.palette_size = target;
  return {std::move(c), report.rounds_used};
}

ColoringResult compute_proper_coloring(const Graph& g, std::span<const Label> ids,
                                       std::int64_t id_range) {
  auto base = linial_coloring(g, ids, id_range);
  const std::int64_t max_deg = g.max_degree();
  const Label target =
      std::max<Label>(max_deg + 1, std::min<Label>(base.coloring.palette_size, max_deg * max_deg));
  auto reduced = reduce_colors(g, base.coloring, target);
  return {std::move(reduced.coloring), base.rounds_used + reduced.rounds_used};
}

namespace {

// Ascending color classes; a node joins when its class comes up and no
// neighbor joined before it.
class MisAlgorithm : public RoundAlgorithm {
 public:
  explicit MisAlgorithm(Label palette) : palette_(palette) {}

  struct State {
    Label color;
    bool joined = false;
  };

  InitResult init(Label input, const StepContext&) const override {
    return {State{input, false}, std::nullopt};
  }

  std::vector<std::optional<Message>> send(const std::any& state, const StepContext& ctx) const override {
    return broadcast(ctx.degree, pack_i64(std::any_cast<const State&>(state).joined ? 1 : 0));
  }

  ReceiveResult receive(std::any state, const Inbox& inbox, const StepContext& ctx) const override {
    State s = std::any_cast<State>(std::move(state));
    if (s.color == ctx.round) {
      bool neighbor_joined = false;
      for (const auto& slot : inbox)
        if (slot && unpack_i64(*slot) == 1) neighbor_joined = true;
      s.joined = !neighbor_joined;
    }
    if (ctx.round == palette_) return {s, s.joined ? 1 : 0};
    return {s, std::nullopt};
  }

 private:
  Label palette_;
};

}  // namespace

MisResult mis_from_coloring(const Graph& g, const Coloring& c) {
  if (static_cast<NodeId>(c.assignment.size()) != g.node_count())
    throw precondition_error("mis_from_coloring: coloring must be total");
  for (NodeId v = 0; v < g.node_count(); ++v)
    for (const auto& t : g.ports(v))
      if (c.assignment[t.node] == c.assignment[v])
        throw precondition_error("mis_from_coloring: coloring not proper");

  MisAlgorithm algo(c.palette_size);
  auto report = run_rounds(g, algo, c.assignment, static_cast<int>(c.palette_size));
  MisResult r;
  r.in_set.reserve(report.outputs.size());
  for (Label x : report.outputs) r.in_set.push_back(x == 1);
  r.rounds_used = report.rounds_used;
  return r;
}

ColoringResult distance_k_coloring(const Graph& g, int k, std::span<const Label> ids) {
  if (k < 1) throw precondition_error("distance_k_coloring: need k >= 1");
  Graph power = power_graph(g, k);
  auto res = compute_proper_coloring(power, ids);
  if (auto d = g.regular_degree(); d && *d >= 2) {
    i128 bound = ipow_sat(*d, 2 * k);
    if (i128(res.coloring.palette_size) > bound)
      throw internal_error("distance_k_coloring: palette exceeds d^(2k)");
  }
  return {std::move(res.coloring), k * res.rounds_used};
}

ColoringResult complete_distance_coloring(const Graph& g, int k,
                                          const std::vector<std::optional<Label>>& precolored,
                                          std::span<const Label> ids) {
  if (static_cast<NodeId>(precolored.size()) != g.node_count())
    throw precondition_error("complete_distance_coloring: precolored size mismatch");
  Graph power = power_graph(g, k);

  Label offset = 0;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (!precolored[v]) continue;
    offset = std::max(offset, *precolored[v]);
    for (const auto& t : power.ports(v))
      if (precolored[t.node] && *precolored[t.node] == *precolored[v])
        throw precondition_error("complete_distance_coloring: precolored region invalid at distance k");
  }

  std::vector<char> uncolored(g.node_count(), 0);
  NodeId uncolored_count = 0;
  for (NodeId v = 0; v < g.node_count(); ++v)
    if (!precolored[v]) {
      uncolored[v] = 1;
      ++uncolored_count;
    }

  Coloring out;
  out.assignment.resize(g.node_count());
  int rounds = 0;
  Label sub_palette = 0;
  if (uncolored_count > 0) {
    auto [sub, old_of] = induced_subgraph(power, uncolored);
    std::vector<Label> sub_ids;
    sub_ids.reserve(old_of.size());
    for (NodeId old : old_of) sub_ids.push_back(ids[old]);
    auto res = compute_proper_coloring(sub, sub_ids);
    for (NodeId i = 0; i < static_cast<NodeId>(old_of.size()); ++i)
      out.assignment[old_of[i]] = offset + res.coloring.assignment[i];
    sub_palette = res.coloring.palette_size;
    rounds = k * res.rounds_used;
  }
  for (NodeId v = 0; v < g.node_count(); ++v)
    if (precolored[v]) out.assignment[v] = *precolored[v];
  out.palette_size = offset + sub_palette;
  return {std::move(out), rounds};
}

}  // namespace lclab
