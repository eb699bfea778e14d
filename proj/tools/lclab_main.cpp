// Batch front-end: generate instances, run coloring algorithms, verify
// labelings, benchmark round counts and drive the orientation reduction.
// Exit codes: 0 success (verified), 1 verification failure, 2 precondition
// error, 3 oracle disqualification.

#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "lclab/errors.hpp"
#include "lclab/generators.hpp"
#include "lclab/graph.hpp"
#include "lclab/parallel.hpp"
#include "lclab/partial_coloring.hpp"
#include "lclab/reduction.hpp"
#include "lclab/symmetry_breaking.hpp"
#include "lclab/verify.hpp"

using namespace lclab;
using nlohmann::ordered_json;

namespace {

constexpr int kExitVerified = 0;
constexpr int kExitViolations = 1;
constexpr int kExitPrecondition = 2;
constexpr int kExitDisqualified = 3;

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw precondition_error("cannot open for writing: " + path);
  out << text;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw precondition_error("cannot open for reading: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<Label> identity_ids(NodeId n) {
  std::vector<Label> ids(n);
  std::iota(ids.begin(), ids.end(), 1);
  return ids;
}

Coloring load_coloring(const std::string& path, NodeId n) {
  auto c = Coloring::from_json(nlohmann::json::parse(read_text(path)));
  if (c.size() != n) throw precondition_error("coloring size does not match the graph");
  return c;
}

struct GenArgs {
  bool random_regular = false, tree = false, tree2 = false;
  NodeId n = 0;
  int d = 0, depth = 0;
  std::optional<std::uint64_t> seed;
  std::string out, dot;
};

int cmd_gen(const GenArgs& a) {
  Graph g;
  if (a.random_regular) {
    if (!a.seed) throw precondition_error("gen: --seed is required for random instances");
    g = gen_random_regular(a.n, a.d, *a.seed);
  } else if (a.tree) {
    g = gen_regular_tree(a.d, a.depth).graph;
  } else if (a.tree2) {
    g = gen_2colored_regular_tree(a.d, a.depth).graph;
  } else {
    throw precondition_error("gen: pick one of --random-regular, --tree, --tree2");
  }
  write_text(a.out, write_edge_list(g));
  if (!a.dot.empty()) write_text(a.dot, to_dot(g));
  return kExitVerified;
}

struct RunArgs {
  std::string algorithm;  // two-sweep | layered-mis | proper
  std::string mode = "three-color";
  int k = 3;
  Label c = 3;
  std::string input, out;
  bool audit = true;
};

ordered_json sweep_audit(const SweepState& state) {
  ordered_json nodes = ordered_json::array();
  for (const auto& rec : state.node)
    nodes.push_back({{"rank", rec.rank},
                     {"tentative", rec.tentative},
                     {"final", rec.final_color},
                     {"tag", to_string(rec.tag)},
                     {"t", rec.t},
                     {"r", rec.r},
                     {"x", rec.x},
                     {"y", rec.y},
                     {"z", rec.z},
                     {"free", rec.free_count}});
  return nodes;
}

int cmd_run(const RunArgs& a) {
  Graph g = read_edge_list(read_text(a.input));
  const auto ids = identity_ids(g.node_count());

  ordered_json j;
  j["algorithm"] = a.algorithm;
  j["n"] = g.node_count();
  std::size_t violations = 0;

  if (a.algorithm == "two-sweep") {
    const TwoSweepMode mode =
        a.mode == "full-palette" ? TwoSweepMode::FullPalette : TwoSweepMode::ThreeColor;
    auto result = two_sweep_coloring(g, a.k, mode, ids);
    violations = verify_partial_coloring(g, result.final_coloring, a.k).size();
    j["mode"] = a.mode;
    j["k"] = a.k;
    j["d"] = *g.regular_degree();
    j["palette"] = result.final_coloring.palette_size;
    j["initial_palette"] = result.initial_palette;
    j["base_rounds"] = result.base_rounds;
    j["sweep_rounds"] = result.sweep_rounds;
    j["rounds_used"] = result.total_rounds();
    j["decisions"] = result.decision_histogram();
    j["violations"] = violations;
    j["coloring"] = result.final_coloring.to_json();
    if (a.audit) j["audit"] = sweep_audit(result.state);
  } else if (a.algorithm == "layered-mis") {
    auto result = layered_mis_coloring(g, a.c, ids);
    violations = verify_partial_coloring(g, result.coloring, static_cast<int>(a.c - 1)).size();
    j["c"] = a.c;
    j["k"] = a.c - 1;
    j["rounds_used"] = result.rounds_used;
    j["palette"] = result.coloring.palette_size;
    j["violations"] = violations;
    j["coloring"] = result.coloring.to_json();
  } else if (a.algorithm == "proper") {
    auto result = compute_proper_coloring(g, ids);
    violations = verify_proper_coloring(g, result.coloring).size();
    j["rounds_used"] = result.rounds_used;
    j["palette"] = result.coloring.palette_size;
    j["violations"] = violations;
    j["coloring"] = result.coloring.to_json();
  } else {
    throw precondition_error("run: unknown algorithm " + a.algorithm);
  }

  write_text(a.out, j.dump(2) + "\n");
  return violations == 0 ? kExitVerified : kExitViolations;
}

struct VerifyArgs {
  std::string predicate;  // partial | proper | cut | distance | sinkless
  int k = 1;
  bool capped = false, exempt_leaves = false;
  std::string input, coloring, orientation, out;
};

int cmd_verify(const VerifyArgs& a) {
  Graph g = read_edge_list(read_text(a.input));
  std::vector<char> exempt_mask;
  const std::vector<char>* exempt = nullptr;
  if (a.exempt_leaves) {
    exempt_mask = leaves_of(g);
    exempt = &exempt_mask;
  }

  std::vector<Violation> violations;
  if (a.predicate == "partial") {
    auto c = load_coloring(a.coloring, g.node_count());
    violations = verify_partial_coloring(
        g, c, a.k, a.capped ? PartialPolicy::Capped : PartialPolicy::Strict, exempt);
  } else if (a.predicate == "proper") {
    auto c = load_coloring(a.coloring, g.node_count());
    violations = verify_proper_coloring(g, c);
  } else if (a.predicate == "cut") {
    auto c = load_coloring(a.coloring, g.node_count());
    violations = verify_locally_optimal_cut(g, std::span<const Label>(c.assignment));
  } else if (a.predicate == "distance") {
    auto c = load_coloring(a.coloring, g.node_count());
    violations = verify_distance_coloring(g, c, a.k);
  } else if (a.predicate == "sinkless") {
    auto o = Orientation::from_json(g, nlohmann::json::parse(read_text(a.orientation)));
    violations = verify_sinkless(g, o, exempt);
  } else {
    throw precondition_error("verify: unknown predicate " + a.predicate);
  }

  write_text(a.out, violations_to_json_lines(violations));
  return violations.empty() ? kExitVerified : kExitViolations;
}

struct BenchArgs {
  std::string algorithm = "two-sweep";
  std::string mode = "three-color";
  int k = 3, d = 5;
  std::vector<NodeId> ns;
  int seeds = 5;
  std::uint64_t seed0 = 1;
  std::string out;
};

int cmd_bench(const BenchArgs& a) {
  ordered_json j;
  j["algorithm"] = a.algorithm;
  j["mode"] = a.mode;
  j["k"] = a.k;
  j["d"] = a.d;
  ordered_json entries = ordered_json::array();
  bool all_verified = true;
  for (NodeId n : a.ns) {
    for (int s = 0; s < a.seeds; ++s) {
      const std::uint64_t seed = a.seed0 + static_cast<std::uint64_t>(s);
      NodeId nn = n;
      if ((static_cast<std::int64_t>(nn) * a.d) % 2 != 0) ++nn;  // stub parity
      Graph g = gen_random_regular(nn, a.d, seed);
      int rounds = 0;
      bool verified = false;
      if (a.algorithm == "two-sweep") {
        const TwoSweepMode mode =
            a.mode == "full-palette" ? TwoSweepMode::FullPalette : TwoSweepMode::ThreeColor;
        auto result = two_sweep_coloring(g, a.k, mode, identity_ids(nn));
        rounds = result.total_rounds();
        verified = verify_partial_coloring(g, result.final_coloring, a.k).empty();
      } else if (a.algorithm == "layered-mis") {
        auto result = layered_mis_coloring(g, a.k + 1, identity_ids(nn));
        rounds = result.rounds_used;
        verified = verify_partial_coloring(g, result.coloring, a.k).empty();
      } else {
        throw precondition_error("bench: unknown algorithm " + a.algorithm);
      }
      all_verified = all_verified && verified;
      entries.push_back(
          {{"n", nn}, {"seed", seed}, {"rounds_used", rounds}, {"verified", verified}});
    }
  }
  j["entries"] = std::move(entries);
  write_text(a.out, j.dump(2) + "\n");
  return all_verified ? kExitVerified : kExitViolations;
}

struct ReduceArgs {
  int d = 3, k = 2, host_depth = 1;
  std::string oracle = "memoized";
  std::string out, export_prefix, dot;
};

int cmd_reduce(const ReduceArgs& a) {
  const int kk = a.k % 2 == 0 ? a.k : a.k + 1;
  std::int64_t capital_d = a.d;
  for (int i = 1; i < 2 * kk; ++i) capital_d *= a.d - 1;
  auto host = gen_2colored_regular_tree(static_cast<int>(capital_d), a.host_depth);

  ViewFunction candidate;
  if (a.oracle == "memoized") {
    candidate = make_memoized_oracle(host, a.d, kk).view;
  } else if (a.oracle == "constant-white") {
    candidate = constant_white_oracle(kk);
  } else {
    throw precondition_error("reduce: unknown oracle " + a.oracle);
  }

  auto report = run_reduction(host, candidate, a.d, kk, CompletionMode::Distinct);
  ordered_json j = report.to_json();
  if (!report.disqualified) j["orientation"] = report.orientation.to_json(host.graph);
  write_text(a.out, j.dump(2) + "\n");

  if (!a.export_prefix.empty() && !report.disqualified) {
    auto gadgets = build_gadget_pair(candidate, a.d, kk);
    auto vg = build_virtual_graph(host, a.d, kk, gadgets.first, gadgets.second,
                                  CompletionMode::Distinct);
    write_text(a.export_prefix + ".el", write_edge_list(vg.graph));
    write_text(a.export_prefix + ".json", vg.sidecar_json().dump(2) + "\n");
  }
  if (!a.dot.empty() && !report.disqualified)
    write_text(a.dot, report.orientation.to_dot(host.graph));

  if (report.disqualified) return kExitDisqualified;
  return report.sound ? kExitVerified : kExitViolations;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LOCAL-model coloring lab: generators, round-synchronous algorithms, verifiers"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "cap worker threads (0 = all)");
  app.set_config("--config", "", "read defaults from an INI file (flags win)");

  GenArgs gen;
  auto* sc_gen = app.add_subcommand("gen", "generate a graph instance");
  sc_gen->add_flag("--random-regular", gen.random_regular, "random simple d-regular graph");
  sc_gen->add_flag("--tree", gen.tree, "d-regular rooted tree");
  sc_gen->add_flag("--tree2", gen.tree2, "2-colored regular tree");
  sc_gen->add_option("-n", gen.n, "node count");
  sc_gen->add_option("-d", gen.d, "degree");
  sc_gen->add_option("--depth", gen.depth, "tree depth");
  sc_gen->add_option("--seed", gen.seed, "RNG seed (required for random instances)");
  sc_gen->add_option("-o,--out", gen.out, "output edge-list path (- for stdout)");
  sc_gen->add_option("--dot", gen.dot, "optional DOT dump");

  RunArgs run;
  auto* sc_run = app.add_subcommand("run", "run a coloring algorithm and verify the result");
  sc_run->add_option("algorithm", run.algorithm, "two-sweep | layered-mis | proper")->required();
  sc_run->add_option("--mode", run.mode, "two-sweep mode: three-color | full-palette");
  sc_run->add_option("-k", run.k, "partial-coloring parameter k");
  sc_run->add_option("-c", run.c, "layered-mis palette size");
  sc_run->add_option("-i,--input", run.input, "input edge-list")->required();
  sc_run->add_option("-o,--out", run.out, "result JSON path (- for stdout)");
  sc_run->add_flag("--audit,!--no-audit", run.audit,
                   "include per-node decision tags and counters (default on)");

  VerifyArgs verify;
  auto* sc_verify = app.add_subcommand("verify", "check a labeling; violations as JSON lines");
  sc_verify
      ->add_option("predicate", verify.predicate, "partial | proper | cut | distance | sinkless")
      ->required();
  sc_verify->add_option("-k", verify.k, "distance / partial parameter");
  sc_verify->add_flag("--capped", verify.capped, "cap the requirement at the node degree");
  sc_verify->add_flag("--exempt-leaves", verify.exempt_leaves, "exempt degree-1 nodes");
  sc_verify->add_option("-i,--input", verify.input, "input edge-list")->required();
  sc_verify->add_option("-c,--coloring", verify.coloring, "coloring JSON (array by node id)");
  sc_verify->add_option("--orientation", verify.orientation, "orientation JSON");
  sc_verify->add_option("-o,--out", verify.out, "where to write violations (- for stdout)");

  BenchArgs bench;
  auto* sc_bench = app.add_subcommand("bench", "round counts across instance sizes");
  sc_bench->add_option("--algo", bench.algorithm, "two-sweep | layered-mis");
  sc_bench->add_option("--mode", bench.mode, "two-sweep mode");
  sc_bench->add_option("-k", bench.k, "partial parameter");
  sc_bench->add_option("-d", bench.d, "degree");
  sc_bench->add_option("--ns", bench.ns, "node counts")->delimiter(',')->required();
  sc_bench->add_option("--seeds", bench.seeds, "seeds per size");
  sc_bench->add_option("--seed0", bench.seed0, "first seed");
  sc_bench->add_option("-o,--out", bench.out, "output JSON (- for stdout)");

  ReduceArgs reduce;
  auto* sc_reduce = app.add_subcommand("reduce", "orientation reduction pipeline");
  sc_reduce->add_option("-d", reduce.d, "virtual tree degree");
  sc_reduce->add_option("-k", reduce.k, "candidate radius (rounded up to even)");
  sc_reduce->add_option("--host-depth", reduce.host_depth, "host tree depth");
  sc_reduce->add_option("--oracle", reduce.oracle, "memoized | constant-white");
  sc_reduce->add_option("-o,--out", reduce.out, "report JSON (- for stdout)");
  sc_reduce->add_option("--export-vg", reduce.export_prefix,
                        "write the virtual graph to PREFIX.{el,json}");
  sc_reduce->add_option("--dot", reduce.dot, "DOT dump of the extracted orientation");

  CLI11_PARSE(app, argc, argv);
  set_max_threads(threads);

  try {
    if (*sc_gen) return cmd_gen(gen);
    if (*sc_run) return cmd_run(run);
    if (*sc_verify) return cmd_verify(verify);
    if (*sc_bench) return cmd_bench(bench);
    if (*sc_reduce) return cmd_reduce(reduce);
  } catch (const disqualified_error& e) {
    std::cerr << "disqualified: " << e.what() << "\n";
    return kExitDisqualified;
  } catch (const precondition_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const budget_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitPrecondition;
  }
  return kExitPrecondition;
}
