// Compares the OpenMP kernels against the serial reference implementations
// on identical inputs; any mismatch is a hard failure.  --smoke shrinks the
// sizes so the comparison can run inside the test suite.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "lclab/engine.hpp"
#include "lclab/generators.hpp"
#include "lclab/graph.hpp"
#include "lclab/parallel.hpp"
#include "lclab/reference.hpp"
#include "lclab/verify.hpp"
#include "lclab/view.hpp"

using namespace lclab;
using Clock = std::chrono::steady_clock;

namespace {

int mismatches = 0;

template <typename F>
double time_ms(F&& f) {
  auto start = Clock::now();
  f();
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void row(const char* kernel, double serial_ms, double parallel_ms, bool equal) {
  std::printf("%-24s %10.1f ms %10.1f ms %7.2fx  %s\n", kernel, serial_ms, parallel_ms,
              serial_ms / parallel_ms, equal ? "match" : "MISMATCH");
  if (!equal) ++mismatches;
}

// Numeric flooding: each round every node adds up its neighbors' values.
struct SumExchange : RoundAlgorithm {
  explicit SumExchange(int rounds) : rounds_(rounds) {}
  int rounds_;

  InitResult init(Label input, const StepContext&) const override {
    return {input, rounds_ == 0 ? std::optional<std::int64_t>(input) : std::nullopt};
  }
  std::vector<std::optional<Message>> send(const std::any& state, const StepContext& ctx) const override {
    return broadcast(ctx.degree, pack_i64(std::any_cast<Label>(state)));
  }
  ReceiveResult receive(std::any state, const Inbox& inbox, const StepContext& ctx) const override {
    Label acc = std::any_cast<Label>(state);
    for (const auto& slot : inbox)
      if (slot) acc += unpack_i64(*slot);
    if (ctx.round == rounds_) return {acc, acc};
    return {acc, std::nullopt};
  }
};

}  // namespace

int main(int argc, char** argv) {
  const bool smoke = argc > 1 && std::strcmp(argv[1], "--smoke") == 0;
  const NodeId n_scan = smoke ? 2000 : 200000;
  const NodeId n_view = smoke ? 1000 : 30000;
  const NodeId n_power = smoke ? 500 : 4000;
  const NodeId n_engine = smoke ? 1000 : 50000;

  std::printf("%-24s %13s %13s %8s\n", "kernel", "serial", "openmp", "speedup");

  {
    Graph g = gen_random_regular(n_scan, 8, 1);
    std::mt19937_64 rng(3);
    std::vector<Label> colors(n_scan);
    for (auto& c : colors) c = 1 + static_cast<Label>(rng() % 3);

    std::vector<NodeId> serial_nodes;
    double s = time_ms([&] { serial_nodes = reference::partial_deficit_nodes(g, colors, 4); });
    std::vector<Violation> flagged;
    double p = time_ms([&] { flagged = verify_partial_coloring(g, colors, 4); });
    bool equal = serial_nodes.size() == flagged.size();
    for (std::size_t i = 0; equal && i < flagged.size(); ++i)
      equal = serial_nodes[i] == flagged[i].node;
    row("partial-coloring scan", s, p, equal);

    std::vector<NodeId> serial_clash;
    double s2 = time_ms([&] { serial_clash = reference::distance_clash_nodes(g, colors, 2); });
    std::vector<Violation> clash;
    double p2 = time_ms([&] { clash = verify_distance_coloring(g, colors, 2); });
    bool equal2 = serial_clash.size() == clash.size();
    for (std::size_t i = 0; equal2 && i < clash.size(); ++i)
      equal2 = serial_clash[i] == clash[i].node;
    row("distance-clash scan", s2, p2, equal2);
  }

  {
    Graph g = gen_random_regular(n_view, 5, 2);
    std::vector<Label> labels(n_view);
    std::iota(labels.begin(), labels.end(), 1);
    ViewFunction ball_sum{2, [](const Ball& b) {
                            std::int64_t sum = 0;
                            for (NodeId i = 0; i < b.size(); ++i) sum += b.label[i];
                            return sum;
                          }};
    std::vector<std::int64_t> serial_out, parallel_out;
    double s = time_ms([&] { serial_out = run_view_serial(g, ball_sum, labels); });
    double p = time_ms([&] { parallel_out = run_view_based(g, ball_sum, labels); });
    row("view-function runner", s, p, serial_out == parallel_out);
  }

  {
    Graph g = gen_random_regular(n_power, 4, 4);
    std::vector<std::vector<NodeId>> serial_nbrs;
    double s = time_ms([&] { serial_nbrs = reference::power_neighbors(g, 2); });
    Graph power;
    double p = time_ms([&] { power = power_graph(g, 2); });
    bool equal = true;
    for (NodeId v = 0; v < g.node_count() && equal; ++v) {
      equal = power.degree(v) == static_cast<int>(serial_nbrs[v].size());
      for (NodeId u : serial_nbrs[v])
        if (equal) equal = power.has_edge(v, u);
    }
    row("power graph", s, p, equal);
  }

  {
    Graph g = gen_random_regular(n_engine, 5, 5);
    std::vector<Label> inputs(n_engine);
    std::iota(inputs.begin(), inputs.end(), 1);
    SumExchange algo(smoke ? 8 : 40);
    ExecOptions serial_opts;
    serial_opts.parallel = false;
    ExecutionReport serial_report, parallel_report;
    double s = time_ms([&] { serial_report = run_rounds(g, algo, inputs, algo.rounds_, serial_opts); });
    double p = time_ms([&] { parallel_report = run_rounds(g, algo, inputs, algo.rounds_); });
    row("round engine", s, p,
        serial_report.outputs == parallel_report.outputs &&
            serial_report.rounds_used == parallel_report.rounds_used);
  }

  if (mismatches) {
    std::printf("%d kernel(s) disagree with the reference\n", mismatches);
    return 1;
  }
  return 0;
}
