#include "lclab/engine.hpp"

#include <atomic>
#include <sstream>

#include "lclab/errors.hpp"
#include "lclab/parallel.hpp"

namespace lclab {

nlohmann::ordered_json ExecutionReport::to_json(bool include_trace) const {
  nlohmann::ordered_json j;
  j["rounds_used"] = rounds_used;
  j["outputs"] = outputs;
  if (include_trace) {
    nlohmann::ordered_json t = nlohmann::ordered_json::array();
    for (const auto& e : trace)
      t.push_back({{"round", e.round}, {"messages", e.messages}, {"new_outputs", e.new_outputs}});
    j["trace"] = t;
  }
  return j;
}

ExecutionReport run_rounds(const Graph& g, const RoundAlgorithm& algo, std::span<const Label> inputs,
                           int max_rounds, const ExecOptions& options) {
  const NodeId n = g.node_count();
  if (static_cast<NodeId>(inputs.size()) != n)
    throw precondition_error("run_rounds: inputs must cover every node");
  const std::int64_t n_claimed = options.n_claimed > 0 ? options.n_claimed : n;

  std::vector<std::any> states(n);
  std::vector<std::optional<std::int64_t>> outputs(n);
  std::atomic<std::int64_t> pending{0};

  parallel_for_throwing(n, options.parallel, [&](std::int64_t v) {
    StepContext ctx{static_cast<NodeId>(v), g.degree(static_cast<NodeId>(v)), n_claimed, 0};
    InitResult r = algo.init(inputs[v], ctx);
    states[v] = std::move(r.state);
    outputs[v] = r.output;
    if (!r.output) pending.fetch_add(1, std::memory_order_relaxed);
  });

  ExecutionReport report;
  std::vector<std::vector<std::optional<Message>>> outbox(n), inbox(n);
  for (NodeId v = 0; v < n; ++v) {
    outbox[v].resize(g.degree(v));
    inbox[v].resize(g.degree(v));
  }

  for (int round = 1; pending.load() > 0 && round <= max_rounds; ++round) {
    std::atomic<std::int64_t> messages{0};
    std::atomic<std::int64_t> announced{0};

    parallel_for_throwing(n, options.parallel, [&](std::int64_t v) {
      StepContext ctx{static_cast<NodeId>(v), g.degree(static_cast<NodeId>(v)), n_claimed, round};
      outbox[v] = algo.send(states[v], ctx);
      if (static_cast<int>(outbox[v].size()) != ctx.degree)
        throw internal_error("send must produce one slot per port");
    });

    parallel_for(n, options.parallel, [&](std::int64_t v) {
      std::int64_t sent = 0;
      for (int p = 0; p < g.degree(static_cast<NodeId>(v)); ++p) {
        auto& slot = outbox[v][p];
        if (!slot) continue;
        ++sent;
        const PortTarget& t = g.neighbor(static_cast<NodeId>(v), p);
        inbox[t.node][t.port] = std::move(slot);
        slot.reset();
      }
      if (sent) messages.fetch_add(sent, std::memory_order_relaxed);
    });

    parallel_for_throwing(n, options.parallel, [&](std::int64_t v) {
      StepContext ctx{static_cast<NodeId>(v), g.degree(static_cast<NodeId>(v)), n_claimed, round};
      ReceiveResult r = algo.receive(std::move(states[v]), inbox[v], ctx);
      states[v] = std::move(r.state);
      for (auto& slot : inbox[v]) slot.reset();
      if (r.output && !outputs[v]) {
        outputs[v] = r.output;
        announced.fetch_add(1, std::memory_order_relaxed);
        pending.fetch_sub(1, std::memory_order_relaxed);
      }
    });

    if (messages.load() > 0 || announced.load() > 0) report.rounds_used = round;
    if (options.record_trace) report.trace.push_back({round, messages.load(), announced.load()});
  }

  if (pending.load() > 0) {
    std::ostringstream msg;
    msg << "round budget " << max_rounds << " exceeded; silent nodes:";
    int listed = 0;
    for (NodeId v = 0; v < n && listed < 10; ++v)
      if (!outputs[v]) {
        msg << ' ' << v;
        ++listed;
      }
    throw budget_error(msg.str());
  }

  report.outputs.reserve(n);
  for (NodeId v = 0; v < n; ++v) report.outputs.push_back(*outputs[v]);
  return report;
}

std::int64_t simulate_on_ball(const Ball& b, const RoundAlgorithm& algo, int max_rounds,
                              std::int64_t n_claimed) {
  const NodeId n = b.size();
  std::vector<std::any> states(n);
  std::vector<std::optional<std::int64_t>> outputs(n);
  for (NodeId v = 0; v < n; ++v) {
    StepContext ctx{v, b.host_degree[v], n_claimed, 0};
    InitResult r = algo.init(b.label[v], ctx);
    states[v] = std::move(r.state);
    outputs[v] = r.output;
  }
  std::vector<Inbox> inbox(n);
  for (NodeId v = 0; v < n; ++v) inbox[v].resize(b.host_degree[v]);

  for (int round = 1; !outputs[0] && round <= max_rounds; ++round) {
    std::vector<std::vector<std::optional<Message>>> outbox(n);
    for (NodeId v = 0; v < n; ++v) {
      StepContext ctx{v, b.host_degree[v], n_claimed, round};
      outbox[v] = algo.send(states[v], ctx);
      if (static_cast<int>(outbox[v].size()) != ctx.degree)
        throw internal_error("send must produce one slot per port");
    }
    for (NodeId v = 0; v < n; ++v)
      for (int p = 0; p < b.host_degree[v]; ++p) {
        if (!outbox[v][p]) continue;
        const auto& t = b.adj[v][p];
        if (t) inbox[t->node][t->port] = std::move(outbox[v][p]);
      }
    for (NodeId v = 0; v < n; ++v) {
      StepContext ctx{v, b.host_degree[v], n_claimed, round};
      ReceiveResult r = algo.receive(std::move(states[v]), inbox[v], ctx);
      states[v] = std::move(r.state);
      for (auto& slot : inbox[v]) slot.reset();
      if (r.output && !outputs[v]) outputs[v] = r.output;
    }
  }
  if (!outputs[0]) throw budget_error("simulate_on_ball: center silent after round budget");
  return *outputs[0];
}

}  // namespace lclab
