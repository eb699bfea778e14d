#pragma once

#include <any>
#include <cstdint>
#include <cstring>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "lclab/graph.hpp"

namespace lclab {

// Message payloads are opaque serialized bytes of any size; most algorithms
// here pack a few integers, which stays within the small-string buffer.
using Message = std::string;
using Inbox = std::vector<std::optional<Message>>;

inline Message pack_i64(std::int64_t x) {
  Message m(sizeof x, '\0');
  std::memcpy(m.data(), &x, sizeof x);
  return m;
}

inline std::int64_t unpack_i64(const Message& m) {
  std::int64_t x = 0;
  std::memcpy(&x, m.data(), sizeof x);
  return x;
}

struct StepContext {
  NodeId node;          // engine bookkeeping slot; not part of the node's knowledge
  int degree;
  std::int64_t n;       // graph size as told to the algorithm (may be a lie)
  int round;            // 1-based; 0 during init
};

struct InitResult {
  std::any state;
  std::optional<std::int64_t> output;
};

struct ReceiveResult {
  std::any state;
  std::optional<std::int64_t> output;
};

// Synchronous message-passing algorithm.  Each round every node first emits
// one optional message per port, the engine delivers them, then every node
// consumes its inbox.  Both callbacks must be pure functions of their
// arguments; the engine may evaluate nodes in any order within a round.
// Producing an output announces the node's final answer; the node keeps
// participating until the whole run stops.
class RoundAlgorithm {
 public:
  virtual ~RoundAlgorithm() = default;
  virtual InitResult init(Label input, const StepContext& ctx) const = 0;
  virtual std::vector<std::optional<Message>> send(const std::any& state, const StepContext& ctx) const = 0;
  virtual ReceiveResult receive(std::any state, const Inbox& inbox, const StepContext& ctx) const = 0;

  static std::vector<std::optional<Message>> broadcast(int degree, const Message& m) {
    return std::vector<std::optional<Message>>(degree, m);
  }
  static std::vector<std::optional<Message>> silence(int degree) {
    return std::vector<std::optional<Message>>(degree);
  }
};

struct TraceEntry {
  int round;
  std::int64_t messages;
  std::int64_t new_outputs;
};

struct ExecutionReport {
  std::vector<std::int64_t> outputs;
  int rounds_used = 0;
  std::vector<TraceEntry> trace;  // filled only when requested

  nlohmann::ordered_json to_json(bool include_trace = false) const;
};

struct ExecOptions {
  bool parallel = true;
  bool record_trace = false;
  std::int64_t n_claimed = 0;  // 0: use the real node count
};

// Lock-step synchronous execution until every node has announced an output.
// Throws budget_error when some node is silent after max_rounds, listing the
// offenders.  rounds_used is the last round with observable activity (a
// message sent or an output announced).
ExecutionReport run_rounds(const Graph& g, const RoundAlgorithm& algo, std::span<const Label> inputs,
                           int max_rounds, const ExecOptions& options = {});

// Same loop, run on a Ball instead of a full graph: ports that leave the
// ball deliver nothing, and each node keeps its host degree.  Returns the
// center's output.  Used by the distance-coloring simulation harness.
std::int64_t simulate_on_ball(const Ball& b, const RoundAlgorithm& algo, int max_rounds,
                              std::int64_t n_claimed);

}  // namespace lclab
