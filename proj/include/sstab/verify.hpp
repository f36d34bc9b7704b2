#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "sstab/funcspec.hpp"
#include "sstab/protocol.hpp"
#include "sstab/synthesis.hpp"

namespace sstab {

inline constexpr std::uint64_t kDefaultNodeBudget = 5000000;

// The complete configuration graph of a protocol on a fixed input: one node
// per assignment of protocol states to the anonymised agent multiset, edges
// from the one-interaction successor relation, plus the SCC condensation
// with bottom markers.
class ConfigGraph {
 public:
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const Configuration& node(std::uint32_t v) const { return nodes_.at(v); }
  std::optional<std::uint32_t> index_of(const Configuration& c) const;

  std::span<const std::uint32_t> out_edges(std::uint32_t v) const {
    return {edges_.data() + row_ptr_[v], edges_.data() + row_ptr_[v + 1]};
  }

  std::uint32_t scc_of(std::uint32_t v) const { return scc_id_.at(v); }
  std::uint32_t scc_count() const { return scc_count_; }
  bool scc_is_bottom(std::uint32_t scc) const { return bottom_.at(scc); }

  // Nodes that can reach some node in `targets` (including the targets).
  std::vector<bool> backward_closure(const std::vector<std::uint32_t>& targets) const;
  // Nodes reachable from `sources` (including the sources).
  std::vector<bool> forward_closure(const std::vector<std::uint32_t>& sources) const;

 private:
  friend ConfigGraph build_config_graph(const Protocol&, const Multiset&,
                                        std::uint64_t);
  ConfigGraph() = default;
  void compute_sccs();

  std::vector<Configuration> nodes_;
  std::unordered_map<Configuration, std::uint32_t, ConfigurationHash> index_;
  std::vector<std::uint64_t> row_ptr_;
  std::vector<std::uint32_t> edges_;
  std::vector<std::uint32_t> scc_id_;
  std::uint32_t scc_count_ = 0;
  std::vector<bool> bottom_;
};

// Enumerates every configuration of |A| agents over the protocol's states
// (anonymised) and their successor edges. Throws ResourceError with the
// would-be size when the count exceeds the node budget.
ConfigGraph build_config_graph(const Protocol& protocol, const Multiset& input,
                               std::uint64_t node_budget = kDefaultNodeBudget);

enum class VerdictStatus { kSelfStabilizing, kViolated };

// For violations: a bottom-SCC configuration without the required uniform
// output, plus an interaction path leading to it from a starting
// configuration (every configuration is a legal start).
struct Witness {
  Configuration start;
  std::vector<std::pair<AgentClass, AgentClass>> steps;
  Configuration bad;
};

struct Verdict {
  VerdictStatus status = VerdictStatus::kViolated;
  Multiset input;
  OutputId expected = 0;
  std::optional<Witness> witness;
  std::uint64_t nodes = 0;
  std::uint64_t edges = 0;
  std::uint64_t sccs = 0;
  std::uint64_t bottom_sccs = 0;
  double wall_ms = 0.0;
  std::string note;

  bool ok() const { return status == VerdictStatus::kSelfStabilizing; }
};

// Decides self-stabilization on input A: every bottom SCC of the full
// configuration graph must consist solely of configurations where all
// agents output f(A). (Under global fairness every execution eventually
// stays inside one bottom SCC and visits all of it.) Single-agent
// populations cannot interact, so their verdict reduces to whether the
// input-determined initial state outputs f(A).
Verdict verify_self_stabilizing(const Protocol& protocol,
                                const FunctionSpec& spec, const Multiset& input,
                                std::uint64_t node_budget = kDefaultNodeBudget);

struct Refutation {
  Verdict on_subset;    // verdict for A
  Verdict on_superset;  // verdict for B
  bool refuted = false;  // at least one verdict is violated
};

// For a genuine subset-closure violation A contained in B with
// f(A) != f(B), checks the candidate protocol on both inputs; no protocol
// can stabilize on both. Throws InputError when the pair is not a
// violation.
Refutation refute_protocol(const Protocol& protocol, const FunctionSpec& spec,
                           const Multiset& a, const Multiset& b,
                           std::uint64_t node_budget = kDefaultNodeBudget);

struct StatisticalTrial {
  std::uint32_t trial = 0;
  bool converged = false;
  std::uint64_t steps_to_hold = 0;  // meaningful when converged
  std::string final_configuration;  // rendered; kept for stuck exhibits
};

struct StatisticalReport {
  std::uint32_t trials = 0;
  std::uint32_t converged = 0;
  std::uint64_t step_cap = 0;
  std::uint64_t window = 0;  // trailing steps the output must hold
  std::uint64_t seed = 0;
  std::vector<StatisticalTrial> per_trial;

  bool all_converged() const { return converged == trials; }
  // Inconclusive trials hit the step cap without holding the output; that
  // alone does not witness a violation.
  std::uint32_t inconclusive() const { return trials - converged; }
  std::string render() const;
};

// Randomised fairness surrogate: for each trial, samples a uniformly random
// initial configuration over Q (seeded, reproducible) and simulates until
// the population holds the uniform output f(A) for a trailing window of n^2
// steps or the step cap is reached.
StatisticalReport statistical_check(const Protocol& protocol,
                                    const FunctionSpec& spec,
                                    const Multiset& input, std::uint32_t trials,
                                    std::uint64_t step_cap, std::uint64_t seed);

struct LemmaCheck {
  bool holds = false;
  std::string detail;
};

// The four correctness-proof properties of the construction, run as
// reachability and invariant queries over the configuration graph:
//  1. count bound: for each symbol with n <= M agents, every configuration
//     can reach one where some such agent has count >= n-1;
//  2. root iteration: an agent whose root output is wrong can always reach
//     root+1 (mod |R|) in a reset state -- tracked per agent;
//  3. count lower bound: from all-reset starts, an agent with input sigma
//     and count c implies at least c+1 agents with input sigma;
//  4. convergence from reset: every bottom SCC reachable from an all-reset
//     configuration outputs f(A) uniformly.
struct LemmaSuiteReport {
  LemmaCheck count_bound;
  LemmaCheck root_iteration;
  LemmaCheck count_lower_bound;
  LemmaCheck convergence_from_reset;

  bool all() const {
    return count_bound.holds && root_iteration.holds &&
           count_lower_bound.holds && convergence_from_reset.holds;
  }
};

LemmaSuiteReport check_construction_lemmas(
    const SynthesizedProtocol& synth, const FunctionSpec& spec,
    const Multiset& input, std::uint64_t node_budget = kDefaultNodeBudget);

// Canonical machine-readable verdict block (status=..., nodes=..., ...).
std::string render_verdict(const Verdict& verdict, const Protocol& protocol);

}  // namespace sstab
