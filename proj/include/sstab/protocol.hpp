#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sstab/funcspec.hpp"
#include "sstab/multiset.hpp"

namespace sstab {

using StateId = std::uint32_t;

// A population protocol (Q, Sigma, Y, I, O, delta) as an executable
// transition system. States are indexed canonically; delta must be total on
// (Q x Sigma)^2 and is evaluated on demand.
class Protocol {
 public:
  // (initiator state, initiator input, responder state, responder input)
  // -> (initiator state', responder state')
  using Delta = std::function<std::pair<StateId, StateId>(
      StateId, SymbolId, StateId, SymbolId)>;

  Protocol(std::vector<std::string> state_names, AlphabetPtr input_alphabet,
           OutputAlphabet outputs, std::vector<StateId> input_map,
           std::vector<OutputId> output_map, Delta delta);

  std::size_t state_count() const { return state_names_.size(); }
  const std::string& state_name(StateId q) const { return state_names_.at(q); }
  std::optional<StateId> find_state(std::string_view name) const;
  const std::vector<std::string>& state_names() const { return state_names_; }

  const AlphabetPtr& input_alphabet() const { return input_alphabet_; }
  const OutputAlphabet& outputs() const { return outputs_; }

  StateId initial_state(SymbolId sigma) const { return input_map_.at(sigma); }
  OutputId output(StateId q) const { return output_map_.at(q); }

  std::pair<StateId, StateId> apply(StateId q1, SymbolId s1, StateId q2,
                                    SymbolId s2) const;

 private:
  std::vector<std::string> state_names_;
  AlphabetPtr input_alphabet_;
  OutputAlphabet outputs_;
  std::vector<StateId> input_map_;
  std::vector<OutputId> output_map_;
  Delta delta_;
};

// One anonymised agent kind: a (state, hardwired input symbol) pair.
struct AgentClass {
  StateId state = 0;
  SymbolId input = 0;

  friend auto operator<=>(const AgentClass&, const AgentClass&) = default;
};

// An anonymised configuration: a multiset of (state, input) pairs held as
// sorted (class, count) entries. Immutable; canonical form doubles as the
// hash/equality key.
class Configuration {
 public:
  using Entry = std::pair<AgentClass, std::uint32_t>;

  Configuration() = default;
  explicit Configuration(std::vector<Entry> entries);
  static Configuration from_agents(std::span<const AgentClass> agents);

  std::span<const Entry> entries() const { return entries_; }
  std::uint32_t population() const { return population_; }
  std::uint32_t count_of(const AgentClass& c) const;

  // The hardwired input multiset.
  Multiset input_projection(const AlphabetPtr& alphabet) const;

  // "2x(state,a) 1x(state,b)" with entries in canonical order.
  std::string render(const Protocol& protocol) const;

  std::size_t hash() const;

  friend bool operator==(const Configuration& a, const Configuration& b) {
    return a.entries_ == b.entries_;
  }
  friend bool operator<(const Configuration& a, const Configuration& b) {
    return a.entries_ < b.entries_;
  }

 private:
  std::vector<Entry> entries_;  // sorted by class, counts >= 1
  std::uint32_t population_ = 0;
};

struct ConfigurationHash {
  std::size_t operator()(const Configuration& c) const { return c.hash(); }
};

// Places each input symbol occurrence in its I(sigma) state. The input must
// be non-empty and over the protocol's alphabet.
Configuration initial_configuration(const Protocol& protocol,
                                    const Multiset& input);

// Applies one ordered interaction. The configuration must contain the
// initiator and, disjointly, the responder (multiplicity >= 2 when the
// classes coincide).
Configuration apply_interaction(const Protocol& protocol,
                                const Configuration& config,
                                const AgentClass& initiator,
                                const AgentClass& responder);

// All configurations reachable by one ordered interaction between distinct
// agents, deduplicated and sorted. Empty for populations of one.
std::vector<Configuration> successors(const Protocol& protocol,
                                      const Configuration& config);

// The common output symbol when every agent agrees, nullopt otherwise.
std::optional<OutputId> config_output(const Protocol& protocol,
                                      const Configuration& config);

enum class TraceStatus { kConvergedDetected, kStepCap, kVerifierDriven };

struct TraceStep {
  AgentClass initiator;
  AgentClass responder;
  Configuration after;
};

struct Trace {
  Configuration initial;
  std::vector<TraceStep> steps;
  TraceStatus status = TraceStatus::kStepCap;

  const Configuration& final_configuration() const {
    return steps.empty() ? initial : steps.back().after;
  }

  // One line per configuration: "step=<k> | <entries>".
  std::string render(const Protocol& protocol) const;
};

struct SimulateOptions {
  // When set, each newly seen configuration with a uniform output is tested
  // by exhaustive search; the run stops as soon as convergence is certain.
  bool detect_convergence = false;
  std::uint64_t search_node_budget = 1000000;
};

// Runs up to max_steps uniformly random ordered interactions, deterministic
// from the seed. The scheduler draws the initiator uniformly from all
// agents and the responder uniformly from the rest (see README for the
// generator contract).
Trace simulate(const Protocol& protocol, const Configuration& start,
               std::uint64_t seed, std::uint64_t max_steps,
               const SimulateOptions& options = {});

}  // namespace sstab
