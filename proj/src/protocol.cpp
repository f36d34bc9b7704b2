#include "sstab/protocol.hpp"

#include "sstab/rng.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace sstab {

Protocol::Protocol(std::vector<std::string> state_names,
                   AlphabetPtr input_alphabet, OutputAlphabet outputs,
                   std::vector<StateId> input_map,
                   std::vector<OutputId> output_map, Delta delta)
    : state_names_(std::move(state_names)),
      input_alphabet_(std::move(input_alphabet)),
      outputs_(std::move(outputs)),
      input_map_(std::move(input_map)),
      output_map_(std::move(output_map)),
      delta_(std::move(delta)) {
  if (state_names_.empty()) {
    throw InputError("protocol requires at least one state");
  }
  if (!input_alphabet_) {
    throw InputError("protocol requires an input alphabet");
  }
  if (input_map_.size() != input_alphabet_->size()) {
    throw InputError("input map must be total on the input alphabet");
  }
  if (output_map_.size() != state_names_.size()) {
    throw InputError("output map must be total on the states");
  }
  for (StateId q : input_map_) {
    if (q >= state_names_.size()) {
      throw InputError("input map targets an unknown state");
    }
  }
  for (OutputId y : output_map_) {
    if (y >= outputs_.size()) {
      throw InputError("output map uses an undeclared output");
    }
  }
  if (!delta_) {
    throw InputError("protocol requires a transition function");
  }
}

std::optional<StateId> Protocol::find_state(std::string_view name) const {
  for (std::size_t i = 0; i < state_names_.size(); ++i) {
    if (state_names_[i] == name) {
      return static_cast<StateId>(i);
    }
  }
  return std::nullopt;
}

std::pair<StateId, StateId> Protocol::apply(StateId q1, SymbolId s1,
                                            StateId q2, SymbolId s2) const {
  if (q1 >= state_names_.size() || q2 >= state_names_.size() ||
      s1 >= input_alphabet_->size() || s2 >= input_alphabet_->size()) {
    throw InputError("transition arguments out of range");
  }
  auto [r1, r2] = delta_(q1, s1, q2, s2);
  if (r1 >= state_names_.size() || r2 >= state_names_.size()) {
    throw InternalError("transition function produced an unknown state");
  }
  return {r1, r2};
}

Configuration::Configuration(std::vector<Entry> entries)
    : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end());
  std::size_t out = 0;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].second == 0) {
      continue;
    }
    if (out > 0 && entries_[out - 1].first == entries_[i].first) {
      entries_[out - 1].second += entries_[i].second;
    } else {
      entries_[out++] = entries_[i];
    }
  }
  entries_.resize(out);
  population_ = 0;
  for (const Entry& e : entries_) {
    population_ += e.second;
  }
}

Configuration Configuration::from_agents(std::span<const AgentClass> agents) {
  std::vector<Entry> entries;
  entries.reserve(agents.size());
  for (const AgentClass& a : agents) {
    entries.emplace_back(a, 1);
  }
  return Configuration(std::move(entries));
}

std::uint32_t Configuration::count_of(const AgentClass& c) const {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), c,
      [](const Entry& e, const AgentClass& key) { return e.first < key; });
  if (it == entries_.end() || !(it->first == c)) {
    return 0;
  }
  return it->second;
}

Multiset Configuration::input_projection(const AlphabetPtr& alphabet) const {
  std::vector<std::uint32_t> counts(alphabet->size(), 0);
  for (const Entry& e : entries_) {
    if (e.first.input >= counts.size()) {
      throw InputError("configuration input symbol outside the alphabet");
    }
    counts[e.first.input] += e.second;
  }
  return Multiset(alphabet, std::move(counts));
}

std::string Configuration::render(const Protocol& protocol) const {
  std::ostringstream out;
  bool first = true;
  for (const Entry& e : entries_) {
    if (!first) {
      out << ' ';
    }
    out << e.second << "x(" << protocol.state_name(e.first.state) << ','
        << protocol.input_alphabet()->name(e.first.input) << ')';
    first = false;
  }
  return out.str();
}

std::size_t Configuration::hash() const {
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a
  auto mix = [&h](std::uint64_t v) {
    h ^= v;
    h *= 1099511628211ull;
  };
  for (const Entry& e : entries_) {
    mix(e.first.state);
    mix(e.first.input);
    mix(e.second);
  }
  return static_cast<std::size_t>(h);
}

Configuration initial_configuration(const Protocol& protocol,
                                    const Multiset& input) {
  if (!same_alphabet(input.alphabet(), protocol.input_alphabet())) {
    throw InputError("input multiset is over a different alphabet");
  }
  if (input.empty()) {
    throw InputError("input multiset must be non-empty");
  }
  std::vector<Configuration::Entry> entries;
  auto counts = input.counts();
  for (std::size_t s = 0; s < counts.size(); ++s) {
    if (counts[s] > 0) {
      SymbolId sigma = static_cast<SymbolId>(s);
      entries.push_back({{protocol.initial_state(sigma), sigma}, counts[s]});
    }
  }
  return Configuration(std::move(entries));
}

namespace {

// entries stays sorted; count deltas may remove or insert classes.
void adjust(std::vector<Configuration::Entry>& entries, const AgentClass& c,
            std::int64_t delta) {
  auto it = std::lower_bound(
      entries.begin(), entries.end(), c,
      [](const Configuration::Entry& e, const AgentClass& key) {
        return e.first < key;
      });
  if (it != entries.end() && it->first == c) {
    std::int64_t next = static_cast<std::int64_t>(it->second) + delta;
    if (next < 0) {
      throw InputError("interaction requires agents that are not present");
    }
    if (next == 0) {
      entries.erase(it);
    } else {
      it->second = static_cast<std::uint32_t>(next);
    }
  } else {
    if (delta < 0) {
      throw InputError("interaction requires agents that are not present");
    }
    if (delta > 0) {
      entries.insert(it, {c, static_cast<std::uint32_t>(delta)});
    }
  }
}

Configuration step(const Protocol& protocol, const Configuration& config,
                   const AgentClass& initiator, const AgentClass& responder) {
  auto [q1, q2] = protocol.apply(initiator.state, initiator.input,
                                 responder.state, responder.input);
  std::vector<Configuration::Entry> entries(config.entries().begin(),
                                            config.entries().end());
  adjust(entries, initiator, -1);
  adjust(entries, responder, -1);
  adjust(entries, {q1, initiator.input}, +1);
  adjust(entries, {q2, responder.input}, +1);
  return Configuration(std::move(entries));
}

}  // namespace

Configuration apply_interaction(const Protocol& protocol,
                                const Configuration& config,
                                const AgentClass& initiator,
                                const AgentClass& responder) {
  std::uint32_t need_initiator = initiator == responder ? 2 : 1;
  if (config.count_of(initiator) < need_initiator ||
      config.count_of(responder) < 1) {
    throw InputError("interaction requires agents that are not present");
  }
  return step(protocol, config, initiator, responder);
}

std::vector<Configuration> successors(const Protocol& protocol,
                                      const Configuration& config) {
  std::vector<Configuration> result;
  if (config.population() < 2) {
    return result;
  }
  auto entries = config.entries();
  for (const auto& [c1, n1] : entries) {
    for (const auto& [c2, n2] : entries) {
      if (c1 == c2 && n1 < 2) {
        continue;
      }
      result.push_back(step(protocol, config, c1, c2));
    }
  }
  std::sort(result.begin(), result.end());
  result.erase(std::unique(result.begin(), result.end()), result.end());
  return result;
}

std::optional<OutputId> config_output(const Protocol& protocol,
                                      const Configuration& config) {
  std::optional<OutputId> value;
  for (const auto& [c, n] : config.entries()) {
    OutputId y = protocol.output(c.state);
    if (value && *value != y) {
      return std::nullopt;
    }
    value = y;
  }
  return value;
}

namespace {

AgentClass class_at(const Configuration& config, std::uint64_t index) {
  for (const auto& [c, n] : config.entries()) {
    if (index < n) {
      return c;
    }
    index -= n;
  }
  throw InternalError("agent index out of range");
}

// True when every configuration reachable from `c` keeps the uniform
// output `y`; nullopt when the search exceeds the node budget.
std::optional<bool> exhaustively_converged(const Protocol& protocol,
                                           const Configuration& c, OutputId y,
                                           std::uint64_t budget) {
  std::unordered_set<Configuration, ConfigurationHash> seen;
  std::vector<Configuration> frontier{c};
  seen.insert(c);
  while (!frontier.empty()) {
    Configuration cur = std::move(frontier.back());
    frontier.pop_back();
    auto out = config_output(protocol, cur);
    if (!out || *out != y) {
      return false;
    }
    for (Configuration& next : successors(protocol, cur)) {
      if (seen.insert(next).second) {
        if (seen.size() > budget) {
          return std::nullopt;
        }
        frontier.push_back(std::move(next));
      }
    }
  }
  return true;
}

}  // namespace

Trace simulate(const Protocol& protocol, const Configuration& start,
               std::uint64_t seed, std::uint64_t max_steps,
               const SimulateOptions& options) {
  Trace trace;
  trace.initial = start;
  trace.status = TraceStatus::kStepCap;

  std::unordered_map<Configuration, bool, ConfigurationHash> verdict_memo;
  auto detected = [&](const Configuration& c) {
    if (!options.detect_convergence) {
      return false;
    }
    auto memo = verdict_memo.find(c);
    if (memo != verdict_memo.end()) {
      return memo->second;
    }
    bool result = false;
    if (auto out = config_output(protocol, c)) {
      result = exhaustively_converged(protocol, c, *out,
                                      options.search_node_budget)
                   .value_or(false);
    }
    verdict_memo.emplace(c, result);
    return result;
  };

  // A lone agent can never interact; its output stands immediately.
  if (start.population() < 2 || detected(start)) {
    trace.status = TraceStatus::kConvergedDetected;
    return trace;
  }

  std::mt19937_64 gen(seed);
  Configuration current = start;
  const std::uint64_t n = current.population();
  for (std::uint64_t k = 0; k < max_steps; ++k) {
    std::uint64_t a = rng::bounded(gen, n);
    std::uint64_t b = rng::bounded(gen, n - 1);
    if (b >= a) {
      ++b;
    }
    AgentClass initiator = class_at(current, a);
    AgentClass responder = class_at(current, b);
    current = step(protocol, current, initiator, responder);
    trace.steps.push_back({initiator, responder, current});
    if (detected(current)) {
      trace.status = TraceStatus::kConvergedDetected;
      break;
    }
  }
  return trace;
}

std::string Trace::render(const Protocol& protocol) const {
  std::ostringstream out;
  out << "step=0 | " << initial.render(protocol) << '\n';
  for (std::size_t k = 0; k < steps.size(); ++k) {
    out << "step=" << (k + 1) << " | " << steps[k].after.render(protocol)
        << '\n';
  }
  return out.str();
}

}  // namespace sstab
