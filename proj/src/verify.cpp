#include "sstab/verify.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <sstream>

#include "sstab/rng.hpp"

namespace sstab {

namespace {

constexpr std::uint64_t kSaturated = UINT64_MAX;

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) {
    return 0;
  }
  if (a > UINT64_MAX / b) {
    return kSaturated;
  }
  return a * b;
}

// C(n + m - 1, m): configurations of m identical agents over n states.
std::uint64_t saturating_multiset_count(std::uint64_t states,
                                        std::uint64_t agents) {
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= agents; ++i) {
    r = r * (states - 1 + i) / i;
    if (r > static_cast<unsigned __int128>(UINT64_MAX)) {
      return kSaturated;
    }
  }
  return static_cast<std::uint64_t>(r);
}

// Non-decreasing state tuples of a fixed length, in lexicographic order.
bool next_sorted_tuple(std::vector<StateId>& tuple, StateId state_count) {
  for (std::size_t i = tuple.size(); i-- > 0;) {
    if (tuple[i] + 1 < state_count) {
      StateId v = tuple[i] + 1;
      for (std::size_t j = i; j < tuple.size(); ++j) {
        tuple[j] = v;
      }
      return true;
    }
  }
  return false;
}

}  // namespace

std::optional<std::uint32_t> ConfigGraph::index_of(
    const Configuration& c) const {
  auto it = index_.find(c);
  if (it == index_.end()) {
    return std::nullopt;
  }
  return it->second;
}

std::vector<bool> ConfigGraph::backward_closure(
    const std::vector<std::uint32_t>& targets) const {
  // Reverse adjacency, built on demand (the forward graph is CSR).
  std::vector<std::uint64_t> in_degree(node_count() + 1, 0);
  for (std::uint32_t v = 0; v < node_count(); ++v) {
    for (std::uint32_t w : out_edges(v)) {
      ++in_degree[w + 1];
    }
  }
  for (std::size_t i = 1; i < in_degree.size(); ++i) {
    in_degree[i] += in_degree[i - 1];
  }
  std::vector<std::uint32_t> rev(edge_count());
  std::vector<std::uint64_t> fill = in_degree;
  for (std::uint32_t v = 0; v < node_count(); ++v) {
    for (std::uint32_t w : out_edges(v)) {
      rev[fill[w]++] = v;
    }
  }

  std::vector<bool> reached(node_count(), false);
  std::vector<std::uint32_t> stack;
  for (std::uint32_t t : targets) {
    if (!reached[t]) {
      reached[t] = true;
      stack.push_back(t);
    }
  }
  while (!stack.empty()) {
    std::uint32_t v = stack.back();
    stack.pop_back();
    for (std::uint64_t e = in_degree[v]; e < in_degree[v + 1]; ++e) {
      std::uint32_t u = rev[e];
      if (!reached[u]) {
        reached[u] = true;
        stack.push_back(u);
      }
    }
  }
  return reached;
}

std::vector<bool> ConfigGraph::forward_closure(
    const std::vector<std::uint32_t>& sources) const {
  std::vector<bool> reached(node_count(), false);
  std::vector<std::uint32_t> stack;
  for (std::uint32_t s : sources) {
    if (!reached[s]) {
      reached[s] = true;
      stack.push_back(s);
    }
  }
  while (!stack.empty()) {
    std::uint32_t v = stack.back();
    stack.pop_back();
    for (std::uint32_t w : out_edges(v)) {
      if (!reached[w]) {
        reached[w] = true;
        stack.push_back(w);
      }
    }
  }
  return reached;
}

void ConfigGraph::compute_sccs() {
  const std::uint32_t n = static_cast<std::uint32_t>(nodes_.size());
  constexpr std::uint32_t kUnvisited = UINT32_MAX;
  std::vector<std::uint32_t> index(n, kUnvisited);
  std::vector<std::uint32_t> lowlink(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<std::uint32_t> stack;
  scc_id_.assign(n, 0);
  scc_count_ = 0;

  // Iterative Tarjan; graphs reach millions of nodes, so no recursion.
  struct Frame {
    std::uint32_t v;
    std::uint64_t edge;
  };
  std::vector<Frame> call;
  std::uint32_t counter = 0;
  for (std::uint32_t root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) {
      continue;
    }
    index[root] = lowlink[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    call.push_back({root, row_ptr_[root]});
    while (!call.empty()) {
      std::uint32_t v = call.back().v;
      if (call.back().edge < row_ptr_[v + 1]) {
        std::uint32_t w = edges_[call.back().edge++];
        if (index[w] == kUnvisited) {
          index[w] = lowlink[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, row_ptr_[w]});
        } else if (on_stack[w]) {
          lowlink[v] = std::min(lowlink[v], index[w]);
        }
      } else {
        call.pop_back();
        if (!call.empty()) {
          std::uint32_t parent = call.back().v;
          lowlink[parent] = std::min(lowlink[parent], lowlink[v]);
        }
        if (lowlink[v] == index[v]) {
          std::uint32_t scc = scc_count_++;
          for (;;) {
            std::uint32_t w = stack.back();
            stack.pop_back();
            on_stack[w] = 0;
            scc_id_[w] = scc;
            if (w == v) {
              break;
            }
          }
        }
      }
    }
  }

  bottom_.assign(scc_count_, true);
  for (std::uint32_t v = 0; v < n; ++v) {
    for (std::uint32_t w : out_edges(v)) {
      if (scc_id_[v] != scc_id_[w]) {
        bottom_[scc_id_[v]] = false;
      }
    }
  }
}

ConfigGraph build_config_graph(const Protocol& protocol, const Multiset& input,
                               std::uint64_t node_budget) {
  if (!same_alphabet(input.alphabet(), protocol.input_alphabet())) {
    throw InputError("input multiset is over a different alphabet");
  }
  if (input.empty()) {
    throw InputError("input multiset must be non-empty");
  }
  const StateId state_count = static_cast<StateId>(protocol.state_count());

  std::vector<std::pair<SymbolId, std::uint32_t>> present;
  auto counts = input.counts();
  for (std::size_t s = 0; s < counts.size(); ++s) {
    if (counts[s] > 0) {
      present.push_back({static_cast<SymbolId>(s), counts[s]});
    }
  }

  std::uint64_t predicted = 1;
  for (const auto& [sigma, m] : present) {
    predicted = saturating_mul(predicted,
                               saturating_multiset_count(state_count, m));
  }
  if (predicted > node_budget) {
    std::string size = predicted == kSaturated
                           ? std::string("more than 2^64")
                           : std::to_string(predicted);
    throw ResourceError("configuration graph would have " + size +
                        " nodes, exceeding the budget of " +
                        std::to_string(node_budget));
  }

  ConfigGraph graph;
  graph.nodes_.reserve(predicted);

  // Odometer over per-symbol sorted state tuples, last symbol fastest.
  std::vector<std::vector<StateId>> tuples;
  tuples.reserve(present.size());
  for (const auto& [sigma, m] : present) {
    tuples.emplace_back(m, 0);
  }
  for (;;) {
    std::vector<Configuration::Entry> entries;
    for (std::size_t p = 0; p < present.size(); ++p) {
      for (StateId q : tuples[p]) {
        entries.push_back({{q, present[p].first}, 1});
      }
    }
    Configuration node{std::move(entries)};
    graph.index_.emplace(node, static_cast<std::uint32_t>(graph.nodes_.size()));
    graph.nodes_.push_back(std::move(node));

    std::size_t p = present.size();
    while (p-- > 0) {
      if (next_sorted_tuple(tuples[p], state_count)) {
        break;
      }
      tuples[p].assign(tuples[p].size(), 0);
      if (p == 0) {
        p = SIZE_MAX;
        break;
      }
    }
    if (p == SIZE_MAX) {
      break;
    }
  }
  if (graph.nodes_.size() != predicted) {
    throw InternalError("configuration enumeration does not match the "
                        "predicted node count");
  }

  graph.row_ptr_.assign(graph.nodes_.size() + 1, 0);
  for (std::uint32_t v = 0; v < graph.nodes_.size(); ++v) {
    for (const Configuration& next : successors(protocol, graph.nodes_[v])) {
      auto it = graph.index_.find(next);
      if (it == graph.index_.end()) {
        throw InternalError("successor configuration missing from the "
                            "enumeration");
      }
      graph.edges_.push_back(it->second);
    }
    graph.row_ptr_[v + 1] = graph.edges_.size();
  }
  graph.compute_sccs();
  return graph;
}

namespace {

// Reconstructs a replayable interaction path between graph nodes found by
// breadth-first search from `from`.
std::optional<Witness> find_path_witness(const Protocol& protocol,
                                         const ConfigGraph& graph,
                                         std::uint32_t from, std::uint32_t to) {
  constexpr std::uint32_t kNone = UINT32_MAX;
  std::vector<std::uint32_t> parent(graph.node_count(), kNone);
  std::deque<std::uint32_t> queue;
  parent[from] = from;
  queue.push_back(from);
  while (!queue.empty() && parent[to] == kNone) {
    std::uint32_t v = queue.front();
    queue.pop_front();
    for (std::uint32_t w : graph.out_edges(v)) {
      if (parent[w] == kNone) {
        parent[w] = v;
        queue.push_back(w);
      }
    }
  }
  if (parent[to] == kNone) {
    return std::nullopt;
  }
  std::vector<std::uint32_t> path{to};
  while (path.back() != from) {
    path.push_back(parent[path.back()]);
  }
  std::reverse(path.begin(), path.end());

  Witness witness;
  witness.start = graph.node(from);
  witness.bad = graph.node(to);
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const Configuration& cur = graph.node(path[i]);
    const Configuration& next = graph.node(path[i + 1]);
    bool matched = false;
    for (const auto& [c1, n1] : cur.entries()) {
      for (const auto& [c2, n2] : cur.entries()) {
        if (c1 == c2 && n1 < 2) {
          continue;
        }
        if (apply_interaction(protocol, cur, c1, c2) == next) {
          witness.steps.push_back({c1, c2});
          matched = true;
          break;
        }
      }
      if (matched) {
        break;
      }
    }
    if (!matched) {
      throw InternalError("could not reconstruct a witness interaction");
    }
  }
  return witness;
}

}  // namespace

Verdict verify_self_stabilizing(const Protocol& protocol,
                                const FunctionSpec& spec, const Multiset& input,
                                std::uint64_t node_budget) {
  auto t0 = std::chrono::steady_clock::now();
  Verdict verdict{.status = VerdictStatus::kSelfStabilizing,
                  .input = input,
                  .expected = spec.value_of(input),
                  .witness = std::nullopt,
                  .nodes = 0,
                  .edges = 0,
                  .sccs = 0,
                  .bottom_sccs = 0,
                  .wall_ms = 0.0,
                  .note = {}};

  ConfigGraph graph = build_config_graph(protocol, input, node_budget);
  verdict.nodes = graph.node_count();
  verdict.edges = graph.edge_count();
  verdict.sccs = graph.scc_count();
  for (std::uint32_t s = 0; s < graph.scc_count(); ++s) {
    if (graph.scc_is_bottom(s)) {
      ++verdict.bottom_sccs;
    }
  }

  if (input.total() == 1) {
    // No interactions are possible, so self-stabilization degenerates to
    // plain convergence: the input-determined initial state must already
    // output f(A). See README for the rationale.
    verdict.note = "single-agent population: verdict determined by the "
                   "input map";
    Configuration init = initial_configuration(protocol, input);
    auto out = config_output(protocol, init);
    if (!out || *out != verdict.expected) {
      verdict.status = VerdictStatus::kViolated;
      verdict.witness = Witness{init, {}, init};
    }
  } else {
    constexpr std::uint32_t kNone = UINT32_MAX;
    std::uint32_t bad = kNone;
    for (std::uint32_t v = 0; v < graph.node_count() && bad == kNone; ++v) {
      if (!graph.scc_is_bottom(graph.scc_of(v))) {
        continue;
      }
      auto out = config_output(protocol, graph.node(v));
      if (!out || *out != verdict.expected) {
        bad = v;
      }
    }
    if (bad != kNone) {
      verdict.status = VerdictStatus::kViolated;
      Configuration init = initial_configuration(protocol, input);
      std::uint32_t init_idx = *graph.index_of(init);
      auto witness = find_path_witness(protocol, graph, init_idx, bad);
      if (!witness) {
        // Not reachable from the canonical start; the bad configuration is
        // itself a legal start, which is all self-stabilization needs.
        witness = Witness{graph.node(bad), {}, graph.node(bad)};
      }
      verdict.witness = std::move(witness);
    }
  }

  verdict.wall_ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
  return verdict;
}

Refutation refute_protocol(const Protocol& protocol, const FunctionSpec& spec,
                           const Multiset& a, const Multiset& b,
                           std::uint64_t node_budget) {
  if (!is_subset(a, b) || a == b) {
    throw InputError("refutation pair must satisfy A proper-subset B");
  }
  OutputId fa = spec.value_of(a);
  OutputId fb = spec.value_of(b);
  if (fa == fb) {
    throw InputError("refutation pair must violate subset closure: f(" +
                     a.format() + ") = f(" + b.format() + ")");
  }
  Refutation result{
      .on_subset = verify_self_stabilizing(protocol, spec, a, node_budget),
      .on_superset = verify_self_stabilizing(protocol, spec, b, node_budget)};
  result.refuted = !result.on_subset.ok() || !result.on_superset.ok();
  return result;
}

StatisticalReport statistical_check(const Protocol& protocol,
                                    const FunctionSpec& spec,
                                    const Multiset& input, std::uint32_t trials,
                                    std::uint64_t step_cap, std::uint64_t seed) {
  if (trials < 1) {
    throw InputError("statistical check needs at least one trial");
  }
  const OutputId expected = spec.value_of(input);
  const std::uint32_t n = input.total();
  const std::uint64_t window = std::max<std::uint64_t>(1, std::uint64_t{n} * n);
  const StateId state_count = static_cast<StateId>(protocol.state_count());
  const std::size_t sigma_count = protocol.input_alphabet()->size();

  std::vector<SymbolId> agent_inputs;
  auto counts = input.counts();
  for (std::size_t s = 0; s < counts.size(); ++s) {
    for (std::uint32_t c = 0; c < counts[s]; ++c) {
      agent_inputs.push_back(static_cast<SymbolId>(s));
    }
  }

  // Tabulated transitions make million-step trials cheap.
  const std::uint64_t classes = std::uint64_t{state_count} * sigma_count;
  const bool tabulate = classes * classes <= (std::uint64_t{1} << 22);
  std::vector<std::pair<StateId, StateId>> table;
  if (tabulate) {
    table.resize(classes * classes);
    for (StateId q1 = 0; q1 < state_count; ++q1) {
      for (std::size_t s1 = 0; s1 < sigma_count; ++s1) {
        for (StateId q2 = 0; q2 < state_count; ++q2) {
          for (std::size_t s2 = 0; s2 < sigma_count; ++s2) {
            table[(q1 * sigma_count + s1) * classes + q2 * sigma_count + s2] =
                protocol.apply(q1, static_cast<SymbolId>(s1), q2,
                               static_cast<SymbolId>(s2));
          }
        }
      }
    }
  }
  auto transition = [&](StateId q1, SymbolId s1, StateId q2, SymbolId s2) {
    if (tabulate) {
      return table[(q1 * sigma_count + s1) * classes + q2 * sigma_count + s2];
    }
    return protocol.apply(q1, s1, q2, s2);
  };

  StatisticalReport report{.trials = trials,
                           .converged = 0,
                           .step_cap = step_cap,
                           .window = window,
                           .seed = seed,
                           .per_trial = {}};
  for (std::uint32_t t = 0; t < trials; ++t) {
    std::mt19937_64 gen(rng::splitmix64(seed + t));
    std::vector<StateId> states(n);
    for (std::uint32_t i = 0; i < n; ++i) {
      states[i] = static_cast<StateId>(rng::bounded(gen, state_count));
    }
    std::uint32_t wrong = 0;
    for (std::uint32_t i = 0; i < n; ++i) {
      wrong += protocol.output(states[i]) != expected;
    }
    std::uint64_t hold = wrong == 0 ? 1 : 0;

    StatisticalTrial trial{.trial = t,
                           .converged = hold >= window,
                           .steps_to_hold = 0,
                           .final_configuration = {}};
    if (!trial.converged && n >= 2) {
      for (std::uint64_t step = 1; step <= step_cap; ++step) {
        std::uint64_t i = rng::bounded(gen, n);
        std::uint64_t j = rng::bounded(gen, n - 1);
        if (j >= i) {
          ++j;
        }
        wrong -= protocol.output(states[i]) != expected;
        wrong -= protocol.output(states[j]) != expected;
        auto [q1, q2] = transition(states[i], agent_inputs[i], states[j],
                                   agent_inputs[j]);
        states[i] = q1;
        states[j] = q2;
        wrong += protocol.output(states[i]) != expected;
        wrong += protocol.output(states[j]) != expected;
        hold = wrong == 0 ? hold + 1 : 0;
        if (hold >= window) {
          trial.converged = true;
          trial.steps_to_hold = step;
          break;
        }
      }
    }
    if (trial.converged) {
      ++report.converged;
    } else {
      std::vector<AgentClass> final_agents(n);
      for (std::uint32_t i = 0; i < n; ++i) {
        final_agents[i] = {states[i], agent_inputs[i]};
      }
      trial.final_configuration =
          Configuration::from_agents(final_agents).render(protocol);
    }
    report.per_trial.push_back(std::move(trial));
  }
  return report;
}

std::string StatisticalReport::render() const {
  std::ostringstream out;
  out << "trials=" << trials << '\n'
      << "converged=" << converged << '\n'
      << "inconclusive=" << inconclusive() << '\n'
      << "step-cap=" << step_cap << '\n'
      << "window=" << window << '\n'
      << "seed=" << seed << '\n';
  for (const StatisticalTrial& t : per_trial) {
    if (!t.converged) {
      out << "trial=" << t.trial << " status=inconclusive final="
          << t.final_configuration << '\n';
    }
  }
  return out.str();
}

namespace {

std::string render_class(const Protocol& protocol, const AgentClass& c) {
  return "(" + protocol.state_name(c.state) + "," +
         protocol.input_alphabet()->name(c.input) + ")";
}

}  // namespace

std::string render_verdict(const Verdict& verdict, const Protocol& protocol) {
  std::ostringstream out;
  out << "status="
      << (verdict.ok() ? "self-stabilizing" : "violated") << '\n'
      << "input=" << verdict.input.format() << '\n'
      << "expected=" << protocol.outputs().name(verdict.expected) << '\n'
      << "nodes=" << verdict.nodes << '\n'
      << "edges=" << verdict.edges << '\n'
      << "sccs=" << verdict.sccs << '\n'
      << "bottom-sccs=" << verdict.bottom_sccs << '\n';
  if (!verdict.note.empty()) {
    out << "note=" << verdict.note << '\n';
  }
  if (verdict.witness) {
    out << "witness=" << verdict.witness->bad.render(protocol) << '\n';
    out << "witness-start=" << verdict.witness->start.render(protocol) << '\n';
    out << "witness-steps=";
    for (std::size_t i = 0; i < verdict.witness->steps.size(); ++i) {
      if (i > 0) {
        out << ';';
      }
      out << render_class(protocol, verdict.witness->steps[i].first) << '+'
          << render_class(protocol, verdict.witness->steps[i].second);
    }
    out << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Construction lemma suite
// ---------------------------------------------------------------------------

namespace {

// A pointed configuration tracks one distinguished agent through
// interactions; anonymity makes the (state, input) class of the marked
// agent sufficient.
struct PointedGraph {
  // pid -> (node, marked entry position within the node)
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pnodes;
  std::vector<std::uint64_t> node_offset;  // node -> first pid
  std::vector<std::vector<std::uint32_t>> adj;

  std::uint32_t pid_of(const ConfigGraph& graph, std::uint32_t node,
                       const AgentClass& marked) const {
    auto entries = graph.node(node).entries();
    for (std::uint32_t e = 0; e < entries.size(); ++e) {
      if (entries[e].first == marked) {
        return static_cast<std::uint32_t>(node_offset[node] + e);
      }
    }
    throw InternalError("marked agent class missing from configuration");
  }
};

PointedGraph build_pointed_graph(const Protocol& protocol,
                                 const ConfigGraph& graph) {
  PointedGraph pg;
  pg.node_offset.assign(graph.node_count() + 1, 0);
  for (std::uint32_t v = 0; v < graph.node_count(); ++v) {
    pg.node_offset[v + 1] =
        pg.node_offset[v] + graph.node(v).entries().size();
  }
  pg.pnodes.resize(pg.node_offset.back());
  for (std::uint32_t v = 0; v < graph.node_count(); ++v) {
    auto entries = graph.node(v).entries();
    for (std::uint32_t e = 0; e < entries.size(); ++e) {
      pg.pnodes[pg.node_offset[v] + e] = {v, e};
    }
  }
  pg.adj.resize(pg.pnodes.size());

  for (std::uint32_t v = 0; v < graph.node_count(); ++v) {
    const Configuration& cur = graph.node(v);
    auto entries = cur.entries();
    for (const auto& [c1, n1] : entries) {
      for (const auto& [c2, n2] : entries) {
        if (c1 == c2 && n1 < 2) {
          continue;
        }
        Configuration next = apply_interaction(protocol, cur, c1, c2);
        std::uint32_t w = *graph.index_of(next);
        auto [r1, r2] =
            protocol.apply(c1.state, c1.input, c2.state, c2.input);
        for (std::uint32_t e = 0; e < entries.size(); ++e) {
          const AgentClass marked = entries[e].first;
          std::uint32_t pid = static_cast<std::uint32_t>(pg.node_offset[v] + e);
          // Marked agent sits out: needs the pair available among the rest.
          std::uint32_t avail1 = n1 - (c1 == marked ? 1 : 0);
          std::uint32_t avail2 = n2 - (c2 == marked ? 1 : 0);
          bool can_sit_out = c1 == c2 ? avail1 >= 2 : (avail1 >= 1 && avail2 >= 1);
          if (can_sit_out) {
            pg.adj[pid].push_back(pg.pid_of(graph, w, marked));
          }
          if (c1 == marked) {
            pg.adj[pid].push_back(
                pg.pid_of(graph, w, {r1, marked.input}));
          }
          if (c2 == marked) {
            pg.adj[pid].push_back(
                pg.pid_of(graph, w, {r2, marked.input}));
          }
        }
      }
    }
  }
  for (auto& targets : pg.adj) {
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
  }
  return pg;
}

std::vector<bool> pointed_backward_closure(
    const PointedGraph& pg, const std::vector<std::uint32_t>& targets) {
  std::vector<std::vector<std::uint32_t>> rev(pg.pnodes.size());
  for (std::uint32_t p = 0; p < pg.pnodes.size(); ++p) {
    for (std::uint32_t q : pg.adj[p]) {
      rev[q].push_back(p);
    }
  }
  std::vector<bool> reached(pg.pnodes.size(), false);
  std::vector<std::uint32_t> stack;
  for (std::uint32_t t : targets) {
    if (!reached[t]) {
      reached[t] = true;
      stack.push_back(t);
    }
  }
  while (!stack.empty()) {
    std::uint32_t p = stack.back();
    stack.pop_back();
    for (std::uint32_t q : rev[p]) {
      if (!reached[q]) {
        reached[q] = true;
        stack.push_back(q);
      }
    }
  }
  return reached;
}

}  // namespace

LemmaSuiteReport check_construction_lemmas(const SynthesizedProtocol& synth,
                                           const FunctionSpec& spec,
                                           const Multiset& input,
                                           std::uint64_t node_budget) {
  if (input.total() < 2) {
    throw InputError("the lemma suite needs an interacting population");
  }
  const Protocol& protocol = synth.protocol();
  const OutputId expected = spec.value_of(input);
  const std::uint32_t m_max = synth.max_count();
  const std::uint32_t k = static_cast<std::uint32_t>(synth.roots().size());

  ConfigGraph graph = build_config_graph(protocol, input, node_budget);
  LemmaSuiteReport report;

  // 1. Count bound: with at least n <= M agents on a symbol, some such
  //    agent can always be driven to count >= n-1.
  {
    bool holds = true;
    std::string detail;
    auto counts = input.counts();
    for (std::size_t s = 0; s < counts.size() && holds; ++s) {
      std::uint32_t n = std::min(counts[s], m_max);
      if (n < 2) {
        continue;  // count >= 0 holds trivially
      }
      SymbolId sigma = static_cast<SymbolId>(s);
      std::vector<std::uint32_t> targets;
      for (std::uint32_t v = 0; v < graph.node_count(); ++v) {
        for (const auto& [c, cnt] : graph.node(v).entries()) {
          if (c.input == sigma && synth.decode(c.state).count >= n - 1) {
            targets.push_back(v);
            break;
          }
        }
      }
      std::vector<bool> can_reach = graph.backward_closure(targets);
      for (std::uint32_t v = 0; v < graph.node_count(); ++v) {
        if (!can_reach[v]) {
          holds = false;
          detail = "symbol " + input.alphabet()->name(sigma) +
                   ": configuration " + graph.node(v).render(protocol) +
                   " cannot reach count >= " + std::to_string(n - 1);
          break;
        }
      }
    }
    report.count_bound = {holds, detail};
  }

  // 2. Root iteration: an agent outputting the wrong answer can always
  //    reach the next root in a reset state; the agent is tracked through
  //    interactions via the pointed graph.
  {
    bool holds = true;
    std::string detail;
    PointedGraph pg = build_pointed_graph(protocol, graph);
    for (std::uint32_t i = 0; i < k && holds; ++i) {
      if (synth.root_outputs()[i] == expected) {
        continue;
      }
      const std::uint32_t next = (i + 1) % k;
      std::vector<std::uint32_t> targets;
      std::vector<std::uint32_t> sources;
      for (std::uint32_t p = 0; p < pg.pnodes.size(); ++p) {
        auto [v, e] = pg.pnodes[p];
        const AgentClass marked = graph.node(v).entries()[e].first;
        auto d = synth.decode(marked.state);
        if (d.root == i) {
          sources.push_back(p);
        }
        if (d.root == next && d.count == 0 && d.has_more == 0) {
          targets.push_back(p);
        }
      }
      std::vector<bool> can_reach = pointed_backward_closure(pg, targets);
      for (std::uint32_t p : sources) {
        if (!can_reach[p]) {
          auto [v, e] = pg.pnodes[p];
          holds = false;
          detail = "agent with root " + std::to_string(i) + " in " +
                   graph.node(v).render(protocol) +
                   " cannot reach a reset state at root " +
                   std::to_string(next);
          break;
        }
      }
    }
    report.root_iteration = {holds, detail};
  }

  // All-reset configurations seed the remaining two checks.
  std::vector<std::uint32_t> reset_nodes;
  for (std::uint32_t v = 0; v < graph.node_count(); ++v) {
    bool all_reset = true;
    for (const auto& [c, cnt] : graph.node(v).entries()) {
      if (!synth.is_reset(c.state)) {
        all_reset = false;
        break;
      }
    }
    if (all_reset) {
      reset_nodes.push_back(v);
    }
  }
  std::vector<bool> from_reset = graph.forward_closure(reset_nodes);

  // 3. Count lower bound: after everyone has reset, a count of c on input
  //    sigma certifies at least c+1 agents with that input.
  {
    bool holds = true;
    std::string detail;
    for (std::uint32_t v = 0; v < graph.node_count() && holds; ++v) {
      if (!from_reset[v]) {
        continue;
      }
      for (const auto& [c, cnt] : graph.node(v).entries()) {
        std::uint32_t count = synth.decode(c.state).count;
        if (count + 1 > input.multiplicity(c.input)) {
          holds = false;
          detail = "configuration " + graph.node(v).render(protocol) +
                   " reachable from an all-reset start overestimates input " +
                   input.alphabet()->name(c.input);
          break;
        }
      }
    }
    report.count_lower_bound = {holds, detail};
  }

  // 4. Convergence from reset: bottom SCCs reachable from all-reset starts
  //    output f(A) uniformly.
  {
    bool holds = true;
    std::string detail;
    for (std::uint32_t v = 0; v < graph.node_count() && holds; ++v) {
      if (!from_reset[v] || !graph.scc_is_bottom(graph.scc_of(v))) {
        continue;
      }
      auto out = config_output(protocol, graph.node(v));
      if (!out || *out != expected) {
        holds = false;
        detail = "bottom-SCC configuration " +
                 graph.node(v).render(protocol) +
                 " reachable from an all-reset start does not output f(A)";
      }
    }
    report.convergence_from_reset = {holds, detail};
  }

  return report;
}

}  // namespace sstab
