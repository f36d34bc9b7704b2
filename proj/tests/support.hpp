#pragma once

// Shared fixtures and independent oracles for the test suites. The oracles
// deliberately avoid the code paths they check: minimality by pairwise
// scanning, successor sets by expanding agent indices, node counts by
// recursive enumeration.

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "sstab/funcspec.hpp"
#include "sstab/multiset.hpp"
#include "sstab/protocol.hpp"
#include "sstab/rng.hpp"
#include "sstab/rootset.hpp"

namespace support {

using namespace sstab;

inline AlphabetPtr alphabet(std::initializer_list<std::string> symbols) {
  return Alphabet::make(std::vector<std::string>(symbols));
}

inline Multiset ms(const AlphabetPtr& a, const std::string& text) {
  return parse_multiset(text, a);
}

inline Domain domain_of(const AlphabetPtr& a,
                        std::initializer_list<std::string> members) {
  std::vector<Multiset> parsed;
  for (const std::string& text : members) {
    parsed.push_back(ms(a, text));
  }
  return Domain(a, std::move(parsed));
}

// The appendix example domain and the fixture used throughout.
inline AlphabetPtr fixture_alphabet() { return alphabet({"a", "b", "d"}); }

inline FunctionSpec fixture_spec() {
  AlphabetPtr a = fixture_alphabet();
  Domain domain = domain_of(a, {"d", "d d", "a a b", "a a a b"});
  OutputAlphabet outputs({"0", "1"});
  // canonical member order: d, d d, a a b, a a a b
  std::vector<OutputId> mapping = {0, 0, 1, 1};
  return FunctionSpec::make_explicit(std::move(domain), std::move(outputs),
                                     std::move(mapping));
}

// Pairwise minimal-element filter, the root-set oracle.
inline std::vector<Multiset> brute_minimal(const Domain& domain) {
  std::vector<Multiset> result;
  for (const Multiset& a : domain.members()) {
    bool minimal = true;
    for (const Multiset& b : domain.members()) {
      if (!(a == b) && is_subset(b, a)) {
        minimal = false;
        break;
      }
    }
    if (minimal) {
      result.push_back(a);
    }
  }
  std::sort(result.begin(), result.end(), lex_less);
  return result;
}

// One-step successor oracle: expand the multiset to indexed agents, try
// every ordered index pair, anonymize the results.
inline std::vector<Configuration> successor_oracle(const Protocol& protocol,
                                                   const Configuration& c) {
  std::vector<AgentClass> agents;
  for (const auto& [cls, count] : c.entries()) {
    for (std::uint32_t i = 0; i < count; ++i) {
      agents.push_back(cls);
    }
  }
  std::set<Configuration> out;
  for (std::size_t i = 0; i < agents.size(); ++i) {
    for (std::size_t j = 0; j < agents.size(); ++j) {
      if (i == j) {
        continue;
      }
      auto [q1, q2] = protocol.apply(agents[i].state, agents[i].input,
                                     agents[j].state, agents[j].input);
      std::vector<AgentClass> next = agents;
      next[i].state = q1;
      next[j].state = q2;
      out.insert(Configuration::from_agents(next));
    }
  }
  return {out.begin(), out.end()};
}

// Counts multisets of `agents` identical slots over `states` values via the
// recurrence f(s, m) = f(s-1, m) + f(s, m-1), f(1, m) = f(s, 0) = 1.
inline std::uint64_t config_count_oracle(std::uint64_t states,
                                         std::uint64_t agents) {
  std::vector<std::vector<std::uint64_t>> f(states + 1,
                                            std::vector<std::uint64_t>(agents + 1, 0));
  for (std::uint64_t s = 1; s <= states; ++s) {
    f[s][0] = 1;
  }
  for (std::uint64_t m = 0; m <= agents; ++m) {
    f[1][m] = 1;
  }
  for (std::uint64_t s = 2; s <= states; ++s) {
    for (std::uint64_t m = 1; m <= agents; ++m) {
      f[s][m] = f[s - 1][m] + f[s][m - 1];
    }
  }
  return f[states][agents];
}

// Deterministic random domains for the oracle-equivalence suites.
struct DomainGenerator {
  std::mt19937_64 gen;
  explicit DomainGenerator(std::uint64_t seed) : gen(rng::splitmix64(seed)) {}

  Domain next(std::size_t max_symbols = 4, std::size_t max_members = 15,
              std::uint32_t max_multiplicity = 4) {
    static const std::vector<std::string> names = {"a", "b", "c", "d"};
    std::size_t k = 1 + rng::bounded(gen, max_symbols);
    AlphabetPtr a = Alphabet::make(
        std::vector<std::string>(names.begin(), names.begin() + k));
    std::size_t count = 1 + rng::bounded(gen, max_members);
    std::vector<Multiset> members;
    while (members.size() < count) {
      std::vector<std::uint32_t> counts(k);
      std::uint32_t total = 0;
      for (std::size_t i = 0; i < k; ++i) {
        counts[i] =
            static_cast<std::uint32_t>(rng::bounded(gen, max_multiplicity + 1));
        total += counts[i];
      }
      if (total == 0) {
        continue;
      }
      members.emplace_back(a, counts);
    }
    return Domain(a, std::move(members));
  }
};

// A protocol in which every state maps to one fixed output and delta is the
// identity.
inline Protocol constant_protocol(const AlphabetPtr& a,
                                  const OutputAlphabet& outputs, OutputId y) {
  return Protocol({"s0"}, a, outputs, std::vector<StateId>(a->size(), 0), {y},
                  [](StateId q1, SymbolId, StateId q2, SymbolId) {
                    return std::make_pair(q1, q2);
                  });
}

inline Protocol identity_protocol(const AlphabetPtr& a, std::size_t states) {
  std::vector<std::string> names;
  std::vector<OutputId> output_map;
  for (std::size_t i = 0; i < states; ++i) {
    names.push_back("s" + std::to_string(i));
    output_map.push_back(0);
  }
  return Protocol(std::move(names), a, OutputAlphabet({"0"}),
                  std::vector<StateId>(a->size(), 0), std::move(output_map),
                  [](StateId q1, SymbolId, StateId q2, SymbolId) {
                    return std::make_pair(q1, q2);
                  });
}

// A random tabulated protocol over `states` states; used for engine
// property tests.
inline Protocol random_protocol(std::mt19937_64& gen, const AlphabetPtr& a,
                                std::size_t states, std::size_t outputs = 2) {
  std::vector<std::string> names;
  std::vector<OutputId> output_map;
  for (std::size_t i = 0; i < states; ++i) {
    names.push_back("s" + std::to_string(i));
    output_map.push_back(
        static_cast<OutputId>(rng::bounded(gen, outputs)));
  }
  std::vector<std::string> out_names;
  for (std::size_t i = 0; i < outputs; ++i) {
    out_names.push_back(std::to_string(i));
  }
  const std::size_t sigma = a->size();
  std::vector<std::pair<StateId, StateId>> table(states * sigma * states *
                                                 sigma);
  for (auto& entry : table) {
    entry = {static_cast<StateId>(rng::bounded(gen, states)),
             static_cast<StateId>(rng::bounded(gen, states))};
  }
  std::vector<StateId> input_map;
  for (std::size_t s = 0; s < sigma; ++s) {
    input_map.push_back(static_cast<StateId>(rng::bounded(gen, states)));
  }
  return Protocol(std::move(names), a, OutputAlphabet(std::move(out_names)),
                  std::move(input_map), std::move(output_map),
                  [table, states, sigma](StateId q1, SymbolId s1, StateId q2,
                                         SymbolId s2) {
                    return table[((q1 * sigma + s1) * states + q2) * sigma +
                                 s2];
                  });
}

inline Configuration random_configuration(std::mt19937_64& gen,
                                          const Protocol& protocol,
                                          const Multiset& input) {
  std::vector<AgentClass> agents;
  auto counts = input.counts();
  for (std::size_t s = 0; s < counts.size(); ++s) {
    for (std::uint32_t c = 0; c < counts[s]; ++c) {
      agents.push_back({static_cast<StateId>(rng::bounded(
                            gen, protocol.state_count())),
                        static_cast<SymbolId>(s)});
    }
  }
  return Configuration::from_agents(agents);
}

}  // namespace support
