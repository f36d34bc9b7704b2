#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sstab/multiset.hpp"
#include "sstab/rootset.hpp"

namespace sstab {

using OutputId = std::uint32_t;

// Finite output alphabet Y. Unlike the input alphabet, declaration order is
// kept as-is.
class OutputAlphabet {
 public:
  explicit OutputAlphabet(std::vector<std::string> symbols);

  std::size_t size() const { return symbols_.size(); }
  const std::string& name(OutputId id) const { return symbols_.at(id); }
  std::optional<OutputId> find(std::string_view symbol) const;
  const std::vector<std::string>& symbols() const { return symbols_; }

  friend bool operator==(const OutputAlphabet& a,
                         const OutputAlphabet& b) = default;

 private:
  std::vector<std::string> symbols_;
};

// A target function f: X -> Y, either extensionally (explicit domain plus a
// total mapping) or by its root outputs alone (roots-only mode, for domains
// too large to list; verification then runs on the supplied test inputs).
class FunctionSpec {
 public:
  enum class Mode { kExplicit, kRootsOnly };

  static FunctionSpec make_explicit(Domain domain, OutputAlphabet outputs,
                                    std::vector<OutputId> mapping);

  // Roots must form an antichain and every test input must contain at least
  // one root. Whether co-occurring roots agree is reported by
  // check_subset_closed, mirroring the explicit-mode check.
  static FunctionSpec make_roots_only(AlphabetPtr alphabet,
                                      OutputAlphabet outputs,
                                      std::vector<Multiset> roots,
                                      std::vector<OutputId> root_outputs,
                                      std::vector<Multiset> test_inputs);

  Mode mode() const { return mode_; }
  const AlphabetPtr& alphabet() const { return alphabet_; }
  const OutputAlphabet& outputs() const { return outputs_; }

  // Explicit mode only.
  const Domain& domain() const;
  OutputId output_of_member(std::size_t index) const;

  // Roots-only mode only.
  std::span<const Multiset> declared_roots() const;
  std::span<const OutputId> declared_root_outputs() const;
  std::span<const Multiset> test_inputs() const;

  // The root set the synthesized protocol indexes: minimal_root_set of the
  // domain in explicit mode, the declared roots otherwise. The associated
  // domain in roots-only mode is roots plus test inputs.
  RootSet root_set() const;

  // f(A). Explicit mode requires a domain member. Roots-only mode evaluates
  // via any contained root and requires all contained roots to agree
  // (InputError when A contains no root, InternalError on disagreement).
  OutputId value_of(const Multiset& a) const;

  // Inputs the verifier targets by default: domain members in explicit
  // mode, declared test inputs in roots-only mode.
  std::vector<Multiset> verification_inputs() const;

 private:
  FunctionSpec() = default;

  Mode mode_ = Mode::kExplicit;
  AlphabetPtr alphabet_;
  OutputAlphabet outputs_{{"0"}};
  // Explicit mode; mapping_ is parallel to domain_.members().
  std::optional<Domain> domain_;
  std::vector<OutputId> mapping_;
  // Roots-only mode; roots in canonical order, outputs parallel.
  std::vector<Multiset> roots_;
  std::vector<OutputId> root_outputs_;
  std::vector<Multiset> test_inputs_;
};

// Result of the characterization decision. In explicit mode the
// counterexample is the lexicographically first ordered pair A proper-subset
// B with f(A) != f(B); in roots-only mode it is the first pair of
// co-occurring roots with different outputs.
struct SubsetClosureReport {
  bool ok = true;
  std::optional<std::pair<Multiset, Multiset>> counterexample;
};

SubsetClosureReport check_subset_closed(const FunctionSpec& spec);

// Output of f on each root of `rs`, index-aligned with rs.roots().
// Consistency with f on every member containing the root is re-verified
// (InternalError with a witness message on corrupted input).
std::vector<OutputId> induced_outputs(const FunctionSpec& spec,
                                      const RootSet& rs);

struct ImageBoundReport {
  std::size_t image_size = 0;
  std::size_t root_count = 0;
  bool holds = false;  // image_size <= root_count
};

ImageBoundReport image_bound_check(const FunctionSpec& spec);

struct FunctionCount {
  std::uint64_t upper_bound = 0;  // |Y|^|R|
  std::uint64_t exact_count = 0;  // |Y|^(number of root co-occurrence classes)
  bool unique_roots = false;      // every member has exactly one root
};

// Counts the subset-closed functions domain -> Y. upper_bound == exact_count
// exactly when every member has a unique root.
FunctionCount count_functions(const Domain& domain,
                              const OutputAlphabet& outputs);

// Enumerates every mapping domain -> Y and counts the subset-closed ones.
// Guarded: |Y|^|domain| must not exceed 10^6 (ResourceError otherwise).
std::uint64_t brute_force_count(const Domain& domain,
                                const OutputAlphabet& outputs);

}  // namespace sstab
