#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sstab/errors.hpp"

namespace sstab {

using SymbolId = std::uint32_t;

class Alphabet;
using AlphabetPtr = std::shared_ptr<const Alphabet>;

// An ordered finite alphabet of input symbols. The order is fixed when the
// alphabet is created (lexicographic by symbol name) and every downstream
// ordering -- count vectors, root indices, MORE lists -- derives from it.
class Alphabet {
 public:
  // Sorts the names lexicographically; rejects empty lists, empty names and
  // duplicates.
  static AlphabetPtr make(std::vector<std::string> symbols);

  std::size_t size() const { return symbols_.size(); }
  const std::string& name(SymbolId id) const { return symbols_.at(id); }
  std::optional<SymbolId> find(std::string_view symbol) const;
  const std::vector<std::string>& symbols() const { return symbols_; }

  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    return a.symbols_ == b.symbols_;
  }

 private:
  explicit Alphabet(std::vector<std::string> symbols)
      : symbols_(std::move(symbols)) {}

  std::vector<std::string> symbols_;
};

// True when the two handles denote the same alphabet (pointer or content).
bool same_alphabet(const AlphabetPtr& a, const AlphabetPtr& b);

// A finite multiset over an alphabet, stored as a multiplicity vector with
// one entry per symbol. Immutable after construction.
class Multiset {
 public:
  Multiset(AlphabetPtr alphabet, std::vector<std::uint32_t> counts);

  const AlphabetPtr& alphabet() const { return alphabet_; }
  std::span<const std::uint32_t> counts() const { return counts_; }

  std::uint32_t multiplicity(SymbolId id) const;
  // Throws InputError naming the symbol when it is not in the alphabet.
  std::uint32_t multiplicity(std::string_view symbol) const;

  // Total number of elements; equals the population size when the multiset
  // is used as a protocol input.
  std::uint32_t total() const { return total_; }
  bool empty() const { return total_ == 0; }

  // Renders as whitespace-separated symbol names in alphabet order,
  // e.g. "a a b". The empty multiset renders as "".
  std::string format() const;

  friend bool operator==(const Multiset& a, const Multiset& b);
  friend bool operator!=(const Multiset& a, const Multiset& b) {
    return !(a == b);
  }

 private:
  AlphabetPtr alphabet_;
  std::vector<std::uint32_t> counts_;
  std::uint32_t total_;
};

// Pointwise partial order: true iff every symbol occurs in `a` at most as
// often as in `b`. Throws InputError on alphabet mismatch.
bool is_subset(const Multiset& a, const Multiset& b);

// Strict inclusion: is_subset(a, b) and a != b.
bool is_proper_subset(const Multiset& a, const Multiset& b);

// Total order on count vectors used for every canonical ordering in the
// tool (domain members, root indices, counterexample tie-breaking).
bool lex_less(const Multiset& a, const Multiset& b);

// Parses whitespace-separated symbol names. Rejects empty input (protocol
// inputs are non-empty) and unknown symbols, reporting the 1-based token
// position.
Multiset parse_multiset(std::string_view text, const AlphabetPtr& alphabet);

// A finite set of distinct multisets over one alphabet. Members are
// deduplicated and held in canonical (lexicographic count vector) order.
class Domain {
 public:
  Domain(AlphabetPtr alphabet, std::vector<Multiset> members);

  const AlphabetPtr& alphabet() const { return alphabet_; }
  std::span<const Multiset> members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  const Multiset& member(std::size_t i) const { return members_.at(i); }

  bool contains(const Multiset& m) const;
  std::optional<std::size_t> index_of(const Multiset& m) const;

 private:
  AlphabetPtr alphabet_;
  std::vector<Multiset> members_;  // sorted by lex_less, unique
};

}  // namespace sstab
