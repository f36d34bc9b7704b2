#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sstab/multiset.hpp"

namespace sstab {

// An indexed root set: an ordered antichain of multisets such that every
// domain member contains some root. Indices R_0 .. R_{k-1} follow the
// canonical order (ascending lexicographic count vector), so they are stable
// across runs and shared with synthesized protocols.
class RootSet {
 public:
  // Validates membership and coverage; whether the roots form an antichain
  // is a property of the minimal root set, checked separately.
  RootSet(Domain domain, std::vector<Multiset> roots);

  const Domain& domain() const { return domain_; }
  std::span<const Multiset> roots() const { return roots_; }
  std::size_t size() const { return roots_.size(); }
  const Multiset& root(std::size_t i) const { return roots_.at(i); }

 private:
  Domain domain_;
  std::vector<Multiset> roots_;  // canonical order
};

// The unique minimally sized root set: exactly the minimal elements of the
// domain under multiset inclusion. Throws InputError on an empty domain.
RootSet minimal_root_set(const Domain& domain);

// Same result computed by the recursive slice construction (fix a vector,
// recurse on every dimension-reduced slice below it, union, post-filter to
// minimal elements). Kept as an independent cross-check of
// minimal_root_set. Throws InputError on an empty domain.
RootSet dickson_root_set(const Domain& domain);

// True iff every domain member has some candidate as a subset. The
// candidate multisets must all be domain members (InputError otherwise).
bool is_root_set(std::span<const Multiset> candidate, const Domain& domain);

// True iff the roots are pairwise incomparable and no two distinct roots
// have a common domain member below both.
bool is_strong_downwards_antichain(const RootSet& rs);

// Indices of the roots contained in `a`; non-empty whenever `a` is a domain
// member. Sorted ascending.
std::vector<std::uint32_t> roots_of(const Multiset& a, const RootSet& rs);

// M: the largest multiplicity of any symbol across all roots.
std::uint32_t max_multiplicity(const RootSet& rs);

}  // namespace sstab
