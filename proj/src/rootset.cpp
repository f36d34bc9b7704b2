#include "sstab/rootset.hpp"

#include <algorithm>
#include <set>

namespace sstab {

namespace {

using Vec = std::vector<std::uint32_t>;

bool vec_leq(const Vec& a, const Vec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) {
      return false;
    }
  }
  return true;
}

// The appendix construction, on raw count vectors. Fix the lexicographically
// smallest vector v; everything dominating v is covered by v itself, and any
// other vector falls in some slice u_i = m with m < v_i, which is handled by
// recursing with dimension i removed. The union is a (possibly non-minimal)
// finite root set.
std::vector<Vec> dickson_recurse(std::vector<Vec> ys) {
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
  const std::size_t dim = ys.front().size();
  if (dim == 1) {
    return {ys.front()};  // sorted, so the front is the minimum
  }

  const Vec v = ys.front();
  std::set<Vec> result;
  result.insert(v);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::uint32_t m = 0; m < v[i]; ++m) {
      std::vector<Vec> slice;
      for (const Vec& u : ys) {
        if (u[i] == m) {
          Vec reduced;
          reduced.reserve(dim - 1);
          for (std::size_t j = 0; j < dim; ++j) {
            if (j != i) {
              reduced.push_back(u[j]);
            }
          }
          slice.push_back(std::move(reduced));
        }
      }
      if (slice.empty()) {
        continue;
      }
      for (const Vec& r : dickson_recurse(std::move(slice))) {
        Vec full;
        full.reserve(dim);
        for (std::size_t j = 0, rj = 0; j < dim; ++j) {
          full.push_back(j == i ? m : r[rj++]);
        }
        result.insert(std::move(full));
      }
    }
  }
  return {result.begin(), result.end()};
}

std::vector<Multiset> minimal_members(const Domain& domain) {
  std::vector<Multiset> minimal;
  for (const Multiset& a : domain.members()) {
    bool has_smaller = false;
    for (const Multiset& b : domain.members()) {
      if (is_proper_subset(b, a)) {
        has_smaller = true;
        break;
      }
    }
    if (!has_smaller) {
      minimal.push_back(a);
    }
  }
  return minimal;
}

}  // namespace

RootSet::RootSet(Domain domain, std::vector<Multiset> roots)
    : domain_(std::move(domain)), roots_(std::move(roots)) {
  if (roots_.empty()) {
    throw InputError("root set must be non-empty");
  }
  std::sort(roots_.begin(), roots_.end(), lex_less);
  roots_.erase(std::unique(roots_.begin(), roots_.end()), roots_.end());
  for (const Multiset& r : roots_) {
    if (!domain_.contains(r)) {
      throw InputError("root is not a member of the domain: " + r.format());
    }
  }
  for (const Multiset& a : domain_.members()) {
    bool covered = false;
    for (const Multiset& r : roots_) {
      if (is_subset(r, a)) {
        covered = true;
        break;
      }
    }
    if (!covered) {
      throw InputError("root set does not cover domain member: " + a.format());
    }
  }
}

RootSet minimal_root_set(const Domain& domain) {
  if (domain.empty()) {
    throw InputError("cannot compute a root set of an empty domain");
  }
  return RootSet(domain, minimal_members(domain));
}

RootSet dickson_root_set(const Domain& domain) {
  if (domain.empty()) {
    throw InputError("cannot compute a root set of an empty domain");
  }
  std::vector<Vec> ys;
  ys.reserve(domain.size());
  for (const Multiset& m : domain.members()) {
    ys.emplace_back(m.counts().begin(), m.counts().end());
  }
  std::vector<Vec> raw = dickson_recurse(std::move(ys));

  // The construction guarantees a finite root set, not the minimal one.
  std::vector<Multiset> roots;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    bool has_smaller = false;
    for (std::size_t j = 0; j < raw.size(); ++j) {
      if (i != j && raw[j] != raw[i] && vec_leq(raw[j], raw[i])) {
        has_smaller = true;
        break;
      }
    }
    if (!has_smaller) {
      roots.emplace_back(domain.alphabet(), raw[i]);
    }
  }
  return RootSet(domain, std::move(roots));
}

bool is_root_set(std::span<const Multiset> candidate, const Domain& domain) {
  for (const Multiset& c : candidate) {
    if (!domain.contains(c)) {
      throw InputError("candidate root is not a domain member: " + c.format());
    }
  }
  for (const Multiset& a : domain.members()) {
    bool covered = false;
    for (const Multiset& c : candidate) {
      if (is_subset(c, a)) {
        covered = true;
        break;
      }
    }
    if (!covered) {
      return false;
    }
  }
  return true;
}

bool is_strong_downwards_antichain(const RootSet& rs) {
  auto roots = rs.roots();
  for (std::size_t i = 0; i < roots.size(); ++i) {
    for (std::size_t j = 0; j < roots.size(); ++j) {
      if (i == j) {
        continue;
      }
      if (is_subset(roots[i], roots[j])) {
        return false;
      }
      if (i < j) {
        for (const Multiset& c : rs.domain().members()) {
          if (is_subset(c, roots[i]) && is_subset(c, roots[j])) {
            return false;
          }
        }
      }
    }
  }
  return true;
}

std::vector<std::uint32_t> roots_of(const Multiset& a, const RootSet& rs) {
  std::vector<std::uint32_t> hits;
  auto roots = rs.roots();
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (is_subset(roots[i], a)) {
      hits.push_back(static_cast<std::uint32_t>(i));
    }
  }
  return hits;
}

std::uint32_t max_multiplicity(const RootSet& rs) {
  std::uint32_t m = 0;
  for (const Multiset& r : rs.roots()) {
    for (std::uint32_t c : r.counts()) {
      m = std::max(m, c);
    }
  }
  return m;
}

}  // namespace sstab
