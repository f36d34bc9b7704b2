#include "doctest.h"
#include "support.hpp"

using namespace sstab;

namespace {

Domain paper_example_domain() {
  auto a = support::alphabet({"a", "b", "c", "d", "e", "f"});
  return support::domain_of(
      a, {"a a b", "a a b b c", "e e e f f f b d", "d"});
}

std::vector<std::string> formatted(std::span<const Multiset> roots) {
  std::vector<std::string> out;
  for (const Multiset& r : roots) {
    out.push_back(r.format());
  }
  return out;
}

}  // namespace

TEST_CASE("minimal root set reproduces the worked example") {
  Domain domain = paper_example_domain();
  RootSet rs = minimal_root_set(domain);
  CHECK(formatted(rs.roots()) == std::vector<std::string>{"d", "a a b"});
}

TEST_CASE("minimal root set of a singleton domain is itself") {
  auto a = support::alphabet({"a", "b"});
  Domain domain = support::domain_of(a, {"a b b"});
  RootSet rs = minimal_root_set(domain);
  CHECK(formatted(rs.roots()) == std::vector<std::string>{"a b b"});
}

TEST_CASE("minimal root set of a chain is its bottom") {
  auto a = support::alphabet({"a"});
  Domain domain = support::domain_of(a, {"a", "a a", "a a a"});
  RootSet rs = minimal_root_set(domain);
  CHECK(formatted(rs.roots()) == std::vector<std::string>{"a"});
  CHECK(rs.roots().size() == support::brute_minimal(domain).size());
}

TEST_CASE("empty domain is rejected") {
  auto a = support::alphabet({"a"});
  Domain empty(a, {});
  CHECK_THROWS_AS(minimal_root_set(empty), InputError);
  CHECK_THROWS_AS(dickson_root_set(empty), InputError);
}

TEST_CASE("recursive construction matches on the vector example") {
  Domain domain = paper_example_domain();
  RootSet rs = dickson_root_set(domain);
  CHECK(formatted(rs.roots()) == std::vector<std::string>{"d", "a a b"});
}

TEST_CASE("recursive construction on a singleton vector domain") {
  auto a = support::alphabet({"x", "y"});
  Domain domain = support::domain_of(a, {"x x x y y y"});  // (3,3)
  RootSet rs = dickson_root_set(domain);
  CHECK(formatted(rs.roots()) == std::vector<std::string>{"x x x y y y"});
}

TEST_CASE("both constructions equal the pairwise oracle on random domains") {
  support::DomainGenerator domains(101);
  for (int i = 0; i < 80; ++i) {
    Domain domain = domains.next(4, 20, 4);
    RootSet direct = minimal_root_set(domain);
    RootSet recursive = dickson_root_set(domain);
    std::vector<Multiset> oracle = support::brute_minimal(domain);
    REQUIRE(formatted(direct.roots()) == formatted(oracle));
    REQUIRE(formatted(recursive.roots()) == formatted(oracle));
    CHECK(is_root_set(direct.roots(), domain));
    CHECK(is_strong_downwards_antichain(direct));
    CHECK(direct.size() <= domain.size());
  }
}

TEST_CASE("is_root_set checks coverage and membership") {
  Domain domain = paper_example_domain();
  auto a = domain.alphabet();
  std::vector<Multiset> good = {support::ms(a, "a a b"), support::ms(a, "d")};
  CHECK(is_root_set(good, domain));

  // a domain is trivially its own root set
  std::vector<Multiset> all(domain.members().begin(), domain.members().end());
  CHECK(is_root_set(all, domain));

  std::vector<Multiset> partial = {support::ms(a, "d")};
  CHECK_FALSE(is_root_set(partial, domain));  // a a b uncovered

  std::vector<Multiset> outside = {support::ms(a, "a")};
  CHECK_THROWS_AS(is_root_set(outside, domain), InputError);
}

TEST_CASE("strong downwards antichain detects comparable pairs") {
  Domain domain = paper_example_domain();
  CHECK(is_strong_downwards_antichain(minimal_root_set(domain)));

  auto a = support::alphabet({"a"});
  Domain chain = support::domain_of(a, {"a", "a a"});
  RootSet comparable(chain, {support::ms(a, "a"), support::ms(a, "a a")});
  CHECK_FALSE(is_strong_downwards_antichain(comparable));
}

TEST_CASE("for covering root sets, strong-downwards reduces to antichain") {
  // A common domain member below two distinct roots would itself need a
  // root comparable with both, so on valid (covering) root sets the
  // lower-bound clause can only fire together with comparability.
  support::DomainGenerator domains(91);
  std::mt19937_64 gen(rng::splitmix64(92));
  for (int i = 0; i < 40; ++i) {
    Domain domain = domains.next(3, 8, 3);
    // grow a random covering candidate: the minimal roots plus extras
    std::vector<Multiset> candidate(minimal_root_set(domain).roots().begin(),
                                    minimal_root_set(domain).roots().end());
    for (const Multiset& m : domain.members()) {
      if (rng::bounded(gen, 2) == 0) {
        candidate.push_back(m);
      }
    }
    RootSet rs(domain, candidate);
    bool pairwise_incomparable = true;
    for (std::size_t x = 0; x < rs.size() && pairwise_incomparable; ++x) {
      for (std::size_t y = 0; y < rs.size(); ++y) {
        if (x != y && is_subset(rs.root(x), rs.root(y))) {
          pairwise_incomparable = false;
          break;
        }
      }
    }
    CHECK(is_strong_downwards_antichain(rs) == pairwise_incomparable);
  }
}

TEST_CASE("roots_of lists exactly the contained roots") {
  Domain domain = paper_example_domain();
  RootSet rs = minimal_root_set(domain);
  auto a = domain.alphabet();
  // canonical indices: R[0] = d, R[1] = a a b
  CHECK(roots_of(support::ms(a, "a a b b c"), rs) ==
        std::vector<std::uint32_t>{1});
  CHECK(roots_of(rs.root(0), rs) == std::vector<std::uint32_t>{0});
  CHECK(roots_of(support::ms(a, "a a b d"), rs) ==
        std::vector<std::uint32_t>{0, 1});
  CHECK(roots_of(support::ms(a, "c"), rs).empty());
}

TEST_CASE("max_multiplicity scans all roots") {
  Domain domain = paper_example_domain();
  CHECK(max_multiplicity(minimal_root_set(domain)) == 2);

  auto a = support::alphabet({"a"});
  Domain tiny = support::domain_of(a, {"a"});
  CHECK(max_multiplicity(minimal_root_set(tiny)) == 1);

  auto six = support::alphabet({"a", "b", "c", "d", "e", "f"});
  Domain big = support::domain_of(six, {"e e e f f f b d"});
  CHECK(max_multiplicity(minimal_root_set(big)) == 3);
}

TEST_CASE("uniqueness: no other root set of minimal size exists") {
  support::DomainGenerator domains(55);
  for (int i = 0; i < 25; ++i) {
    Domain domain = domains.next(3, 8, 3);
    RootSet rs = minimal_root_set(domain);

    // removing any root breaks coverage
    for (std::size_t drop = 0; drop < rs.size(); ++drop) {
      std::vector<Multiset> reduced;
      for (std::size_t j = 0; j < rs.size(); ++j) {
        if (j != drop) {
          reduced.push_back(rs.root(j));
        }
      }
      CHECK_FALSE(is_root_set(reduced, domain));
    }

    // exhaustive same-size alternative search
    const std::size_t n = domain.size();
    const std::size_t k = rs.size();
    std::vector<std::size_t> pick(k);
    std::size_t hits = 0;
    auto scan = [&](auto&& self, std::size_t from, std::size_t depth) -> void {
      if (depth == k) {
        std::vector<Multiset> candidate;
        for (std::size_t idx : pick) {
          candidate.push_back(domain.member(idx));
        }
        if (is_root_set(candidate, domain)) {
          ++hits;
          CHECK(support::brute_minimal(Domain(domain.alphabet(), candidate)) ==
                candidate);  // must be exactly the minimal root set
          CHECK(std::equal(candidate.begin(), candidate.end(),
                           rs.roots().begin(), rs.roots().end()));
        }
        return;
      }
      for (std::size_t idx = from; idx < n; ++idx) {
        pick[depth] = idx;
        self(self, idx + 1, depth + 1);
      }
    };
    scan(scan, 0, 0);
    CHECK(hits == 1);
  }
}
