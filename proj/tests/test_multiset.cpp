#include "doctest.h"
#include "support.hpp"

using namespace sstab;

TEST_CASE("multiplicity counts occurrences") {
  auto a = support::alphabet({"a", "b", "c", "d", "e", "f"});
  Multiset aab = support::ms(a, "a a b");
  CHECK(aab.multiplicity("a") == 2);
  CHECK(aab.multiplicity("b") == 1);
  CHECK(aab.multiplicity("c") == 0);

  Multiset big = support::ms(a, "e e e f f f b d");
  CHECK(big.multiplicity("f") == 3);
  CHECK(big.multiplicity("e") == 3);
  CHECK(big.multiplicity("a") == 0);

  CHECK_THROWS_AS(aab.multiplicity("z"), InputError);
}

TEST_CASE("is_subset is the pointwise order") {
  auto a = support::alphabet({"a", "b", "c"});
  Multiset aab = support::ms(a, "a a b");
  Multiset aabb = support::ms(a, "a a b b");
  Multiset ab = support::ms(a, "a b");
  CHECK(is_subset(aab, aabb));
  CHECK_FALSE(is_subset(aab, ab));
  CHECK(is_subset(aab, aab));

  auto other = support::alphabet({"x", "y"});
  CHECK_THROWS_AS(is_subset(aab, support::ms(other, "x")), InputError);
}

TEST_CASE("parse_multiset counts tokens and rejects bad input") {
  auto abc = support::alphabet({"a", "b", "c"});
  Multiset m = parse_multiset("a a b", abc);
  CHECK(m.counts()[0] == 2);
  CHECK(m.counts()[1] == 1);
  CHECK(m.counts()[2] == 0);

  auto six = support::alphabet({"a", "b", "c", "d", "e", "f"});
  Multiset d = parse_multiset("d", six);
  std::vector<std::uint32_t> expected = {0, 0, 0, 1, 0, 0};
  CHECK(std::equal(d.counts().begin(), d.counts().end(), expected.begin(),
                   expected.end()));

  CHECK_THROWS_AS(parse_multiset("", abc), ParseError);
  CHECK_THROWS_WITH_AS(parse_multiset("a z b", abc),
                       "unknown symbol 'z' at position 2", ParseError);
}

TEST_CASE("format normalizes to alphabet order") {
  auto abc = support::alphabet({"a", "b", "c"});
  CHECK(parse_multiset("b a a", abc).format() == "a a b");
  CHECK(parse_multiset("c", abc).format() == "c");
}

TEST_CASE("alphabet ordering is lexicographic and validated") {
  auto a = Alphabet::make({"d", "b", "a"});
  CHECK(a->symbols() == std::vector<std::string>{"a", "b", "d"});
  CHECK(a->find("b") == SymbolId{1});
  CHECK_FALSE(a->find("z").has_value());
  CHECK_THROWS_AS(Alphabet::make({"a", "a"}), InputError);
  CHECK_THROWS_AS(Alphabet::make({}), InputError);
}

TEST_CASE("subset order properties on random multisets") {
  auto a = support::alphabet({"a", "b", "c"});
  std::mt19937_64 gen(rng::splitmix64(7));
  auto random_ms = [&] {
    std::vector<std::uint32_t> counts(3);
    for (auto& c : counts) {
      c = static_cast<std::uint32_t>(rng::bounded(gen, 4));
    }
    return Multiset(a, counts);
  };
  for (int i = 0; i < 300; ++i) {
    Multiset x = random_ms();
    Multiset y = random_ms();
    Multiset z = random_ms();
    CHECK(is_subset(x, x));
    if (is_subset(x, y) && is_subset(y, x)) {
      CHECK(x == y);
    }
    if (is_subset(x, y) && is_subset(y, z)) {
      CHECK(is_subset(x, z));
    }
    // pointwise oracle
    bool expected = true;
    for (SymbolId s = 0; s < 3; ++s) {
      expected = expected && x.multiplicity(s) <= y.multiplicity(s);
    }
    CHECK(is_subset(x, y) == expected);
    // parse/format round trip
    if (!x.empty()) {
      CHECK(parse_multiset(x.format(), a) == x);
    }
  }
}

TEST_CASE("domains deduplicate and sort canonically") {
  auto a = support::alphabet({"a", "b"});
  Domain d(a, {support::ms(a, "b"), support::ms(a, "a"), support::ms(a, "b")});
  REQUIRE(d.size() == 2);
  CHECK(d.member(0).format() == "b");  // (0,1) before (1,0)
  CHECK(d.member(1).format() == "a");
  CHECK(d.contains(support::ms(a, "a")));
  CHECK_FALSE(d.contains(support::ms(a, "a a")));

  CHECK_THROWS_AS(Domain(a, {Multiset(a, {0, 0})}), InputError);
}
