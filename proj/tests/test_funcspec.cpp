#include "doctest.h"
#include "support.hpp"

using namespace sstab;

namespace {

// All-pairs subset-closure oracle, independent of the scan order used by
// check_subset_closed.
bool oracle_subset_closed(const FunctionSpec& spec) {
  const Domain& domain = spec.domain();
  for (std::size_t i = 0; i < domain.size(); ++i) {
    for (std::size_t j = 0; j < domain.size(); ++j) {
      if (i != j && is_subset(domain.member(i), domain.member(j)) &&
          spec.output_of_member(i) != spec.output_of_member(j)) {
        return false;
      }
    }
  }
  return true;
}

FunctionSpec random_spec(std::mt19937_64& gen, support::DomainGenerator& domains,
                         std::size_t max_outputs = 3) {
  Domain domain = domains.next(3, 8, 3);
  std::size_t y = 1 + rng::bounded(gen, max_outputs);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < y; ++i) {
    names.push_back(std::to_string(i));
  }
  std::vector<OutputId> mapping;
  for (std::size_t i = 0; i < domain.size(); ++i) {
    mapping.push_back(static_cast<OutputId>(rng::bounded(gen, y)));
  }
  return FunctionSpec::make_explicit(std::move(domain),
                                     OutputAlphabet(std::move(names)),
                                     std::move(mapping));
}

}  // namespace

TEST_CASE("full domains force constant functions") {
  // singletons plus their union with a non-constant assignment
  auto a = support::alphabet({"a", "b"});
  Domain domain = support::domain_of(a, {"a", "b", "a b"});
  // canonical order: b, a, a b
  FunctionSpec spec = FunctionSpec::make_explicit(
      domain, OutputAlphabet({"0", "1"}), {1, 0, 0});
  SubsetClosureReport report = check_subset_closed(spec);
  REQUIRE_FALSE(report.ok);
  // lexicographically first violating pair: ({b}, {a b})
  CHECK(report.counterexample->first.format() == "b");
  CHECK(report.counterexample->second.format() == "a b");
}

TEST_CASE("constant functions are subset-closed") {
  auto a = support::alphabet({"a", "b"});
  Domain domain = support::domain_of(a, {"a", "b", "a b", "a a b b"});
  FunctionSpec spec = FunctionSpec::make_explicit(
      domain, OutputAlphabet({"0", "1"}), {0, 0, 0, 0});
  CHECK(check_subset_closed(spec).ok);
}

TEST_CASE("the fixture spec is subset-closed") {
  FunctionSpec spec = support::fixture_spec();
  CHECK(check_subset_closed(spec).ok);
  CHECK(oracle_subset_closed(spec));
}

TEST_CASE("check_subset_closed agrees with the all-pairs oracle") {
  std::mt19937_64 gen(rng::splitmix64(31));
  support::DomainGenerator domains(32);
  for (int i = 0; i < 200; ++i) {
    FunctionSpec spec = random_spec(gen, domains);
    SubsetClosureReport report = check_subset_closed(spec);
    CHECK(report.ok == oracle_subset_closed(spec));
    if (!report.ok) {
      const auto& [va, vb] = *report.counterexample;
      CHECK(is_proper_subset(va, vb));
      CHECK(spec.value_of(va) != spec.value_of(vb));
    }
  }
}

TEST_CASE("roots-only mode reports co-occurring root consistency") {
  auto a = support::alphabet({"a", "b"});
  OutputAlphabet outputs({"0", "1"});
  // roots {a} and {b} both occur under test input {a b} with different
  // outputs: inconsistent
  FunctionSpec bad = FunctionSpec::make_roots_only(
      a, outputs, {support::ms(a, "a"), support::ms(a, "b")}, {0, 1},
      {support::ms(a, "a b")});
  SubsetClosureReport report = check_subset_closed(bad);
  REQUIRE_FALSE(report.ok);
  CHECK(report.counterexample->first.format() == "b");  // canonical order
  CHECK(report.counterexample->second.format() == "a");

  FunctionSpec good = FunctionSpec::make_roots_only(
      a, outputs, {support::ms(a, "a"), support::ms(a, "b")}, {1, 1},
      {support::ms(a, "a b")});
  CHECK(check_subset_closed(good).ok);
}

TEST_CASE("induced_outputs reads f off the roots") {
  FunctionSpec spec = support::fixture_spec();
  RootSet rs = spec.root_set();
  // canonical: R[0] = d -> 0, R[1] = a a b -> 1
  CHECK(induced_outputs(spec, rs) == std::vector<OutputId>{0, 1});

  auto a = spec.alphabet();
  FunctionSpec roots_spec = FunctionSpec::make_roots_only(
      a, spec.outputs(), {support::ms(a, "a a b"), support::ms(a, "d")},
      {1, 0}, {});
  RootSet rs2 = roots_spec.root_set();
  CHECK(induced_outputs(roots_spec, rs2) == std::vector<OutputId>{0, 1});
}

TEST_CASE("induced_outputs flags corrupted mappings") {
  // violates subset closure, so the root's output disagrees with a member
  auto a = support::alphabet({"a"});
  Domain domain = support::domain_of(a, {"a", "a a"});
  FunctionSpec spec = FunctionSpec::make_explicit(
      domain, OutputAlphabet({"0", "1"}), {0, 1});
  RootSet rs = minimal_root_set(domain);
  CHECK_THROWS_AS(induced_outputs(spec, rs), InternalError);
}

TEST_CASE("image bound holds on subset-closed specs") {
  FunctionSpec spec = support::fixture_spec();
  ImageBoundReport report = image_bound_check(spec);
  CHECK(report.image_size == 2);
  CHECK(report.root_count == 2);
  CHECK(report.holds);

  // constant f with three incomparable members: |im| = 1 < |R| = 3
  auto a = support::alphabet({"a", "b", "c"});
  Domain domain = support::domain_of(a, {"a", "b", "c"});
  FunctionSpec constant = FunctionSpec::make_explicit(
      domain, OutputAlphabet({"0", "1"}), {0, 0, 0});
  ImageBoundReport r2 = image_bound_check(constant);
  CHECK(r2.image_size == 1);
  CHECK(r2.root_count == 3);
  CHECK(r2.holds);
}

TEST_CASE("count_functions matches the worked examples") {
  FunctionSpec spec = support::fixture_spec();
  FunctionCount fixture = count_functions(spec.domain(), spec.outputs());
  CHECK(fixture.upper_bound == 4);
  CHECK(fixture.exact_count == 4);
  CHECK(fixture.unique_roots);

  auto a = support::alphabet({"a", "b"});
  Domain overlap = support::domain_of(a, {"a", "b", "a b"});
  FunctionCount co = count_functions(overlap, OutputAlphabet({"0", "1"}));
  CHECK(co.upper_bound == 4);
  CHECK(co.exact_count == 2);
  CHECK_FALSE(co.unique_roots);

  FunctionCount single = count_functions(overlap, OutputAlphabet({"0"}));
  CHECK(single.exact_count == 1);
}

TEST_CASE("count_functions equals brute force within the guard") {
  std::mt19937_64 gen(rng::splitmix64(77));
  support::DomainGenerator domains(78);
  for (int i = 0; i < 60; ++i) {
    Domain domain = domains.next(3, 8, 3);
    std::size_t y = 1 + rng::bounded(gen, 3);
    std::vector<std::string> names;
    for (std::size_t j = 0; j < y; ++j) {
      names.push_back(std::to_string(j));
    }
    OutputAlphabet outputs(std::move(names));
    FunctionCount counted = count_functions(domain, outputs);
    CHECK(counted.exact_count == brute_force_count(domain, outputs));
    if (outputs.size() >= 2) {
      // degenerate |Y| = 1 collapses both counts to 1 regardless of roots
      CHECK((counted.exact_count == counted.upper_bound) ==
            counted.unique_roots);
    }
  }
}

TEST_CASE("brute force guard rejects oversized enumerations") {
  auto a = support::alphabet({"a"});
  std::vector<Multiset> members;
  for (std::uint32_t i = 1; i <= 30; ++i) {
    members.push_back(Multiset(a, {i}));
  }
  Domain domain(a, std::move(members));
  CHECK_THROWS_AS(brute_force_count(domain, OutputAlphabet({"0", "1"})),
                  ResourceError);
}

TEST_CASE("value_of follows roots in roots-only mode") {
  auto a = support::fixture_alphabet();
  FunctionSpec spec = FunctionSpec::make_roots_only(
      a, OutputAlphabet({"0", "1"}),
      {support::ms(a, "a a b"), support::ms(a, "d")}, {1, 0},
      {support::ms(a, "a a a b"), support::ms(a, "d d")});
  CHECK(spec.value_of(support::ms(a, "a a a b b")) == 1);
  CHECK(spec.value_of(support::ms(a, "d d d")) == 0);
  CHECK_THROWS_AS(spec.value_of(support::ms(a, "a")), InputError);
  // conflicting roots under one input
  CHECK_THROWS_AS(spec.value_of(support::ms(a, "a a b d")), InternalError);
}

TEST_CASE("roots-only validation") {
  auto a = support::fixture_alphabet();
  OutputAlphabet outputs({"0", "1"});
  // comparable roots
  CHECK_THROWS_AS(FunctionSpec::make_roots_only(
                      a, outputs,
                      {support::ms(a, "a"), support::ms(a, "a a")}, {0, 0},
                      {}),
                  InputError);
  // test input without any root
  CHECK_THROWS_AS(FunctionSpec::make_roots_only(
                      a, outputs, {support::ms(a, "a a")}, {0},
                      {support::ms(a, "b")}),
                  InputError);
}
