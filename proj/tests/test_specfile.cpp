#include <fstream>

#include "doctest.h"
#include "support.hpp"
#include "sstab/specfile.hpp"

using namespace sstab;

namespace {

std::string data_path(const std::string& name) {
  return std::string(SSTAB_TESTS_DATA_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("the fixture file parses into the fixture spec") {
  SpecFile file = parse_spec(data_path("fixture.spec"));
  REQUIRE(file.spec.mode() == FunctionSpec::Mode::kExplicit);
  CHECK(file.spec.alphabet()->symbols() ==
        std::vector<std::string>{"a", "b", "d"});
  REQUIRE(file.spec.domain().size() == 4);
  CHECK(file.spec.domain().member(0).format() == "d");
  CHECK(file.spec.output_of_member(0) == 0);
  CHECK(file.spec.domain().member(2).format() == "a a b");
  CHECK(file.spec.output_of_member(2) == 1);
  CHECK_FALSE(file.node_budget.has_value());
}

TEST_CASE("parse then render is canonical and stable") {
  SpecFile file = parse_spec(data_path("fixture.spec"));
  std::string canonical = file.render();
  CHECK(canonical ==
        "alphabet: a b d\n"
        "outputs: 0 1\n"
        "mode: explicit\n"
        "input: d -> 0\n"
        "input: d d -> 0\n"
        "input: a a b -> 1\n"
        "input: a a a b -> 1\n");
  SpecFile again = parse_spec_text(canonical);
  CHECK(again.render() == canonical);
}

TEST_CASE("roots mode round trips") {
  SpecFile file = parse_spec(data_path("roots.spec"));
  REQUIRE(file.spec.mode() == FunctionSpec::Mode::kRootsOnly);
  std::string canonical = file.render();
  CHECK(canonical ==
        "alphabet: a b d\n"
        "outputs: 0 1\n"
        "mode: roots\n"
        "root: d -> 0\n"
        "root: a a b -> 1\n"
        "test: d d\n"
        "test: a a a b\n");
  CHECK(parse_spec_text(canonical).render() == canonical);
}

TEST_CASE("budget directive is honored") {
  SpecFile file = parse_spec_text(
      "alphabet: a\noutputs: 0\nmode: explicit\nbudget: 1234\ninput: a -> 0\n");
  CHECK(file.node_budget == std::uint64_t{1234});
  CHECK(file.render().find("budget: 1234\n") != std::string::npos);
}

TEST_CASE("parse errors carry line numbers") {
  CHECK_THROWS_WITH_AS(
      parse_spec_text("alphabet: a b\noutputs: 0 1\nmode: explicit\n"
                      "input: a a z -> 1\n",
                      "spec"),
      "spec:4: unknown symbol 'z' at position 3", ParseError);

  CHECK_THROWS_WITH_AS(
      parse_spec_text("alphabet: a\noutputs: 0\nmode: explicit\n"
                      "input: a -> 9\n",
                      "spec"),
      "spec:4: undeclared output '9'", ParseError);

  CHECK_THROWS_AS(parse_spec_text("outputs: 0\nmode: explicit\ninput: a -> 0\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_spec_text("alphabet: a\noutputs: 0\nmode: maybe\n"),
                  ParseError);
  CHECK_THROWS_AS(
      parse_spec_text("alphabet: a\noutputs: 0\nmode: explicit\n"),
      ParseError);
  CHECK_THROWS_AS(
      parse_spec_text("alphabet: a\noutputs: 0\nmode: explicit\nnot a line\n"),
      ParseError);
}

TEST_CASE("semantic violations are named") {
  // duplicate domain member
  CHECK_THROWS_WITH_AS(
      parse_spec_text("alphabet: a\noutputs: 0\nmode: explicit\n"
                      "input: a -> 0\ninput: a -> 0\n",
                      "spec"),
      "spec:5: duplicate domain member: a", ParseError);

  // comparable roots
  try {
    parse_spec_text("alphabet: a\noutputs: 0\nmode: roots\n"
                    "root: a -> 0\nroot: a a -> 0\n",
                    "spec");
    FAIL("expected rejection");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("antichain") != std::string::npos);
  }

  // test input with no root
  try {
    parse_spec_text("alphabet: a b\noutputs: 0\nmode: roots\n"
                    "root: a -> 0\ntest: b\n",
                    "spec");
    FAIL("expected rejection");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("contains no root") != std::string::npos);
  }

  // mode mixing
  CHECK_THROWS_AS(
      parse_spec_text("alphabet: a\noutputs: 0\nmode: explicit\nroot: a -> 0\n"),
      ParseError);
}

TEST_CASE("comments and blank lines are ignored") {
  SpecFile file = parse_spec_text(
      "# leading comment\n"
      "alphabet: a   # trailing comment\n"
      "\n"
      "outputs: 0\n"
      "mode: explicit\n"
      "input: a -> 0  # member\n");
  CHECK(file.spec.domain().size() == 1);
}
