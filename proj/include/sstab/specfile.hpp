#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "sstab/funcspec.hpp"

namespace sstab {

// A parsed spec file: the function plus optional verification directives.
//
// Line-oriented grammar, `#` starts a comment, case-sensitive:
//   alphabet: a b c d
//   outputs: 0 1
//   mode: explicit            # or: roots
//   input: a a b -> 1         # explicit mode, one line per domain member
//   root: d -> 0              # roots mode
//   test: a a b d             # roots mode, optional verification inputs
//   budget: 1000000           # optional node budget for verification
struct SpecFile {
  FunctionSpec spec;
  std::optional<std::uint64_t> node_budget;

  // Canonical text: header lines in fixed order, members sorted
  // canonically. parse(render()) is the identity on canonical files.
  std::string render() const;
};

SpecFile parse_spec_text(const std::string& text,
                         const std::string& filename = "<input>");
SpecFile parse_spec(const std::string& path);

}  // namespace sstab
