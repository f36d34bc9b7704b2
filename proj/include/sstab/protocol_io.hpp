#pragma once

#include <string>

#include "sstab/protocol.hpp"

namespace sstab {

// Canonical text serialization of a protocol: header, state table, input
// and output maps, then the full transition table, one ordered pair per
// line. State names must be free of whitespace, commas and parentheses.
//
//   protocol-format 1
//   inputs: a b d
//   outputs: 0 1
//   states: 2
//   state: s0
//   state: s1
//   input: a -> s0
//   output: s0 -> 0
//   delta: (s0,a) (s1,b) -> s0 s1
std::string write_protocol(const Protocol& protocol);

// Parses the format above into a protocol with a tabulated transition
// function; the table must be total and free of duplicates.
Protocol read_protocol_text(const std::string& text,
                            const std::string& filename = "<input>");
Protocol read_protocol(const std::string& path);

}  // namespace sstab
