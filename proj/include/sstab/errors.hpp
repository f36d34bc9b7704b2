#pragma once

#include <stdexcept>
#include <string>

namespace sstab {

// Bad values supplied by a caller: unknown symbols, alphabet mismatches,
// preconditions on operation inputs.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed text in a spec, multiset, or protocol file. Messages carry the
// source location ("line N: ...") when one is known.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// A configured budget (node count, enumeration guard) would be exceeded.
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

// A broken internal invariant; reaching this is a bug, not a usage error.
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace sstab
