#include "sstab/funcspec.hpp"

#include <algorithm>
#include <set>

namespace sstab {

OutputAlphabet::OutputAlphabet(std::vector<std::string> symbols)
    : symbols_(std::move(symbols)) {
  if (symbols_.empty()) {
    throw InputError("output alphabet must contain at least one symbol");
  }
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (symbols_[i].empty()) {
      throw InputError("output symbols must be non-empty");
    }
    for (std::size_t j = i + 1; j < symbols_.size(); ++j) {
      if (symbols_[i] == symbols_[j]) {
        throw InputError("duplicate output symbol: " + symbols_[i]);
      }
    }
  }
}

std::optional<OutputId> OutputAlphabet::find(std::string_view symbol) const {
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (symbols_[i] == symbol) {
      return static_cast<OutputId>(i);
    }
  }
  return std::nullopt;
}

FunctionSpec FunctionSpec::make_explicit(Domain domain, OutputAlphabet outputs,
                                         std::vector<OutputId> mapping) {
  if (domain.empty()) {
    throw InputError("explicit function spec requires a non-empty domain");
  }
  if (mapping.size() != domain.size()) {
    throw InputError("mapping must be total on the domain");
  }
  for (OutputId y : mapping) {
    if (y >= outputs.size()) {
      throw InputError("mapping uses an undeclared output");
    }
  }
  FunctionSpec spec;
  spec.mode_ = Mode::kExplicit;
  spec.alphabet_ = domain.alphabet();
  spec.outputs_ = std::move(outputs);
  spec.domain_ = std::move(domain);
  spec.mapping_ = std::move(mapping);
  return spec;
}

FunctionSpec FunctionSpec::make_roots_only(AlphabetPtr alphabet,
                                           OutputAlphabet outputs,
                                           std::vector<Multiset> roots,
                                           std::vector<OutputId> root_outputs,
                                           std::vector<Multiset> test_inputs) {
  if (roots.empty()) {
    throw InputError("roots-only spec requires at least one root");
  }
  if (roots.size() != root_outputs.size()) {
    throw InputError("each root needs exactly one output");
  }
  // Re-key outputs to the canonical root order before storing.
  std::vector<std::size_t> order(roots.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    order[i] = i;
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return lex_less(roots[a], roots[b]);
  });
  std::vector<Multiset> sorted_roots;
  std::vector<OutputId> sorted_outputs;
  for (std::size_t idx : order) {
    sorted_roots.push_back(roots[idx]);
    sorted_outputs.push_back(root_outputs[idx]);
  }
  for (std::size_t i = 0; i + 1 < sorted_roots.size(); ++i) {
    if (sorted_roots[i] == sorted_roots[i + 1]) {
      throw InputError("duplicate root: " + sorted_roots[i].format());
    }
  }
  for (std::size_t i = 0; i < sorted_roots.size(); ++i) {
    if (!same_alphabet(sorted_roots[i].alphabet(), alphabet)) {
      throw InputError("root is over a different alphabet");
    }
    if (sorted_roots[i].empty()) {
      throw InputError("roots must be non-empty multisets");
    }
    if (sorted_outputs[i] >= outputs.size()) {
      throw InputError("root mapping uses an undeclared output");
    }
    for (std::size_t j = 0; j < sorted_roots.size(); ++j) {
      if (i != j && is_subset(sorted_roots[i], sorted_roots[j])) {
        throw InputError("roots must form an antichain");
      }
    }
  }
  for (const Multiset& t : test_inputs) {
    if (!same_alphabet(t.alphabet(), alphabet)) {
      throw InputError("test input is over a different alphabet");
    }
    bool has_root = std::any_of(
        sorted_roots.begin(), sorted_roots.end(),
        [&](const Multiset& r) { return is_subset(r, t); });
    if (!has_root) {
      throw InputError("test input contains no root: " + t.format());
    }
  }
  FunctionSpec spec;
  spec.mode_ = Mode::kRootsOnly;
  spec.alphabet_ = std::move(alphabet);
  spec.outputs_ = std::move(outputs);
  spec.roots_ = std::move(sorted_roots);
  spec.root_outputs_ = std::move(sorted_outputs);
  spec.test_inputs_ = std::move(test_inputs);
  return spec;
}

const Domain& FunctionSpec::domain() const {
  if (mode_ != Mode::kExplicit) {
    throw InputError("spec has no explicit domain");
  }
  return *domain_;
}

OutputId FunctionSpec::output_of_member(std::size_t index) const {
  if (mode_ != Mode::kExplicit) {
    throw InputError("spec has no explicit domain");
  }
  return mapping_.at(index);
}

std::span<const Multiset> FunctionSpec::declared_roots() const {
  if (mode_ != Mode::kRootsOnly) {
    throw InputError("spec is not in roots-only mode");
  }
  return roots_;
}

std::span<const OutputId> FunctionSpec::declared_root_outputs() const {
  if (mode_ != Mode::kRootsOnly) {
    throw InputError("spec is not in roots-only mode");
  }
  return root_outputs_;
}

std::span<const Multiset> FunctionSpec::test_inputs() const {
  if (mode_ != Mode::kRootsOnly) {
    throw InputError("spec is not in roots-only mode");
  }
  return test_inputs_;
}

RootSet FunctionSpec::root_set() const {
  if (mode_ == Mode::kExplicit) {
    return minimal_root_set(*domain_);
  }
  std::vector<Multiset> members = roots_;
  members.insert(members.end(), test_inputs_.begin(), test_inputs_.end());
  return RootSet(Domain(alphabet_, std::move(members)), roots_);
}

OutputId FunctionSpec::value_of(const Multiset& a) const {
  if (mode_ == Mode::kExplicit) {
    auto idx = domain_->index_of(a);
    if (!idx) {
      throw InputError("input is not a domain member: " + a.format());
    }
    return mapping_[*idx];
  }
  std::optional<OutputId> value;
  for (std::size_t i = 0; i < roots_.size(); ++i) {
    if (is_subset(roots_[i], a)) {
      if (value && *value != root_outputs_[i]) {
        throw InternalError("input " + a.format() +
                            " contains roots with conflicting outputs");
      }
      value = root_outputs_[i];
    }
  }
  if (!value) {
    throw InputError("input contains no declared root: " + a.format());
  }
  return *value;
}

std::vector<Multiset> FunctionSpec::verification_inputs() const {
  if (mode_ == Mode::kExplicit) {
    auto members = domain_->members();
    return {members.begin(), members.end()};
  }
  return test_inputs_;
}

SubsetClosureReport check_subset_closed(const FunctionSpec& spec) {
  SubsetClosureReport report;
  if (spec.mode() == FunctionSpec::Mode::kExplicit) {
    const Domain& domain = spec.domain();
    // Members are in canonical order, so the first hit of this scan is the
    // lexicographically first violating pair.
    for (std::size_t i = 0; i < domain.size(); ++i) {
      for (std::size_t j = 0; j < domain.size(); ++j) {
        if (i == j) {
          continue;
        }
        if (is_subset(domain.member(i), domain.member(j)) &&
            spec.output_of_member(i) != spec.output_of_member(j)) {
          report.ok = false;
          report.counterexample = {domain.member(i), domain.member(j)};
          return report;
        }
      }
    }
    return report;
  }
  // Roots-only mode: co-occurring roots (both below some test input) must
  // carry the same output.
  auto roots = spec.declared_roots();
  auto outs = spec.declared_root_outputs();
  for (const Multiset& t : spec.test_inputs()) {
    for (std::size_t i = 0; i < roots.size(); ++i) {
      if (!is_subset(roots[i], t)) {
        continue;
      }
      for (std::size_t j = i + 1; j < roots.size(); ++j) {
        if (is_subset(roots[j], t) && outs[i] != outs[j]) {
          report.ok = false;
          report.counterexample = {roots[i], roots[j]};
          return report;
        }
      }
    }
  }
  return report;
}

std::vector<OutputId> induced_outputs(const FunctionSpec& spec,
                                      const RootSet& rs) {
  std::vector<OutputId> outputs;
  outputs.reserve(rs.size());
  if (spec.mode() == FunctionSpec::Mode::kRootsOnly) {
    auto roots = spec.declared_roots();
    auto outs = spec.declared_root_outputs();
    for (const Multiset& r : rs.roots()) {
      auto it = std::find(roots.begin(), roots.end(), r);
      if (it == roots.end()) {
        throw InputError("root set does not match the declared roots");
      }
      outputs.push_back(outs[static_cast<std::size_t>(it - roots.begin())]);
    }
    return outputs;
  }
  const Domain& domain = spec.domain();
  for (const Multiset& r : rs.roots()) {
    auto idx = domain.index_of(r);
    if (!idx) {
      throw InputError("root is not a domain member: " + r.format());
    }
    OutputId value = spec.output_of_member(*idx);
    // Every member containing the root must agree with it.
    for (std::size_t m = 0; m < domain.size(); ++m) {
      if (is_subset(r, domain.member(m)) &&
          spec.output_of_member(m) != value) {
        throw InternalError("inconsistent outputs: root " + r.format() +
                            " maps to " + spec.outputs().name(value) +
                            " but member " + domain.member(m).format() +
                            " maps to " +
                            spec.outputs().name(spec.output_of_member(m)));
      }
    }
    outputs.push_back(value);
  }
  return outputs;
}

ImageBoundReport image_bound_check(const FunctionSpec& spec) {
  ImageBoundReport report;
  std::set<OutputId> image;
  if (spec.mode() == FunctionSpec::Mode::kExplicit) {
    for (std::size_t i = 0; i < spec.domain().size(); ++i) {
      image.insert(spec.output_of_member(i));
    }
    report.root_count = minimal_root_set(spec.domain()).size();
  } else {
    auto outs = spec.declared_root_outputs();
    image.insert(outs.begin(), outs.end());
    report.root_count = spec.declared_roots().size();
  }
  report.image_size = image.size();
  report.holds = report.image_size <= report.root_count;
  return report;
}

namespace {

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t result = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && result > UINT64_MAX / base) {
      throw ResourceError("function count does not fit in 64 bits");
    }
    result *= base;
  }
  return result;
}

}  // namespace

FunctionCount count_functions(const Domain& domain,
                              const OutputAlphabet& outputs) {
  if (domain.empty()) {
    throw InputError("cannot count functions over an empty domain");
  }
  RootSet rs = minimal_root_set(domain);
  const std::size_t k = rs.size();

  // Union roots that co-occur below a common member; subset-closed functions
  // are exactly the output assignments constant on the resulting classes.
  std::vector<std::size_t> parent(k);
  for (std::size_t i = 0; i < k; ++i) {
    parent[i] = i;
  }
  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  bool unique_roots = true;
  for (const Multiset& a : domain.members()) {
    auto hits = roots_of(a, rs);
    if (hits.size() != 1) {
      unique_roots = false;
    }
    for (std::size_t h = 1; h < hits.size(); ++h) {
      parent[find(hits[h])] = find(hits[0]);
    }
  }
  std::set<std::size_t> classes;
  for (std::size_t i = 0; i < k; ++i) {
    classes.insert(find(i));
  }

  FunctionCount result;
  result.upper_bound = checked_pow(outputs.size(), k);
  result.exact_count = checked_pow(outputs.size(), classes.size());
  result.unique_roots = unique_roots;
  return result;
}

std::uint64_t brute_force_count(const Domain& domain,
                                const OutputAlphabet& outputs) {
  if (domain.empty()) {
    throw InputError("cannot count functions over an empty domain");
  }
  const std::uint64_t y = outputs.size();
  const std::size_t n = domain.size();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (total > 1000000 / y + 1) {
      throw ResourceError(
          "brute-force enumeration guard exceeded (|Y|^|domain| > 10^6); "
          "use count_functions instead");
    }
    total *= y;
  }
  if (total > 1000000) {
    throw ResourceError(
        "brute-force enumeration guard exceeded (|Y|^|domain| > 10^6); "
        "use count_functions instead");
  }

  // Precompute the proper-subset pairs once; each mapping is then a direct
  // scan over them.
  std::vector<std::pair<std::size_t, std::size_t>> subset_pairs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && is_subset(domain.member(i), domain.member(j))) {
        subset_pairs.emplace_back(i, j);
      }
    }
  }

  std::vector<OutputId> assignment(n, 0);
  std::uint64_t count = 0;
  for (std::uint64_t m = 0; m < total; ++m) {
    std::uint64_t rest = m;
    for (std::size_t i = 0; i < n; ++i) {
      assignment[i] = static_cast<OutputId>(rest % y);
      rest /= y;
    }
    bool closed = true;
    for (const auto& [i, j] : subset_pairs) {
      if (assignment[i] != assignment[j]) {
        closed = false;
        break;
      }
    }
    if (closed) {
      ++count;
    }
  }
  return count;
}

}  // namespace sstab
