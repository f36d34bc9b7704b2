#include "sstab/synthesis.hpp"

#include <algorithm>
#include <sstream>

namespace sstab {

MoreTable::MoreTable(std::size_t root_count,
                     std::vector<std::vector<SymbolId>> entries)
    : root_count_(root_count), entries_(std::move(entries)) {
  if (entries_.size() != root_count_ * root_count_) {
    throw InternalError("MORE table must cover every ordered root pair");
  }
  offsets_.resize(entries_.size(), 0);
  for (std::size_t p = 0; p < entries_.size(); ++p) {
    offsets_[p] = static_cast<std::uint32_t>(total_bits_);
    total_bits_ += entries_[p].size();
  }
  if (total_bits_ > 62) {
    throw ResourceError("HAS-MORE table exceeds 62 bits (" +
                        std::to_string(total_bits_) + ")");
  }
}

std::uint64_t MoreTable::pair_mask(std::size_t i, std::size_t j) const {
  const auto& symbols = more(i, j);
  if (symbols.empty()) {
    return 0;
  }
  return ((std::uint64_t{1} << symbols.size()) - 1) << bit_offset(i, j);
}

MoreTable build_more_table(const std::vector<OutputId>& root_outputs,
                           const RootSet& rs) {
  const std::size_t k = rs.size();
  if (root_outputs.size() != k) {
    throw InputError("need exactly one output per root");
  }
  std::vector<std::vector<SymbolId>> entries(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (root_outputs[i] == root_outputs[j]) {
        continue;  // includes i == j
      }
      auto ci = rs.root(i).counts();
      auto cj = rs.root(j).counts();
      std::vector<SymbolId>& more = entries[i * k + j];
      for (std::size_t s = 0; s < ci.size(); ++s) {
        if (ci[s] < cj[s]) {
          more.push_back(static_cast<SymbolId>(s));
        }
      }
      if (more.empty()) {
        throw InternalError(
            "roots " + rs.root(i).format() + " and " + rs.root(j).format() +
            " have different outputs but no separating symbol; the root set "
            "is not minimal");
      }
    }
  }
  return MoreTable(k, std::move(entries));
}

std::pair<std::uint32_t, std::uint32_t> symbol_count_step(
    std::uint32_t count1, std::uint32_t count2, SymbolId sigma1,
    SymbolId sigma2, std::uint32_t modulus) {
  if (sigma1 == sigma2 && count1 == count2) {
    return {count1, (count2 + 1) % modulus};
  }
  return {count1, count2};
}

std::uint64_t indicator_mask(const MoreTable& table, const RootSet& rs,
                             std::uint32_t count, SymbolId sigma) {
  std::uint64_t mask = 0;
  const std::size_t k = table.root_count();
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const auto& symbols = table.more(i, j);
      for (std::size_t b = 0; b < symbols.size(); ++b) {
        if (symbols[b] == sigma &&
            count + 1 >= rs.root(j).multiplicity(sigma)) {
          mask |= std::uint64_t{1} << (table.bit_offset(i, j) + b);
        }
      }
    }
  }
  return mask;
}

std::pair<std::uint64_t, std::uint64_t> wrong_output_step(
    std::uint64_t hm1, std::uint64_t hm2, std::uint32_t count1_after,
    std::uint32_t count2_after, SymbolId sigma1, SymbolId sigma2,
    const MoreTable& table, const RootSet& rs) {
  const std::uint64_t shared = hm1 | hm2;
  return {shared | indicator_mask(table, rs, count1_after, sigma1),
          shared | indicator_mask(table, rs, count2_after, sigma2)};
}

std::uint32_t root_output_step(std::uint32_t root, std::uint64_t has_more,
                               const MoreTable& table, bool require_nonempty) {
  const std::size_t k = table.root_count();
  for (std::size_t j = 0; j < k; ++j) {
    const std::uint64_t mask = table.pair_mask(root, j);
    if (mask == 0) {
      if (require_nonempty) {
        continue;
      }
      // Mutation mode: an empty run is vacuously all ones, so the rule
      // fires perpetually (this is exactly why the guard exists).
      return (root + 1) % static_cast<std::uint32_t>(k);
    }
    if ((has_more & mask) == mask) {
      return (root + 1) % static_cast<std::uint32_t>(k);
    }
  }
  return root;
}

namespace {

// Everything delta needs, shared between the transition closure and the
// state codec.
struct SynthCore {
  MoreTable table;
  RootSet roots;
  std::uint32_t max_count;  // M
  std::uint32_t root_count;
  std::uint64_t hm_values;  // 2^total_bits
  SynthesisOptions options;
  // indicator word per (sigma, count), sigma-major
  std::vector<std::uint64_t> indicator;

  StateId encode(std::uint32_t count, std::uint64_t hm,
                 std::uint32_t root) const {
    return static_cast<StateId>((count * hm_values + hm) * root_count + root);
  }
  SynthesizedProtocol::Decoded decode(StateId q) const {
    SynthesizedProtocol::Decoded d;
    d.root = q % root_count;
    q /= root_count;
    d.has_more = q % hm_values;
    d.count = static_cast<std::uint32_t>(q / hm_values);
    return d;
  }
};

}  // namespace

SynthesizedProtocol::SynthesizedProtocol(
    std::shared_ptr<const Protocol> protocol, RootSet roots,
    std::vector<OutputId> root_outputs, MoreTable more,
    std::uint32_t max_count, SynthesisOptions options)
    : protocol_(std::move(protocol)),
      roots_(std::move(roots)),
      root_outputs_(std::move(root_outputs)),
      more_(std::move(more)),
      max_count_(max_count),
      options_(options) {}

StateId SynthesizedProtocol::encode(std::uint32_t count, std::uint64_t has_more,
                                    std::uint32_t root) const {
  if (count >= max_count_ || root >= roots_.size() ||
      has_more >> more_.total_bits() != 0) {
    throw InputError("state components out of range");
  }
  const std::uint64_t hm_values = std::uint64_t{1} << more_.total_bits();
  return static_cast<StateId>((count * hm_values + has_more) * roots_.size() +
                              root);
}

SynthesizedProtocol::Decoded SynthesizedProtocol::decode(StateId q) const {
  if (q >= protocol_->state_count()) {
    throw InputError("state id out of range");
  }
  const std::uint64_t hm_values = std::uint64_t{1} << more_.total_bits();
  Decoded d;
  d.root = static_cast<std::uint32_t>(q % roots_.size());
  std::uint64_t rest = q / roots_.size();
  d.has_more = rest % hm_values;
  d.count = static_cast<std::uint32_t>(rest / hm_values);
  return d;
}

bool SynthesizedProtocol::is_reset(StateId q) const {
  Decoded d = decode(q);
  return d.count == 0 && d.has_more == 0;
}

std::string SynthesizedProtocol::state_label(const MoreTable& table,
                                             std::uint32_t count,
                                             std::uint64_t has_more,
                                             std::uint32_t root) {
  std::ostringstream out;
  out << "count=" << count << ";hm=";
  const std::size_t k = table.root_count();
  bool first = true;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (i == j) {
        continue;
      }
      if (!first) {
        out << '|';
      }
      first = false;
      const auto& symbols = table.more(i, j);
      for (std::size_t b = 0; b < symbols.size(); ++b) {
        out << ((has_more >> (table.bit_offset(i, j) + b)) & 1 ? '1' : '0');
      }
    }
  }
  out << ";root=" << root;
  return out.str();
}

SynthesizedProtocol synthesize(const FunctionSpec& spec,
                               const SynthesisOptions& options) {
  SubsetClosureReport closure = check_subset_closed(spec);
  if (!closure.ok) {
    const auto& [a, b] = *closure.counterexample;
    throw RejectionError(
        "function is not subset-closed: f(" + a.format() + ") != f(" +
            b.format() +
            ") although the first is contained in the second; no protocol "
            "can stabilize on both inputs",
        a, b);
  }

  RootSet rs = spec.root_set();
  std::vector<OutputId> root_outputs = induced_outputs(spec, rs);
  MoreTable table = build_more_table(root_outputs, rs);
  const std::uint32_t m = max_multiplicity(rs);
  const std::uint32_t k = static_cast<std::uint32_t>(rs.size());
  constexpr std::uint64_t kMaxStates = std::uint64_t{1} << 20;
  if (table.total_bits() > 20 || m > kMaxStates || k > kMaxStates) {
    throw ResourceError("synthesized state space too large");
  }
  const std::uint64_t hm_values = std::uint64_t{1} << table.total_bits();
  const std::uint64_t state_count = std::uint64_t{m} * hm_values * k;
  if (state_count > kMaxStates) {
    throw ResourceError("synthesized state space too large: " +
                        std::to_string(state_count) + " states");
  }

  auto core = std::make_shared<SynthCore>(SynthCore{
      std::move(table), std::move(rs), m, k, hm_values, options, {}});
  const std::size_t sigma_count = spec.alphabet()->size();
  core->indicator.assign(sigma_count * m, 0);
  for (std::size_t s = 0; s < sigma_count; ++s) {
    for (std::uint32_t c = 0; c < m; ++c) {
      core->indicator[s * m + c] =
          options.apply_indicator
              ? indicator_mask(core->table, core->roots, c,
                               static_cast<SymbolId>(s))
              : 0;
    }
  }

  std::vector<std::string> names(state_count);
  std::vector<OutputId> output_map(state_count);
  for (std::uint32_t count = 0; count < m; ++count) {
    for (std::uint64_t hm = 0; hm < hm_values; ++hm) {
      for (std::uint32_t root = 0; root < k; ++root) {
        StateId q = core->encode(count, hm, root);
        names[q] = SynthesizedProtocol::state_label(core->table, count, hm,
                                                    root);
        output_map[q] = root_outputs[root];
      }
    }
  }
  std::vector<StateId> input_map(sigma_count, core->encode(0, 0, 0));

  // Composition timing: the root rule reads the table the agent carried
  // into the interaction (the counting and table layers read each other's
  // outputs the same way), so a freshly completed row survives one
  // interaction and can be shared before the reset wipes it. Firing on the
  // post-OR table instead creates real livelocks: an agent that completes a
  // row, increments and resets in one step can never spread the bits it
  // learned, and the model checker finds bottom SCCs that alternate outputs
  // forever.
  Protocol::Delta delta = [core](StateId q1, SymbolId s1, StateId q2,
                                 SymbolId s2) -> std::pair<StateId, StateId> {
    auto d1 = core->decode(q1);
    auto d2 = core->decode(q2);
    auto [c1, c2] = symbol_count_step(d1.count, d2.count, s1, s2,
                                      core->max_count);
    const std::uint64_t shared = d1.has_more | d2.has_more;
    const std::uint64_t h1 = shared | core->indicator[s1 * core->max_count + c1];
    const std::uint64_t h2 = shared | core->indicator[s2 * core->max_count + c2];

    auto settle = [&core](std::uint32_t root, std::uint64_t hm_before,
                          std::uint32_t count_after,
                          std::uint64_t hm_after) -> StateId {
      std::uint32_t next_root = root_output_step(
          root, hm_before, core->table, core->options.require_nonempty_more);
      if (next_root != root && core->options.reset_on_increment) {
        return core->encode(0, 0, next_root);
      }
      return core->encode(count_after, hm_after, next_root);
    };
    return {settle(d1.root, d1.has_more, c1, h1),
            settle(d2.root, d2.has_more, c2, h2)};
  };

  auto protocol = std::make_shared<const Protocol>(
      std::move(names), spec.alphabet(), spec.outputs(), std::move(input_map),
      std::move(output_map), std::move(delta));
  return SynthesizedProtocol(std::move(protocol), core->roots,
                             std::move(root_outputs), core->table, m, options);
}

}  // namespace sstab
