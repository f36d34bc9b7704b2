#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "sstab/funcspec.hpp"
#include "sstab/protocol.hpp"
#include "sstab/rootset.hpp"

namespace sstab {

// MORE_{i,j}: the symbols strictly more frequent in R_j than in R_i, in
// alphabet order; empty whenever f(R_i) = f(R_j) (including i = j). Each
// non-diagonal pair owns a contiguous run of bits in the packed HAS-MORE
// word, in (i, j) row-major order.
class MoreTable {
 public:
  MoreTable(std::size_t root_count,
            std::vector<std::vector<SymbolId>> entries);

  std::size_t root_count() const { return root_count_; }
  const std::vector<SymbolId>& more(std::size_t i, std::size_t j) const {
    return entries_.at(i * root_count_ + j);
  }
  std::size_t total_bits() const { return total_bits_; }
  std::uint32_t bit_offset(std::size_t i, std::size_t j) const {
    return offsets_.at(i * root_count_ + j);
  }
  // All-ones mask for the (i, j) run; zero when the run is empty.
  std::uint64_t pair_mask(std::size_t i, std::size_t j) const;

 private:
  std::size_t root_count_;
  std::vector<std::vector<SymbolId>> entries_;  // row-major (i, j)
  std::vector<std::uint32_t> offsets_;
  std::size_t total_bits_ = 0;
};

// Builds the table from the root outputs; fails with InternalError when two
// roots disagree on output yet no symbol separates them (impossible for a
// minimal root set).
MoreTable build_more_table(const std::vector<OutputId>& root_outputs,
                           const RootSet& rs);

// One modular-counting interaction: when both agents carry the same symbol
// and the same count, the responder advances mod M.
std::pair<std::uint32_t, std::uint32_t> symbol_count_step(
    std::uint32_t count1, std::uint32_t count2, SymbolId sigma1,
    SymbolId sigma2, std::uint32_t modulus);

// The indicator word for an agent holding (count, sigma): bit (i, j, k) is
// set iff sigma is the k-th symbol of MORE_{i,j} and count >= m_{R_j}(sigma)
// - 1.
std::uint64_t indicator_mask(const MoreTable& table, const RootSet& rs,
                             std::uint32_t count, SymbolId sigma);

// Table exchange: both agents share hm1 | hm2, then each ORs in its own
// indicator computed from its post-counting count.
std::pair<std::uint64_t, std::uint64_t> wrong_output_step(
    std::uint64_t hm1, std::uint64_t hm2, std::uint32_t count1_after,
    std::uint32_t count2_after, SymbolId sigma1, SymbolId sigma2,
    const MoreTable& table, const RootSet& rs);

// Advances the root index when some HAS-MORE run for the current root is
// all ones. require_nonempty guards against the vacuous all-ones of an
// empty run; disabling it exists only for mutation tests.
std::uint32_t root_output_step(std::uint32_t root, std::uint64_t has_more,
                               const MoreTable& table,
                               bool require_nonempty = true);

// Mutation switches for the necessity tests; defaults are the faithful
// construction.
struct SynthesisOptions {
  bool reset_on_increment = true;
  bool apply_indicator = true;
  bool require_nonempty_more = true;
};

// A synthesized protocol plus the codec for its packed states
// (count, HAS-MORE word, root).
class SynthesizedProtocol {
 public:
  struct Decoded {
    std::uint32_t count;
    std::uint64_t has_more;
    std::uint32_t root;
  };

  const Protocol& protocol() const { return *protocol_; }
  const RootSet& roots() const { return roots_; }
  const std::vector<OutputId>& root_outputs() const { return root_outputs_; }
  const MoreTable& more_table() const { return more_; }
  std::uint32_t max_count() const { return max_count_; }  // M
  const SynthesisOptions& options() const { return options_; }

  std::size_t state_count() const { return protocol_->state_count(); }
  StateId encode(std::uint32_t count, std::uint64_t has_more,
                 std::uint32_t root) const;
  Decoded decode(StateId q) const;
  bool is_reset(StateId q) const;
  std::uint32_t root_of(StateId q) const { return decode(q).root; }

  static std::string state_label(const MoreTable& table, std::uint32_t count,
                                 std::uint64_t has_more, std::uint32_t root);

 private:
  friend SynthesizedProtocol synthesize(const FunctionSpec&,
                                        const SynthesisOptions&);
  SynthesizedProtocol(std::shared_ptr<const Protocol> protocol, RootSet roots,
                      std::vector<OutputId> root_outputs, MoreTable more,
                      std::uint32_t max_count, SynthesisOptions options);

  std::shared_ptr<const Protocol> protocol_;
  RootSet roots_;
  std::vector<OutputId> root_outputs_;
  MoreTable more_;
  std::uint32_t max_count_;
  SynthesisOptions options_;
};

// Raised when the target function is not subset-closed; carries the
// witnessing pair, which no protocol can satisfy on both inputs.
class RejectionError : public InputError {
 public:
  RejectionError(const std::string& what, Multiset a, Multiset b)
      : InputError(what), witness_(std::move(a), std::move(b)) {}
  const std::pair<Multiset, Multiset>& witness() const { return witness_; }

 private:
  std::pair<Multiset, Multiset> witness_;
};

// Builds the full composed protocol for a subset-closed function spec:
// counting, table exchange and root iteration in one transition, with the
// per-agent reset on every root increment. The root rule fires on the table
// the agent carried into the interaction, so completed rows are visible to
// neighbours for one interaction before the reset clears them. States
// enumerate the full count x HAS-MORE x root cross product so that
// verification can start anywhere.
SynthesizedProtocol synthesize(const FunctionSpec& spec,
                               const SynthesisOptions& options = {});

}  // namespace sstab
