#include "sstab/multiset.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace sstab {

AlphabetPtr Alphabet::make(std::vector<std::string> symbols) {
  if (symbols.empty()) {
    throw InputError("alphabet must contain at least one symbol");
  }
  std::sort(symbols.begin(), symbols.end());
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (symbols[i].empty()) {
      throw InputError("alphabet symbols must be non-empty");
    }
    if (i > 0 && symbols[i] == symbols[i - 1]) {
      throw InputError("duplicate alphabet symbol: " + symbols[i]);
    }
  }
  return AlphabetPtr(new Alphabet(std::move(symbols)));
}

std::optional<SymbolId> Alphabet::find(std::string_view symbol) const {
  auto it = std::lower_bound(symbols_.begin(), symbols_.end(), symbol);
  if (it == symbols_.end() || *it != symbol) {
    return std::nullopt;
  }
  return static_cast<SymbolId>(it - symbols_.begin());
}

bool same_alphabet(const AlphabetPtr& a, const AlphabetPtr& b) {
  if (a == b) {
    return true;
  }
  return a && b && *a == *b;
}

Multiset::Multiset(AlphabetPtr alphabet, std::vector<std::uint32_t> counts)
    : alphabet_(std::move(alphabet)), counts_(std::move(counts)) {
  if (!alphabet_) {
    throw InputError("multiset requires an alphabet");
  }
  if (counts_.size() != alphabet_->size()) {
    throw InputError("multiset count vector length does not match alphabet");
  }
  total_ = std::accumulate(counts_.begin(), counts_.end(), std::uint32_t{0});
}

std::uint32_t Multiset::multiplicity(SymbolId id) const {
  if (id >= counts_.size()) {
    throw InputError("symbol id out of range");
  }
  return counts_[id];
}

std::uint32_t Multiset::multiplicity(std::string_view symbol) const {
  auto id = alphabet_->find(symbol);
  if (!id) {
    throw InputError("unknown symbol: " + std::string(symbol));
  }
  return counts_[*id];
}

std::string Multiset::format() const {
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    for (std::uint32_t c = 0; c < counts_[i]; ++c) {
      if (!first) {
        out << ' ';
      }
      out << alphabet_->name(static_cast<SymbolId>(i));
      first = false;
    }
  }
  return out.str();
}

bool operator==(const Multiset& a, const Multiset& b) {
  return same_alphabet(a.alphabet_, b.alphabet_) && a.counts_ == b.counts_;
}

static void require_same_alphabet(const Multiset& a, const Multiset& b) {
  if (!same_alphabet(a.alphabet(), b.alphabet())) {
    throw InputError("multisets are over different alphabets");
  }
}

bool is_subset(const Multiset& a, const Multiset& b) {
  require_same_alphabet(a, b);
  auto ca = a.counts();
  auto cb = b.counts();
  for (std::size_t i = 0; i < ca.size(); ++i) {
    if (ca[i] > cb[i]) {
      return false;
    }
  }
  return true;
}

bool is_proper_subset(const Multiset& a, const Multiset& b) {
  return is_subset(a, b) && !(a == b);
}

bool lex_less(const Multiset& a, const Multiset& b) {
  require_same_alphabet(a, b);
  auto ca = a.counts();
  auto cb = b.counts();
  return std::lexicographical_compare(ca.begin(), ca.end(), cb.begin(),
                                      cb.end());
}

Multiset parse_multiset(std::string_view text, const AlphabetPtr& alphabet) {
  if (!alphabet) {
    throw InputError("multiset requires an alphabet");
  }
  std::vector<std::uint32_t> counts(alphabet->size(), 0);
  std::size_t token_pos = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
    }
    if (i >= text.size()) {
      break;
    }
    std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
    }
    ++token_pos;
    std::string_view token = text.substr(start, i - start);
    auto id = alphabet->find(token);
    if (!id) {
      throw ParseError("unknown symbol '" + std::string(token) +
                       "' at position " + std::to_string(token_pos));
    }
    ++counts[*id];
  }
  if (token_pos == 0) {
    throw ParseError("empty input multiset");
  }
  return Multiset(alphabet, std::move(counts));
}

Domain::Domain(AlphabetPtr alphabet, std::vector<Multiset> members)
    : alphabet_(std::move(alphabet)), members_(std::move(members)) {
  if (!alphabet_) {
    throw InputError("domain requires an alphabet");
  }
  for (const auto& m : members_) {
    if (!same_alphabet(m.alphabet(), alphabet_)) {
      throw InputError("domain member is over a different alphabet");
    }
    if (m.empty()) {
      throw InputError("domain members must be non-empty multisets");
    }
  }
  std::sort(members_.begin(), members_.end(), lex_less);
  members_.erase(std::unique(members_.begin(), members_.end()),
                 members_.end());
}

bool Domain::contains(const Multiset& m) const {
  return index_of(m).has_value();
}

std::optional<std::size_t> Domain::index_of(const Multiset& m) const {
  auto it = std::lower_bound(members_.begin(), members_.end(), m, lex_less);
  if (it == members_.end() || !(*it == m)) {
    return std::nullopt;
  }
  return static_cast<std::size_t>(it - members_.begin());
}

}  // namespace sstab
