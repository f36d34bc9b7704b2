#include "sstab/specfile.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace sstab {

namespace {

struct Line {
  std::size_t number;
  std::string key;
  std::string value;
};

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) {
    return "";
  }
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_words(const std::string& s) {
  std::vector<std::string> words;
  std::istringstream in(s);
  std::string w;
  while (in >> w) {
    words.push_back(w);
  }
  return words;
}

[[noreturn]] void fail(const std::string& filename, std::size_t line,
                       const std::string& message) {
  throw ParseError(filename + ":" + std::to_string(line) + ": " + message);
}

// "a a b -> 1" -> ("a a b", "1")
std::pair<std::string, std::string> split_arrow(const std::string& filename,
                                                const Line& line) {
  std::size_t arrow = line.value.find("->");
  if (arrow == std::string::npos) {
    fail(filename, line.number, "expected '<multiset> -> <output>'");
  }
  std::string lhs = trim(line.value.substr(0, arrow));
  std::string rhs = trim(line.value.substr(arrow + 2));
  if (lhs.empty() || rhs.empty()) {
    fail(filename, line.number, "expected '<multiset> -> <output>'");
  }
  return {lhs, rhs};
}

}  // namespace

SpecFile parse_spec_text(const std::string& text, const std::string& filename) {
  std::vector<Line> lines;
  {
    std::istringstream in(text);
    std::string raw;
    std::size_t number = 0;
    while (std::getline(in, raw)) {
      ++number;
      std::size_t hash = raw.find('#');
      if (hash != std::string::npos) {
        raw.resize(hash);
      }
      std::string stripped = trim(raw);
      if (stripped.empty()) {
        continue;
      }
      std::size_t colon = stripped.find(':');
      if (colon == std::string::npos) {
        fail(filename, number, "expected '<keyword>: <value>'");
      }
      lines.push_back({number, trim(stripped.substr(0, colon)),
                       trim(stripped.substr(colon + 1))});
    }
  }

  auto take_unique = [&](const std::string& key) -> const Line* {
    const Line* found = nullptr;
    for (const Line& line : lines) {
      if (line.key == key) {
        if (found) {
          fail(filename, line.number, "duplicate '" + key + "' line");
        }
        found = &line;
      }
    }
    return found;
  };

  const Line* alphabet_line = take_unique("alphabet");
  if (!alphabet_line) {
    throw ParseError(filename + ": missing 'alphabet' line");
  }
  AlphabetPtr alphabet;
  try {
    alphabet = Alphabet::make(split_words(alphabet_line->value));
  } catch (const InputError& e) {
    fail(filename, alphabet_line->number, e.what());
  }

  const Line* outputs_line = take_unique("outputs");
  if (!outputs_line) {
    throw ParseError(filename + ": missing 'outputs' line");
  }
  std::optional<OutputAlphabet> outputs;
  try {
    outputs.emplace(split_words(outputs_line->value));
  } catch (const InputError& e) {
    fail(filename, outputs_line->number, e.what());
  }

  const Line* mode_line = take_unique("mode");
  if (!mode_line) {
    throw ParseError(filename + ": missing 'mode' line");
  }
  bool explicit_mode;
  if (mode_line->value == "explicit") {
    explicit_mode = true;
  } else if (mode_line->value == "roots") {
    explicit_mode = false;
  } else {
    fail(filename, mode_line->number,
         "mode must be 'explicit' or 'roots', got '" + mode_line->value + "'");
  }

  std::optional<std::uint64_t> node_budget;
  if (const Line* budget_line = take_unique("budget")) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(
        budget_line->value.data(),
        budget_line->value.data() + budget_line->value.size(), value);
    if (ec != std::errc{} ||
        ptr != budget_line->value.data() + budget_line->value.size() ||
        value == 0) {
      fail(filename, budget_line->number, "budget must be a positive integer");
    }
    node_budget = value;
  }

  auto parse_member = [&](const Line& line) -> Multiset {
    try {
      return parse_multiset(line.value, alphabet);
    } catch (const ParseError& e) {
      fail(filename, line.number, e.what());
    }
  };
  auto parse_output = [&](const Line& line,
                          const std::string& name) -> OutputId {
    auto id = outputs->find(name);
    if (!id) {
      fail(filename, line.number, "undeclared output '" + name + "'");
    }
    return *id;
  };

  if (explicit_mode) {
    std::vector<Multiset> members;
    std::vector<OutputId> mapping;
    for (const Line& line : lines) {
      if (line.key == "alphabet" || line.key == "outputs" ||
          line.key == "mode" || line.key == "budget") {
        continue;
      }
      if (line.key == "root" || line.key == "test") {
        fail(filename, line.number,
             "'" + line.key + "' lines belong to roots mode");
      }
      if (line.key != "input") {
        fail(filename, line.number, "unknown keyword '" + line.key + "'");
      }
      auto [lhs, rhs] = split_arrow(filename, line);
      Multiset member = parse_member({line.number, line.key, lhs});
      if (std::find(members.begin(), members.end(), member) != members.end()) {
        fail(filename, line.number,
             "duplicate domain member: " + member.format());
      }
      members.push_back(std::move(member));
      mapping.push_back(parse_output(line, rhs));
    }
    if (members.empty()) {
      throw ParseError(filename + ": explicit mode needs at least one "
                       "'input' line");
    }
    // Domain construction sorts canonically; re-key the mapping to match.
    Domain domain(alphabet, members);
    std::vector<OutputId> sorted_mapping(domain.size());
    for (std::size_t i = 0; i < members.size(); ++i) {
      sorted_mapping[*domain.index_of(members[i])] = mapping[i];
    }
    return SpecFile{FunctionSpec::make_explicit(std::move(domain),
                                                std::move(*outputs),
                                                std::move(sorted_mapping)),
                    node_budget};
  }

  std::vector<Multiset> roots;
  std::vector<OutputId> root_outputs;
  std::vector<Multiset> tests;
  for (const Line& line : lines) {
    if (line.key == "alphabet" || line.key == "outputs" ||
        line.key == "mode" || line.key == "budget") {
      continue;
    }
    if (line.key == "input") {
      fail(filename, line.number, "'input' lines belong to explicit mode");
    }
    if (line.key == "root") {
      auto [lhs, rhs] = split_arrow(filename, line);
      roots.push_back(parse_member({line.number, line.key, lhs}));
      root_outputs.push_back(parse_output(line, rhs));
    } else if (line.key == "test") {
      tests.push_back(parse_member(line));
    } else {
      fail(filename, line.number, "unknown keyword '" + line.key + "'");
    }
  }
  if (roots.empty()) {
    throw ParseError(filename + ": roots mode needs at least one 'root' line");
  }
  try {
    return SpecFile{FunctionSpec::make_roots_only(alphabet, std::move(*outputs),
                                                  std::move(roots),
                                                  std::move(root_outputs),
                                                  std::move(tests)),
                    node_budget};
  } catch (const InputError& e) {
    throw ParseError(filename + ": " + e.what());
  }
}

SpecFile parse_spec(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError("cannot open spec file: " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_spec_text(buffer.str(), path);
}

std::string SpecFile::render() const {
  std::ostringstream out;
  out << "alphabet:";
  for (const std::string& s : spec.alphabet()->symbols()) {
    out << ' ' << s;
  }
  out << '\n' << "outputs:";
  for (const std::string& s : spec.outputs().symbols()) {
    out << ' ' << s;
  }
  out << '\n';
  if (spec.mode() == FunctionSpec::Mode::kExplicit) {
    out << "mode: explicit\n";
  } else {
    out << "mode: roots\n";
  }
  if (node_budget) {
    out << "budget: " << *node_budget << '\n';
  }
  if (spec.mode() == FunctionSpec::Mode::kExplicit) {
    for (std::size_t i = 0; i < spec.domain().size(); ++i) {
      out << "input: " << spec.domain().member(i).format() << " -> "
          << spec.outputs().name(spec.output_of_member(i)) << '\n';
    }
  } else {
    auto roots = spec.declared_roots();
    auto outs = spec.declared_root_outputs();
    for (std::size_t i = 0; i < roots.size(); ++i) {
      out << "root: " << roots[i].format() << " -> "
          << spec.outputs().name(outs[i]) << '\n';
    }
    std::vector<Multiset> tests(spec.test_inputs().begin(),
                                spec.test_inputs().end());
    std::sort(tests.begin(), tests.end(), lex_less);
    for (const Multiset& t : tests) {
      out << "test: " << t.format() << '\n';
    }
  }
  return out.str();
}

}  // namespace sstab
