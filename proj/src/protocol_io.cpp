#include "sstab/protocol_io.hpp"

#include <fstream>
#include <sstream>

namespace sstab {

namespace {

bool printable_name(const std::string& name) {
  if (name.empty()) {
    return false;
  }
  for (char c : name) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == '(' ||
        c == ')') {
      return false;
    }
  }
  return true;
}

[[noreturn]] void fail(const std::string& filename, std::size_t line,
                       const std::string& message) {
  throw ParseError(filename + ":" + std::to_string(line) + ": " + message);
}

}  // namespace

std::string write_protocol(const Protocol& protocol) {
  for (const std::string& name : protocol.state_names()) {
    if (!printable_name(name)) {
      throw InputError("state name is not serializable: '" + name + "'");
    }
  }
  std::ostringstream out;
  out << "protocol-format 1\n";
  out << "inputs:";
  for (const std::string& s : protocol.input_alphabet()->symbols()) {
    out << ' ' << s;
  }
  out << "\noutputs:";
  for (const std::string& s : protocol.outputs().symbols()) {
    out << ' ' << s;
  }
  out << "\nstates: " << protocol.state_count() << '\n';
  for (const std::string& name : protocol.state_names()) {
    out << "state: " << name << '\n';
  }
  for (std::size_t s = 0; s < protocol.input_alphabet()->size(); ++s) {
    out << "input: " << protocol.input_alphabet()->name(s) << " -> "
        << protocol.state_name(protocol.initial_state(s)) << '\n';
  }
  for (StateId q = 0; q < protocol.state_count(); ++q) {
    out << "output: " << protocol.state_name(q) << " -> "
        << protocol.outputs().name(protocol.output(q)) << '\n';
  }
  const std::size_t sigma = protocol.input_alphabet()->size();
  for (StateId q1 = 0; q1 < protocol.state_count(); ++q1) {
    for (std::size_t s1 = 0; s1 < sigma; ++s1) {
      for (StateId q2 = 0; q2 < protocol.state_count(); ++q2) {
        for (std::size_t s2 = 0; s2 < sigma; ++s2) {
          auto [r1, r2] = protocol.apply(q1, s1, q2, s2);
          out << "delta: (" << protocol.state_name(q1) << ','
              << protocol.input_alphabet()->name(s1) << ") ("
              << protocol.state_name(q2) << ','
              << protocol.input_alphabet()->name(s2) << ") -> "
              << protocol.state_name(r1) << ' ' << protocol.state_name(r2)
              << '\n';
        }
      }
    }
  }
  return out.str();
}

Protocol read_protocol_text(const std::string& text,
                            const std::string& filename) {
  std::istringstream in(text);
  std::string raw;
  std::size_t number = 0;

  auto next_line = [&](std::string& key, std::string& value) -> bool {
    while (std::getline(in, raw)) {
      ++number;
      std::size_t hash = raw.find('#');
      if (hash != std::string::npos) {
        raw.resize(hash);
      }
      std::size_t b = raw.find_first_not_of(" \t\r");
      if (b == std::string::npos) {
        continue;
      }
      std::size_t e = raw.find_last_not_of(" \t\r");
      std::string stripped = raw.substr(b, e - b + 1);
      if (stripped == "protocol-format 1") {
        key = "protocol-format";
        value = "1";
        return true;
      }
      std::size_t colon = stripped.find(':');
      if (colon == std::string::npos) {
        fail(filename, number, "expected '<keyword>: <value>'");
      }
      key = stripped.substr(0, colon);
      std::size_t vb = stripped.find_first_not_of(" \t", colon + 1);
      value = vb == std::string::npos ? "" : stripped.substr(vb);
      return true;
    }
    return false;
  };

  std::string key, value;
  if (!next_line(key, value) || key != "protocol-format" || value != "1") {
    throw ParseError(filename + ": expected 'protocol-format 1' header");
  }

  auto split = [](const std::string& s) {
    std::vector<std::string> words;
    std::istringstream ws(s);
    std::string w;
    while (ws >> w) {
      words.push_back(w);
    }
    return words;
  };

  if (!next_line(key, value) || key != "inputs") {
    fail(filename, number, "expected 'inputs:' line");
  }
  AlphabetPtr alphabet = Alphabet::make(split(value));

  if (!next_line(key, value) || key != "outputs") {
    fail(filename, number, "expected 'outputs:' line");
  }
  OutputAlphabet outputs(split(value));

  if (!next_line(key, value) || key != "states") {
    fail(filename, number, "expected 'states:' line");
  }
  std::size_t state_count = 0;
  try {
    state_count = std::stoul(value);
  } catch (...) {
    fail(filename, number, "states must be a number");
  }
  if (state_count == 0) {
    fail(filename, number, "protocol needs at least one state");
  }

  std::vector<std::string> names;
  names.reserve(state_count);
  for (std::size_t i = 0; i < state_count; ++i) {
    if (!next_line(key, value) || key != "state") {
      fail(filename, number, "expected 'state:' line");
    }
    if (!printable_name(value)) {
      fail(filename, number, "bad state name");
    }
    names.push_back(value);
  }
  auto state_of = [&](const std::string& name, std::size_t line) -> StateId {
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (names[i] == name) {
        return static_cast<StateId>(i);
      }
    }
    fail(filename, line, "unknown state '" + name + "'");
  };

  const std::size_t sigma = alphabet->size();
  std::vector<StateId> input_map(sigma, 0);
  std::vector<char> input_seen(sigma, 0);
  std::vector<OutputId> output_map(state_count, 0);
  std::vector<char> output_seen(state_count, 0);
  std::vector<std::pair<StateId, StateId>> table(
      state_count * sigma * state_count * sigma);
  std::vector<char> table_seen(table.size(), 0);

  auto parse_arrow = [&](const std::string& v,
                         std::size_t line) -> std::pair<std::string, std::string> {
    std::size_t arrow = v.find("->");
    if (arrow == std::string::npos) {
      fail(filename, line, "expected '->'");
    }
    std::string lhs = v.substr(0, arrow);
    std::string rhs = v.substr(arrow + 2);
    return {lhs, rhs};
  };

  while (next_line(key, value)) {
    if (key == "input") {
      auto [lhs, rhs] = parse_arrow(value, number);
      auto words_l = split(lhs);
      auto words_r = split(rhs);
      if (words_l.size() != 1 || words_r.size() != 1) {
        fail(filename, number, "expected 'input: <symbol> -> <state>'");
      }
      auto sid = alphabet->find(words_l[0]);
      if (!sid) {
        fail(filename, number, "unknown input symbol '" + words_l[0] + "'");
      }
      input_map[*sid] = state_of(words_r[0], number);
      input_seen[*sid] = 1;
    } else if (key == "output") {
      auto [lhs, rhs] = parse_arrow(value, number);
      auto words_l = split(lhs);
      auto words_r = split(rhs);
      if (words_l.size() != 1 || words_r.size() != 1) {
        fail(filename, number, "expected 'output: <state> -> <output>'");
      }
      StateId q = state_of(words_l[0], number);
      auto oid = outputs.find(words_r[0]);
      if (!oid) {
        fail(filename, number, "unknown output symbol '" + words_r[0] + "'");
      }
      output_map[q] = *oid;
      output_seen[q] = 1;
    } else if (key == "delta") {
      auto [lhs, rhs] = parse_arrow(value, number);
      // lhs: (q1,s1) (q2,s2)
      std::vector<std::pair<std::string, std::string>> pairs;
      std::size_t pos = 0;
      while ((pos = lhs.find('(', pos)) != std::string::npos) {
        std::size_t comma = lhs.find(',', pos);
        std::size_t close = lhs.find(')', pos);
        if (comma == std::string::npos || close == std::string::npos ||
            comma > close) {
          fail(filename, number, "malformed '(state,symbol)' pair");
        }
        pairs.push_back({lhs.substr(pos + 1, comma - pos - 1),
                         lhs.substr(comma + 1, close - comma - 1)});
        pos = close + 1;
      }
      auto results = split(rhs);
      if (pairs.size() != 2 || results.size() != 2) {
        fail(filename, number,
             "expected 'delta: (q,s) (q,s) -> q q'");
      }
      StateId q1 = state_of(pairs[0].first, number);
      StateId q2 = state_of(pairs[1].first, number);
      auto s1 = alphabet->find(pairs[0].second);
      auto s2 = alphabet->find(pairs[1].second);
      if (!s1 || !s2) {
        fail(filename, number, "unknown input symbol in delta line");
      }
      std::size_t idx = ((q1 * sigma + *s1) * state_count + q2) * sigma + *s2;
      if (table_seen[idx]) {
        fail(filename, number, "duplicate delta entry");
      }
      table_seen[idx] = 1;
      table[idx] = {state_of(results[0], number), state_of(results[1], number)};
    } else {
      fail(filename, number, "unknown keyword '" + key + "'");
    }
  }

  for (std::size_t s = 0; s < sigma; ++s) {
    if (!input_seen[s]) {
      throw ParseError(filename + ": input map is missing symbol '" +
                       alphabet->name(s) + "'");
    }
  }
  for (std::size_t q = 0; q < state_count; ++q) {
    if (!output_seen[q]) {
      throw ParseError(filename + ": output map is missing state '" +
                       names[q] + "'");
    }
  }
  for (std::size_t i = 0; i < table_seen.size(); ++i) {
    if (!table_seen[i]) {
      throw ParseError(filename + ": transition table is not total");
    }
  }

  Protocol::Delta delta = [table = std::move(table), state_count,
                           sigma](StateId q1, SymbolId s1, StateId q2,
                                  SymbolId s2) {
    return table[((q1 * sigma + s1) * state_count + q2) * sigma + s2];
  };
  return Protocol(std::move(names), std::move(alphabet), std::move(outputs),
                  std::move(input_map), std::move(output_map),
                  std::move(delta));
}

Protocol read_protocol(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError("cannot open protocol file: " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return read_protocol_text(buffer.str(), path);
}

}  // namespace sstab
