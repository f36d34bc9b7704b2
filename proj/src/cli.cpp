#include "sstab/cli.hpp"

#include <charconv>
#include <fstream>
#include <random>

#include "sstab/protocol_io.hpp"
#include "sstab/rng.hpp"
#include "sstab/specfile.hpp"
#include "sstab/synthesis.hpp"
#include "sstab/verify.hpp"

namespace sstab {

namespace {

constexpr const char* kUsage =
    "usage: sstab <command> [options]\n"
    "\n"
    "commands:\n"
    "  check <spec>                         decide subset closure\n"
    "  rootset <spec>                       print the minimal root set\n"
    "  count <spec> [--brute-force]         count self-stabilizing functions\n"
    "  synthesize <spec> -o <file>          emit the synthesized protocol\n"
    "  verify <spec> [--input \"a a b\"] [--budget N]\n"
    "                                       model-check self-stabilization\n"
    "  simulate <spec> --input \"a a b\" --seed S --steps K\n"
    "           [--random-init] [--detect-convergence]\n"
    "  refute <spec> --protocol <file> --pair \"a|a a\"\n";

struct Args {
  std::string command;
  std::vector<std::string> positional;
  std::vector<std::pair<std::string, std::string>> options;
  std::vector<std::string> flags;

  bool has_flag(const std::string& name) const {
    return std::find(flags.begin(), flags.end(), name) != flags.end();
  }
  std::optional<std::string> option(const std::string& name) const {
    for (const auto& [k, v] : options) {
      if (k == name) {
        return v;
      }
    }
    return std::nullopt;
  }
};

const std::vector<std::string> kValueOptions = {"-o", "--input", "--budget",
                                                "--seed", "--steps",
                                                "--protocol", "--pair"};
const std::vector<std::string> kFlags = {"--brute-force", "--random-init",
                                         "--detect-convergence"};

Args parse_args(const std::vector<std::string>& argv) {
  if (argv.empty()) {
    throw InputError("missing command");
  }
  Args args;
  args.command = argv[0];
  for (std::size_t i = 1; i < argv.size(); ++i) {
    const std::string& a = argv[i];
    if (std::find(kFlags.begin(), kFlags.end(), a) != kFlags.end()) {
      args.flags.push_back(a);
    } else if (std::find(kValueOptions.begin(), kValueOptions.end(), a) !=
               kValueOptions.end()) {
      if (i + 1 >= argv.size()) {
        throw InputError("option " + a + " needs a value");
      }
      args.options.emplace_back(a, argv[++i]);
    } else if (!a.empty() && a[0] == '-') {
      throw InputError("unknown option " + a);
    } else {
      args.positional.push_back(a);
    }
  }
  return args;
}

std::uint64_t parse_u64(const std::string& text, const std::string& what) {
  std::uint64_t value = 0;
  auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw InputError(what + " must be a non-negative integer, got '" + text +
                     "'");
  }
  return value;
}

SpecFile load_spec(const Args& args) {
  if (args.positional.size() != 1) {
    throw InputError(args.command + " expects exactly one spec file");
  }
  return parse_spec(args.positional[0]);
}

std::uint64_t resolve_budget(const Args& args, const SpecFile& file) {
  if (auto opt = args.option("--budget")) {
    std::uint64_t value = parse_u64(*opt, "--budget");
    if (value == 0) {
      throw InputError("--budget must be positive");
    }
    return value;
  }
  return file.node_budget.value_or(kDefaultNodeBudget);
}

void print_counterexample(std::ostream& out, const FunctionSpec& spec,
                          const Multiset& a, const Multiset& b) {
  out << "counterexample: A=(" << a.format() << ") B=(" << b.format()
      << ") f(A)=" << spec.outputs().name(spec.value_of(a))
      << " f(B)=" << spec.outputs().name(spec.value_of(b)) << '\n';
}

int cmd_check(const Args& args, std::ostream& out) {
  SpecFile file = load_spec(args);
  SubsetClosureReport report = check_subset_closed(file.spec);
  RootSet rs = file.spec.root_set();
  if (!report.ok) {
    out << "not-subset-closed\n";
    print_counterexample(out, file.spec, report.counterexample->first,
                         report.counterexample->second);
    return 1;
  }
  out << "subset-closed; |R|=" << rs.size() << '\n';
  ImageBoundReport image = image_bound_check(file.spec);
  out << "image-bound: |im(f)|=" << image.image_size
      << " <= |R|=" << image.root_count << '\n';
  return 0;
}

int cmd_rootset(const Args& args, std::ostream& out) {
  SpecFile file = load_spec(args);
  RootSet rs = file.spec.root_set();
  RootSet direct = minimal_root_set(rs.domain());
  RootSet recursive = dickson_root_set(rs.domain());
  bool agree = std::equal(direct.roots().begin(), direct.roots().end(),
                          recursive.roots().begin(), recursive.roots().end());
  for (std::size_t i = 0; i < rs.size(); ++i) {
    out << "R[" << i << "]: " << rs.root(i).format() << '\n';
  }
  out << "|R|=" << rs.size() << '\n';
  out << "M=" << max_multiplicity(rs) << '\n';
  out << "strong-downwards-antichain: "
      << (is_strong_downwards_antichain(rs) ? "true" : "false") << '\n';
  out << "dickson-agrees: " << (agree ? "true" : "false") << '\n';
  return agree ? 0 : 1;
}

int cmd_count(const Args& args, std::ostream& out) {
  SpecFile file = load_spec(args);
  const Domain& domain = file.spec.mode() == FunctionSpec::Mode::kExplicit
                             ? file.spec.domain()
                             : file.spec.root_set().domain();
  FunctionCount count = count_functions(domain, file.spec.outputs());
  out << "|R|=" << minimal_root_set(domain).size() << '\n';
  out << "upper-bound=" << count.upper_bound << '\n';
  out << "exact=" << count.exact_count << '\n';
  out << "unique-roots=" << (count.unique_roots ? "true" : "false") << '\n';
  if (args.has_flag("--brute-force")) {
    std::uint64_t brute = brute_force_count(domain, file.spec.outputs());
    out << "brute-force=" << brute << '\n';
    bool agrees = brute == count.exact_count;
    out << "brute-force-agrees=" << (agrees ? "true" : "false") << '\n';
    if (!agrees) {
      return 1;
    }
  }
  return 0;
}

int cmd_synthesize(const Args& args, std::ostream& out) {
  SpecFile file = load_spec(args);
  auto output_path = args.option("-o");
  if (!output_path) {
    throw InputError("synthesize needs -o <file>");
  }
  try {
    SynthesizedProtocol synth = synthesize(file.spec);
    std::ofstream sink(*output_path, std::ios::binary);
    if (!sink) {
      throw InputError("cannot write protocol file: " + *output_path);
    }
    sink << write_protocol(synth.protocol());
    out << "states=" << synth.state_count() << '\n';
    out << "roots=" << synth.roots().size() << '\n';
    out << "M=" << synth.max_count() << '\n';
    out << "more-bits=" << synth.more_table().total_bits() << '\n';
    out << "wrote " << *output_path << '\n';
    return 0;
  } catch (const RejectionError& e) {
    out << "rejected: not-subset-closed\n";
    print_counterexample(out, file.spec, e.witness().first,
                         e.witness().second);
    return 1;
  }
}

int cmd_verify(const Args& args, std::ostream& out, std::ostream& err) {
  SpecFile file = load_spec(args);
  std::uint64_t budget = resolve_budget(args, file);

  std::vector<Multiset> targets;
  if (auto input = args.option("--input")) {
    targets.push_back(parse_multiset(*input, file.spec.alphabet()));
  } else {
    targets = file.spec.verification_inputs();
  }
  if (targets.empty()) {
    throw InputError(
        "no verification inputs; add 'test:' lines or pass --input");
  }

  SynthesizedProtocol synth = [&] {
    try {
      return synthesize(file.spec);
    } catch (const RejectionError& e) {
      out << "rejected: not-subset-closed\n";
      print_counterexample(out, file.spec, e.witness().first,
                           e.witness().second);
      throw;
    }
  }();

  bool all_ok = true;
  for (const Multiset& input : targets) {
    Verdict verdict =
        verify_self_stabilizing(synth.protocol(), file.spec, input, budget);
    out << render_verdict(verdict, synth.protocol());
    err << "verify input=" << input.format() << " wall-ms=" << verdict.wall_ms
        << '\n';
    all_ok = all_ok && verdict.ok();
  }
  return all_ok ? 0 : 1;
}

int cmd_simulate(const Args& args, std::ostream& out) {
  SpecFile file = load_spec(args);
  auto input_text = args.option("--input");
  if (!input_text) {
    throw InputError("simulate needs --input");
  }
  std::uint64_t seed = parse_u64(args.option("--seed").value_or("0"), "--seed");
  std::uint64_t steps =
      parse_u64(args.option("--steps").value_or("1000"), "--steps");

  SynthesizedProtocol synth = synthesize(file.spec);
  Multiset input = parse_multiset(*input_text, file.spec.alphabet());

  Configuration start;
  if (args.has_flag("--random-init")) {
    std::mt19937_64 gen(rng::splitmix64(seed));
    std::vector<AgentClass> agents;
    auto counts = input.counts();
    for (std::size_t s = 0; s < counts.size(); ++s) {
      for (std::uint32_t c = 0; c < counts[s]; ++c) {
        agents.push_back(
            {static_cast<StateId>(
                 rng::bounded(gen, synth.protocol().state_count())),
             static_cast<SymbolId>(s)});
      }
    }
    start = Configuration::from_agents(agents);
  } else {
    start = initial_configuration(synth.protocol(), input);
  }

  SimulateOptions options;
  options.detect_convergence = args.has_flag("--detect-convergence");
  Trace trace = simulate(synth.protocol(), start, seed, steps, options);
  out << trace.render(synth.protocol());
  out << "status="
      << (trace.status == TraceStatus::kConvergedDetected
              ? "converged-detected"
              : "step-cap")
      << '\n';
  return 0;
}

int cmd_refute(const Args& args, std::ostream& out) {
  SpecFile file = load_spec(args);
  auto protocol_path = args.option("--protocol");
  auto pair_text = args.option("--pair");
  if (!protocol_path || !pair_text) {
    throw InputError("refute needs --protocol <file> and --pair \"A|B\"");
  }
  std::size_t bar = pair_text->find('|');
  if (bar == std::string::npos) {
    throw InputError("--pair expects \"<multiset>|<multiset>\"");
  }
  Multiset a =
      parse_multiset(pair_text->substr(0, bar), file.spec.alphabet());
  Multiset b = parse_multiset(pair_text->substr(bar + 1), file.spec.alphabet());
  Protocol protocol = read_protocol(*protocol_path);

  std::uint64_t budget = resolve_budget(args, file);
  Refutation result = refute_protocol(protocol, file.spec, a, b, budget);
  out << "--- verdict for A\n"
      << render_verdict(result.on_subset, protocol);
  out << "--- verdict for B\n"
      << render_verdict(result.on_superset, protocol);
  if (result.refuted) {
    bool bad_a = !result.on_subset.ok();
    bool bad_b = !result.on_superset.ok();
    out << "refuted-on=" << (bad_a && bad_b ? "both" : bad_a ? "A" : "B")
        << '\n';
    return 0;
  }
  out << "refutation-failed\n";
  return 1;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err) {
  try {
    Args parsed = parse_args(args);
    if (parsed.command == "check") {
      return cmd_check(parsed, out);
    }
    if (parsed.command == "rootset") {
      return cmd_rootset(parsed, out);
    }
    if (parsed.command == "count") {
      return cmd_count(parsed, out);
    }
    if (parsed.command == "synthesize") {
      return cmd_synthesize(parsed, out);
    }
    if (parsed.command == "verify") {
      return cmd_verify(parsed, out, err);
    }
    if (parsed.command == "simulate") {
      return cmd_simulate(parsed, out);
    }
    if (parsed.command == "refute") {
      return cmd_refute(parsed, out);
    }
    if (parsed.command == "help" || parsed.command == "--help") {
      out << kUsage;
      return 0;
    }
    throw InputError("unknown command '" + parsed.command + "'");
  } catch (const RejectionError&) {
    return 1;  // already reported by the subcommand
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    if (args.empty() || e.what() == std::string("missing command")) {
      err << kUsage;
    }
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace sstab
