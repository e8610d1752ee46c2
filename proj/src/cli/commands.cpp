#include "petriforge/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>
#include <system_error>

#include "petriforge/analysis.hpp"
#include "petriforge/b_emitter.hpp"
#include "petriforge/ingest.hpp"
#include "petriforge/semantics.hpp"

namespace petriforge::cli {

namespace {

struct Globals {
  std::string format;
  std::uint64_t seed = 0;
  bool quiet = false;
  unsigned threads = 0;  // 0: PETRIFORGE_THREADS or 1
};

struct Streams {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

/// An error already reported, carrying the exit code.
struct Exit {
  int code;
};

unsigned resolve_threads(unsigned flag) {
  if (flag) return flag;
  if (const char* env = std::getenv("PETRIFORGE_THREADS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v <= 1024) return static_cast<unsigned>(v);
  }
  return 1;
}

Policy policy_from(const std::string& text) {
  if (auto p = parse_policy(text)) return *p;
  throw InvalidConfigError("unknown policy '" + text + "'");
}

NetDocument load(const Globals& g, const std::string& path, Streams& io) {
  std::optional<DocumentFormat> format;
  if (g.format == "pnml") format = DocumentFormat::Pnml;
  if (g.format == "dsl") format = DocumentFormat::Dsl;
  NetDocument doc = load_document(path, format);
  if (!g.quiet) {
    for (const auto& w : doc.warnings) io.err << path << ": warning: " << w << '\n';
  }
  return doc;
}

/// Runs a command body, mapping exceptions to exit codes.
int guarded(Streams& io, const std::string& input, const std::function<int()>& body) {
  try {
    return body();
  } catch (const Exit& e) {
    return e.code;
  } catch (const std::system_error& e) {
    io.err << "error: " << e.what() << '\n';
    return kIoFailure;
  } catch (const PositionedError& e) {
    io.err << input << (e.pos().line ? ":" : ": ") << e.what() << '\n';
    return kDomainFailure;
  } catch (const IncompleteGraphError& e) {
    io.err << "error: " << e.what() << '\n';
    return kIncomplete;
  } catch (const Error& e) {
    io.err << "error: " << e.what() << '\n';
    return kDomainFailure;
  } catch (const std::invalid_argument& e) {
    io.err << "error: " << e.what() << '\n';
    return kDomainFailure;
  } catch (const std::overflow_error& e) {
    io.err << "error: " << e.what() << '\n';
    return kDomainFailure;
  }
}

// ---------------------------------------------------------------------------
// validate

int cmd_validate(const Globals& g, const std::string& input, Streams& io) {
  const NetDocument doc = load(g, input, io);
  const ValidationReport report = validate_net(doc.net);
  const auto annotation = annotation_problems(doc.net, doc.annotations);
  for (const auto& issue : report.issues) io.out << input << ": " << issue.message << '\n';
  for (const auto& problem : annotation) io.out << input << ": " << problem << '\n';
  if (!report.ok() || !annotation.empty()) return kDomainFailure;
  if (!g.quiet) {
    io.out << doc.name << ": ok, " << doc.net.place_count() << " places, " << doc.net.transition_count()
           << " transitions, " << doc.net.pre.size() + doc.net.post.size() << " arcs\n";
  }
  return kSuccess;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateArgs {
  std::string input;
  std::string policy = "basic";
  std::size_t steps = 100;
  std::optional<TokenCount> capacity;
  std::string trace;
};

int cmd_simulate(const Globals& g, const SimulateArgs& a, Streams& io) {
  const NetDocument doc = load(g, a.input, io);
  const EventSystem system(doc.net, doc.annotations, policy_from(a.policy));
  const Trace trace = simulate(system, SimulationOptions{a.steps, g.seed, a.capacity});

  std::ostringstream lines;
  for (std::size_t k = 0; k < trace.steps.size(); ++k) {
    const auto& step = trace.steps[k];
    lines << "step " << k + 1 << ": " << system.describe(step.event) << " ; marking "
          << format_marking(doc.net, step.state.marking) << '\n';
  }
  if (a.trace.empty()) {
    io.out << lines.str();
  } else {
    write_file(a.trace, lines.str());
  }
  io.out << "stop: " << to_string(trace.stop) << '\n';
  return kSuccess;
}

// ---------------------------------------------------------------------------
// analyze

struct AnalyzeArgs {
  std::string input;
  std::string mode = "reach";
  std::string policy = "basic";
  std::size_t limit = kDefaultNodeLimit;
  std::optional<std::size_t> depth;
  std::string check;
  std::string dot;
  bool require_live = false;
};

template <class Graph, class Describe>
int report_graph(const Graph& graph, const PetriNet& net, const AnalyzeArgs& a, const Globals& g, Streams& io,
                 const Describe& label_of) {
  int status = kSuccess;
  bool incomplete = false;
  io.out << "mode: " << a.mode << '\n'
         << "nodes: " << graph.nodes.size() << '\n'
         << "edges: " << graph.edges.size() << '\n'
         << "complete: " << (graph.complete ? "yes" : "no") << '\n';

  if (graph.complete) {
    for (std::uint32_t i = 0; i < net.place_count(); ++i) {
      const PlaceBound b = place_bound(graph, PlaceId{i});
      io.out << "bound " << net.places[i] << ": " << (b.unbounded() ? std::string("unbounded") : std::to_string(*b.tokens))
             << '\n';
    }
    const auto dead = deadlock_states(graph);
    io.out << "deadlocks: " << dead.size() << '\n';
    if (!g.quiet) {
      for (std::size_t n : dead) io.out << "  deadlock " << format_marking(net, marking_of(graph.nodes[n])) << '\n';
    }
    if (a.require_live && !dead.empty()) status = kDomainFailure;
  } else {
    io.out << "bounds: unknown (incomplete graph)\n"
           << "deadlocks: unknown (incomplete graph)\n";
    incomplete = true;
  }

  if (!a.check.empty()) {
    for (const auto& inv : parse_invariants(read_file(a.check), net)) {
      const std::string text = inv.to_string(net);
      try {
        const AnalysisVerdict v = check_invariant(graph, inv);
        if (v.holds) {
          io.out << "invariant " << text << ": holds\n";
          continue;
        }
        status = kDomainFailure;
        io.out << "invariant " << text << ": violated\n";
        io.out << "  counterexample:";
        for (std::size_t e : *v.counterexample) io.out << ' ' << label_of(graph.edges[e].label);
        if (v.counterexample->empty()) io.out << " (initial state)";
        io.out << "\n  marking: " << format_marking(net, marking_of(graph.nodes[*v.violating_node])) << '\n';
      } catch (const IncompleteGraphError&) {
        io.out << "invariant " << text << ": unknown (incomplete graph)\n";
        incomplete = true;
      } catch (const OmegaUnsupportedError&) {
        io.out << "invariant " << text << ": cannot be decided on an unbounded place\n";
        status = kDomainFailure;
      }
    }
  }
  if (status != kSuccess) return status;
  return incomplete ? kIncomplete : kSuccess;
}

int cmd_analyze(const Globals& g, const AnalyzeArgs& a, Streams& io) {
  const NetDocument doc = load(g, a.input, io);
  ExploreOptions options;
  options.node_limit = a.limit;
  if (a.depth) options.depth_limit = *a.depth;
  options.threads = resolve_threads(g.threads);

  if (a.mode == "embedded") {
    const EventSystem system(doc.net, doc.annotations, policy_from(a.policy));
    const EmbeddedGraph graph = explore_embedded(system, options);
    if (!a.dot.empty()) write_file(a.dot, to_dot(graph, system, doc.name));
    return report_graph(graph, doc.net, a, g, io, [&](const Event& e) { return system.describe(e); });
  }
  const MarkingGraph graph = a.mode == "cover" ? coverability_graph(doc.net, doc.net.initial_marking)
                                               : reachability_graph(doc.net, doc.net.initial_marking, options);
  if (!a.dot.empty()) write_file(a.dot, to_dot(graph, doc.net, doc.name));
  return report_graph(graph, doc.net, a, g, io, [&](TransitionId t) { return doc.net.name(t); });
}

// ---------------------------------------------------------------------------
// emit-b

struct EmitArgs {
  std::string input;
  std::string policy = "basic";
  std::string prefix;
  bool expanded = false;
  std::string outdir = ".";
};

int cmd_emit_b(const Globals& g, const EmitArgs& a, Streams& io) {
  const NetDocument doc = load(g, a.input, io);
  EmissionConfig cfg;
  cfg.policy = policy_from(a.policy);
  cfg.prefix = a.prefix;
  cfg.expanded = a.expanded;
  const BMachineText text = emit_b(doc, cfg);

  const std::filesystem::path dir(a.outdir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::system_error(ec, "cannot create " + dir.string());
  const auto static_path = dir / (text.static_name + ".sys");
  const auto embedded_path = dir / (text.embedded_name + ".sys");
  write_file(static_path, text.static_machine);
  write_file(embedded_path, text.embedded_machine);
  io.out << static_path.string() << '\n' << embedded_path.string() << '\n';
  return kSuccess;
}

// ---------------------------------------------------------------------------
// step

int cmd_step(const Globals& g, const std::string& input, const std::string& policy, Streams& io) {
  const NetDocument doc = load(g, input, io);
  const EventSystem system(doc.net, doc.annotations, policy_from(policy));
  std::vector<EmbeddedState> history{system.initial_state()};
  bool show = true;

  for (;;) {
    const EmbeddedState& current = history.back();
    const auto enabled = system.enabled_events(current);
    if (show) {
      io.out << "state: " << system.describe(current) << '\n';
      for (std::size_t i = 0; i < enabled.size(); ++i) io.out << "  [" << i << "] " << system.describe(enabled[i]) << '\n';
      if (enabled.empty()) io.out << "deadlock: no enabled events\n";
    }
    io.out << "> " << std::flush;
    std::string line;
    if (!std::getline(io.in, line)) {
      io.out << '\n';
      return kSuccess;
    }
    const auto first = line.find_first_not_of(" \t\r");
    const auto last = line.find_last_not_of(" \t\r");
    line = first == std::string::npos ? std::string() : line.substr(first, last - first + 1);

    show = false;
    if (line == "q") return kSuccess;
    if (line == "u") {
      if (history.size() == 1) {
        io.out << "nothing to undo\n";
      } else {
        history.pop_back();
        show = true;
      }
      continue;
    }
    std::size_t index = 0;
    auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), index);
    if (line.empty() || ec != std::errc{} || ptr != line.data() + line.size() || index >= enabled.size()) {
      io.out << "invalid choice; enter an index, 'u' or 'q'\n";
      continue;
    }
    history.push_back(system.fire(current, enabled[index]));
    show = true;
  }
}

// ---------------------------------------------------------------------------
// convert

int cmd_convert(const Globals& g, const std::string& input, const std::string& output, Streams& io) {
  const NetDocument doc = load(g, input, io);
  const bool pnml = format_for_path(output) == DocumentFormat::Pnml;
  write_file(output, pnml ? emit_pnml(doc) : emit_dsl(doc));
  if (!g.quiet) io.out << output << '\n';
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Streams io{in, out, err};
  Globals g;
  CLI::App app{"Petri net toolkit: simulation, analysis and B emission", "petriforge"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", g.format, "Input format (default: from extension)")->check(CLI::IsMember({"dsl", "pnml"}));
  app.add_option("--seed", g.seed, "Random seed");
  app.add_flag("--quiet", g.quiet, "Less output");
  app.add_option("--threads", g.threads, "Worker threads (default: PETRIFORGE_THREADS or 1)")
      ->check(CLI::Range(1u, 1024u));

  const std::vector<std::string> policies = {"basic", "place", "transition", "combined", "place-actions",
                                             "transition-actions", "place-and-transition-actions"};
  std::function<int()> action;

  std::string validate_input;
  auto* validate = app.add_subcommand("validate", "Parse and validate a net");
  validate->add_option("input", validate_input)->required();
  validate->callback([&] { action = [&] { return cmd_validate(g, validate_input, io); }; });

  SimulateArgs sim;
  auto* simulate_cmd = app.add_subcommand("simulate", "Random run");
  simulate_cmd->add_option("input", sim.input)->required();
  simulate_cmd->add_option("--policy", sim.policy)->check(CLI::IsMember(policies));
  simulate_cmd->add_option("--steps", sim.steps, "Maximum number of events");
  simulate_cmd->add_option("--capacity", sim.capacity, "Stop before any place exceeds this many tokens");
  simulate_cmd->add_option("--trace", sim.trace, "Write the trace to this file");
  simulate_cmd->callback([&] { action = [&] { return cmd_simulate(g, sim, io); }; });

  AnalyzeArgs an;
  auto* analyze = app.add_subcommand("analyze", "Build a state graph and check properties");
  analyze->add_option("input", an.input)->required();
  analyze->add_option("--mode", an.mode)->check(CLI::IsMember({"reach", "cover", "embedded"}));
  analyze->add_option("--policy", an.policy, "Policy for --mode embedded")->check(CLI::IsMember(policies));
  analyze->add_option("--limit", an.limit, "Node limit")->check(CLI::PositiveNumber);
  analyze->add_option("--depth", an.depth, "Depth limit");
  analyze->add_option("--check", an.check, "Invariant file");
  analyze->add_option("--dot", an.dot, "Write the graph in DOT format");
  analyze->add_flag("--require-live", an.require_live, "Fail if a deadlock state exists");
  analyze->callback([&] { action = [&] { return cmd_analyze(g, an, io); }; });

  EmitArgs em;
  auto* emit = app.add_subcommand("emit-b", "Write the B abstract systems");
  emit->add_option("input", em.input)->required();
  emit->add_option("--policy", em.policy)->check(CLI::IsMember(policies));
  emit->add_option("--prefix", em.prefix, "Machine name prefix");
  emit->add_flag("--expanded", em.expanded, "One firing event per transition");
  emit->add_option("--outdir", em.outdir, "Output directory");
  emit->callback([&] { action = [&] { return cmd_emit_b(g, em, io); }; });

  std::string step_input;
  std::string step_policy = "basic";
  auto* step = app.add_subcommand("step", "Interactive stepping");
  step->add_option("input", step_input)->required();
  step->add_option("--policy", step_policy)->check(CLI::IsMember(policies));
  step->callback([&] { action = [&] { return cmd_step(g, step_input, step_policy, io); }; });

  std::string convert_input;
  std::string convert_output;
  auto* convert = app.add_subcommand("convert", "Convert between DSL and PNML");
  convert->add_option("input", convert_input)->required();
  convert->add_option("output", convert_output)->required();
  convert->callback([&] { action = [&] { return cmd_convert(g, convert_input, convert_output, io); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << "run with --help for usage\n";
    return kDomainFailure;
  }

  std::string input;
  for (const auto* s : {&validate_input, &sim.input, &an.input, &em.input, &step_input, &convert_input}) {
    if (!s->empty()) input = *s;
  }
  return guarded(io, input, action);
}

}  // namespace petriforge::cli
