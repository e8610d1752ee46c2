// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "petriforge/analysis.hpp"
#include "petriforge/b_emitter.hpp"
#include "petriforge/cli.hpp"
#include "petriforge/ingest.hpp"
#include "petriforge/semantics.hpp"
#include "support/oracle.hpp"
#include "support/random_net.hpp"

namespace fs = std::filesystem;
using namespace petriforge;
using namespace testsupport;

namespace {

const fs::path kNets = PETRIFORGE_NETS_DIR;
const fs::path kGolden = PETRIFORGE_GOLDEN_DIR;

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> failures;

  void fail(std::string what) {
    pass = false;
    if (failures.size() < 5) failures.push_back(std::move(what));
  }
};

std::string dense_text(const DenseNet& d) {
  std::ostringstream out;
  out << d.places << "x" << d.transitions << " pre=";
  for (const auto& row : d.pre) {
    for (auto v : row) out << v;
  }
  out << " post=";
  for (const auto& row : d.post) {
    for (auto v : row) out << v;
  }
  out << " m0=";
  for (auto v : d.m0) out << v;
  return out.str();
}

DenseNet uniform_dense(std::mt19937_64& rng, std::size_t places, std::size_t transitions, std::int64_t max_weight,
                       std::int64_t max_tokens) {
  DenseNet d = empty_dense(places, transitions);
  std::uniform_int_distribution<std::int64_t> weight(0, max_weight);
  std::uniform_int_distribution<std::int64_t> tokens(0, max_tokens);
  for (std::size_t p = 0; p < places; ++p) {
    for (std::size_t t = 0; t < transitions; ++t) {
      d.pre[p][t] = weight(rng);
      d.post[p][t] = weight(rng);
    }
    d.m0[p] = tokens(rng);
  }
  return d;
}

// ---------------------------------------------------------------------------
// 1. Producer-consumer

Outcome ac1_producer_consumer() {
  Outcome o;
  const auto net_path = (kNets / "producer_consumer.pn").string();
  const auto inv_path = (kNets / "producer_consumer.inv").string();

  const auto start = std::chrono::steady_clock::now();
  std::istringstream in;
  std::ostringstream out, err;
  const int code = cli::run({"analyze", net_path, "--mode", "reach", "--check", inv_path, "--require-live"}, in, out,
                            err);
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  if (code != 0) o.fail("analyze exit code " + std::to_string(code) + ": " + err.str());
  for (const char* line : {"complete: yes\n", "deadlocks: 0\n", "invariant Empty_buf <= 2: holds\n",
                           "invariant D_in_buf <= 2: holds\n", "invariant Empty_buf + D_in_buf = 2: holds\n"}) {
    if (out.str().find(line) == std::string::npos) o.fail(std::string("missing output line: ") + line);
  }
  if (ms >= 1000.0) o.fail("analysis took " + std::to_string(ms) + " ms");

  // Independent confirmation on the oracle's reachable set.
  const NetDocument doc = load_document(net_path);
  const DenseNet d = dense_from(doc.net);
  const OracleGraph og = oracle_reachability(d);
  const std::size_t empty = doc.net.place("Empty_buf").index;
  const std::size_t data = doc.net.place("D_in_buf").index;
  if (!og.complete) o.fail("oracle reachability did not terminate");
  for (const auto& m : og.markings) {
    if (m[empty] > 2 || m[data] > 2 || m[empty] + m[data] != 2) o.fail("oracle marking violates a property");
    bool live = false;
    for (std::size_t t = 0; t < d.transitions; ++t) live = live || oracle_enabled(d, m, t);
    if (!live) o.fail("oracle finds a deadlock");
  }
  const MarkingGraph g = reachability_graph(doc.net, doc.net.initial_marking);
  std::set<DenseMarking> library;
  for (const auto& m : g.nodes) library.insert(to_dense(m));
  if (library != og.markings) o.fail("library and oracle reachable sets differ");

  std::ostringstream detail;
  detail << g.nodes.size() << " reachable markings, 3 invariants hold, 0 deadlocks, " << static_cast<int>(ms)
         << " ms";
  o.detail = detail.str();
  return o;
}

// ---------------------------------------------------------------------------
// 2. Firing rule against the dense oracle

Outcome ac2_semantics_oracle() {
  Outcome o;
  constexpr std::uint64_t kNets = 1000;
  constexpr std::size_t kDepth = 10;
  std::size_t pairs = 0;
  std::size_t mismatches = 0;
  for (std::uint64_t seed = 0; seed < kNets; ++seed) {
    const DenseNet d = random_dense(seed);
    const PetriNet net = to_petri_net(d);
    auto compare = [&](const DenseMarking& m, std::size_t t, bool enabled) {
      ++pairs;
      const Marking lm = to_marking(m);
      const TransitionId tid{static_cast<std::uint32_t>(t)};
      if (is_enabled(net, lm, tid) != enabled) {
        ++mismatches;
        o.fail("is_enabled differs, seed " + std::to_string(seed));
        return;
      }
      if (enabled && to_dense(fire(net, lm, tid)) != oracle_fire(d, m, t)) {
        ++mismatches;
        o.fail("fire differs, seed " + std::to_string(seed));
      }
    };
    // Pairs met by the oracle's own search ...
    oracle_explore(d, kDepth, 200000, compare);
    // ... and by the library's.
    ExploreOptions options;
    options.depth_limit = kDepth;
    options.node_limit = 200000;
    const MarkingGraph g = reachability_graph(net, net.initial_marking, options);
    for (const auto& m : g.nodes) {
      const DenseMarking dm = to_dense(m);
      for (std::size_t t = 0; t < d.transitions; ++t) compare(dm, t, oracle_enabled(d, dm, t));
    }
  }
  o.detail = std::to_string(kNets) + " random nets, " + std::to_string(pairs) + " (marking, transition) pairs, " +
             std::to_string(mismatches) + " mismatches";
  return o;
}

// ---------------------------------------------------------------------------
// 3. Basic embedding against the reachability graph

/// The embedded graph must be the reachability graph with EventTr(t) for t.
bool basic_graphs_match(const PetriNet& net, std::size_t node_limit) {
  ExploreOptions options;
  options.node_limit = node_limit;
  const MarkingGraph rg = reachability_graph(net, net.initial_marking, options);
  const EventSystem system(net, {}, Policy::Basic);
  const EmbeddedGraph eg = explore_embedded(system, options);
  if (rg.nodes.size() != eg.nodes.size() || rg.edges.size() != eg.edges.size() || rg.complete != eg.complete) {
    return false;
  }
  for (std::size_t i = 0; i < rg.nodes.size(); ++i) {
    if (!(eg.nodes[i].marking == rg.nodes[i])) return false;
  }
  for (std::size_t i = 0; i < rg.edges.size(); ++i) {
    const auto* label = std::get_if<events::EventTr>(&eg.edges[i].label);
    if (!label || label->transition != rg.edges[i].label || eg.edges[i].source != rg.edges[i].source ||
        eg.edges[i].target != rg.edges[i].target) {
      return false;
    }
  }
  return true;
}

Outcome ac3_basic_embedding() {
  Outcome o;
  std::size_t local = 0;
  std::size_t graphs = 0;
  std::size_t mismatches = 0;

  // Every transition column of the family at every marking: the single
  // EventTr offered and its effect.
  for_each_dense(3, 1, 2, 2, [&](const DenseNet& d) {
    ++local;
    const PetriNet net = to_petri_net(d);
    const EventSystem system(net, {}, Policy::Basic);
    const EmbeddedState s = system.initial_state();
    const auto offered = system.enabled_events(s);
    const bool enabled = oracle_enabled(d, d.m0, 0);
    const bool ok = enabled ? offered.size() == 1 && offered[0] == Event{events::EventTr{TransitionId{0}}} &&
                                  to_dense(system.fire(s, offered[0]).marking) == oracle_fire(d, d.m0, 0)
                            : offered.empty();
    if (!ok) {
      ++mismatches;
      o.fail("local case " + dense_text(d));
    }
  });

  // Whole graphs for every net of the smaller shapes.
  const std::vector<std::pair<std::size_t, std::size_t>> shapes = {{1, 1}, {1, 2}, {2, 1}, {1, 3},
                                                                   {3, 1}, {2, 2}};
  for (const auto& [places, transitions] : shapes) {
    for_each_dense(places, transitions, 2, 2, [&](const DenseNet& d) {
      ++graphs;
      if (!basic_graphs_match(to_petri_net(d), 256)) {
        ++mismatches;
        o.fail("graph " + dense_text(d));
      }
    });
  }

  // Seeded sample of the 3x3 shape.
  std::mt19937_64 rng(3);
  constexpr std::size_t kSample = 20000;
  for (std::size_t i = 0; i < kSample; ++i) {
    const DenseNet d = uniform_dense(rng, 3, 3, 2, 2);
    ++graphs;
    if (!basic_graphs_match(to_petri_net(d), 256)) {
      ++mismatches;
      o.fail("graph " + dense_text(d));
    }
  }
  o.detail = std::to_string(local) + " exhaustive (column, marking) cases, " + std::to_string(graphs) +
             " graphs (all nets up to 2x2, 1x3, 3x1; " + std::to_string(kSample) + " sampled 3x3), " +
             std::to_string(mismatches) + " mismatches";
  return o;
}

// ---------------------------------------------------------------------------
// 4. Staging soundness and Combined priority

bool all_clear(const std::vector<bool>& bits, std::size_t from) {
  for (std::size_t i = from; i < bits.size(); ++i) {
    if (bits[i]) return false;
  }
  return true;
}

/// trans_places empty, every real guard FALSE, nothing staged.
bool settled(const EmbeddedState& s) {
  return s.pending.empty() && all_clear(s.place_action_guards, 1) && all_clear(s.staged_place_actions, 0) &&
         all_clear(s.staged_transitions, 0) && all_clear(s.transition_action_guards, 1);
}

/// Follows every interleaving of non-firing events after FireTransition(t)
/// from s; each maximal one must end settled at the expected marking.
/// Returns the number of maximal completions that did not.
std::size_t completion_violations(const EventSystem& system, const EmbeddedState& s, TransitionId t,
                                  const DenseMarking& expected, std::size_t& completions) {
  std::unordered_set<EmbeddedState, EmbeddedStateHash, SameConfiguration> seen;
  std::vector<EmbeddedState> stack{system.fire(s, events::FireTransition{t})};
  std::size_t bad = 0;
  while (!stack.empty()) {
    EmbeddedState cur = std::move(stack.back());
    stack.pop_back();
    if (!seen.insert(cur).second) continue;
    bool maximal = true;
    for (const Event& e : system.enabled_events(cur)) {
      if (is_firing(e)) continue;
      maximal = false;
      stack.push_back(system.fire(cur, e));
    }
    if (maximal) {
      ++completions;
      if (to_dense(cur.marking) != expected || !settled(cur)) ++bad;
    }
  }
  return bad;
}

NetAnnotations annotate(const PetriNet& net, unsigned place_mask, unsigned transition_mask) {
  NetAnnotations ann;
  for (std::uint32_t p = 0; p < net.places.size(); ++p) {
    if (place_mask >> p & 1U) ann.place_actions[PlaceId{p}] = "A" + std::to_string(p);
  }
  for (std::uint32_t t = 0; t < net.transitions.size(); ++t) {
    if (transition_mask >> t & 1U) ann.transition_actions[TransitionId{t}] = "X" + std::to_string(t);
  }
  return ann;
}

struct StagingStats {
  std::size_t firings = 0;
  std::size_t completions = 0;
  std::size_t priority_states = 0;
  std::size_t violations = 0;
};

/// Explores the event system and checks every FireTransition that starts
/// from a settled state, plus Combined priority on every state.
void check_staging_graph(const PetriNet& net, const NetAnnotations& ann, Policy policy, std::size_t node_limit,
                         StagingStats& stats, Outcome& o) {
  const EventSystem system(net, ann, policy);
  ExploreOptions options;
  options.node_limit = node_limit;
  const EmbeddedGraph g = explore_embedded(system, options);
  const DenseNet d = dense_from(net);
  std::vector<bool> offers_firing(g.nodes.size(), false);
  for (const auto& e : g.edges) {
    const auto* f = std::get_if<events::FireTransition>(&e.label);
    if (!f) continue;
    offers_firing[e.source] = true;
    const EmbeddedState& s = g.nodes[e.source];
    if (!settled(s)) continue;
    ++stats.firings;
    const DenseMarking m = to_dense(s.marking);
    if (!oracle_enabled(d, m, f->transition.index)) {
      ++stats.violations;
      o.fail("FireTransition offered while the oracle disables it");
      continue;
    }
    if (std::size_t bad =
            completion_violations(system, s, f->transition, oracle_fire(d, m, f->transition.index), stats.completions)) {
      stats.violations += bad;
      o.fail(std::string(to_string(policy)) + " completion mismatch after " + net.name(f->transition));
    }
  }
  if (policy != Policy::PlaceAndTransitionActions) return;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    if (!offers_firing[i]) continue;
    ++stats.priority_states;
    if (!settled(g.nodes[i])) {
      ++stats.violations;
      o.fail("combined: FireTransition enabled in an unsettled state");
    }
  }
}

Outcome ac4_staging() {
  Outcome o;
  StagingStats local, graphs;

  // Every column and marking of the 3-place family, every place annotation,
  // with and without a transition action.
  for_each_dense(3, 1, 2, 2, [&](const DenseNet& d) {
    const PetriNet net = to_petri_net(d);
    if (!oracle_enabled(d, d.m0, 0)) return;
    for (unsigned places = 0; places < 8; ++places) {
      for (unsigned trans = 0; trans < 2; ++trans) {
        for (Policy policy : {Policy::PlaceActions, Policy::PlaceAndTransitionActions}) {
          if (policy == Policy::PlaceActions && trans) continue;
          const EventSystem system(net, annotate(net, places, trans), policy);
          ++local.firings;
          if (std::size_t bad = completion_violations(system, system.initial_state(), TransitionId{0},
                                                      oracle_fire(d, d.m0, 0), local.completions)) {
            local.violations += bad;
            o.fail(std::string(to_string(policy)) + " local " + dense_text(d));
          }
        }
      }
    }
  });

  // Whole event graphs of the 2x2 family under every place annotation, and a
  // seeded 3x3 sample with random annotations.
  for_each_dense(2, 2, 2, 2, [&](const DenseNet& d) {
    const PetriNet net = to_petri_net(d);
    for (unsigned places = 0; places < 4; ++places) {
      const unsigned trans = static_cast<unsigned>(d.pre[0][0] + d.post[1][1]) % 4;
      check_staging_graph(net, annotate(net, places, 0), Policy::PlaceActions, 64, graphs, o);
      check_staging_graph(net, annotate(net, places, trans), Policy::PlaceAndTransitionActions, 64, graphs, o);
    }
  });
  std::mt19937_64 rng(4);
  constexpr std::size_t kSample = 3000;
  for (std::size_t i = 0; i < kSample; ++i) {
    const DenseNet d = uniform_dense(rng, 3, 3, 2, 2);
    const PetriNet net = to_petri_net(d);
    const auto places = static_cast<unsigned>(rng() % 8);
    const auto trans = static_cast<unsigned>(rng() % 8);
    check_staging_graph(net, annotate(net, places, 0), Policy::PlaceActions, 128, graphs, o);
    check_staging_graph(net, annotate(net, places, trans), Policy::PlaceAndTransitionActions, 128, graphs, o);
  }

  std::ostringstream detail;
  detail << local.firings << " exhaustive local firings (" << local.completions << " maximal completions), "
         << graphs.firings << " firings in explored graphs (" << graphs.completions << " completions), "
         << graphs.priority_states << " combined states offering a firing, " << local.violations + graphs.violations
         << " violations";
  o.detail = detail.str();
  return o;
}

// ---------------------------------------------------------------------------
// 5. Coverability

Outcome ac5_coverability() {
  Outcome o;
  const NetDocument source = load_document(kNets / "source.pn");
  const MarkingGraph cg = coverability_graph(source.net, source.net.initial_marking);
  const PlaceId p = source.net.place("p");
  if (!place_bound(cg, p).unbounded()) o.fail("source net: no omega at its output place");

  std::size_t bounded = 0;
  std::size_t skipped = 0;
  auto check = [&](const PetriNet& net, bool with_oracle) {
    const MarkingGraph rg = reachability_graph(net, net.initial_marking, 1000);
    if (!rg.complete) {
      ++skipped;
      return;
    }
    ++bounded;
    const MarkingGraph kg = coverability_graph(net, net.initial_marking);
    std::set<DenseMarking> r, k;
    for (const auto& m : rg.nodes) r.insert(to_dense(m));
    for (const auto& m : kg.nodes) k.insert(to_dense(m));
    if (r != k) o.fail("node sets differ");
    for (std::uint32_t i = 0; i < net.places.size(); ++i) {
      if (!(place_bound(rg, PlaceId{i}) == place_bound(kg, PlaceId{i}))) o.fail("bounds differ");
    }
    if (with_oracle && oracle_reachability(dense_from(net)).markings != r) o.fail("oracle reachable set differs");
  };

  for (const char* name : {"net_b2.pn", "producer_consumer.pn"}) check(load_document(kNets / name).net, true);
  for_each_dense(2, 2, 2, 2, [&](const DenseNet& d) { check(to_petri_net(d), false); });
  for (std::uint64_t seed = 0; seed < 1000; ++seed) check(to_petri_net(random_dense(seed)), true);

  o.detail = "source net reaches omega; " + std::to_string(bounded) +
             " bounded nets with identical node sets and bounds (" + std::to_string(skipped) +
             " nets over 1000 states skipped)";
  return o;
}

// ---------------------------------------------------------------------------
// 6. Emission goldens

std::size_t contract_event_count(const NetDocument& doc, Policy policy) {
  std::set<std::string> place_actions, transition_actions;
  for (const auto& [p, a] : doc.annotations.place_actions) place_actions.insert(a);
  for (const auto& [t, a] : doc.annotations.transition_actions) transition_actions.insert(a);
  switch (policy) {
    case Policy::Basic: return 1;
    case Policy::PlaceActions: return 1 + place_actions.size();
    case Policy::TransitionActions: return 1 + transition_actions.size();
    case Policy::PlaceAndTransitionActions: return 3 + place_actions.size() + transition_actions.size();
  }
  return 0;
}

Outcome ac6_emission() {
  Outcome o;
  const bool update = std::getenv("PETRIFORGE_UPDATE_GOLDEN") != nullptr;
  std::size_t files = 0;
  for (const char* name : {"net_b2", "producer_consumer"}) {
    const NetDocument doc = load_document(kNets / (std::string(name) + ".pn"));
    for (Policy policy : {Policy::Basic, Policy::PlaceActions, Policy::TransitionActions,
                          Policy::PlaceAndTransitionActions}) {
      EmissionConfig cfg;
      cfg.policy = policy;
      const BMachineText text = emit_b(doc, cfg);
      const std::string stem = std::string(name) + "." + std::string(to_string(policy));
      for (const auto& [suffix, body] : {std::pair{".net.sys", &text.static_machine},
                                         std::pair{".embedded.sys", &text.embedded_machine}}) {
        const fs::path path = kGolden / (stem + suffix);
        ++files;
        if (update) write_file(path, *body);
        if (!fs::exists(path) || read_file(path) != *body) o.fail(path.filename().string() + " differs from golden");
        const BCheckResult check = check_b_machine(*body);
        if (!check.ok()) o.fail(path.filename().string() + ": " + check.problems.front());
      }
      const BCheckResult embedded = check_b_machine(text.embedded_machine);
      const std::size_t expected = contract_event_count(doc, policy);
      if (embedded.events.size() != expected || expected_event_count(doc, cfg) != expected) {
        o.fail(stem + ": " + std::to_string(embedded.events.size()) + " events, contract says " +
               std::to_string(expected));
      }
    }
  }
  o.detail = std::to_string(files) + " machines match goldens and pass the clause checker; event counts follow the "
             "policy contract";
  return o;
}

// ---------------------------------------------------------------------------
// 7. Round trips

/// Same document in a non-canonical DSL spelling: comments, CRLF, explicit
/// defaults, arcs in reverse order.
std::string noisy_dsl(const NetDocument& doc) {
  std::ostringstream out;
  out << "# generated\r\n\r\nnet " << doc.name << "   # header\r\n";
  for (std::uint32_t i = 0; i < doc.net.places.size(); ++i) {
    out << "place " << doc.net.places[i] << " tokens=" << doc.net.initial_marking[PlaceId{i}];
    if (auto it = doc.annotations.place_actions.find(PlaceId{i}); it != doc.annotations.place_actions.end()) {
      out << " action=" << it->second;
    }
    out << "\r\n";
  }
  for (std::uint32_t i = 0; i < doc.net.transitions.size(); ++i) {
    out << "  trans\t" << doc.net.transitions[i];
    if (auto it = doc.annotations.transition_actions.find(TransitionId{i});
        it != doc.annotations.transition_actions.end()) {
      out << " action=" << it->second;
    }
    out << "\r\n";
  }
  for (auto it = doc.net.post.rbegin(); it != doc.net.post.rend(); ++it) {
    out << "arc " << doc.net.name(it->first.transition) << " -> " << doc.net.name(it->first.place)
        << " weight=" << it->second << "\r\n";
  }
  for (auto it = doc.net.pre.rbegin(); it != doc.net.pre.rend(); ++it) {
    out << "arc " << doc.net.name(it->first.place) << "->" << doc.net.name(it->first.transition)
        << " weight=" << it->second << "  # input\r\n";
  }
  return out.str();
}

/// Same document as PNML with nested pages, graphics and reversed arcs.
std::string noisy_pnml(const NetDocument& doc) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\"?>\n<pnml><net id=\"" << doc.name << "\" type=\"ptnet\"><name><text>" << doc.name
      << "</text></name><page id=\"outer\"><page id=\"inner\">\n";
  for (std::uint32_t i = 0; i < doc.net.places.size(); ++i) {
    out << "<place id=\"" << doc.net.places[i] << "\"><graphics><position x=\"1\" y=\"2\"/></graphics>"
        << "<initialMarking><text> " << doc.net.initial_marking[PlaceId{i}] << " </text></initialMarking>";
    if (auto it = doc.annotations.place_actions.find(PlaceId{i}); it != doc.annotations.place_actions.end()) {
      out << "<toolspecific tool=\"petriforge\" version=\"1.0\"><action>" << it->second << "</action></toolspecific>";
    }
    out << "</place>\n";
  }
  out << "</page>\n";
  for (std::uint32_t i = 0; i < doc.net.transitions.size(); ++i) {
    out << "<transition id=\"" << doc.net.transitions[i] << "\">";
    if (auto it = doc.annotations.transition_actions.find(TransitionId{i});
        it != doc.annotations.transition_actions.end()) {
      out << "<toolspecific tool=\"other\"><action>ignored</action></toolspecific>"
          << "<toolspecific tool=\"petriforge\" version=\"1.0\"><action>" << it->second << "</action></toolspecific>";
    }
    out << "</transition>\n";
  }
  std::size_t n = 0;
  for (auto it = doc.net.pre.rbegin(); it != doc.net.pre.rend(); ++it) {
    out << "<arc id=\"x" << n++ << "\" source=\"" << doc.net.name(it->first.place) << "\" target=\""
        << doc.net.name(it->first.transition) << "\"><inscription><text>" << it->second
        << "</text></inscription></arc>\n";
  }
  for (auto it = doc.net.post.rbegin(); it != doc.net.post.rend(); ++it) {
    out << "<arc id=\"y" << n++ << "\" source=\"" << doc.net.name(it->first.transition) << "\" target=\""
        << doc.net.name(it->first.place) << "\"><inscription><text>" << it->second
        << "</text></inscription></arc>\n";
  }
  out << "</page></net></pnml>\n";
  return out.str();
}

Outcome ac7_round_trips() {
  Outcome o;
  constexpr std::uint64_t kDocs = 1000;
  std::size_t checks = 0;
  std::size_t failed = 0;
  auto expect = [&](bool ok, const std::string& what, std::uint64_t seed) {
    ++checks;
    if (!ok) {
      ++failed;
      o.fail(what + ", seed " + std::to_string(seed));
    }
  };
  for (std::uint64_t seed = 0; seed < kDocs; ++seed) {
    const NetDocument doc = random_document(seed);
    try {
      const std::string dsl = emit_dsl(doc);
      const NetDocument from_dsl = parse_dsl(dsl);
      expect(from_dsl == doc, "DSL parse(emit(doc)) != doc", seed);
      expect(emit_dsl(from_dsl) == dsl, "DSL emit(parse(text)) not idempotent", seed);

      const NetDocument from_noisy = parse_dsl(noisy_dsl(doc));
      const std::string canonical = emit_dsl(from_noisy);
      expect(from_noisy == doc, "noisy DSL parses to a different document", seed);
      expect(emit_dsl(parse_dsl(canonical)) == canonical, "DSL canonical form not a fixpoint", seed);

      const std::string xml = emit_pnml(doc);
      const NetDocument from_pnml = parse_pnml(xml);
      expect(from_pnml == doc, "PNML parse(emit(doc)) != doc", seed);
      expect(emit_pnml(from_pnml) == xml, "PNML emit(parse(text)) not idempotent", seed);

      const NetDocument from_noisy_xml = parse_pnml(noisy_pnml(doc));
      const std::string canonical_xml = emit_pnml(from_noisy_xml);
      expect(from_noisy_xml == doc, "noisy PNML parses to a different document", seed);
      expect(emit_pnml(parse_pnml(canonical_xml)) == canonical_xml, "PNML canonical form not a fixpoint", seed);
    } catch (const std::exception& e) {
      expect(false, std::string("exception: ") + e.what(), seed);
    }
  }
  o.detail = std::to_string(kDocs) + " random documents, " + std::to_string(checks) + " round-trip checks, " +
             std::to_string(checks - failed) + " passed";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"producer-consumer reproduction", ac1_producer_consumer},
      {"semantics oracle equivalence", ac2_semantics_oracle},
      {"basic-policy embedding fidelity", ac3_basic_embedding},
      {"staging soundness and combined priority", ac4_staging},
      {"coverability correctness", ac5_coverability},
      {"emission regression", ac6_emission},
      {"ingestion round-trips", ac7_round_trips},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::cout << "AC" << i + 1 << ' ' << (o.pass ? "PASS" : "FAIL") << ' ' << criteria[i].first << ": " << o.detail
              << " (" << std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() << " s)\n";
    for (const auto& f : o.failures) std::cout << "    " << f << '\n';
    if (!o.pass) ++failures;
  }
  std::cout.flush();
  return failures ? 1 : 0;
}
