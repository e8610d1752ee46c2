#include "petriforge/b_emitter.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "petriforge/errors.hpp"

namespace petriforge {

namespace {

// Keywords, built-in sets and operators of the B notation, and every name the
// generated machines use for their own sets, variables and bound variables.
const std::set<std::string, std::less<>> kReserved = {
    // B
    "ABSTRACT_CONSTANTS", "ABSTRACT_VARIABLES", "ANY", "ASSERTIONS", "BE", "BEGIN", "BOOL", "CASE", "CHOICE",
    "CONCRETE_CONSTANTS", "CONCRETE_VARIABLES", "CONSTANTS", "CONSTRAINTS", "DEFINITIONS", "DO", "EITHER", "ELSE",
    "ELSIF", "END", "EVENTS", "EXTENDS", "FALSE", "FIN", "FIN1", "IF", "IMPLEMENTATION", "IMPORTS", "IN", "INCLUDES",
    "INITIALISATION", "INT", "INTEGER", "INTER", "INVARIANT", "LET", "LOCAL_OPERATIONS", "MACHINE", "MAXINT", "MININT",
    "NAT", "NAT1", "NATURAL", "NATURAL1", "OF", "OPERATIONS", "OR", "PI", "POW", "POW1", "PRE", "PROMOTES",
    "PROPERTIES", "REFINEMENT", "REFINES", "SEES", "SELECT", "SETS", "SIGMA", "STRING", "SYSTEM", "THEN", "TRUE",
    "UNION", "USES", "VALUES", "VAR", "VARIANT", "VARIABLES", "WHEN", "WHERE", "WHILE", "bool", "card", "closure",
    "closure1", "conc", "dom", "first", "fnc", "front", "id", "inter", "iseq", "iseq1", "iterate", "last", "max",
    "min", "mod", "not", "or", "perm", "prj1", "prj2", "ran", "rank", "rec", "rel", "rev", "seq", "seq1", "size",
    "skip", "struct", "tail", "union",
    // generated machines
    "PLACE", "TRANSITION", "ACTION", "places", "transitions", "placesBefore", "placesAfter", "weightBefore",
    "weightAfter", "mu", "pl_actions", "pl_treatment", "tr_actions", "tr_treatment", "nullaction",
    "guard_P_actions", "trans_places", "enabled_P_actions", "enabled_T_actions", "guard_T_actions", "ti", "pbef",
    "paft", "pbefs", "pdefer", "mupbef", "mupaft", "mupnow", "involved_actions", "pb", "pa", "pp", "tr", "weiga"};

constexpr const char* kIndent1 = "    ";
constexpr const char* kIndent2 = "        ";
constexpr const char* kIndent3 = "            ";

bool uses_place_actions(Policy p) {
  return p == Policy::PlaceActions || p == Policy::PlaceAndTransitionActions;
}

bool uses_transition_actions(Policy p) {
  return p == Policy::TransitionActions || p == Policy::PlaceAndTransitionActions;
}

/// Sanitized identifiers for everything the machines mention.
struct Names {
  std::string static_name;
  std::string embedded_name;
  std::vector<std::string> places;
  std::vector<std::string> transitions;
  ActionTable actions;
  std::vector<std::string> place_actions;       // by ActionId, [0] = nullaction
  std::vector<std::string> transition_actions;  // by ActionId, [0] = nullaction
  std::vector<std::string> action_elements;     // ACTION set, nullaction first
  std::vector<std::string> events;
};

std::string resolve_prefix(const NetDocument& doc, const EmissionConfig& cfg) {
  if (cfg.prefix.empty()) return sanitize_b_identifier(doc.name.empty() ? "net" : doc.name);
  if (!is_b_identifier(cfg.prefix)) throw InvalidConfigError("prefix '" + cfg.prefix + "' is not a B identifier");
  return cfg.prefix;
}

NetAnnotations relevant_annotations(const NetDocument& doc, Policy policy) {
  NetAnnotations ann;
  if (uses_place_actions(policy)) ann.place_actions = doc.annotations.place_actions;
  if (uses_transition_actions(policy)) ann.transition_actions = doc.annotations.transition_actions;
  return ann;
}

std::vector<std::string> event_names(const Names& n, const EmissionConfig& cfg) {
  std::vector<std::string> out;
  const std::string firing = cfg.policy == Policy::Basic ? "event_tr" : "fire_transition";
  if (cfg.expanded) {
    for (const auto& t : n.transitions) out.push_back(firing + "_" + t);
  } else {
    out.push_back(cfg.policy == Policy::Basic ? "event_tr" : "fire_transition_tr");
  }
  switch (cfg.policy) {
    case Policy::Basic:
      break;
    case Policy::PlaceActions:
      for (std::size_t a = 1; a < n.place_actions.size(); ++a) out.push_back("action_" + n.place_actions[a]);
      break;
    case Policy::TransitionActions:
      for (std::size_t a = 1; a < n.transition_actions.size(); ++a) out.push_back("action_" + n.transition_actions[a]);
      break;
    case Policy::PlaceAndTransitionActions:
      out.push_back("enable_transition_action_guard");
      out.push_back("enable_place_action_guard");
      for (std::size_t a = 1; a < n.transition_actions.size(); ++a) {
        out.push_back("launch_transition_action_" + n.transition_actions[a]);
      }
      for (std::size_t a = 1; a < n.place_actions.size(); ++a) {
        out.push_back("launch_place_action_" + n.place_actions[a]);
      }
      break;
  }
  return out;
}

Names resolve_names(const NetDocument& doc, const EmissionConfig& cfg) {
  if (auto report = validate_net(doc.net); !report.ok()) {
    throw InvalidConfigError("invalid net: " + report.issues.front().message);
  }
  Names n;
  const std::string prefix = resolve_prefix(doc, cfg);
  n.static_name = prefix + "_net";
  n.embedded_name = prefix + "_embedded";
  n.actions = build_action_table(doc.net, relevant_annotations(doc, cfg.policy));

  std::map<std::string, std::string, std::less<>> owner;
  auto claim = [&](const std::string& id, const std::string& what) {
    if (kReserved.count(id)) throw NameCollisionError(what + " maps to reserved B name '" + id + "'");
    if (auto [it, fresh] = owner.emplace(id, what); !fresh && it->second != what) {
      throw NameCollisionError(what + " and " + it->second + " both map to B identifier '" + id + "'");
    }
  };

  claim(n.static_name, "machine " + n.static_name);
  claim(n.embedded_name, "machine " + n.embedded_name);
  for (const auto& p : doc.net.places) {
    n.places.push_back(sanitize_b_identifier(p));
    claim(n.places.back(), "place '" + p + "'");
  }
  for (const auto& t : doc.net.transitions) {
    n.transitions.push_back(sanitize_b_identifier(t));
    claim(n.transitions.back(), "transition '" + t + "'");
  }
  n.action_elements.push_back(std::string(kNullAction));
  auto add_actions = [&](const std::vector<std::string>& raw, std::vector<std::string>& out) {
    out.push_back(std::string(kNullAction));
    for (std::size_t a = 1; a < raw.size(); ++a) {
      out.push_back(sanitize_b_identifier(raw[a]));
      claim(out.back(), "action '" + raw[a] + "'");
      if (std::find(n.action_elements.begin(), n.action_elements.end(), out.back()) == n.action_elements.end()) {
        n.action_elements.push_back(out.back());
      }
    }
  };
  add_actions(n.actions.place_actions, n.place_actions);
  add_actions(n.actions.transition_actions, n.transition_actions);

  n.events = event_names(n, cfg);
  for (const auto& e : n.events) claim(e, "event " + e);
  return n;
}

std::string set_literal(const std::vector<std::string>& items) {
  std::string out = "{";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += items[i];
  }
  return out + "}";
}

std::string maplet(const std::string& a, const std::string& b) { return "(" + a + " |-> " + b + ")"; }

/// Writes "name =" blocks separated by ';'.
class EventWriter {
 public:
  explicit EventWriter(std::ostringstream& out) : out_(out) {}

  void begin(const std::string& name) {
    if (count_++) out_ << ";\n";
    out_ << kIndent1 << name << " =\n";
  }

  void conjunction(const std::vector<std::string>& terms) {
    for (std::size_t i = 0; i < terms.size(); ++i) out_ << kIndent3 << (i ? "& " : "") << terms[i] << '\n';
  }

  void substitutions(const std::vector<std::string>& items, const std::string& comment = {}) {
    if (!comment.empty()) out_ << kIndent3 << "/* " << comment << " */\n";
    if (items.empty()) {
      out_ << kIndent3 << "skip\n";
      return;
    }
    for (std::size_t i = 0; i < items.size(); ++i) out_ << kIndent3 << (i ? "|| " : "") << items[i] << '\n';
  }

  void any(const std::vector<std::string>& vars, const std::vector<std::string>& guard,
           const std::vector<std::string>& body, const std::string& comment = {}) {
    out_ << kIndent2 << "ANY " << join(vars) << " WHERE\n";
    conjunction(guard);
    out_ << kIndent2 << "THEN\n";
    substitutions(body, comment);
    out_ << kIndent2 << "END";
  }

  void select(const std::vector<std::string>& guard, const std::vector<std::string>& body,
              const std::string& comment = {}) {
    if (guard.empty()) {
      out_ << kIndent2 << "BEGIN\n";
    } else {
      out_ << kIndent2 << "SELECT\n";
      conjunction(guard);
      out_ << kIndent2 << "THEN\n";
    }
    substitutions(body, comment);
    out_ << kIndent2 << "END";
  }

  void finish() {
    if (count_) out_ << '\n';
  }

 private:
  static std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) out += (i ? ", " : "") + items[i];
    return out;
  }

  std::ostringstream& out_;
  std::size_t count_ = 0;
};

void write_header_comment(std::ostringstream& out, const EmissionConfig& cfg, const std::string& text) {
  if (cfg.comments) out << "/* " << text << " */\n";
}

/// Literal update of mu for the expanded events: inputs of t are consumed,
/// outputs in `immediate` are produced.
std::string literal_marking_update(const NetDocument& doc, const Names& n, TransitionId t,
                                   const std::function<bool(PlaceId)>& immediate) {
  std::map<std::uint32_t, std::pair<Weight, Weight>> delta;
  for (const auto& [p, w] : doc.net.input_arcs(t)) delta[p.index].first += w;
  for (const auto& [p, w] : doc.net.output_arcs(t)) {
    if (immediate(p)) delta[p.index].second += w;
  }
  std::vector<std::string> items;
  for (const auto& [p, d] : delta) {
    std::string expr = "mu(" + n.places[p] + ")";
    if (d.first) expr += " - " + std::to_string(d.first);
    if (d.second) expr += " + " + std::to_string(d.second);
    items.push_back(maplet(n.places[p], expr));
  }
  if (items.empty()) return {};
  return "mu := mu <+ " + set_literal(items);
}

std::vector<std::string> literal_enabling_guard(const NetDocument& doc, const Names& n, TransitionId t) {
  std::vector<std::string> guard;
  for (const auto& [p, w] : doc.net.input_arcs(t)) {
    guard.push_back("mu(" + n.places[p.index] + ") >= " + std::to_string(w));
  }
  return guard;
}

const std::vector<std::string> kQuiescent = {
    "trans_places = {}",
    "(enabled_P_actions |> {TRUE}) = {}",
    "(guard_P_actions |> {TRUE}) <: {nullaction}",
    "(enabled_T_actions |> {TRUE}) = {}",
    "(guard_T_actions |> {TRUE}) = {}",
};

void write_firing_events(EventWriter& w, const NetDocument& doc, const Names& n, const EmissionConfig& cfg) {
  const bool comments = cfg.comments;
  if (!cfg.expanded) {
    const std::vector<std::string> head = {
        "ti : transitions",
        std::string(cfg.policy == Policy::Basic ? "pbef" : "pbefs") + " = placesBefore[{ti}]",
        "paft = placesAfter[{ti}]",
    };
    const std::string pbef = cfg.policy == Policy::Basic ? "pbef" : "pbefs";
    const std::string enabling = "!pb.(pb : " + pbef + " => mu(pb) >= weightBefore(ti, pb))";
    const std::string mupbef = "mupbef = %pb.(pb : " + pbef + " | mu(pb) - weightBefore(ti, pb))";

    switch (cfg.policy) {
      case Policy::Basic: {
        w.begin(n.events[0]);
        auto guard = head;
        guard.push_back(enabling);
        guard.push_back(mupbef);
        guard.push_back("mupaft = %pa.(pa : paft | (mu <+ mupbef)(pa) + weightAfter(ti, pa))");
        guard.push_back("ran(mupaft) <: NAT");
        w.any({"ti", "pbef", "paft", "mupbef", "mupaft"}, guard, {"mu := mu <+ mupbef <+ mupaft"},
              comments ? "inputs and outputs of ti are updated together" : "");
        return;
      }
      case Policy::PlaceActions: {
        w.begin(n.events[0]);
        auto guard = head;
        guard.push_back(enabling);
        guard.push_back("involved_actions = paft <| pl_treatment");
        guard.push_back("pdefer = dom(involved_actions |>> {nullaction})");
        guard.push_back(mupbef);
        guard.push_back("mupnow = %pa.(pa : paft - pdefer | (mu <+ mupbef)(pa) + weightAfter(ti, pa))");
        guard.push_back("ran(mupnow) <: NAT");
        w.any({"ti", "pbefs", "paft", "involved_actions", "pdefer", "mupbef", "mupnow"}, guard,
              {"guard_P_actions := ran(involved_actions) * {TRUE}", "mu := mu <+ mupbef <+ mupnow",
               "trans_places := trans_places \\/ ({ti} * pdefer)"},
              comments ? "raise the involved guards; outputs with actions wait in trans_places" : "");
        return;
      }
      case Policy::TransitionActions: {
        w.begin(n.events[0]);
        auto guard = head;
        guard.push_back(enabling);
        guard.push_back("(enabled_T_actions |> {TRUE}) = {}");
        guard.push_back(mupbef);
        guard.push_back("mupnow : places +-> NAT");
        guard.push_back(
            "(tr_treatment(ti) = nullaction => mupnow = %pa.(pa : paft | (mu <+ mupbef)(pa) + weightAfter(ti, pa)))");
        guard.push_back("(tr_treatment(ti) /= nullaction => mupnow = {})");
        w.any({"ti", "pbefs", "paft", "mupbef", "mupnow"}, guard,
              {"mu := mu <+ mupbef <+ mupnow", "enabled_T_actions(ti) := bool(tr_treatment(ti) /= nullaction)"},
              comments ? "outputs wait for the transition action, if any" : "");
        return;
      }
      case Policy::PlaceAndTransitionActions: {
        w.begin(n.events[0]);
        auto guard = head;
        guard.push_back(enabling);
        guard.insert(guard.end(), kQuiescent.begin(), kQuiescent.end());
        guard.push_back("involved_actions = (paft <| pl_treatment) |>> {nullaction}");
        guard.push_back("pdefer = dom(involved_actions)");
        guard.push_back(mupbef);
        guard.push_back("mupnow = %pa.(pa : paft - pdefer | (mu <+ mupbef)(pa) + weightAfter(ti, pa))");
        guard.push_back("ran(mupnow) <: NAT");
        w.any({"ti", "pbefs", "paft", "involved_actions", "pdefer", "mupbef", "mupnow"}, guard,
              {"enabled_T_actions(ti) := bool(tr_treatment(ti) /= nullaction)",
               "enabled_P_actions := enabled_P_actions <+ (ran(involved_actions) * {TRUE})",
               "mu := mu <+ mupbef <+ mupnow", "trans_places := {ti} * pdefer"},
              comments ? "fires only when no action is staged or running" : "");
        return;
      }
    }
  }

  // Expanded: one event per transition with literal guards and updates.
  const ActionTable& act = n.actions;
  for (std::uint32_t i = 0; i < doc.net.transition_count(); ++i) {
    const TransitionId t{i};
    w.begin(n.events[i]);
    auto guard = literal_enabling_guard(doc, n, t);
    std::vector<std::string> body;
    std::vector<std::string> deferred;
    std::vector<std::string> raised;
    for (const auto& [p, wt] : doc.net.output_arcs(t)) {
      if (act.place_has_action(p)) {
        deferred.push_back(maplet(n.transitions[i], n.places[p.index]));
        raised.push_back(maplet(n.place_actions[act.action_of_place[p.index].index], "TRUE"));
      }
    }
    auto update = [&](const std::function<bool(PlaceId)>& immediate) {
      if (auto u = literal_marking_update(doc, n, t, immediate); !u.empty()) body.push_back(u);
    };

    switch (cfg.policy) {
      case Policy::Basic:
        update([](PlaceId) { return true; });
        break;
      case Policy::PlaceActions: {
        // Same assignment as the quantified event: non-involved guards drop.
        std::vector<std::string> involved;
        for (const auto& [p, wt] : doc.net.output_arcs(t)) {
          const std::string a = n.place_actions[act.action_of_place[p.index].index];
          if (std::find(involved.begin(), involved.end(), maplet(a, "TRUE")) == involved.end()) {
            involved.push_back(maplet(a, "TRUE"));
          }
        }
        body.push_back("guard_P_actions := " + set_literal(involved));
        update([&](PlaceId p) { return !act.place_has_action(p); });
        if (!deferred.empty()) body.push_back("trans_places := trans_places \\/ " + set_literal(deferred));
        break;
      }
      case Policy::TransitionActions:
        guard.push_back("(enabled_T_actions |> {TRUE}) = {}");
        if (act.transition_has_action(t)) {
          update([](PlaceId) { return false; });
          body.push_back("enabled_T_actions(" + n.transitions[i] + ") := TRUE");
        } else {
          update([](PlaceId) { return true; });
        }
        break;
      case Policy::PlaceAndTransitionActions:
        guard.insert(guard.end(), kQuiescent.begin(), kQuiescent.end());
        if (act.transition_has_action(t)) body.push_back("enabled_T_actions(" + n.transitions[i] + ") := TRUE");
        if (!raised.empty()) body.push_back("enabled_P_actions := enabled_P_actions <+ " + set_literal(raised));
        update([&](PlaceId p) { return !act.place_has_action(p); });
        body.push_back("trans_places := " + set_literal(deferred));
        break;
    }
    w.select(guard, body);
  }
}

void write_action_events(EventWriter& w, const Names& n, const EmissionConfig& cfg) {
  const bool comments = cfg.comments;
  std::size_t next_event = cfg.expanded ? n.transitions.size() : 1;
  switch (cfg.policy) {
    case Policy::Basic:
      break;
    case Policy::PlaceActions:
      for (std::size_t a = 1; a < n.place_actions.size(); ++a) {
        const std::string& name = n.place_actions[a];
        w.begin(n.events[next_event++]);
        w.any({"pp", "tr", "weiga"},
              {"pp : places", "pl_treatment(pp) = " + name, "guard_P_actions(" + name + ") = TRUE",
               "(tr |-> pp) : trans_places", "weiga = weightAfter(tr, pp)"},
              {"guard_P_actions(" + name + ") := FALSE", "mu(pp) := mu(pp) + weiga",
               "trans_places := trans_places - {(tr |-> pp)}"},
              comments ? "body of place action " + name : "");
      }
      break;
    case Policy::TransitionActions:
      for (std::size_t a = 1; a < n.transition_actions.size(); ++a) {
        const std::string& name = n.transition_actions[a];
        w.begin(n.events[next_event++]);
        w.any({"tr", "mupaft"},
              {"tr : transitions", "tr_treatment(tr) = " + name, "enabled_T_actions(tr) = TRUE",
               "mupaft = %pa.(pa : placesAfter[{tr}] | mu(pa) + weightAfter(tr, pa))", "ran(mupaft) <: NAT"},
              {"enabled_T_actions(tr) := FALSE", "mu := mu <+ mupaft"},
              comments ? "body of transition action " + name : "");
      }
      break;
    case Policy::PlaceAndTransitionActions:
      w.begin(n.events[next_event++]);
      w.any({"tr"}, {"tr : transitions", "enabled_T_actions(tr) = TRUE"},
            {"guard_T_actions(tr_treatment(tr)) := TRUE", "enabled_T_actions(tr) := FALSE"});
      w.begin(n.events[next_event++]);
      w.any({"tr", "pp"}, {"(tr |-> pp) : trans_places", "enabled_P_actions(pl_treatment(pp)) = TRUE"},
            {"guard_P_actions(pl_treatment(pp)) := TRUE", "enabled_P_actions(pl_treatment(pp)) := FALSE",
             "mu(pp) := mu(pp) + weightAfter(tr, pp)", "trans_places := trans_places - {(tr |-> pp)}"});
      for (std::size_t a = 1; a < n.transition_actions.size(); ++a) {
        const std::string& name = n.transition_actions[a];
        w.begin(n.events[next_event++]);
        w.select({"guard_T_actions(" + name + ") = TRUE"}, {"guard_T_actions(" + name + ") := FALSE"},
                 comments ? "body of transition action " + name : "");
      }
      for (std::size_t a = 1; a < n.place_actions.size(); ++a) {
        const std::string& name = n.place_actions[a];
        w.begin(n.events[next_event++]);
        w.select({"guard_P_actions(" + name + ") = TRUE"}, {"guard_P_actions(" + name + ") := FALSE"},
                 comments ? "body of place action " + name : "");
      }
      break;
  }
}

}  // namespace

bool is_b_identifier(std::string_view text) {
  if (text.empty() || !std::isalpha(static_cast<unsigned char>(text[0]))) return false;
  return std::all_of(text.begin(), text.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

std::string sanitize_b_identifier(std::string_view text) {
  std::string out;
  for (char c : text) out += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
  if (out.empty() || !std::isalpha(static_cast<unsigned char>(out[0]))) out.insert(0, "n");
  return out;
}

std::string emit_static(const NetDocument& doc, const EmissionConfig& cfg) {
  const Names n = resolve_names(doc, cfg);
  const PetriNet& net = doc.net;
  const bool tr_actions = uses_transition_actions(cfg.policy);
  std::ostringstream out;

  write_header_comment(out, cfg, "Structure of net " + doc.name + ", generated by petriforge.");
  out << "SYSTEM\n" << kIndent1 << n.static_name << '\n';

  out << "SETS\n";
  auto set_decl = [&](const char* name, const std::vector<std::string>& items) {
    out << kIndent1 << name;
    if (!items.empty()) out << " = " << set_literal(items);
  };
  set_decl("PLACE", n.places);
  out << ";\n";
  set_decl("TRANSITION", n.transitions);
  out << ";\n";
  set_decl("ACTION", n.action_elements);
  out << '\n';

  out << "VARIABLES\n"
      << kIndent1 << "places, transitions, placesBefore, placesAfter, weightBefore, weightAfter, mu,\n"
      << kIndent1 << "pl_actions, pl_treatment" << (tr_actions ? ", tr_actions, tr_treatment" : "") << '\n';

  out << "INVARIANT\n";
  std::vector<std::string> inv = {
      "places <: PLACE",
      "transitions <: TRANSITION",
      "placesBefore : transitions <-> places",
      "placesAfter : transitions <-> places",
      "placesBefore = dom(weightBefore)",
      "placesAfter = dom(weightAfter)",
      "weightBefore : transitions * places +-> NAT",
      "dom(weightBefore) = placesBefore",
      "weightAfter : transitions * places +-> NAT",
      "dom(weightAfter) = placesAfter",
      "mu : places --> NAT",
      "pl_actions <: ACTION",
      "nullaction : pl_actions",
      "pl_treatment : places --> pl_actions",
      "(pl_treatment |>> {nullaction}) : places >+> pl_actions",
  };
  if (tr_actions) {
    inv.insert(inv.end(), {"tr_actions <: ACTION", "nullaction : tr_actions", "tr_treatment : transitions --> tr_actions"});
  }
  for (std::size_t i = 0; i < inv.size(); ++i) out << kIndent1 << (i ? "& " : "") << inv[i] << '\n';

  std::vector<std::string> before, after, weight_before, weight_after, mu, pl_treatment, tr_treatment;
  for (const auto& [key, w] : net.pre) {
    const std::string pair = maplet(n.transitions[key.transition.index], n.places[key.place.index]);
    before.push_back(pair);
    weight_before.push_back(maplet(pair, std::to_string(w)));
  }
  for (const auto& [key, w] : net.post) {
    const std::string pair = maplet(n.transitions[key.transition.index], n.places[key.place.index]);
    after.push_back(pair);
    weight_after.push_back(maplet(pair, std::to_string(w)));
  }
  for (std::uint32_t i = 0; i < net.place_count(); ++i) {
    mu.push_back(maplet(n.places[i], std::to_string(net.initial_marking[PlaceId{i}])));
    pl_treatment.push_back(maplet(n.places[i], n.place_actions[n.actions.action_of_place[i].index]));
  }
  for (std::uint32_t i = 0; i < net.transition_count(); ++i) {
    tr_treatment.push_back(maplet(n.transitions[i], n.transition_actions[n.actions.action_of_transition[i].index]));
  }

  std::vector<std::string> init = {
      "places := " + set_literal(n.places),
      "transitions := " + set_literal(n.transitions),
      "placesBefore := " + set_literal(before),
      "placesAfter := " + set_literal(after),
      "weightBefore := " + set_literal(weight_before),
      "weightAfter := " + set_literal(weight_after),
      "mu := " + set_literal(mu),
      "pl_actions := " + set_literal(n.place_actions),
      "pl_treatment := " + set_literal(pl_treatment),
  };
  if (tr_actions) {
    init.push_back("tr_actions := " + set_literal(n.transition_actions));
    init.push_back("tr_treatment := " + set_literal(tr_treatment));
  }
  out << "INITIALISATION\n";
  for (std::size_t i = 0; i < init.size(); ++i) out << kIndent1 << (i ? "|| " : "") << init[i] << '\n';
  out << "END\n";
  return out.str();
}

std::string emit_embedded(const NetDocument& doc, const EmissionConfig& cfg) {
  const Names n = resolve_names(doc, cfg);
  std::ostringstream out;
  const bool combined = cfg.policy == Policy::PlaceAndTransitionActions;
  const bool staged_transitions = uses_transition_actions(cfg.policy);

  write_header_comment(out, cfg,
                       "Evolution of net " + doc.name + " under the " + std::string(to_string(cfg.policy)) +
                           " policy, generated by petriforge.");
  write_header_comment(out, cfg, "Each event must preserve the invariant: I & G => [S]I. Proof obligations are not generated.");
  out << "SYSTEM\n" << kIndent1 << n.embedded_name << '\n';
  out << "INCLUDES\n" << kIndent1 << n.static_name << '\n';

  std::vector<std::string> vars = {"guard_P_actions", "trans_places"};
  std::vector<std::string> inv = {"guard_P_actions : pl_actions --> BOOL", "trans_places : transitions <-> places"};
  std::vector<std::string> init = {
      "guard_P_actions := ((pl_actions - {nullaction}) * {FALSE}) \\/ {(nullaction |-> TRUE)}",
      "trans_places := {}"};
  if (combined) {
    vars.push_back("enabled_P_actions");
    inv.push_back("enabled_P_actions : pl_actions --> BOOL");
    init.push_back("enabled_P_actions := pl_actions * {FALSE}");
  }
  if (staged_transitions) {
    vars.push_back("enabled_T_actions");
    inv.push_back("enabled_T_actions : transitions --> BOOL");
    init.push_back("enabled_T_actions := transitions * {FALSE}");
  }
  if (combined) {
    vars.push_back("guard_T_actions");
    inv.push_back("guard_T_actions : tr_actions --> BOOL");
    init.push_back("guard_T_actions := tr_actions * {FALSE}");
  }

  out << "VARIABLES\n" << kIndent1;
  for (std::size_t i = 0; i < vars.size(); ++i) out << (i ? ", " : "") << vars[i];
  out << "\nINVARIANT\n";
  for (std::size_t i = 0; i < inv.size(); ++i) out << kIndent1 << (i ? "& " : "") << inv[i] << '\n';
  out << "INITIALISATION\n";
  for (std::size_t i = 0; i < init.size(); ++i) out << kIndent1 << (i ? "|| " : "") << init[i] << '\n';

  out << "EVENTS\n";
  EventWriter w(out);
  write_firing_events(w, doc, n, cfg);
  write_action_events(w, n, cfg);
  w.finish();
  out << "END\n";
  return out.str();
}

BMachineText emit_b(const NetDocument& doc, const EmissionConfig& cfg) {
  const Names n = resolve_names(doc, cfg);
  return {n.static_name, emit_static(doc, cfg), n.embedded_name, emit_embedded(doc, cfg)};
}

std::size_t expected_event_count(const NetDocument& doc, const EmissionConfig& cfg) {
  return resolve_names(doc, cfg).events.size();
}

}  // namespace petriforge
