#include "petriforge/semantics.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

#include "petriforge/errors.hpp"

namespace petriforge {

namespace {

void add_tokens(TokenCount& value, Weight w) {
  if (value == kOmega) return;
  if (w >= kOmega - value) throw std::overflow_error("token count overflow");
  value += w;
}

void remove_tokens(TokenCount& value, Weight w) {
  if (value == kOmega) return;
  value -= w;
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2));
}

}  // namespace

bool is_enabled(const PetriNet& net, const Marking& m, TransitionId t) {
  if (t.index >= net.transition_count()) {
    throw UnknownIdError("unknown transition index " + std::to_string(t.index));
  }
  for (const auto& [p, w] : net.input_arcs(t)) {
    if (m[p] < w) return false;
  }
  return true;
}

Marking fire(const PetriNet& net, const Marking& m, TransitionId t) {
  if (!is_enabled(net, m, t)) {
    std::string detail;
    for (const auto& [p, w] : net.input_arcs(t)) {
      if (m[p] < w) {
        if (!detail.empty()) detail += ", ";
        detail += net.name(p) + " has " + std::to_string(m[p]) + ", needs " + std::to_string(w);
      }
    }
    throw NotEnabledError("transition '" + net.name(t) + "' is not enabled: " + detail);
  }
  Marking next = m;
  for (const auto& [p, w] : net.input_arcs(t)) remove_tokens(next[p], w);
  for (const auto& [p, w] : net.output_arcs(t)) add_tokens(next[p], w);
  return next;
}

std::vector<TransitionId> enabled_set(const PetriNet& net, const Marking& m) {
  std::vector<TransitionId> out;
  for (std::uint32_t i = 0; i < net.transition_count(); ++i) {
    if (is_enabled(net, m, TransitionId{i})) out.push_back(TransitionId{i});
  }
  return out;
}

std::string_view to_string(Policy policy) {
  switch (policy) {
    case Policy::Basic: return "basic";
    case Policy::PlaceActions: return "place-actions";
    case Policy::TransitionActions: return "transition-actions";
    case Policy::PlaceAndTransitionActions: return "combined";
  }
  return "?";
}

std::optional<Policy> parse_policy(std::string_view text) {
  if (text == "basic" || text == "Basic") return Policy::Basic;
  if (text == "place" || text == "place-actions" || text == "PlaceActions") return Policy::PlaceActions;
  if (text == "transition" || text == "transition-actions" || text == "TransitionActions") {
    return Policy::TransitionActions;
  }
  if (text == "combined" || text == "place-and-transition-actions" || text == "PlaceAndTransitionActions") {
    return Policy::PlaceAndTransitionActions;
  }
  return std::nullopt;
}

ActionTable build_action_table(const PetriNet& net, const NetAnnotations& ann) {
  auto problems = annotation_problems(net, ann);
  if (!problems.empty()) throw AnnotationMismatchError(problems.front());

  ActionTable table;
  table.action_of_place.assign(net.place_count(), ActionId{0});
  for (std::uint32_t i = 0; i < net.place_count(); ++i) {
    auto it = ann.place_actions.find(PlaceId{i});
    if (it == ann.place_actions.end()) continue;
    table.action_of_place[i] = ActionId{static_cast<std::uint32_t>(table.place_actions.size())};
    table.place_actions.push_back(it->second);
    table.place_of_action.push_back(PlaceId{i});
  }
  table.action_of_transition.assign(net.transition_count(), ActionId{0});
  for (std::uint32_t i = 0; i < net.transition_count(); ++i) {
    auto it = ann.transition_actions.find(TransitionId{i});
    if (it == ann.transition_actions.end()) continue;
    auto known = std::find(table.transition_actions.begin(), table.transition_actions.end(), it->second);
    if (known == table.transition_actions.end()) {
      table.action_of_transition[i] = ActionId{static_cast<std::uint32_t>(table.transition_actions.size())};
      table.transition_actions.push_back(it->second);
    } else {
      table.action_of_transition[i] =
          ActionId{static_cast<std::uint32_t>(known - table.transition_actions.begin())};
    }
  }
  return table;
}

bool is_firing(const Event& e) {
  return std::holds_alternative<events::EventTr>(e) || std::holds_alternative<events::FireTransition>(e);
}

std::optional<TransitionId> fired_transition(const Event& e) {
  if (auto* a = std::get_if<events::EventTr>(&e)) return a->transition;
  if (auto* b = std::get_if<events::FireTransition>(&e)) return b->transition;
  return std::nullopt;
}

bool EmbeddedState::same_configuration(const EmbeddedState& other) const {
  return marking == other.marking && place_action_guards == other.place_action_guards &&
         staged_place_actions == other.staged_place_actions && staged_transitions == other.staged_transitions &&
         transition_action_guards == other.transition_action_guards && pending == other.pending;
}

bool EmbeddedState::quiescent() const {
  auto none = [](const std::vector<bool>& v, std::size_t from) {
    return std::find(v.begin() + static_cast<std::ptrdiff_t>(std::min(from, v.size())), v.end(), true) == v.end();
  };
  return pending.empty() && none(place_action_guards, 1) && none(staged_place_actions, 0) &&
         none(staged_transitions, 0) && none(transition_action_guards, 0);
}

std::size_t EmbeddedStateHash::operator()(const EmbeddedState& s) const noexcept {
  std::size_t h = MarkingHash{}(s.marking);
  std::hash<std::vector<bool>> bits;
  h = mix(h, bits(s.place_action_guards));
  h = mix(h, bits(s.staged_place_actions));
  h = mix(h, bits(s.staged_transitions));
  h = mix(h, bits(s.transition_action_guards));
  for (const auto& [t, p] : s.pending) h = mix(h, (std::size_t{t.index} << 32) | p.index);
  return h;
}

EventSystem::EventSystem(PetriNet net, NetAnnotations annotations, Policy policy, ActionHook hook)
    : net_(std::move(net)), annotations_(std::move(annotations)), policy_(policy), hook_(std::move(hook)) {
  if (auto report = validate_net(net_); !report.ok()) {
    throw std::invalid_argument("invalid net: " + report.issues.front().message);
  }
  actions_ = build_action_table(net_, policy_ == Policy::Basic ? NetAnnotations{} : annotations_);
  for (std::uint32_t i = 0; i < net_.transition_count(); ++i) {
    inputs_.push_back(net_.input_arcs(TransitionId{i}));
    outputs_.push_back(net_.output_arcs(TransitionId{i}));
  }
}

EmbeddedState EventSystem::initial_state() const { return state_at(net_.initial_marking); }

EmbeddedState EventSystem::state_at(const Marking& m) const {
  EmbeddedState s;
  s.marking = m;
  s.place_action_guards.assign(actions_.place_actions.size(), false);
  s.place_action_guards[0] = true;
  s.staged_place_actions.assign(actions_.place_actions.size(), false);
  s.staged_transitions.assign(net_.transition_count(), false);
  s.transition_action_guards.assign(actions_.transition_actions.size(), false);
  return s;
}

bool EventSystem::firing_allowed(const EmbeddedState& s) const {
  switch (policy_) {
    case Policy::Basic:
    case Policy::PlaceActions:
      return true;
    case Policy::TransitionActions:
      return std::find(s.staged_transitions.begin(), s.staged_transitions.end(), true) == s.staged_transitions.end();
    case Policy::PlaceAndTransitionActions:
      return s.quiescent();
  }
  return false;
}

std::vector<Event> EventSystem::enabled_events(const EmbeddedState& s) const {
  std::vector<Event> out;
  if (firing_allowed(s)) {
    for (std::uint32_t i = 0; i < net_.transition_count(); ++i) {
      const TransitionId t{i};
      bool ok = std::all_of(inputs_[i].begin(), inputs_[i].end(),
                            [&](const WeightedPlace& a) { return s.marking[a.place] >= a.weight; });
      if (!ok) continue;
      if (policy_ == Policy::Basic) out.emplace_back(events::EventTr{t});
      else out.emplace_back(events::FireTransition{t});
    }
  }

  switch (policy_) {
    case Policy::Basic:
      break;
    case Policy::PlaceActions:
      for (const auto& [t, p] : s.pending) {
        ActionId a = actions_.action_of_place[p.index];
        if (s.place_action_guards[a.index]) out.emplace_back(events::PlaceAction{a, t});
      }
      break;
    case Policy::TransitionActions:
      for (std::uint32_t i = 0; i < net_.transition_count(); ++i) {
        if (s.staged_transitions[i]) out.emplace_back(events::TransitionAction{TransitionId{i}});
      }
      break;
    case Policy::PlaceAndTransitionActions:
      for (std::uint32_t i = 0; i < net_.transition_count(); ++i) {
        if (s.staged_transitions[i]) out.emplace_back(events::EnableTransitionActionGuard{TransitionId{i}});
      }
      for (const auto& [t, p] : s.pending) {
        if (s.staged_place_actions[actions_.action_of_place[p.index].index]) {
          out.emplace_back(events::EnablePlaceActionGuard{p});
        }
      }
      for (std::uint32_t a = 1; a < s.transition_action_guards.size(); ++a) {
        if (s.transition_action_guards[a]) out.emplace_back(events::LaunchTransitionAction{ActionId{a}});
      }
      for (std::uint32_t a = 1; a < s.place_action_guards.size(); ++a) {
        if (s.place_action_guards[a]) out.emplace_back(events::LaunchPlaceAction{ActionId{a}});
      }
      break;
  }
  return out;
}

bool EventSystem::is_enabled(const EmbeddedState& s, const Event& e) const {
  auto all = enabled_events(s);
  return std::find(all.begin(), all.end(), e) != all.end();
}

void EventSystem::record(EmbeddedState& s, ActionRecord::Source source, const std::string& action) const {
  s.action_log.push_back({source, action});
  if (hook_) hook_(s.action_log.back());
}

void EventSystem::apply_firing(EmbeddedState& s, TransitionId t) const {
  for (const auto& [p, w] : inputs_[t.index]) remove_tokens(s.marking[p], w);

  switch (policy_) {
    case Policy::Basic:
      for (const auto& [p, w] : outputs_[t.index]) add_tokens(s.marking[p], w);
      break;

    case Policy::PlaceActions:
      // Guards are assigned wholesale: raised guards of earlier firings drop.
      for (std::size_t a = 1; a < s.place_action_guards.size(); ++a) {
        if (s.place_action_guards[a]) ++s.guard_overwrites;
        s.place_action_guards[a] = false;
      }
      for (const auto& [p, w] : outputs_[t.index]) {
        if (actions_.place_has_action(p)) {
          s.place_action_guards[actions_.action_of_place[p.index].index] = true;
          s.pending.insert({t, p});
        } else {
          add_tokens(s.marking[p], w);
        }
      }
      break;

    case Policy::TransitionActions:
      if (actions_.transition_has_action(t)) {
        s.staged_transitions[t.index] = true;
      } else {
        for (const auto& [p, w] : outputs_[t.index]) add_tokens(s.marking[p], w);
      }
      break;

    case Policy::PlaceAndTransitionActions:
      // The priority guard makes assignment and override coincide here.
      assert(s.pending.empty());
      assert(std::find(s.staged_place_actions.begin(), s.staged_place_actions.end(), true) ==
             s.staged_place_actions.end());
      if (actions_.transition_has_action(t)) s.staged_transitions[t.index] = true;
      for (const auto& [p, w] : outputs_[t.index]) {
        if (actions_.place_has_action(p)) {
          s.staged_place_actions[actions_.action_of_place[p.index].index] = true;
          s.pending.insert({t, p});
        } else {
          add_tokens(s.marking[p], w);
        }
      }
      break;
  }
}

EmbeddedState EventSystem::fire(const EmbeddedState& s, const Event& e) const {
  if (!is_enabled(s, e)) throw EventNotEnabledError("event " + describe(e) + " is not enabled");

  EmbeddedState next = s;
  std::visit(
      Overloaded{
          [&](const events::EventTr& ev) { apply_firing(next, ev.transition); },
          [&](const events::FireTransition& ev) { apply_firing(next, ev.transition); },
          [&](const events::PlaceAction& ev) {
            const PlaceId p = actions_.place_of_action[ev.action.index];
            record(next, ActionRecord::Source::Place, actions_.place_actions[ev.action.index]);
            next.place_action_guards[ev.action.index] = false;
            add_tokens(next.marking[p], net_.weight_out(p, ev.source));
            next.pending.erase({ev.source, p});
          },
          [&](const events::TransitionAction& ev) {
            const TransitionId t = ev.transition;
            record(next, ActionRecord::Source::Transition,
                   actions_.transition_actions[actions_.action_of_transition[t.index].index]);
            next.staged_transitions[t.index] = false;
            for (const auto& [p, w] : outputs_[t.index]) add_tokens(next.marking[p], w);
          },
          [&](const events::EnableTransitionActionGuard& ev) {
            next.transition_action_guards[actions_.action_of_transition[ev.transition.index].index] = true;
            next.staged_transitions[ev.transition.index] = false;
          },
          [&](const events::EnablePlaceActionGuard& ev) {
            auto it = std::find_if(next.pending.begin(), next.pending.end(),
                                   [&](const auto& pair) { return pair.second == ev.place; });
            const TransitionId source = it->first;
            const ActionId a = actions_.action_of_place[ev.place.index];
            next.place_action_guards[a.index] = true;
            next.staged_place_actions[a.index] = false;
            add_tokens(next.marking[ev.place], net_.weight_out(ev.place, source));
            next.pending.erase(it);
          },
          [&](const events::LaunchTransitionAction& ev) {
            record(next, ActionRecord::Source::Transition, actions_.transition_actions[ev.action.index]);
            next.transition_action_guards[ev.action.index] = false;
          },
          [&](const events::LaunchPlaceAction& ev) {
            record(next, ActionRecord::Source::Place, actions_.place_actions[ev.action.index]);
            next.place_action_guards[ev.action.index] = false;
          },
      },
      e);
  return next;
}

std::string EventSystem::describe(const Event& e) const {
  return std::visit(
      Overloaded{
          [&](const events::EventTr& ev) { return "EventTr(" + net_.name(ev.transition) + ")"; },
          [&](const events::FireTransition& ev) { return "FireTransition(" + net_.name(ev.transition) + ")"; },
          [&](const events::PlaceAction& ev) {
            return "PlaceAction(" + actions_.place_actions[ev.action.index] + "," + net_.name(ev.source) + ")";
          },
          [&](const events::TransitionAction& ev) { return "TransitionAction(" + net_.name(ev.transition) + ")"; },
          [&](const events::EnableTransitionActionGuard& ev) {
            return "EnableTransitionActionGuard(" + net_.name(ev.transition) + ")";
          },
          [&](const events::EnablePlaceActionGuard& ev) {
            return "EnablePlaceActionGuard(" + net_.name(ev.place) + ")";
          },
          [&](const events::LaunchTransitionAction& ev) {
            return "LaunchTransitionAction(" + actions_.transition_actions[ev.action.index] + ")";
          },
          [&](const events::LaunchPlaceAction& ev) {
            return "LaunchPlaceAction(" + actions_.place_actions[ev.action.index] + ")";
          },
      },
      e);
}

std::string EventSystem::describe(const EmbeddedState& s) const {
  std::string out;
  for (std::uint32_t i = 0; i < net_.place_count(); ++i) {
    if (i) out += ' ';
    out += net_.places[i] + "=";
    TokenCount v = s.marking[PlaceId{i}];
    out += v == kOmega ? std::string("w") : std::to_string(v);
  }
  auto list = [&](const char* label, const std::vector<bool>& bits, const std::vector<std::string>& names,
                  std::size_t from) {
    std::string items;
    for (std::size_t i = from; i < bits.size(); ++i) {
      if (!bits[i]) continue;
      if (!items.empty()) items += ',';
      items += names[i];
    }
    if (!items.empty()) out += std::string(" ") + label + "={" + items + "}";
  };
  if (!s.pending.empty()) {
    out += " pending={";
    bool first = true;
    for (const auto& [t, p] : s.pending) {
      if (!first) out += ',';
      first = false;
      out += "(" + net_.name(t) + "," + net_.name(p) + ")";
    }
    out += "}";
  }
  list("staged_places", s.staged_place_actions, actions_.place_actions, 1);
  list("place_guards", s.place_action_guards, actions_.place_actions, 1);
  list("staged_transitions", s.staged_transitions, net_.transitions, 0);
  list("transition_guards", s.transition_action_guards, actions_.transition_actions, 1);
  return out;
}

EmbeddedState init_embedded(const PetriNet& net, const NetAnnotations& ann, Policy policy) {
  return EventSystem(net, ann, policy).initial_state();
}

std::vector<Event> embedded_enabled_events(const PetriNet& net, const NetAnnotations& ann, Policy policy,
                                           const EmbeddedState& s) {
  return EventSystem(net, ann, policy).enabled_events(s);
}

EmbeddedState embedded_fire(const PetriNet& net, const NetAnnotations& ann, Policy policy,
                            const EmbeddedState& s, const Event& e) {
  return EventSystem(net, ann, policy).fire(s, e);
}

}  // namespace petriforge
