#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "petriforge/net.hpp"

namespace petriforge {

// ---------------------------------------------------------------------------
// Plain firing rule

/// True iff every input place of t holds at least the input-arc weight.
/// Throws UnknownIdError.
bool is_enabled(const PetriNet& net, const Marking& m, TransitionId t);

/// Successor marking after firing t. Omega absorbs both subtraction and
/// addition. Throws NotEnabledError naming the short places.
Marking fire(const PetriNet& net, const Marking& m, TransitionId t);

/// Enabled transitions in declaration order.
std::vector<TransitionId> enabled_set(const PetriNet& net, const Marking& m);

// ---------------------------------------------------------------------------
// Guarded-event embedding

enum class Policy { Basic, PlaceActions, TransitionActions, PlaceAndTransitionActions };

std::string_view to_string(Policy policy);
/// Accepts basic, place, transition, combined (and the long enum names).
std::optional<Policy> parse_policy(std::string_view text);

/// Index into ActionTable::place_actions or ActionTable::transition_actions.
/// Index 0 is always the null action.
struct ActionId {
  std::uint32_t index = 0;
  friend auto operator<=>(const ActionId&, const ActionId&) = default;
};

/// Action sets derived from annotations; place actions are numbered in place
/// declaration order, transition actions by first use in transition order.
struct ActionTable {
  std::vector<std::string> place_actions{std::string(kNullAction)};
  std::vector<ActionId> action_of_place;
  std::vector<PlaceId> place_of_action{PlaceId{}};  // entry 0 unused

  std::vector<std::string> transition_actions{std::string(kNullAction)};
  std::vector<ActionId> action_of_transition;

  bool place_has_action(PlaceId p) const { return action_of_place[p.index].index != 0; }
  bool transition_has_action(TransitionId t) const { return action_of_transition[t.index].index != 0; }
  std::size_t place_action_count() const { return place_actions.size() - 1; }
  std::size_t transition_action_count() const { return transition_actions.size() - 1; }
};

/// Throws AnnotationMismatchError when annotations do not fit the net.
ActionTable build_action_table(const PetriNet& net, const NetAnnotations& ann);

namespace events {

/// Atomic firing (basic policy).
struct EventTr {
  TransitionId transition;
  friend auto operator<=>(const EventTr&, const EventTr&) = default;
};

/// First step of a staged firing: consume inputs, stage actions.
struct FireTransition {
  TransitionId transition;
  friend auto operator<=>(const FireTransition&, const FireTransition&) = default;
};

/// Place action completing the pending output (source, place of action).
struct PlaceAction {
  ActionId action;
  TransitionId source;
  friend auto operator<=>(const PlaceAction&, const PlaceAction&) = default;
};

/// Second step of the transition-action policy.
struct TransitionAction {
  TransitionId transition;
  friend auto operator<=>(const TransitionAction&, const TransitionAction&) = default;
};

struct EnableTransitionActionGuard {
  TransitionId transition;
  friend auto operator<=>(const EnableTransitionActionGuard&, const EnableTransitionActionGuard&) = default;
};

struct EnablePlaceActionGuard {
  PlaceId place;
  friend auto operator<=>(const EnablePlaceActionGuard&, const EnablePlaceActionGuard&) = default;
};

struct LaunchTransitionAction {
  ActionId action;
  friend auto operator<=>(const LaunchTransitionAction&, const LaunchTransitionAction&) = default;
};

struct LaunchPlaceAction {
  ActionId action;
  friend auto operator<=>(const LaunchPlaceAction&, const LaunchPlaceAction&) = default;
};

}  // namespace events

using Event = std::variant<events::EventTr, events::FireTransition, events::PlaceAction,
                           events::TransitionAction, events::EnableTransitionActionGuard,
                           events::EnablePlaceActionGuard, events::LaunchTransitionAction,
                           events::LaunchPlaceAction>;

/// True for EventTr and FireTransition.
bool is_firing(const Event& e);
/// The transition fired by a firing event.
std::optional<TransitionId> fired_transition(const Event& e);

struct ActionRecord {
  enum class Source { Place, Transition };
  Source source;
  std::string action;
  friend bool operator==(const ActionRecord&, const ActionRecord&) = default;
};

/// Runtime state of the event system. Field comments give the matching
/// variable of the emitted B machine.
struct EmbeddedState {
  Marking marking;                                         // mu
  std::vector<bool> place_action_guards;                   // guard_P_actions, by place ActionId
  std::vector<bool> staged_place_actions;                  // enabled_P_actions
  std::vector<bool> staged_transitions;                    // enabled_T_actions, by transition
  std::vector<bool> transition_action_guards;              // guard_T_actions, by transition ActionId
  std::set<std::pair<TransitionId, PlaceId>> pending;      // trans_places
  std::vector<ActionRecord> action_log;
  /// Guards found raised when a firing re-assigned them (place policy only).
  std::size_t guard_overwrites = 0;

  /// Equality ignoring the log and diagnostic counters.
  bool same_configuration(const EmbeddedState& other) const;
  /// True when nothing is staged, pending, or raised.
  bool quiescent() const;
};

struct EmbeddedStateHash {
  std::size_t operator()(const EmbeddedState& s) const noexcept;
};

struct SameConfiguration {
  bool operator()(const EmbeddedState& a, const EmbeddedState& b) const { return a.same_configuration(b); }
};

using ActionHook = std::function<void(const ActionRecord&)>;

/// The net's evolution under one policy as a guarded-event system: a set of
/// events, their guards, and their substitutions over EmbeddedState.
class EventSystem {
 public:
  /// Throws AnnotationMismatchError. The basic policy ignores annotations.
  EventSystem(PetriNet net, NetAnnotations annotations, Policy policy, ActionHook hook = {});

  const PetriNet& net() const noexcept { return net_; }
  const NetAnnotations& annotations() const noexcept { return annotations_; }
  Policy policy() const noexcept { return policy_; }
  const ActionTable& actions() const noexcept { return actions_; }

  EmbeddedState initial_state() const;
  EmbeddedState state_at(const Marking& m) const;

  /// Events whose guard holds, in a fixed order: firings by transition, then
  /// staged events.
  std::vector<Event> enabled_events(const EmbeddedState& s) const;
  bool is_enabled(const EmbeddedState& s, const Event& e) const;

  /// Throws EventNotEnabledError.
  EmbeddedState fire(const EmbeddedState& s, const Event& e) const;

  std::string describe(const Event& e) const;
  std::string describe(const EmbeddedState& s) const;

 private:
  bool firing_allowed(const EmbeddedState& s) const;
  void apply_firing(EmbeddedState& s, TransitionId t) const;
  void record(EmbeddedState& s, ActionRecord::Source source, const std::string& action) const;

  PetriNet net_;
  NetAnnotations annotations_;
  Policy policy_;
  ActionTable actions_;
  ActionHook hook_;
  std::vector<std::vector<WeightedPlace>> inputs_;
  std::vector<std::vector<WeightedPlace>> outputs_;
};

EmbeddedState init_embedded(const PetriNet& net, const NetAnnotations& ann, Policy policy);
std::vector<Event> embedded_enabled_events(const PetriNet& net, const NetAnnotations& ann, Policy policy,
                                           const EmbeddedState& s);
EmbeddedState embedded_fire(const PetriNet& net, const NetAnnotations& ann, Policy policy,
                            const EmbeddedState& s, const Event& e);

// ---------------------------------------------------------------------------
// Simulation

enum class StopReason { StepsExhausted, Deadlock, CapacityStop };
std::string_view to_string(StopReason reason);

struct TraceStep {
  Event event;
  EmbeddedState state;
};

struct Trace {
  EmbeddedState initial;
  std::vector<TraceStep> steps;
  StopReason stop = StopReason::StepsExhausted;
};

struct SimulationOptions {
  std::size_t steps = 0;
  std::uint64_t seed = 0;
  std::optional<TokenCount> capacity;
};

/// Random run choosing uniformly among enabled events. A pure function of
/// its arguments.
Trace simulate(const EventSystem& system, const SimulationOptions& options);
Trace simulate(const PetriNet& net, const NetAnnotations& ann, Policy policy, const SimulationOptions& options);

}  // namespace petriforge
