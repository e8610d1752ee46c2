#include "petriforge/net.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "petriforge/errors.hpp"

namespace petriforge {

bool Marking::has_omega() const {
  return std::find(tokens_.begin(), tokens_.end(), kOmega) != tokens_.end();
}

bool Marking::covered_by(const Marking& other) const {
  if (other.size() != size()) return false;
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (tokens_[i] > other.tokens_[i]) return false;
  }
  return true;
}

std::size_t MarkingHash::operator()(const Marking& m) const noexcept {
  // FNV-1a over the token words.
  std::size_t h = 1469598103934665603ull;
  for (TokenCount v : m.values()) {
    h ^= static_cast<std::size_t>(v);
    h *= 1099511628211ull;
  }
  return h;
}

std::optional<PlaceId> PetriNet::find_place(std::string_view name) const {
  auto it = std::find(places.begin(), places.end(), name);
  if (it == places.end()) return std::nullopt;
  return PlaceId{static_cast<std::uint32_t>(it - places.begin())};
}

std::optional<TransitionId> PetriNet::find_transition(std::string_view name) const {
  auto it = std::find(transitions.begin(), transitions.end(), name);
  if (it == transitions.end()) return std::nullopt;
  return TransitionId{static_cast<std::uint32_t>(it - transitions.begin())};
}

PlaceId PetriNet::place(std::string_view name) const {
  if (auto p = find_place(name)) return *p;
  throw UnknownIdError("unknown place '" + std::string(name) + "'");
}

TransitionId PetriNet::transition(std::string_view name) const {
  if (auto t = find_transition(name)) return *t;
  throw UnknownIdError("unknown transition '" + std::string(name) + "'");
}

namespace {

Weight lookup(const WeightMap& map, PlaceId p, TransitionId t) {
  auto it = map.find(ArcKey{t, p});
  return it == map.end() ? 0 : it->second;
}

std::vector<WeightedPlace> arcs_of(const WeightMap& map, TransitionId t) {
  std::vector<WeightedPlace> out;
  for (auto it = map.lower_bound(ArcKey{t, PlaceId{0}});
       it != map.end() && it->first.transition == t; ++it) {
    out.push_back({it->first.place, it->second});
  }
  return out;
}

void require_transition(const PetriNet& net, TransitionId t) {
  if (t.index >= net.transition_count()) {
    throw UnknownIdError("unknown transition index " + std::to_string(t.index));
  }
}

void require_place(const PetriNet& net, PlaceId p) {
  if (p.index >= net.place_count()) {
    throw UnknownIdError("unknown place index " + std::to_string(p.index));
  }
}

std::vector<PlaceId> places_of(const std::vector<WeightedPlace>& arcs) {
  std::vector<PlaceId> out;
  out.reserve(arcs.size());
  for (const auto& a : arcs) {
    if (a.weight > 0) out.push_back(a.place);
  }
  return out;
}

}  // namespace

Weight PetriNet::weight_in(PlaceId p, TransitionId t) const { return lookup(pre, p, t); }
Weight PetriNet::weight_out(PlaceId p, TransitionId t) const { return lookup(post, p, t); }

std::vector<WeightedPlace> PetriNet::input_arcs(TransitionId t) const { return arcs_of(pre, t); }
std::vector<WeightedPlace> PetriNet::output_arcs(TransitionId t) const { return arcs_of(post, t); }

bool ValidationReport::has(ValidationIssue::Kind kind) const {
  return std::any_of(issues.begin(), issues.end(),
                     [kind](const ValidationIssue& i) { return i.kind == kind; });
}

ValidationReport validate_net(const PetriNet& net) {
  using Kind = ValidationIssue::Kind;
  ValidationReport report;
  auto add = [&](Kind kind, std::string subject, std::string message) {
    report.issues.push_back({kind, std::move(subject), std::move(message)});
  };

  std::unordered_set<std::string> place_names;
  for (const auto& name : net.places) {
    if (name.empty()) add(Kind::EmptyName, name, "place with empty name");
    else if (!place_names.insert(name).second) add(Kind::DuplicateName, name, "duplicate place '" + name + "'");
  }
  std::unordered_set<std::string> transition_names;
  for (const auto& name : net.transitions) {
    if (name.empty()) add(Kind::EmptyName, name, "transition with empty name");
    else if (!transition_names.insert(name).second) add(Kind::DuplicateName, name, "duplicate transition '" + name + "'");
    if (place_names.count(name)) {
      add(Kind::PlaceTransitionClash, name, "'" + name + "' names both a place and a transition");
    }
  }

  auto check_arcs = [&](const WeightMap& map, const char* which) {
    for (const auto& [key, weight] : map) {
      std::string subject = std::string(which) + "(" +
                            (key.place.index < net.place_count() ? net.places[key.place.index] : "#" + std::to_string(key.place.index)) +
                            "," +
                            (key.transition.index < net.transition_count() ? net.transitions[key.transition.index] : "#" + std::to_string(key.transition.index)) +
                            ")";
      if (key.place.index >= net.place_count()) add(Kind::UnknownPlace, subject, "arc references an undeclared place");
      if (key.transition.index >= net.transition_count()) add(Kind::UnknownTransition, subject, "arc references an undeclared transition");
      if (weight == 0) add(Kind::ZeroWeight, subject, "stored arc weight must be at least 1");
    }
  };
  check_arcs(net.pre, "pre");
  check_arcs(net.post, "post");

  if (net.initial_marking.size() != net.place_count()) {
    add(Kind::MarkingNotTotal, "initial_marking",
        "initial marking covers " + std::to_string(net.initial_marking.size()) + " places, net has " +
            std::to_string(net.place_count()));
  } else if (net.initial_marking.has_omega()) {
    add(Kind::OmegaInMarking, "initial_marking", "initial marking may not contain omega");
  }
  return report;
}

std::vector<std::string> annotation_problems(const PetriNet& net, const NetAnnotations& ann) {
  std::vector<std::string> problems;
  std::map<std::string, std::string> owner;
  for (const auto& [p, action] : ann.place_actions) {
    if (p.index >= net.place_count()) {
      problems.push_back("place action '" + action + "' attached to unknown place #" + std::to_string(p.index));
      continue;
    }
    const auto& pname = net.places[p.index];
    if (action.empty()) problems.push_back("place '" + pname + "' has an empty action name");
    else if (action == kNullAction) problems.push_back("place '" + pname + "' uses the reserved action name nullaction");
    else if (auto [it, fresh] = owner.emplace(action, pname); !fresh) {
      problems.push_back("place action '" + action + "' attached to both '" + it->second + "' and '" + pname + "'");
    }
  }
  for (const auto& [t, action] : ann.transition_actions) {
    if (t.index >= net.transition_count()) {
      problems.push_back("transition action '" + action + "' attached to unknown transition #" + std::to_string(t.index));
      continue;
    }
    const auto& tname = net.transitions[t.index];
    if (action.empty()) problems.push_back("transition '" + tname + "' has an empty action name");
    else if (action == kNullAction) problems.push_back("transition '" + tname + "' uses the reserved action name nullaction");
  }
  return problems;
}

std::vector<PlaceId> input_places(const PetriNet& net, TransitionId t) {
  require_transition(net, t);
  return places_of(net.input_arcs(t));
}

std::vector<PlaceId> output_places(const PetriNet& net, TransitionId t) {
  require_transition(net, t);
  return places_of(net.output_arcs(t));
}

std::vector<TransitionId> transitions_of_place(const PetriNet& net, PlaceId p) {
  require_place(net, p);
  std::set<TransitionId> found;
  for (const auto& [key, weight] : net.pre) {
    if (key.place == p && weight > 0) found.insert(key.transition);
  }
  return {found.begin(), found.end()};
}

PlaceId NetBuilder::place(std::string name, TokenCount tokens) {
  net_.places.push_back(std::move(name));
  tokens_.push_back(tokens);
  return PlaceId{static_cast<std::uint32_t>(net_.places.size() - 1)};
}

TransitionId NetBuilder::transition(std::string name) {
  net_.transitions.push_back(std::move(name));
  return TransitionId{static_cast<std::uint32_t>(net_.transitions.size() - 1)};
}

NetBuilder& NetBuilder::input(PlaceId p, TransitionId t, Weight w) {
  net_.pre[ArcKey{t, p}] = w;
  return *this;
}

NetBuilder& NetBuilder::output(TransitionId t, PlaceId p, Weight w) {
  net_.post[ArcKey{t, p}] = w;
  return *this;
}

PetriNet NetBuilder::build() const {
  PetriNet net = net_;
  net.initial_marking = Marking(tokens_);
  auto report = validate_net(net);
  if (!report.ok()) throw std::invalid_argument("invalid net: " + report.issues.front().message);
  return net;
}

}  // namespace petriforge
