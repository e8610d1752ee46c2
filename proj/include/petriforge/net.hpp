#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace petriforge {

using TokenCount = std::uint64_t;
using Weight = std::uint64_t;

/// Distinguished token value standing for "arbitrarily many". Only markings
/// produced by coverability analysis carry it.
inline constexpr TokenCount kOmega = std::numeric_limits<TokenCount>::max();

inline constexpr std::string_view kNullAction = "nullaction";

struct PlaceId {
  std::uint32_t index = 0;
  friend auto operator<=>(const PlaceId&, const PlaceId&) = default;
};

struct TransitionId {
  std::uint32_t index = 0;
  friend auto operator<=>(const TransitionId&, const TransitionId&) = default;
};

/// Token count for every place of a net, indexed by declaration order.
class Marking {
 public:
  Marking() = default;
  explicit Marking(std::size_t place_count) : tokens_(place_count, 0) {}
  explicit Marking(std::vector<TokenCount> tokens) : tokens_(std::move(tokens)) {}

  TokenCount operator[](PlaceId p) const { return tokens_.at(p.index); }
  TokenCount& operator[](PlaceId p) { return tokens_.at(p.index); }

  std::size_t size() const noexcept { return tokens_.size(); }
  std::span<const TokenCount> values() const noexcept { return tokens_; }

  bool has_omega() const;

  /// Coordinatewise comparison with omega above every natural.
  bool covered_by(const Marking& other) const;

  friend bool operator==(const Marking&, const Marking&) = default;

 private:
  std::vector<TokenCount> tokens_;
};

struct MarkingHash {
  std::size_t operator()(const Marking& m) const noexcept;
};

/// Key of an arc between a transition and a place. Ordered by transition
/// first so that all arcs of one transition form a contiguous range.
struct ArcKey {
  TransitionId transition;
  PlaceId place;
  friend auto operator<=>(const ArcKey&, const ArcKey&) = default;
};

/// Sparse weight function; a missing key means weight 0 (no arc).
using WeightMap = std::map<ArcKey, Weight>;

struct WeightedPlace {
  PlaceId place;
  Weight weight;
  friend bool operator==(const WeightedPlace&, const WeightedPlace&) = default;
};

/// A place/transition net with its initial marking.
///
/// Plain data: a default-constructed or hand-assembled net may violate the
/// model invariants, which validate_net() reports. Everything else assumes a
/// valid net.
struct PetriNet {
  std::vector<std::string> places;
  std::vector<std::string> transitions;
  WeightMap pre;   // place -> transition arcs
  WeightMap post;  // transition -> place arcs
  Marking initial_marking;

  std::size_t place_count() const noexcept { return places.size(); }
  std::size_t transition_count() const noexcept { return transitions.size(); }

  std::optional<PlaceId> find_place(std::string_view name) const;
  std::optional<TransitionId> find_transition(std::string_view name) const;
  /// Throws UnknownIdError.
  PlaceId place(std::string_view name) const;
  TransitionId transition(std::string_view name) const;

  const std::string& name(PlaceId p) const { return places.at(p.index); }
  const std::string& name(TransitionId t) const { return transitions.at(t.index); }

  Weight weight_in(PlaceId p, TransitionId t) const;
  Weight weight_out(PlaceId p, TransitionId t) const;

  /// Input / output arcs of t in place declaration order.
  std::vector<WeightedPlace> input_arcs(TransitionId t) const;
  std::vector<WeightedPlace> output_arcs(TransitionId t) const;

  friend bool operator==(const PetriNet&, const PetriNet&) = default;
};

/// Optional action labels. Places and transitions without an entry carry the
/// implicit null action.
struct NetAnnotations {
  std::map<PlaceId, std::string> place_actions;
  std::map<TransitionId, std::string> transition_actions;

  bool empty() const noexcept { return place_actions.empty() && transition_actions.empty(); }
  friend bool operator==(const NetAnnotations&, const NetAnnotations&) = default;
};

struct ValidationIssue {
  enum class Kind {
    EmptyName,
    DuplicateName,
    PlaceTransitionClash,
    UnknownPlace,
    UnknownTransition,
    ZeroWeight,
    MarkingNotTotal,
    OmegaInMarking,
  };

  Kind kind;
  std::string subject;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  bool ok() const noexcept { return issues.empty(); }
  bool has(ValidationIssue::Kind kind) const;
};

ValidationReport validate_net(const PetriNet& net);

/// Problems with annotations against a net: unknown ids, reserved or empty
/// action names, place actions that are not injective.
std::vector<std::string> annotation_problems(const PetriNet& net, const NetAnnotations& ann);

/// Places p with pre(p, t) > 0, in declaration order. Throws UnknownIdError.
std::vector<PlaceId> input_places(const PetriNet& net, TransitionId t);
/// Places p with post(p, t) > 0, in declaration order.
std::vector<PlaceId> output_places(const PetriNet& net, TransitionId t);
/// Transitions consuming from p, in declaration order.
std::vector<TransitionId> transitions_of_place(const PetriNet& net, PlaceId p);

/// Incremental construction of valid nets.
class NetBuilder {
 public:
  PlaceId place(std::string name, TokenCount tokens = 0);
  TransitionId transition(std::string name);
  NetBuilder& input(PlaceId p, TransitionId t, Weight w = 1);
  NetBuilder& output(TransitionId t, PlaceId p, Weight w = 1);

  /// Throws std::invalid_argument if the result fails validation.
  PetriNet build() const;

 private:
  PetriNet net_;
  std::vector<TokenCount> tokens_;
};

}  // namespace petriforge

template <>
struct std::hash<petriforge::PlaceId> {
  std::size_t operator()(petriforge::PlaceId p) const noexcept { return p.index; }
};

template <>
struct std::hash<petriforge::TransitionId> {
  std::size_t operator()(petriforge::TransitionId t) const noexcept { return t.index; }
};
