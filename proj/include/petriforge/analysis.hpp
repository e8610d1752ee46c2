#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "petriforge/errors.hpp"
#include "petriforge/net.hpp"
#include "petriforge/semantics.hpp"

namespace petriforge {

inline constexpr std::size_t kDefaultNodeLimit = 1'000'000;

/// Reachability-style graph. Nodes are numbered in breadth-first discovery
/// order; edges of a node are contiguous and follow the enabled-event order.
template <class Node, class Label>
struct StateGraph {
  struct Edge {
    std::size_t source;
    Label label;
    std::size_t target;
  };

  std::vector<Node> nodes;
  std::vector<Edge> edges;
  /// Edge through which each node was first discovered (none for the root).
  std::vector<std::optional<std::size_t>> parent_edge;
  std::size_t root = 0;
  /// False when a limit stopped construction before the frontier emptied.
  bool complete = true;

  std::vector<std::size_t> out_degrees() const {
    std::vector<std::size_t> deg(nodes.size(), 0);
    for (const auto& e : edges) ++deg[e.source];
    return deg;
  }

  /// Edge indices from the root to node.
  std::vector<std::size_t> path_to(std::size_t node) const {
    std::vector<std::size_t> path;
    while (parent_edge[node]) {
      path.push_back(*parent_edge[node]);
      node = edges[*parent_edge[node]].source;
    }
    return {path.rbegin(), path.rend()};
  }
};

using MarkingGraph = StateGraph<Marking, TransitionId>;
using EmbeddedGraph = StateGraph<EmbeddedState, Event>;

inline const Marking& marking_of(const Marking& m) { return m; }
inline const Marking& marking_of(const EmbeddedState& s) { return s.marking; }

struct ExploreOptions {
  std::size_t node_limit = kDefaultNodeLimit;
  /// Maximum distance from the root that is expanded.
  std::size_t depth_limit = static_cast<std::size_t>(-1);
  /// Worker threads for successor computation; results do not depend on it.
  unsigned threads = 1;
};

/// Breadth-first occurrence graph from m0 under the plain firing rule.
MarkingGraph reachability_graph(const PetriNet& net, const Marking& m0, const ExploreOptions& options = {});
MarkingGraph reachability_graph(const PetriNet& net, const Marking& m0, std::size_t node_limit);

/// Karp-Miller coverability graph. Always complete.
MarkingGraph coverability_graph(const PetriNet& net, const Marking& m0);

/// Breadth-first graph of the event system; node identity ignores the action
/// log.
EmbeddedGraph explore_embedded(const EventSystem& system, const ExploreOptions& options = {});
EmbeddedGraph explore_embedded(const PetriNet& net, const NetAnnotations& ann, Policy policy, std::size_t depth,
                               std::size_t node_limit);

// ---------------------------------------------------------------------------
// Properties

struct PlaceBound {
  std::optional<TokenCount> tokens;  // empty: unbounded
  bool unbounded() const noexcept { return !tokens; }
  friend bool operator==(const PlaceBound&, const PlaceBound&) = default;
};

template <class Node, class Label>
PlaceBound place_bound(const StateGraph<Node, Label>& g, PlaceId p) {
  if (!g.complete) throw IncompleteGraphError("place bound needs a complete graph");
  TokenCount best = 0;
  for (const auto& node : g.nodes) {
    TokenCount v = marking_of(node)[p];
    if (v == kOmega) return PlaceBound{std::nullopt};
    best = std::max(best, v);
  }
  return PlaceBound{best};
}

/// Nodes without successors.
template <class Node, class Label>
std::vector<std::size_t> deadlock_states(const StateGraph<Node, Label>& g) {
  if (!g.complete) throw IncompleteGraphError("deadlock detection needs a complete graph");
  auto deg = g.out_degrees();
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < deg.size(); ++i) {
    if (deg[i] == 0) out.push_back(i);
  }
  return out;
}

enum class Relation { LessEqual, Equal, GreaterEqual };

/// sum(coefficient * mu(place)) <relation> bound
class LinearInvariant {
 public:
  /// Throws InvalidInvariantError if every coefficient is zero.
  LinearInvariant(std::map<PlaceId, std::int64_t> coefficients, Relation relation, std::int64_t bound);

  const std::map<PlaceId, std::int64_t>& coefficients() const noexcept { return coefficients_; }
  Relation relation() const noexcept { return relation_; }
  std::int64_t bound() const noexcept { return bound_; }

  /// Throws OmegaUnsupportedError if a place with nonzero coefficient holds
  /// omega.
  bool holds_at(const Marking& m) const;

  std::string to_string(const PetriNet& net) const;

 private:
  std::map<PlaceId, std::int64_t> coefficients_;
  Relation relation_;
  std::int64_t bound_;
};

struct AnalysisVerdict {
  bool holds = true;
  /// Edge indices from the root to the first violating node (shortest).
  std::optional<std::vector<std::size_t>> counterexample;
  std::optional<std::size_t> violating_node;
};

/// A violation found in an incomplete graph is still reported; absence of a
/// violation in an incomplete graph throws IncompleteGraphError.
template <class Node, class Label>
AnalysisVerdict check_invariant(const StateGraph<Node, Label>& g, const LinearInvariant& inv) {
  for (const auto& node : g.nodes) {
    const Marking& m = marking_of(node);
    for (const auto& [p, c] : inv.coefficients()) {
      if (c != 0 && m[p] == kOmega) throw OmegaUnsupportedError("invariant mentions a place holding omega");
    }
  }
  // Nodes are in breadth-first order, so the first violation is a nearest one.
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    if (!inv.holds_at(marking_of(g.nodes[i]))) {
      return AnalysisVerdict{false, g.path_to(i), i};
    }
  }
  if (!g.complete) throw IncompleteGraphError("no violation among explored states, but the graph is incomplete");
  return AnalysisVerdict{};
}

/// Parses one invariant per line, e.g. "2*Empty_buf + D_in_buf <= 4".
/// '#' starts a comment. Throws ParseError / SemanticError.
std::vector<LinearInvariant> parse_invariants(std::string_view text, const PetriNet& net);

/// Some transition has a marked input place. Ignores arc weights and
/// source transitions; weaker than "some transition is enabled".
bool marked_input_predicate(const PetriNet& net, const Marking& m);

// ---------------------------------------------------------------------------
// Export

std::string format_marking(const PetriNet& net, const Marking& m);

/// Line-oriented listing with stable ordering, for golden tests.
std::string to_listing(const MarkingGraph& g, const PetriNet& net);
std::string to_listing(const EmbeddedGraph& g, const EventSystem& system);
std::string to_dot(const MarkingGraph& g, const PetriNet& net, std::string_view name);
std::string to_dot(const EmbeddedGraph& g, const EventSystem& system, std::string_view name);

}  // namespace petriforge
