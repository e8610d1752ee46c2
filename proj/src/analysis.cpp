#include "petriforge/analysis.hpp"

#include <algorithm>
#include <thread>
#include <unordered_map>

namespace petriforge {

namespace {

/// Transition arcs flattened once per exploration.
struct ArcTable {
  explicit ArcTable(const PetriNet& net) {
    for (std::uint32_t i = 0; i < net.transition_count(); ++i) {
      inputs.push_back(net.input_arcs(TransitionId{i}));
      outputs.push_back(net.output_arcs(TransitionId{i}));
    }
  }

  bool enabled(const Marking& m, std::size_t t) const {
    return std::all_of(inputs[t].begin(), inputs[t].end(),
                       [&](const WeightedPlace& a) { return m[a.place] >= a.weight; });
  }

  Marking fire(const Marking& m, std::size_t t) const {
    Marking next = m;
    for (const auto& [p, w] : inputs[t]) {
      if (next[p] != kOmega) next[p] -= w;
    }
    for (const auto& [p, w] : outputs[t]) {
      if (next[p] == kOmega) continue;
      if (w >= kOmega - next[p]) throw std::overflow_error("token count overflow");
      next[p] += w;
    }
    return next;
  }

  std::vector<std::vector<WeightedPlace>> inputs;
  std::vector<std::vector<WeightedPlace>> outputs;
};

template <class Node, class Label>
using Successors = std::vector<std::pair<Label, Node>>;

/// Breadth-first construction. Successors of each frontier batch may be
/// computed on several threads; merging is sequential and in node order, so
/// numbering matches a single-threaded FIFO run exactly.
template <class Node, class Label, class Hash, class Eq, class Expand>
StateGraph<Node, Label> breadth_first(Node root, const Expand& expand, const ExploreOptions& options) {
  StateGraph<Node, Label> g;
  std::unordered_map<Node, std::size_t, Hash, Eq> index;
  std::vector<std::size_t> depth;

  index.emplace(root, 0);
  g.nodes.push_back(std::move(root));
  g.parent_edge.push_back(std::nullopt);
  depth.push_back(0);
  if (options.node_limit == 0) {
    g.complete = false;
    return g;
  }

  std::size_t next = 0;
  while (next < g.nodes.size()) {
    const std::size_t batch_begin = next;
    const std::size_t batch_end = g.nodes.size();
    std::vector<Successors<Node, Label>> successors(batch_end - batch_begin);

    const unsigned workers = std::max(1u, options.threads);
    const std::size_t batch = batch_end - batch_begin;
    if (workers == 1 || batch < 64) {
      for (std::size_t i = batch_begin; i < batch_end; ++i) successors[i - batch_begin] = expand(g.nodes[i]);
    } else {
      std::vector<std::thread> pool;
      const std::size_t chunk = (batch + workers - 1) / workers;
      for (unsigned w = 0; w < workers; ++w) {
        const std::size_t lo = batch_begin + w * chunk;
        const std::size_t hi = std::min(batch_end, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi] {
          for (std::size_t i = lo; i < hi; ++i) successors[i - batch_begin] = expand(g.nodes[i]);
        });
      }
      for (auto& t : pool) t.join();
    }

    for (std::size_t i = batch_begin; i < batch_end; ++i, ++next) {
      auto& succ = successors[i - batch_begin];
      if (depth[i] >= options.depth_limit) {
        if (!succ.empty()) g.complete = false;
        continue;
      }
      for (auto& [label, node] : succ) {
        auto it = index.find(node);
        std::size_t target;
        if (it != index.end()) {
          target = it->second;
        } else {
          if (g.nodes.size() >= options.node_limit) {
            g.complete = false;
            return g;
          }
          target = g.nodes.size();
          index.emplace(node, target);
          g.nodes.push_back(std::move(node));
          g.parent_edge.push_back(g.edges.size());
          depth.push_back(depth[i] + 1);
        }
        g.edges.push_back({i, label, target});
      }
    }
  }
  return g;
}

}  // namespace

MarkingGraph reachability_graph(const PetriNet& net, const Marking& m0, const ExploreOptions& options) {
  const ArcTable arcs(net);
  auto expand = [&](const Marking& m) {
    Successors<Marking, TransitionId> out;
    for (std::size_t t = 0; t < arcs.inputs.size(); ++t) {
      if (arcs.enabled(m, t)) out.emplace_back(TransitionId{static_cast<std::uint32_t>(t)}, arcs.fire(m, t));
    }
    return out;
  };
  return breadth_first<Marking, TransitionId, MarkingHash, std::equal_to<Marking>>(m0, expand, options);
}

MarkingGraph reachability_graph(const PetriNet& net, const Marking& m0, std::size_t node_limit) {
  ExploreOptions options;
  options.node_limit = node_limit;
  return reachability_graph(net, m0, options);
}

MarkingGraph coverability_graph(const PetriNet& net, const Marking& m0) {
  const ArcTable arcs(net);
  MarkingGraph g;
  std::unordered_map<Marking, std::size_t, MarkingHash> index;
  std::vector<std::optional<std::size_t>> parent;  // parent node in the discovery tree

  g.nodes.push_back(m0);
  g.parent_edge.push_back(std::nullopt);
  parent.push_back(std::nullopt);
  index.emplace(m0, 0);

  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    for (std::size_t t = 0; t < arcs.inputs.size(); ++t) {
      if (!arcs.enabled(g.nodes[i], t)) continue;
      Marking m = arcs.fire(g.nodes[i], t);

      // Accelerate against every strictly smaller ancestor on the discovery
      // path (including the source); repeat until no coordinate changes.
      bool changed = true;
      while (changed) {
        changed = false;
        for (std::optional<std::size_t> a = i; a; a = parent[*a]) {
          const Marking& anc = g.nodes[*a];
          if (anc == m || !anc.covered_by(m)) continue;
          for (std::uint32_t p = 0; p < m.size(); ++p) {
            const PlaceId pid{p};
            if (anc[pid] < m[pid] && m[pid] != kOmega) {
              m[pid] = kOmega;
              changed = true;
            }
          }
        }
      }

      const TransitionId label{static_cast<std::uint32_t>(t)};
      auto it = index.find(m);
      if (it != index.end()) {
        g.edges.push_back({i, label, it->second});
        continue;
      }
      const std::size_t target = g.nodes.size();
      index.emplace(m, target);
      g.nodes.push_back(std::move(m));
      g.parent_edge.push_back(g.edges.size());
      parent.push_back(i);
      g.edges.push_back({i, label, target});
    }
  }
  return g;
}

EmbeddedGraph explore_embedded(const EventSystem& system, const ExploreOptions& options) {
  auto expand = [&](const EmbeddedState& s) {
    Successors<EmbeddedState, Event> out;
    for (const auto& e : system.enabled_events(s)) {
      EmbeddedState next = system.fire(s, e);
      next.action_log.clear();
      next.guard_overwrites = 0;
      out.emplace_back(e, std::move(next));
    }
    return out;
  };
  return breadth_first<EmbeddedState, Event, EmbeddedStateHash, SameConfiguration>(system.initial_state(), expand,
                                                                                    options);
}

EmbeddedGraph explore_embedded(const PetriNet& net, const NetAnnotations& ann, Policy policy, std::size_t depth,
                               std::size_t node_limit) {
  ExploreOptions options;
  options.depth_limit = depth;
  options.node_limit = node_limit;
  return explore_embedded(EventSystem(net, ann, policy), options);
}

bool marked_input_predicate(const PetriNet& net, const Marking& m) {
  for (const auto& [key, weight] : net.pre) {
    if (weight > 0 && m[key.place] > 0) return true;
  }
  return false;
}

}  // namespace petriforge
