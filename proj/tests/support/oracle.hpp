#pragma once

// Reference semantics written directly from the firing rule on dense
// matrices. Shares no code with the library beyond the DenseNet container.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <tuple>
#include <vector>

#include "random_net.hpp"

namespace testsupport {

using DenseMarking = std::vector<std::int64_t>;

inline bool oracle_enabled(const DenseNet& d, const DenseMarking& m, std::size_t t) {
  for (std::size_t p = 0; p < d.places; ++p) {
    if (m[p] < d.pre[p][t]) return false;
  }
  return true;
}

/// m + C[., t] with C = post - pre.
inline DenseMarking oracle_fire(const DenseNet& d, const DenseMarking& m, std::size_t t) {
  DenseMarking next(m);
  for (std::size_t p = 0; p < d.places; ++p) next[p] += d.post[p][t] - d.pre[p][t];
  return next;
}

struct OracleGraph {
  std::set<DenseMarking> markings;
  std::set<std::tuple<DenseMarking, std::size_t, DenseMarking>> edges;
  bool complete = true;
};

/// Reachable markings by fixed-point iteration (no queue, no ordering).
/// Gives up once more than `limit` markings are known.
inline OracleGraph oracle_reachability(const DenseNet& d, std::size_t limit = 100000) {
  OracleGraph g;
  g.markings.insert(d.m0);
  for (bool changed = true; changed;) {
    changed = false;
    const std::set<DenseMarking> snapshot = g.markings;
    for (const auto& m : snapshot) {
      for (std::size_t t = 0; t < d.transitions; ++t) {
        if (!oracle_enabled(d, m, t)) continue;
        DenseMarking next = oracle_fire(d, m, t);
        g.edges.emplace(m, t, next);
        if (g.markings.insert(next).second) changed = true;
      }
    }
    if (g.markings.size() > limit) {
      g.complete = false;
      return g;
    }
  }
  return g;
}

/// Markings reachable within `depth` firings, with every (marking, t) pair
/// the search looked at.
template <class Visit>
void oracle_explore(const DenseNet& d, std::size_t depth, std::size_t limit, Visit&& visit) {
  std::set<DenseMarking> seen{d.m0};
  std::vector<DenseMarking> frontier{d.m0};
  for (std::size_t level = 0; level <= depth && !frontier.empty(); ++level) {
    std::vector<DenseMarking> next_frontier;
    for (const auto& m : frontier) {
      for (std::size_t t = 0; t < d.transitions; ++t) {
        const bool enabled = oracle_enabled(d, m, t);
        visit(m, t, enabled);
        if (!enabled || level == depth) continue;
        DenseMarking next = oracle_fire(d, m, t);
        if (seen.size() < limit && seen.insert(next).second) next_frontier.push_back(std::move(next));
      }
    }
    frontier = std::move(next_frontier);
  }
}

inline DenseMarking to_dense(const petriforge::Marking& m) {
  DenseMarking out;
  for (auto v : m.values()) out.push_back(static_cast<std::int64_t>(v));
  return out;
}

inline petriforge::Marking to_marking(const DenseMarking& m) {
  std::vector<petriforge::TokenCount> v;
  for (auto x : m) v.push_back(static_cast<petriforge::TokenCount>(x));
  return petriforge::Marking(std::move(v));
}

/// Dense copy of a library net, read straight from its arc maps.
inline DenseNet dense_from(const petriforge::PetriNet& net) {
  DenseNet d = empty_dense(net.places.size(), net.transitions.size());
  for (const auto& [key, w] : net.pre) d.pre[key.place.index][key.transition.index] = static_cast<std::int64_t>(w);
  for (const auto& [key, w] : net.post) d.post[key.place.index][key.transition.index] = static_cast<std::int64_t>(w);
  d.m0 = to_dense(net.initial_marking);
  return d;
}

}  // namespace testsupport
