#pragma once

// Seeded generation and exhaustive enumeration of small nets. Nets are kept as
// dense place x transition matrices so the oracle can work on them without the
// library's sparse representation.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "petriforge/ingest.hpp"
#include "petriforge/net.hpp"

namespace testsupport {

struct DenseNet {
  std::size_t places = 0;
  std::size_t transitions = 0;
  std::vector<std::vector<std::int64_t>> pre;   // [p][t]
  std::vector<std::vector<std::int64_t>> post;  // [p][t]
  std::vector<std::int64_t> m0;
};

inline DenseNet empty_dense(std::size_t places, std::size_t transitions) {
  DenseNet d;
  d.places = places;
  d.transitions = transitions;
  d.pre.assign(places, std::vector<std::int64_t>(transitions, 0));
  d.post.assign(places, std::vector<std::int64_t>(transitions, 0));
  d.m0.assign(places, 0);
  return d;
}

inline petriforge::PetriNet to_petri_net(const DenseNet& d) {
  petriforge::NetBuilder b;
  std::vector<petriforge::PlaceId> ps;
  std::vector<petriforge::TransitionId> ts;
  for (std::size_t p = 0; p < d.places; ++p) {
    ps.push_back(b.place("p" + std::to_string(p), static_cast<petriforge::TokenCount>(d.m0[p])));
  }
  for (std::size_t t = 0; t < d.transitions; ++t) ts.push_back(b.transition("t" + std::to_string(t)));
  for (std::size_t p = 0; p < d.places; ++p) {
    for (std::size_t t = 0; t < d.transitions; ++t) {
      if (d.pre[p][t]) b.input(ps[p], ts[t], static_cast<petriforge::Weight>(d.pre[p][t]));
      if (d.post[p][t]) b.output(ts[t], ps[p], static_cast<petriforge::Weight>(d.post[p][t]));
    }
  }
  return b.build();
}

struct RandomNetShape {
  std::size_t max_places = 5;
  std::size_t max_transitions = 5;
  std::int64_t max_weight = 3;
  std::int64_t max_tokens = 3;
  double arc_density = 0.35;
};

inline DenseNet random_dense(std::uint64_t seed, const RandomNetShape& shape = {}) {
  std::mt19937_64 rng(seed);
  auto uniform = [&](std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
  };
  std::bernoulli_distribution arc(shape.arc_density);
  DenseNet d = empty_dense(static_cast<std::size_t>(uniform(1, static_cast<std::int64_t>(shape.max_places))),
                           static_cast<std::size_t>(uniform(1, static_cast<std::int64_t>(shape.max_transitions))));
  for (std::size_t p = 0; p < d.places; ++p) {
    for (std::size_t t = 0; t < d.transitions; ++t) {
      if (arc(rng)) d.pre[p][t] = uniform(1, shape.max_weight);
      if (arc(rng)) d.post[p][t] = uniform(1, shape.max_weight);
    }
    d.m0[p] = uniform(0, shape.max_tokens);
  }
  return d;
}

/// Calls f(net) for every net of the given shape with all weights in
/// [0, max_weight] and initial markings in [0, max_tokens].
template <class F>
void for_each_dense(std::size_t places, std::size_t transitions, std::int64_t max_weight, std::int64_t max_tokens,
                    F&& f) {
  DenseNet d = empty_dense(places, transitions);
  const std::size_t cells = 2 * places * transitions;
  std::vector<std::int64_t*> digits;
  for (std::size_t p = 0; p < places; ++p) {
    for (std::size_t t = 0; t < transitions; ++t) {
      digits.push_back(&d.pre[p][t]);
      digits.push_back(&d.post[p][t]);
    }
  }
  for (std::size_t p = 0; p < places; ++p) digits.push_back(&d.m0[p]);
  auto bump = [&]() {
    for (std::size_t i = 0; i < digits.size(); ++i) {
      const std::int64_t limit = i < cells ? max_weight : max_tokens;
      if (*digits[i] < limit) {
        ++*digits[i];
        return true;
      }
      *digits[i] = 0;
    }
    return false;
  };
  do {
    f(static_cast<const DenseNet&>(d));
  } while (bump());
}

/// A document with random identifiers and action annotations, for round trips.
inline petriforge::NetDocument random_document(std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  const DenseNet d = random_dense(seed);
  petriforge::NetDocument doc;
  doc.name = "net_" + std::to_string(seed);
  doc.net = to_petri_net(d);
  // Rename some nodes with characters the formats must carry.
  const char* styles[] = {"", "node.", "N_", "x"};
  for (std::size_t i = 0; i < doc.net.places.size(); ++i) {
    doc.net.places[i] = std::string(styles[rng() % 4]) + "p" + std::to_string(i);
  }
  for (std::size_t i = 0; i < doc.net.transitions.size(); ++i) {
    doc.net.transitions[i] = std::string(styles[rng() % 4]) + "t" + std::to_string(i);
  }
  for (std::uint32_t i = 0; i < doc.net.places.size(); ++i) {
    if (rng() % 3 == 0) doc.annotations.place_actions[petriforge::PlaceId{i}] = "act_p" + std::to_string(i);
  }
  for (std::uint32_t i = 0; i < doc.net.transitions.size(); ++i) {
    if (rng() % 3 == 0) doc.annotations.transition_actions[petriforge::TransitionId{i}] = "act_t" + std::to_string(rng() % 2);
  }
  return doc;
}

}  // namespace testsupport
