#pragma once

#include <filesystem>
#include <string>

#include "petriforge/ingest.hpp"
#include "petriforge/net.hpp"

namespace testsupport {

inline const std::filesystem::path kNetsDir = PETRIFORGE_NETS_DIR;
inline const std::filesystem::path kGoldenDir = PETRIFORGE_GOLDEN_DIR;

/// p1 --2--> t1 --3--> p2, two tokens on p1.
inline petriforge::PetriNet net_b2() {
  petriforge::NetBuilder b;
  auto p1 = b.place("p1", 2);
  auto p2 = b.place("p2");
  auto t1 = b.transition("t1");
  b.input(p1, t1, 2).output(t1, p2, 3);
  return b.build();
}

/// p --1--> t --1--> p.
inline petriforge::PetriNet self_loop(petriforge::TokenCount tokens = 1) {
  petriforge::NetBuilder b;
  auto p = b.place("p", tokens);
  auto t = b.transition("t");
  b.input(p, t).output(t, p);
  return b.build();
}

/// gen --> p, nothing consumes.
inline petriforge::PetriNet source_net() {
  petriforge::NetBuilder b;
  auto p = b.place("p");
  auto t = b.transition("gen");
  b.output(t, p);
  return b.build();
}

inline petriforge::NetDocument producer_consumer() {
  return petriforge::load_document(kNetsDir / "producer_consumer.pn");
}

}  // namespace testsupport
