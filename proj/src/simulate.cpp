#include <random>

#include "petriforge/semantics.hpp"

namespace petriforge {

namespace {

// Unbiased draw in [0, n). Avoids std::uniform_int_distribution, whose output
// differs between standard library implementations.
std::size_t draw_index(std::mt19937_64& rng, std::size_t n) {
  const std::uint64_t bound = n;
  const std::uint64_t limit = std::mt19937_64::max() - (std::mt19937_64::max() % bound + 1) % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x > limit);
  return static_cast<std::size_t>(x % bound);
}

bool exceeds(const Marking& m, TokenCount capacity) {
  for (TokenCount v : m.values()) {
    if (v != kOmega && v > capacity) return true;
  }
  return false;
}

}  // namespace

std::string_view to_string(StopReason reason) {
  switch (reason) {
    case StopReason::StepsExhausted: return "steps exhausted";
    case StopReason::Deadlock: return "deadlock";
    case StopReason::CapacityStop: return "capacity";
  }
  return "?";
}

Trace simulate(const EventSystem& system, const SimulationOptions& options) {
  std::mt19937_64 rng(options.seed);
  Trace trace;
  trace.initial = system.initial_state();
  const EmbeddedState* current = &trace.initial;

  for (std::size_t step = 0; step < options.steps; ++step) {
    auto enabled = system.enabled_events(*current);
    if (enabled.empty()) {
      trace.stop = StopReason::Deadlock;
      return trace;
    }
    const Event& chosen = enabled[draw_index(rng, enabled.size())];
    EmbeddedState next = system.fire(*current, chosen);
    if (options.capacity && exceeds(next.marking, *options.capacity)) {
      trace.stop = StopReason::CapacityStop;
      return trace;
    }
    trace.steps.push_back({chosen, std::move(next)});
    current = &trace.steps.back().state;
  }
  trace.stop = StopReason::StepsExhausted;
  return trace;
}

Trace simulate(const PetriNet& net, const NetAnnotations& ann, Policy policy, const SimulationOptions& options) {
  return simulate(EventSystem(net, ann, policy), options);
}

}  // namespace petriforge
