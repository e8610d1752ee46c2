#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "petriforge/ingest.hpp"
#include "petriforge/semantics.hpp"

namespace petriforge {

struct EmissionConfig {
  Policy policy = Policy::Basic;
  /// Machine name prefix; empty means the sanitized document name.
  std::string prefix;
  /// One firing event per transition with literal guards instead of a single
  /// quantified event.
  bool expanded = false;
  bool comments = true;
};

/// The two systems of the embedding: the net structure and the evolution
/// events that include it.
struct BMachineText {
  std::string static_name;
  std::string static_machine;
  std::string embedded_name;
  std::string embedded_machine;
};

bool is_b_identifier(std::string_view text);
/// Replaces characters outside [A-Za-z0-9_] by '_' and prefixes names that
/// do not start with a letter.
std::string sanitize_b_identifier(std::string_view text);

/// Throws InvalidConfigError, NameCollisionError, AnnotationMismatchError.
std::string emit_static(const NetDocument& doc, const EmissionConfig& cfg);
std::string emit_embedded(const NetDocument& doc, const EmissionConfig& cfg);
BMachineText emit_b(const NetDocument& doc, const EmissionConfig& cfg);

/// Number of events the embedded machine carries for this document.
std::size_t expected_event_count(const NetDocument& doc, const EmissionConfig& cfg);

struct BCheckResult {
  std::string machine_name;
  std::vector<std::string> clauses;
  std::vector<std::string> events;
  std::vector<std::string> problems;

  bool ok() const noexcept { return problems.empty(); }
};

/// Structural check of an abstract system text: header, clause order
/// (SYSTEM, INCLUDES, SETS, VARIABLES, INVARIANT, INITIALISATION, EVENTS,
/// END), bracket balance, block nesting, event list shape, and that every
/// variable is typed and initialised.
BCheckResult check_b_machine(std::string_view text);

}  // namespace petriforge
