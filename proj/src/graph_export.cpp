#include <sstream>

#include "petriforge/analysis.hpp"

namespace petriforge {

namespace {

std::string token_text(TokenCount v) { return v == kOmega ? std::string("w") : std::to_string(v); }

std::string escape_dot(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string format_marking(const PetriNet& net, const Marking& m) {
  std::string out;
  for (std::uint32_t i = 0; i < net.place_count(); ++i) {
    if (i) out += ' ';
    out += net.places[i] + "=" + token_text(m[PlaceId{i}]);
  }
  return out;
}

std::string to_listing(const MarkingGraph& g, const PetriNet& net) {
  std::ostringstream out;
  out << "graph nodes=" << g.nodes.size() << " edges=" << g.edges.size() << " root=" << g.root
      << " complete=" << (g.complete ? "true" : "false") << '\n';
  for (std::size_t i = 0; i < g.nodes.size(); ++i) out << "node " << i << ' ' << format_marking(net, g.nodes[i]) << '\n';
  for (const auto& e : g.edges) out << "edge " << e.source << " -> " << e.target << ' ' << net.name(e.label) << '\n';
  return out.str();
}

std::string to_listing(const EmbeddedGraph& g, const EventSystem& system) {
  std::ostringstream out;
  out << "graph nodes=" << g.nodes.size() << " edges=" << g.edges.size() << " root=" << g.root
      << " complete=" << (g.complete ? "true" : "false") << '\n';
  for (std::size_t i = 0; i < g.nodes.size(); ++i) out << "node " << i << ' ' << system.describe(g.nodes[i]) << '\n';
  for (const auto& e : g.edges) {
    out << "edge " << e.source << " -> " << e.target << ' ' << system.describe(e.label) << '\n';
  }
  return out.str();
}

std::string to_dot(const MarkingGraph& g, const PetriNet& net, std::string_view name) {
  std::ostringstream out;
  out << "digraph \"" << escape_dot(name) << "\" {\n";
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    out << "  n" << i << " [label=\"" << escape_dot(format_marking(net, g.nodes[i])) << "\"";
    if (i == g.root) out << ", shape=doublecircle";
    out << "];\n";
  }
  for (const auto& e : g.edges) {
    out << "  n" << e.source << " -> n" << e.target << " [label=\"" << escape_dot(net.name(e.label)) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

std::string to_dot(const EmbeddedGraph& g, const EventSystem& system, std::string_view name) {
  std::ostringstream out;
  out << "digraph \"" << escape_dot(name) << "\" {\n";
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    out << "  n" << i << " [label=\"" << escape_dot(system.describe(g.nodes[i])) << "\"";
    if (i == g.root) out << ", shape=doublecircle";
    out << "];\n";
  }
  for (const auto& e : g.edges) {
    out << "  n" << e.source << " -> n" << e.target << " [label=\"" << escape_dot(system.describe(e.label))
        << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace petriforge
