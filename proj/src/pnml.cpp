#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>
#include <tuple>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "petriforge/ingest.hpp"

namespace petriforge {

namespace pt = boost::property_tree;

namespace {

constexpr std::string_view kToolName = "petriforge";

std::string attribute(const pt::ptree& node, const char* name) {
  return node.get<std::string>(std::string("<xmlattr>.") + name, "");
}

std::string trimmed(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

/// Integer value of <label><text>N</text></label>, if the label exists.
std::optional<std::uint64_t> integer_label(const pt::ptree& node, const char* label, const std::string& element_id) {
  auto child = node.get_child_optional(label);
  if (!child) return std::nullopt;
  std::string text = trimmed(child->get<std::string>("text", ""));
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size() || value == kOmega) {
    throw UnsupportedFeatureError(element_id, std::string(label) + " '" + text + "' is not a non-negative integer");
  }
  return value;
}

std::optional<std::string> tool_action(const pt::ptree& node) {
  for (const auto& [key, child] : node) {
    if (key != "toolspecific" || attribute(child, "tool") != kToolName) continue;
    if (auto action = child.get_optional<std::string>("action")) return trimmed(*action);
  }
  return std::nullopt;
}

struct RawArc {
  std::string id;
  std::string source;
  std::string target;
  Weight weight;
};

struct Collected {
  std::vector<std::pair<std::string, const pt::ptree*>> places;
  std::vector<std::pair<std::string, const pt::ptree*>> transitions;
  std::vector<RawArc> arcs;
};

void collect(const pt::ptree& container, Collected& out) {
  for (const auto& [key, child] : container) {
    if (key == "page") {
      collect(child, out);
    } else if (key == "place" || key == "transition") {
      std::string id = attribute(child, "id");
      if (id.empty()) throw XmlError("<" + key + "> without id attribute", {});
      (key == "place" ? out.places : out.transitions).emplace_back(std::move(id), &child);
    } else if (key == "arc") {
      RawArc arc{attribute(child, "id"), attribute(child, "source"), attribute(child, "target"), 1};
      if (arc.source.empty() || arc.target.empty()) {
        throw XmlError("arc '" + arc.id + "' lacks source or target", {});
      }
      if (auto w = integer_label(child, "inscription", arc.id)) {
        if (*w == 0) throw SemanticError("arc '" + arc.id + "' has weight 0", {});
        arc.weight = *w;
      }
      out.arcs.push_back(std::move(arc));
    }
  }
}

std::string escape_xml(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

NetDocument parse_pnml(std::string_view xml) {
  pt::ptree tree;
  try {
    std::istringstream in{std::string(xml)};
    pt::read_xml(in, tree, pt::xml_parser::trim_whitespace);
  } catch (const pt::xml_parser_error& e) {
    throw XmlError(e.message(), {e.line(), 0});
  }

  auto root = tree.get_child_optional("pnml");
  if (!root) throw XmlError("missing <pnml> root element", {});

  NetDocument doc;
  const pt::ptree* net_node = nullptr;
  for (const auto& [key, child] : *root) {
    if (key != "net") continue;
    if (!net_node) net_node = &child;
    else doc.warnings.push_back("ignoring additional <net> '" + attribute(child, "id") + "'");
  }
  if (!net_node) throw XmlError("no <net> element", {});

  doc.name = trimmed(net_node->get<std::string>("name.text", ""));
  if (doc.name.empty()) doc.name = attribute(*net_node, "id");

  Collected c;
  collect(*net_node, c);

  std::map<std::string, std::string> kind_of;
  std::vector<TokenCount> tokens;
  std::map<std::string, std::string> action_owner;
  for (const auto& [id, node] : c.places) {
    if (!kind_of.emplace(id, "place").second) throw SemanticError("duplicate id '" + id + "'", {});
    const PlaceId pid{static_cast<std::uint32_t>(doc.net.places.size())};
    doc.net.places.push_back(id);
    doc.spans.places.push_back({});
    tokens.push_back(integer_label(*node, "initialMarking", id).value_or(0));
    if (auto action = tool_action(*node)) {
      if (action->empty() || *action == kNullAction) {
        throw SemanticError("place '" + id + "' has an invalid action name", {});
      }
      if (auto [it, fresh] = action_owner.emplace(*action, id); !fresh) {
        throw SemanticError("place action '" + *action + "' attached to both '" + it->second + "' and '" + id + "'",
                            {});
      }
      doc.annotations.place_actions[pid] = *action;
    }
  }
  for (const auto& [id, node] : c.transitions) {
    if (!kind_of.emplace(id, "transition").second) throw SemanticError("duplicate id '" + id + "'", {});
    const TransitionId tid{static_cast<std::uint32_t>(doc.net.transitions.size())};
    doc.net.transitions.push_back(id);
    doc.spans.transitions.push_back({});
    if (auto action = tool_action(*node)) {
      if (action->empty() || *action == kNullAction) {
        throw SemanticError("transition '" + id + "' has an invalid action name", {});
      }
      doc.annotations.transition_actions[tid] = *action;
    }
  }
  doc.net.initial_marking = Marking(std::move(tokens));

  for (const auto& arc : c.arcs) {
    auto sp = doc.net.find_place(arc.source);
    auto st = doc.net.find_transition(arc.source);
    auto dp = doc.net.find_place(arc.target);
    auto dt = doc.net.find_transition(arc.target);
    if (!sp && !st) throw SemanticError("arc '" + arc.id + "' has unknown source '" + arc.source + "'", {});
    if (!dp && !dt) throw SemanticError("arc '" + arc.id + "' has unknown target '" + arc.target + "'", {});
    if ((sp && dp) || (st && dt)) throw SemanticError("arc '" + arc.id + "' does not connect a place and a transition", {});
    WeightMap& map = sp ? doc.net.pre : doc.net.post;
    const ArcKey key = sp ? ArcKey{*dt, *sp} : ArcKey{*st, *dp};
    if (!map.emplace(key, arc.weight).second) {
      throw SemanticError("duplicate arc '" + arc.id + "' from '" + arc.source + "' to '" + arc.target + "'", {});
    }
  }

  if (auto report = validate_net(doc.net); !report.ok()) throw SemanticError(report.issues.front().message, {});
  return doc;
}

std::string emit_pnml(const NetDocument& doc) {
  const PetriNet& net = doc.net;
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<pnml xmlns=\"http://www.pnml.org/version-2009/grammar/pnml\">\n"
      << "  <net id=\"" << escape_xml(doc.name) << "\" type=\"http://www.pnml.org/version-2009/grammar/ptnet\">\n"
      << "    <name>\n      <text>" << escape_xml(doc.name) << "</text>\n    </name>\n"
      << "    <page id=\"page0\">\n";

  auto action_block = [&](const std::string& action) {
    out << "        <toolspecific tool=\"" << kToolName << "\" version=\"1.0\">\n"
        << "          <action>" << escape_xml(action) << "</action>\n"
        << "        </toolspecific>\n";
  };

  for (std::uint32_t i = 0; i < net.place_count(); ++i) {
    const std::string& name = net.places[i];
    out << "      <place id=\"" << escape_xml(name) << "\">\n"
        << "        <name>\n          <text>" << escape_xml(name) << "</text>\n        </name>\n";
    if (TokenCount n = net.initial_marking[PlaceId{i}]; n != 0) {
      out << "        <initialMarking>\n          <text>" << n << "</text>\n        </initialMarking>\n";
    }
    if (auto it = doc.annotations.place_actions.find(PlaceId{i}); it != doc.annotations.place_actions.end()) {
      action_block(it->second);
    }
    out << "      </place>\n";
  }
  for (std::uint32_t i = 0; i < net.transition_count(); ++i) {
    const std::string& name = net.transitions[i];
    out << "      <transition id=\"" << escape_xml(name) << "\">\n"
        << "        <name>\n          <text>" << escape_xml(name) << "</text>\n        </name>\n";
    if (auto it = doc.annotations.transition_actions.find(TransitionId{i});
        it != doc.annotations.transition_actions.end()) {
      action_block(it->second);
    }
    out << "      </transition>\n";
  }

  std::vector<std::tuple<std::uint32_t, std::uint32_t, int, Weight>> arcs;
  for (const auto& [key, w] : net.pre) arcs.emplace_back(key.place.index, key.transition.index, 0, w);
  for (const auto& [key, w] : net.post) arcs.emplace_back(key.place.index, key.transition.index, 1, w);
  std::sort(arcs.begin(), arcs.end());
  std::size_t n = 0;
  for (const auto& [p, t, dir, w] : arcs) {
    const std::string& src = dir == 0 ? net.places[p] : net.transitions[t];
    const std::string& dst = dir == 0 ? net.transitions[t] : net.places[p];
    out << "      <arc id=\"a" << n++ << "\" source=\"" << escape_xml(src) << "\" target=\"" << escape_xml(dst)
        << "\"";
    if (w == 1) {
      out << "/>\n";
    } else {
      out << ">\n        <inscription>\n          <text>" << w << "</text>\n        </inscription>\n      </arc>\n";
    }
  }
  out << "    </page>\n  </net>\n</pnml>\n";
  return out.str();
}

}  // namespace petriforge
