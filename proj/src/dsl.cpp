#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <system_error>
#include <tuple>

#include "petriforge/ingest.hpp"

namespace petriforge {

namespace {

struct Token {
  enum class Kind { Word, Equals, Arrow };
  Kind kind;
  std::string text;
  SourcePos pos;
};

bool word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.'; }

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  return std::all_of(s.begin(), s.end(), word_char);
}

std::vector<Token> lex_line(std::string_view line, std::size_t line_no) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    if (c == ' ' || c == '\t') {
      ++i;
    } else if (c == '#') {
      break;
    } else if (c == '-' && i + 1 < line.size() && line[i + 1] == '>') {
      tokens.push_back({Token::Kind::Arrow, "->", {line_no, i + 1}});
      i += 2;
    } else if (c == '=') {
      tokens.push_back({Token::Kind::Equals, "=", {line_no, i + 1}});
      ++i;
    } else if (word_char(c)) {
      const std::size_t start = i;
      while (i < line.size() && word_char(line[i])) ++i;
      tokens.push_back({Token::Kind::Word, std::string(line.substr(start, i - start)), {line_no, start + 1}});
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", {line_no, i + 1});
    }
  }
  return tokens;
}

struct Option {
  std::string value;
  SourcePos key_pos;
  SourcePos value_pos;
};

struct PlaceDecl {
  std::string name;
  SourcePos pos;
  TokenCount tokens = 0;
  std::optional<Option> action;
};

struct TransDecl {
  std::string name;
  SourcePos pos;
  std::optional<Option> action;
};

struct ArcDecl {
  std::string source;
  std::string target;
  SourcePos source_pos;
  SourcePos target_pos;
  Weight weight = 1;
  SourcePos weight_pos;
  SourcePos pos;
};

class LineParser {
 public:
  LineParser(std::vector<Token> tokens, std::size_t line_no, std::size_t line_len)
      : tokens_(std::move(tokens)), line_no_(line_no), line_len_(line_len) {}

  bool done() const { return pos_ == tokens_.size(); }

  const Token& word(const char* what) {
    if (done() || tokens_[pos_].kind != Token::Kind::Word) fail(std::string("expected ") + what);
    return tokens_[pos_++];
  }

  const Token& identifier(const char* what) {
    const Token& t = word(what);
    if (!is_identifier(t.text)) throw ParseError("invalid identifier '" + t.text + "'", t.pos);
    return t;
  }

  void arrow() {
    if (done() || tokens_[pos_].kind != Token::Kind::Arrow) fail("expected '->'");
    ++pos_;
  }

  /// Trailing key=value pairs; rejects keys outside `allowed` and repeats.
  std::map<std::string, Option> options(std::initializer_list<std::string_view> allowed) {
    std::map<std::string, Option> out;
    while (!done()) {
      const Token& key = word("option key");
      if (std::find(allowed.begin(), allowed.end(), key.text) == allowed.end()) {
        throw ParseError("unknown key '" + key.text + "'", key.pos);
      }
      if (done() || tokens_[pos_].kind != Token::Kind::Equals) fail("expected '=' after '" + key.text + "'");
      ++pos_;
      const Token& value = word("option value");
      if (!out.emplace(key.text, Option{value.text, key.pos, value.pos}).second) {
        throw ParseError("duplicate key '" + key.text + "'", key.pos);
      }
    }
    return out;
  }

  [[noreturn]] void fail(const std::string& what) const {
    SourcePos pos = done() ? SourcePos{line_no_, line_len_ + 1} : tokens_[pos_].pos;
    throw ParseError(what, pos);
  }

 private:
  std::vector<Token> tokens_;
  std::size_t line_no_;
  std::size_t line_len_;
  std::size_t pos_ = 0;
};

std::uint64_t parse_count(const Option& opt, const char* what) {
  std::uint64_t value = 0;
  const char* first = opt.value.data();
  const char* last = first + opt.value.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || value == kOmega) {
    throw ParseError(std::string("invalid ") + what + " '" + opt.value + "'", opt.value_pos);
  }
  return value;
}

std::optional<Option> action_option(std::map<std::string, Option>& opts) {
  auto it = opts.find("action");
  if (it == opts.end()) return std::nullopt;
  if (!is_identifier(it->second.value)) {
    throw ParseError("invalid action name '" + it->second.value + "'", it->second.value_pos);
  }
  if (it->second.value == kNullAction) {
    throw SemanticError("'nullaction' is reserved", it->second.value_pos);
  }
  return it->second;
}

}  // namespace

NetDocument parse_dsl(std::string_view text) {
  std::optional<std::string> name;
  std::vector<PlaceDecl> places;
  std::vector<TransDecl> transitions;
  std::vector<ArcDecl> arcs;

  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    auto tokens = lex_line(line, line_no);
    if (tokens.empty()) continue;
    LineParser p(std::move(tokens), line_no, line.size());
    const Token keyword = p.word("a declaration");

    if (keyword.text == "net") {
      if (name) throw SemanticError("duplicate net header", keyword.pos);
      name = p.identifier("net name").text;
      if (!p.done()) p.fail("unexpected text after net name");
      continue;
    }
    if (!name) throw ParseError("expected 'net NAME' header before declarations", keyword.pos);

    if (keyword.text == "place") {
      const Token& id = p.identifier("place name");
      auto opts = p.options({"tokens", "action"});
      PlaceDecl decl{id.text, id.pos, 0, action_option(opts)};
      if (auto it = opts.find("tokens"); it != opts.end()) decl.tokens = parse_count(it->second, "token count");
      places.push_back(std::move(decl));
    } else if (keyword.text == "trans") {
      const Token& id = p.identifier("transition name");
      auto opts = p.options({"action"});
      transitions.push_back({id.text, id.pos, action_option(opts)});
    } else if (keyword.text == "arc") {
      const Token& src = p.identifier("arc source");
      p.arrow();
      const Token& dst = p.identifier("arc target");
      auto opts = p.options({"weight"});
      ArcDecl arc{src.text, dst.text, src.pos, dst.pos, 1, {}, keyword.pos};
      if (auto it = opts.find("weight"); it != opts.end()) {
        arc.weight = parse_count(it->second, "weight");
        arc.weight_pos = it->second.value_pos;
        if (arc.weight == 0) throw SemanticError("arc weight must be at least 1", arc.weight_pos);
      }
      arcs.push_back(std::move(arc));
    } else {
      throw ParseError("unknown declaration '" + keyword.text + "'", keyword.pos);
    }
  }
  if (!name) throw ParseError("missing 'net NAME' header", {line_no == 0 ? 1 : line_no, 1});

  NetDocument doc;
  doc.name = *name;
  std::map<std::string, SourcePos> declared;
  std::map<std::string, std::string> action_owner;
  std::vector<TokenCount> tokens;
  for (const auto& decl : places) {
    if (auto [it, fresh] = declared.emplace(decl.name, decl.pos); !fresh) {
      throw SemanticError("duplicate declaration of '" + decl.name + "' (first at line " +
                              std::to_string(it->second.line) + ")",
                          decl.pos);
    }
    const PlaceId id{static_cast<std::uint32_t>(doc.net.places.size())};
    doc.net.places.push_back(decl.name);
    doc.spans.places.push_back(decl.pos);
    tokens.push_back(decl.tokens);
    if (decl.action) {
      if (auto [it, fresh] = action_owner.emplace(decl.action->value, decl.name); !fresh) {
        throw SemanticError("place action '" + decl.action->value + "' already attached to place '" + it->second + "'",
                            decl.action->value_pos);
      }
      doc.annotations.place_actions[id] = decl.action->value;
    }
  }
  for (const auto& decl : transitions) {
    if (auto [it, fresh] = declared.emplace(decl.name, decl.pos); !fresh) {
      throw SemanticError("duplicate declaration of '" + decl.name + "' (first at line " +
                              std::to_string(it->second.line) + ")",
                          decl.pos);
    }
    const TransitionId id{static_cast<std::uint32_t>(doc.net.transitions.size())};
    doc.net.transitions.push_back(decl.name);
    doc.spans.transitions.push_back(decl.pos);
    if (decl.action) doc.annotations.transition_actions[id] = decl.action->value;
  }
  doc.net.initial_marking = Marking(std::move(tokens));

  for (const auto& arc : arcs) {
    auto src_place = doc.net.find_place(arc.source);
    auto src_trans = doc.net.find_transition(arc.source);
    auto dst_place = doc.net.find_place(arc.target);
    auto dst_trans = doc.net.find_transition(arc.target);
    if (!src_place && !src_trans) throw SemanticError("unknown node '" + arc.source + "'", arc.source_pos);
    if (!dst_place && !dst_trans) throw SemanticError("unknown node '" + arc.target + "'", arc.target_pos);
    if (src_place && dst_place) throw SemanticError("arc connects two places", arc.pos);
    if (src_trans && dst_trans) throw SemanticError("arc connects two transitions", arc.pos);

    WeightMap& map = src_place ? doc.net.pre : doc.net.post;
    const ArcKey key = src_place ? ArcKey{*dst_trans, *src_place} : ArcKey{*src_trans, *dst_place};
    if (!map.emplace(key, arc.weight).second) {
      throw SemanticError("duplicate arc " + arc.source + " -> " + arc.target, arc.pos);
    }
  }
  return doc;
}

std::string emit_dsl(const NetDocument& doc) {
  std::ostringstream out;
  const PetriNet& net = doc.net;
  out << "net " << doc.name << '\n';
  for (std::uint32_t i = 0; i < net.place_count(); ++i) {
    out << "place " << net.places[i];
    if (TokenCount n = net.initial_marking[PlaceId{i}]; n != 0) out << " tokens=" << n;
    if (auto it = doc.annotations.place_actions.find(PlaceId{i}); it != doc.annotations.place_actions.end()) {
      out << " action=" << it->second;
    }
    out << '\n';
  }
  for (std::uint32_t i = 0; i < net.transition_count(); ++i) {
    out << "trans " << net.transitions[i];
    if (auto it = doc.annotations.transition_actions.find(TransitionId{i});
        it != doc.annotations.transition_actions.end()) {
      out << " action=" << it->second;
    }
    out << '\n';
  }

  // (place, transition, direction): direction 0 is place -> transition.
  std::vector<std::tuple<std::uint32_t, std::uint32_t, int, Weight>> arcs;
  for (const auto& [key, w] : net.pre) arcs.emplace_back(key.place.index, key.transition.index, 0, w);
  for (const auto& [key, w] : net.post) arcs.emplace_back(key.place.index, key.transition.index, 1, w);
  std::sort(arcs.begin(), arcs.end());
  for (const auto& [p, t, dir, w] : arcs) {
    if (dir == 0) out << "arc " << net.places[p] << " -> " << net.transitions[t];
    else out << "arc " << net.transitions[t] << " -> " << net.places[p];
    if (w != 1) out << " weight=" << w;
    out << '\n';
  }
  return out.str();
}

DocumentFormat format_for_path(const std::filesystem::path& path) {
  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".pnml" || ext == ".xml" ? DocumentFormat::Pnml : DocumentFormat::Dsl;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::system_error(errno, std::generic_category(), "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::system_error(errno, std::generic_category(), "cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::system_error(errno, std::generic_category(), "cannot write " + path.string());
}

NetDocument load_document(const std::filesystem::path& path, std::optional<DocumentFormat> format) {
  const std::string text = read_file(path);
  return format.value_or(format_for_path(path)) == DocumentFormat::Pnml ? parse_pnml(text) : parse_dsl(text);
}

}  // namespace petriforge
