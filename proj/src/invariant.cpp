#include <cctype>
#include <charconv>
#include <limits>

#include "petriforge/analysis.hpp"

namespace petriforge {

namespace {
__extension__ typedef __int128 WideSum;
}  // namespace

LinearInvariant::LinearInvariant(std::map<PlaceId, std::int64_t> coefficients, Relation relation,
                                 std::int64_t bound)
    : coefficients_(std::move(coefficients)), relation_(relation), bound_(bound) {
  std::erase_if(coefficients_, [](const auto& kv) { return kv.second == 0; });
  if (coefficients_.empty()) throw InvalidInvariantError("invariant needs at least one nonzero coefficient");
}

bool LinearInvariant::holds_at(const Marking& m) const {
  WideSum sum = 0;
  for (const auto& [p, c] : coefficients_) {
    if (m[p] == kOmega) throw OmegaUnsupportedError("invariant mentions a place holding omega");
    sum += static_cast<WideSum>(c) * static_cast<WideSum>(m[p]);
  }
  switch (relation_) {
    case Relation::LessEqual: return sum <= bound_;
    case Relation::Equal: return sum == bound_;
    case Relation::GreaterEqual: return sum >= bound_;
  }
  return false;
}

std::string LinearInvariant::to_string(const PetriNet& net) const {
  std::string out;
  bool first = true;
  for (const auto& [p, c] : coefficients_) {
    std::uint64_t magnitude = c < 0 ? 0 - static_cast<std::uint64_t>(c) : static_cast<std::uint64_t>(c);
    if (first) out += c < 0 ? "-" : "";
    else out += c < 0 ? " - " : " + ";
    if (magnitude != 1) out += std::to_string(magnitude) + "*";
    out += net.name(p);
    first = false;
  }
  switch (relation_) {
    case Relation::LessEqual: out += " <= "; break;
    case Relation::Equal: out += " = "; break;
    case Relation::GreaterEqual: out += " >= "; break;
  }
  return out + std::to_string(bound_);
}

namespace {

class InvariantLineParser {
 public:
  InvariantLineParser(std::string_view line, std::size_t line_no, const PetriNet& net)
      : line_(line), line_no_(line_no), net_(net) {}

  LinearInvariant parse() {
    std::map<PlaceId, std::int64_t> coefficients;
    bool first = true;
    while (true) {
      skip_space();
      std::int64_t sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip_space();
      } else if (!first) {
        break;
      }
      first = false;

      std::int64_t coefficient = 1;
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        coefficient = number();
        skip_space();
        expect('*');
        skip_space();
      }
      const std::size_t name_col = pos_;
      std::string name = identifier();
      auto p = net_.find_place(name);
      if (!p) throw SemanticError("unknown place '" + name + "'", {line_no_, name_col + 1});
      coefficients[*p] += sign * coefficient;
    }

    Relation relation;
    const std::size_t rel_col = pos_;
    if (consume("<=")) relation = Relation::LessEqual;
    else if (consume(">=")) relation = Relation::GreaterEqual;
    else if (consume("==") || consume("=")) relation = Relation::Equal;
    else fail("expected '<=', '=' or '>='");

    skip_space();
    std::int64_t sign = 1;
    if (peek() == '-') {
      sign = -1;
      ++pos_;
    }
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected an integer bound");
    const std::int64_t bound = sign * number();
    skip_space();
    if (pos_ != line_.size()) fail("unexpected trailing text");
    try {
      return LinearInvariant(std::move(coefficients), relation, bound);
    } catch (const InvalidInvariantError& e) {
      throw SemanticError(e.what(), {line_no_, rel_col + 1});
    }
  }

 private:
  char peek() const { return pos_ < line_.size() ? line_[pos_] : '\0'; }

  void skip_space() {
    while (pos_ < line_.size() && (line_[pos_] == ' ' || line_[pos_] == '\t')) ++pos_;
  }

  bool consume(std::string_view token) {
    if (line_.substr(pos_, token.size()) != token) return false;
    pos_ += token.size();
    return true;
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, {line_no_, pos_ + 1}); }

  std::int64_t number() {
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(line_.data() + pos_, line_.data() + line_.size(), value);
    if (ec != std::errc{}) fail("integer out of range");
    pos_ = static_cast<std::size_t>(ptr - line_.data());
    return value;
  }

  std::string identifier() {
    const std::size_t start = pos_;
    auto head = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
    auto tail = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.'; };
    if (!head(peek())) fail("expected a place name");
    while (pos_ < line_.size() && tail(line_[pos_])) ++pos_;
    return std::string(line_.substr(start, pos_ - start));
  }

  std::string_view line_;
  std::size_t line_no_;
  const PetriNet& net_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<LinearInvariant> parse_invariants(std::string_view text, const PetriNet& net) {
  std::vector<LinearInvariant> out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
    out.push_back(InvariantLineParser(line, line_no, net).parse());
  }
  return out;
}

}  // namespace petriforge
