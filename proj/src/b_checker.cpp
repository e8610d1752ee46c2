#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <tuple>

#include "petriforge/b_emitter.hpp"

namespace petriforge {

namespace {

struct Token {
  std::string text;
  std::size_t line;
};

bool is_word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> tokenize(std::string_view text, std::vector<std::string>& problems) {
  std::vector<Token> out;
  std::size_t line = 1;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
      ++i;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (text.compare(i, 2, "/*") == 0) {
      const auto end = text.find("*/", i + 2);
      if (end == std::string_view::npos) {
        problems.push_back("line " + std::to_string(line) + ": unterminated comment");
        break;
      }
      line += static_cast<std::size_t>(std::count(text.begin() + i, text.begin() + end, '\n'));
      i = end + 2;
    } else if (is_word_char(c)) {
      std::size_t j = i;
      while (j < text.size() && is_word_char(text[j])) ++j;
      out.push_back({std::string(text.substr(i, j - i)), line});
      i = j;
    } else {
      out.push_back({std::string(1, c), line});
      ++i;
    }
  }
  return out;
}

const std::vector<std::string> kClauseOrder = {"SYSTEM",    "MACHINE",        "INCLUDES", "SETS", "VARIABLES",
                                               "INVARIANT", "INITIALISATION", "EVENTS",   "OPERATIONS"};

bool is_clause(const std::string& word) {
  return std::find(kClauseOrder.begin(), kClauseOrder.end(), word) != kClauseOrder.end();
}

std::size_t clause_rank(const std::string& word) {
  std::size_t r = static_cast<std::size_t>(std::find(kClauseOrder.begin(), kClauseOrder.end(), word) -
                                           kClauseOrder.begin());
  return r == 0 ? 1 : r;  // SYSTEM and MACHINE share a slot
}

}  // namespace

BCheckResult check_b_machine(std::string_view text) {
  BCheckResult result;
  auto& problems = result.problems;
  const std::vector<Token> tokens = tokenize(text, problems);
  auto problem = [&](std::size_t line, const std::string& what) {
    problems.push_back("line " + std::to_string(line) + ": " + what);
  };

  if (tokens.empty()) {
    problems.push_back("empty machine");
    return result;
  }
  if (tokens[0].text != "SYSTEM" && tokens[0].text != "MACHINE") {
    problem(tokens[0].line, "expected SYSTEM or MACHINE, found '" + tokens[0].text + "'");
  } else if (tokens.size() < 2 || !is_b_identifier(tokens[1].text)) {
    problem(tokens[0].line, "missing machine name");
  } else {
    result.machine_name = tokens[1].text;
  }

  // Brackets and block nesting. Clause keywords are only recognised at depth 0.
  std::vector<std::pair<std::string, std::size_t>> stack;
  std::map<std::string, std::vector<std::size_t>> clause_at;  // clause -> token ranges start
  std::size_t last_rank = 0;
  std::size_t final_end = tokens.size();
  const std::map<std::string, std::string> closing = {{")", "("}, {"]", "["}, {"}", "{"}};
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const Token& tok = tokens[i];
    const std::string& w = tok.text;
    if (w == "(" || w == "[" || w == "{") {
      stack.emplace_back(w, tok.line);
    } else if (auto it = closing.find(w); it != closing.end()) {
      if (stack.empty() || stack.back().first != it->second) {
        problem(tok.line, "unbalanced '" + w + "'");
      } else {
        stack.pop_back();
      }
    } else if (w == "ANY" || w == "SELECT" || w == "BEGIN") {
      stack.emplace_back(w, tok.line);
    } else if (w == "WHERE" || w == "THEN") {
      if (stack.empty() || (stack.back().first != "ANY" && stack.back().first != "SELECT")) {
        problem(tok.line, "'" + w + "' outside ANY or SELECT");
      }
    } else if (w == "END") {
      if (!stack.empty() && (stack.back().first == "ANY" || stack.back().first == "SELECT" ||
                             stack.back().first == "BEGIN")) {
        stack.pop_back();
      } else if (stack.empty()) {
        final_end = i;
        break;
      } else {
        problem(tok.line, "END inside '" + stack.back().first + "'");
        stack.pop_back();
      }
    } else if (stack.empty() && is_clause(w)) {
      const std::size_t rank = clause_rank(w);
      if (i != 0 && (w == "SYSTEM" || w == "MACHINE")) {
        problem(tok.line, "repeated machine header");
      } else if (rank <= last_rank && i != 0) {
        problem(tok.line, "clause " + w + " out of order");
      }
      last_rank = std::max(last_rank, rank);
      result.clauses.push_back(w);
      clause_at[w].push_back(i);
    }
  }
  for (const auto& [open, line] : stack) problem(line, "unclosed '" + open + "'");
  if (final_end == tokens.size()) {
    problems.push_back("missing final END");
  } else if (final_end + 1 != tokens.size()) {
    problem(tokens[final_end + 1].line, "text after final END");
  }

  // Token range [begin, end) of each clause body.
  auto body = [&](const std::string& clause) -> std::pair<std::size_t, std::size_t> {
    auto it = clause_at.find(clause);
    if (it == clause_at.end()) return {0, 0};
    const std::size_t begin = it->second.front() + 1;
    std::size_t end = final_end;
    for (const auto& [other, starts] : clause_at) {
      for (std::size_t s : starts) {
        if (s >= begin && s < end) end = s;
      }
    }
    return {begin, end};
  };

  // Variables: comma separated identifiers.
  std::vector<std::string> variables;
  if (auto [b, e] = body("VARIABLES"); b < e) {
    for (std::size_t i = b; i < e; ++i) {
      const std::string& w = tokens[i].text;
      if (w == ",") continue;
      if (!is_b_identifier(w)) {
        problem(tokens[i].line, "unexpected '" + w + "' in VARIABLES");
        continue;
      }
      variables.push_back(w);
    }
  }
  auto mentions = [&](const std::string& clause, const std::string& name, bool assigned) {
    auto [b, e] = body(clause);
    for (std::size_t i = b; i < e; ++i) {
      if (tokens[i].text != name) continue;
      if (!assigned) return true;
      if (i + 2 < e && tokens[i + 1].text == ":" && tokens[i + 2].text == "=") return true;
    }
    return false;
  };
  for (const auto& v : variables) {
    if (!mentions("INVARIANT", v, false)) problems.push_back("variable " + v + " is not typed in INVARIANT");
    if (!mentions("INITIALISATION", v, true)) problems.push_back("variable " + v + " is not initialised");
  }

  // Events: name = block (; name = block)*
  auto [b, e] = body("EVENTS");
  if (b == 0 && e == 0) std::tie(b, e) = body("OPERATIONS");
  std::set<std::string> seen;
  std::size_t i = b;
  while (i < e) {
    if (!is_b_identifier(tokens[i].text) || i + 1 >= e || tokens[i + 1].text != "=") {
      problem(tokens[i].line, "expected 'name =' in event list");
      break;
    }
    const std::string name = tokens[i].text;
    if (!seen.insert(name).second) problem(tokens[i].line, "duplicate event " + name);
    result.events.push_back(name);
    i += 2;
    if (i >= e || (tokens[i].text != "ANY" && tokens[i].text != "SELECT" && tokens[i].text != "BEGIN")) {
      problem(i < e ? tokens[i].line : tokens[e - 1].line, "event " + name + " lacks a block");
      break;
    }
    std::size_t depth = 0;
    for (; i < e; ++i) {
      const std::string& w = tokens[i].text;
      if (w == "ANY" || w == "SELECT" || w == "BEGIN") ++depth;
      if (w == "END" && --depth == 0) break;
    }
    ++i;
    if (i < e) {
      if (tokens[i].text != ";") {
        problem(tokens[i].line, "expected ';' after event " + name);
        break;
      }
      ++i;
      if (i == e) problem(tokens[i - 1].line, "trailing ';' in event list");
    }
  }
  return result;
}

}  // namespace petriforge
