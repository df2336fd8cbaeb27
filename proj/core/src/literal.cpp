#include "cea/literal.hpp"

#include <cctype>

#include "cea/error.hpp"

namespace cea {

namespace {

std::string trim(std::string_view s) {
  size_t b = 0;
  size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

bool is_name(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '?')) {
      return false;
    }
  }
  return true;
}

}  // namespace

Literal Literal::parse(std::string_view text) {
  std::string s = trim(text);
  Literal lit;
  if (!s.empty() && s[0] == '!') {
    lit.negated = true;
    s = trim(std::string_view(s).substr(1));
  } else if (s.rfind("not ", 0) == 0) {
    lit.negated = true;
    s = trim(std::string_view(s).substr(4));
  }
  auto open = s.find('(');
  if (open == std::string::npos) {
    lit.predicate = s;
  } else {
    if (s.back() != ')') throw Error(ErrorCode::ParseError, "literal '" + s + "' lacks ')'");
    lit.predicate = trim(std::string_view(s).substr(0, open));
    std::string inner = s.substr(open + 1, s.size() - open - 2);
    size_t start = 0;
    while (start <= inner.size() && !trim(inner).empty()) {
      size_t comma = inner.find(',', start);
      std::string arg = trim(std::string_view(inner).substr(
          start, comma == std::string::npos ? std::string::npos : comma - start));
      if (!is_name(arg)) throw Error(ErrorCode::ParseError, "bad argument in literal '" + s + "'");
      lit.args.push_back(arg);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  if (!is_name(lit.predicate)) {
    throw Error(ErrorCode::ParseError, "bad predicate in literal '" + std::string(text) + "'");
  }
  return lit;
}

Literal Literal::positive() const {
  Literal l = *this;
  l.negated = false;
  return l;
}

std::string Literal::to_string() const {
  std::string s = negated ? "!" : "";
  s += predicate;
  if (!args.empty()) {
    s += '(';
    for (size_t i = 0; i < args.size(); ++i) {
      if (i) s += ',';
      s += args[i];
    }
    s += ')';
  }
  return s;
}

bool Literal::matches(const Literal& pattern) const {
  if (predicate != pattern.predicate || args.size() != pattern.args.size()) return false;
  for (size_t i = 0; i < args.size(); ++i) {
    if (pattern.args[i] != "?" && pattern.args[i] != args[i]) return false;
  }
  return true;
}

}  // namespace cea
