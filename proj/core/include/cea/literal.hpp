#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace cea {

// A predicate literal such as turn(human) or !misplaced.
struct Literal {
  std::string predicate;
  std::vector<std::string> args;
  bool negated = false;

  // Accepts "name", "name(a, b)", "!name(...)" and "not name(...)".
  // Throws Error{ParseError}.
  static Literal parse(std::string_view text);

  Literal positive() const;
  // Canonical form without spaces, e.g. "!turn(robot)".
  std::string to_string() const;
  // Pattern match: same predicate and arity, "?" matches any argument.
  bool matches(const Literal& pattern) const;

  friend auto operator<=>(const Literal&, const Literal&) = default;
};

}  // namespace cea
