#include "cea/confdoc.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "cea/error.hpp"

namespace cea::confdoc {

std::string to_string(Position pos) {
  return std::to_string(pos.line) + ":" + std::to_string(pos.column);
}

namespace {

[[noreturn]] void schema_fail(Position pos, const std::string& msg) {
  throw Error(ErrorCode::SchemaError, "at " + to_string(pos) + ": " + msg);
}

bool is_bare_char(char c) {
  if (std::isalnum(static_cast<unsigned char>(c))) return true;
  switch (c) {
    case '_': case '-': case '+': case '.': case '(': case ')':
    case '?': case '!': case ':': case '/': case '*':
      return true;
    default:
      return false;
  }
}

enum class Tok { Word, String, Equals, LBrace, RBrace, LBracket, RBracket, Comma, Semi, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  Position pos;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_space();
    Token t;
    t.pos = {line_, col_};
    if (i_ >= src_.size()) return t;
    char c = src_[i_];
    auto single = [&](Tok k) {
      advance();
      t.kind = k;
      t.text = std::string(1, c);
      return t;
    };
    switch (c) {
      case '=': return single(Tok::Equals);
      case '{': return single(Tok::LBrace);
      case '}': return single(Tok::RBrace);
      case '[': return single(Tok::LBracket);
      case ']': return single(Tok::RBracket);
      case ',': return single(Tok::Comma);
      case ';': return single(Tok::Semi);
      case '"': return string_token(t);
      default: break;
    }
    if (!is_bare_char(c)) {
      throw Error(ErrorCode::ParseError,
                  "at " + to_string(t.pos) + ": unexpected character '" + std::string(1, c) + "'");
    }
    t.kind = Tok::Word;
    while (i_ < src_.size() && is_bare_char(src_[i_])) {
      t.text.push_back(src_[i_]);
      advance();
    }
    return t;
  }

 private:
  void advance() {
    if (src_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++i_;
  }

  void skip_space() {
    while (i_ < src_.size()) {
      char c = src_[i_];
      if (c == '#') {
        while (i_ < src_.size() && src_[i_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  Token string_token(Token& t) {
    advance();  // opening quote
    t.kind = Tok::String;
    while (true) {
      if (i_ >= src_.size()) {
        throw Error(ErrorCode::ParseError, "at " + to_string(t.pos) + ": unterminated string");
      }
      char c = src_[i_];
      if (c == '"') {
        advance();
        return t;
      }
      if (c == '\\') {
        advance();
        if (i_ >= src_.size()) continue;
        char e = src_[i_];
        t.text.push_back(e == 'n' ? '\n' : e == 't' ? '\t' : e);
        advance();
        continue;
      }
      t.text.push_back(c);
      advance();
    }
  }

  std::string_view src_;
  size_t i_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) { bump(); }

  Block document() {
    Block root;
    root.pos = {1, 1};
    body(root, /*top=*/true);
    return root;
  }

 private:
  void bump() { cur_ = lex_.next(); }

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::ParseError, "at " + to_string(cur_.pos) + ": " + msg);
  }

  void body(Block& block, bool top) {
    while (true) {
      if (cur_.kind == Tok::Semi) {
        bump();
        continue;
      }
      if (cur_.kind == Tok::End) {
        if (!top) fail("missing '}' to close block '" + block.type + "'");
        return;
      }
      if (cur_.kind == Tok::RBrace) {
        if (top) fail("unmatched '}'");
        bump();
        return;
      }
      if (cur_.kind != Tok::Word) fail("expected a key or block type, got '" + cur_.text + "'");
      Token head = cur_;
      bump();
      if (cur_.kind == Tok::Equals) {
        bump();
        block.fields.push_back(Field{head.text, value(), head.pos});
        continue;
      }
      Block child;
      child.type = head.text;
      child.pos = head.pos;
      if (cur_.kind == Tok::Word || cur_.kind == Tok::String) {
        child.name = cur_.text;
        bump();
      }
      if (cur_.kind != Tok::LBrace) fail("expected '=' or '{' after '" + head.text + "'");
      bump();
      body(child, false);
      block.children.push_back(std::move(child));
    }
  }

  Value value() {
    Position pos = cur_.pos;
    if (cur_.kind == Tok::Word || cur_.kind == Tok::String) {
      Value v = Value::scalar(cur_.text, cur_.kind == Tok::String, pos);
      bump();
      return v;
    }
    if (cur_.kind != Tok::LBracket) fail("expected a value");
    bump();
    std::vector<Value> items;
    while (cur_.kind != Tok::RBracket) {
      items.push_back(value());
      if (cur_.kind == Tok::Comma) {
        bump();
      } else if (cur_.kind != Tok::RBracket) {
        fail("expected ',' or ']' in list");
      }
    }
    bump();
    return Value::list(std::move(items), pos);
  }

  Lexer lex_;
  Token cur_;
};

bool needs_quotes(const std::string& s) {
  if (s.empty()) return true;
  for (char c : s) {
    if (!is_bare_char(c)) return true;
  }
  return false;
}

void write_value(std::ostream& os, const Value& v) {
  if (v.is_list()) {
    os << '[';
    for (size_t i = 0; i < v.items().size(); ++i) {
      if (i) os << ", ";
      write_value(os, v.items()[i]);
    }
    os << ']';
    return;
  }
  const std::string& s = v.str();
  if (!v.quoted() && !needs_quotes(s)) {
    os << s;
    return;
  }
  os << '"';
  for (char c : s) {
    if (c == '"' || c == '\\') os << '\\';
    if (c == '\n') {
      os << "\\n";
      continue;
    }
    os << c;
  }
  os << '"';
}

void write_block(std::ostream& os, const Block& b, int depth) {
  std::string pad(static_cast<size_t>(depth) * 2, ' ');
  for (const auto& f : b.fields) {
    os << pad << f.key << " = ";
    write_value(os, f.value);
    os << '\n';
  }
  for (const auto& c : b.children) {
    os << pad << c.type;
    if (!c.name.empty()) {
      os << ' ';
      write_value(os, Value::scalar(c.name));
    }
    os << " {\n";
    write_block(os, c, depth + 1);
    os << pad << "}\n";
  }
}

}  // namespace

Value Value::scalar(std::string text, bool quoted, Position pos) {
  Value v;
  v.text_ = std::move(text);
  v.quoted_ = quoted;
  v.pos_ = pos;
  return v;
}

Value Value::list(std::vector<Value> items, Position pos) {
  Value v;
  v.is_list_ = true;
  v.items_ = std::move(items);
  v.pos_ = pos;
  return v;
}

const std::string& Value::str() const {
  if (is_list_) schema_fail(pos_, "expected a scalar, got a list");
  return text_;
}

const std::vector<Value>& Value::items() const {
  if (!is_list_) schema_fail(pos_, "expected a list, got '" + text_ + "'");
  return items_;
}

double Value::number() const {
  const std::string& s = str();
  double out = 0.0;
  const char* first = s.data();
  if (!s.empty() && s.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), out);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    schema_fail(pos_, "expected a number, got '" + s + "'");
  }
  return out;
}

long long Value::integer() const {
  const std::string& s = str();
  long long out = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    schema_fail(pos_, "expected an integer, got '" + s + "'");
  }
  return out;
}

bool Value::boolean() const {
  const std::string& s = str();
  if (s == "true" || s == "on" || s == "yes") return true;
  if (s == "false" || s == "off" || s == "no") return false;
  schema_fail(pos_, "expected a boolean, got '" + s + "'");
}

std::vector<double> Value::numbers() const {
  std::vector<double> out;
  for (const auto& v : items()) out.push_back(v.number());
  return out;
}

std::vector<std::string> Value::strings() const {
  std::vector<std::string> out;
  for (const auto& v : items()) out.push_back(v.str());
  return out;
}

bool operator==(const Value& a, const Value& b) {
  if (a.is_list_ != b.is_list_) return false;
  return a.is_list_ ? a.items_ == b.items_ : a.text_ == b.text_;
}

const Value* Block::find(std::string_view key) const {
  for (const auto& f : fields) {
    if (f.key == key) return &f.value;
  }
  return nullptr;
}

const Value& Block::get(std::string_view key) const {
  if (const Value* v = find(key)) return *v;
  std::string where = type + (name.empty() ? "" : " '" + name + "'");
  schema_fail(pos, where + " is missing required key '" + std::string(key) + "'");
}

std::vector<const Block*> Block::children_of(std::string_view t) const {
  std::vector<const Block*> out;
  for (const auto& c : children) {
    if (c.type == t) out.push_back(&c);
  }
  return out;
}

const Block* Block::child(std::string_view t) const {
  for (const auto& c : children) {
    if (c.type == t) return &c;
  }
  return nullptr;
}

Block& Block::set(std::string key, Value value) {
  for (auto& f : fields) {
    if (f.key == key) {
      f.value = std::move(value);
      return *this;
    }
  }
  fields.push_back(Field{std::move(key), std::move(value), {}});
  return *this;
}

Block& Block::add_child(Block c) {
  children.push_back(std::move(c));
  return children.back();
}

Block parse(std::string_view text) { return Parser(text).document(); }

Block parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse(ss.str());
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.detail());
  }
}

std::string write(const Block& root) {
  std::ostringstream os;
  write_block(os, root, 0);
  return os.str();
}

std::string format_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

Value number_value(double v) { return Value::scalar(format_number(v)); }
Value word(std::string t) { return Value::scalar(std::move(t)); }
Value text(std::string t) { return Value::scalar(std::move(t), true); }

}  // namespace cea::confdoc
