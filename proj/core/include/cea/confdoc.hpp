#pragma once

// Structured text documents: the on-disk format shared by every
// configuration, catalogue, template, profile and memory-dump file.
//
//   # comment
//   key = value                 scalar: bare word, number or "quoted string"
//   key = [a, b, [1, 2]]        lists nest
//   type name { ... }           named block
//   type { ... }                anonymous block
//
// Bare words may contain letters, digits and _ - + . ( ) ? ! : / *

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cea::confdoc {

struct Position {
  int line = 0;
  int column = 0;
};

std::string to_string(Position pos);

class Value {
 public:
  Value() = default;
  static Value scalar(std::string text, bool quoted = false, Position pos = {});
  static Value list(std::vector<Value> items, Position pos = {});

  bool is_list() const { return is_list_; }
  bool quoted() const { return quoted_; }
  Position position() const { return pos_; }

  // Accessors throw SchemaError naming the position on a type mismatch.
  const std::string& str() const;
  const std::vector<Value>& items() const;
  double number() const;
  long long integer() const;
  bool boolean() const;
  std::vector<double> numbers() const;
  std::vector<std::string> strings() const;

  friend bool operator==(const Value&, const Value&);

 private:
  bool is_list_ = false;
  bool quoted_ = false;
  std::string text_;
  std::vector<Value> items_;
  Position pos_;
};

struct Field {
  std::string key;
  Value value;
  Position pos;
};

struct Block {
  std::string type;
  std::string name;
  Position pos;
  std::vector<Field> fields;
  std::vector<Block> children;

  const Value* find(std::string_view key) const;
  // Throws SchemaError when the key is missing.
  const Value& get(std::string_view key) const;
  std::vector<const Block*> children_of(std::string_view type) const;
  const Block* child(std::string_view type) const;

  Block& set(std::string key, Value value);
  Block& add_child(Block child);
};

// Throws Error{ParseError} with "line:column" in the message.
Block parse(std::string_view text);
Block parse_file(const std::string& path);

std::string write(const Block& root);

// Formatting helpers for writers.
std::string format_number(double v);
Value number_value(double v);
Value word(std::string text);
Value text(std::string text);

}  // namespace cea::confdoc
