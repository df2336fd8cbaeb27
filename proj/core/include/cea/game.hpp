#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace cea {

enum class Color { Empty, Red, Blue };

// The robot plays red, the human blue.
inline constexpr Color kRobotColor = Color::Red;
inline constexpr Color kHumanColor = Color::Blue;

Color opposite(Color c);
char to_char(Color c);  // '.', 'R', 'B'

struct Cell {
  int row = 0;
  int col = 0;

  int index() const { return row * 3 + col; }
  bool even() const { return (row + col) % 2 == 0; }
  static Cell from_index(int i) { return {i / 3, i % 3}; }
  std::string to_string() const;

  friend auto operator<=>(const Cell&, const Cell&) = default;
};

inline constexpr int kCells = 9;

// 3x3 grid. A board may carry one tagged misplacement: a block knowingly
// put where the target configuration forbids it.
class Board {
 public:
  Board() { cells_.fill(Color::Empty); }

  Color at(Cell c) const { return cells_[static_cast<size_t>(c.index())]; }
  const std::array<Color, kCells>& cells() const { return cells_; }
  int empty_count() const;
  bool is_empty() const { return empty_count() == kCells; }
  std::optional<Cell> misplaced() const { return misplaced_; }

  // Row-major over {., R, B}. The misplacement tag is not part of it.
  std::string to_string() const;
  // Throws Error{SchemaError}.
  static Board from_string(const std::string& s);

  friend bool operator==(const Board&, const Board&) = default;

 private:
  friend Board apply_move(const Board&, Cell, Color, bool);
  friend Board remove_block(const Board&, Cell);

  std::array<Color, kCells> cells_{};
  std::optional<Cell> misplaced_;
};

// Center color of the target checkerboard; nullopt while unknown.
struct TargetConfig {
  std::optional<Color> center;

  // Color cell `c` must hold under this target; Empty while unknown.
  Color expected(Cell c) const;

  friend bool operator==(const TargetConfig&, const TargetConfig&) = default;
};

Board new_board();

// Occupied cells other than the tagged misplacement decide the target by
// parity. Throws Error{Inconsistent} if they disagree.
TargetConfig infer_target(const Board& b);

// Throws Error{CellOccupied}, or Error{IllegalPlacement} when allow_wrong is
// false and the move contradicts the inferred target. With allow_wrong a
// contradicting placement is accepted and tagged as the misplacement.
Board apply_move(const Board& b, Cell cell, Color color, bool allow_wrong);

// Throws Error{CellEmpty}. Removing the tagged cell clears the tag.
Board remove_block(const Board& b, Cell cell);

// Full, and no two orthogonal neighbours share a color.
bool is_complete_valid(const Board& b);

// Brute force over all 2^9 two-colorings of a full board.
std::vector<Board> enumerate_valid_full_boards();

// Empty cells where `color` may legally go. On an empty board only cells of
// even parity qualify: the first mover owns five blocks, so its color is the
// center color and alternation can always complete.
std::vector<Cell> legal_cells(const Board& b, Color color);

// Empty cells where `color` contradicts the known target.
std::vector<Cell> wrong_cells(const Board& b, Color color);

}  // namespace cea
