#include "cea/game.hpp"

#include "cea/error.hpp"

namespace cea {

Color opposite(Color c) {
  switch (c) {
    case Color::Red: return Color::Blue;
    case Color::Blue: return Color::Red;
    case Color::Empty: return Color::Empty;
  }
  return Color::Empty;
}

char to_char(Color c) {
  switch (c) {
    case Color::Red: return 'R';
    case Color::Blue: return 'B';
    case Color::Empty: return '.';
  }
  return '?';
}

std::string Cell::to_string() const {
  return "(" + std::to_string(row) + "," + std::to_string(col) + ")";
}

int Board::empty_count() const {
  int n = 0;
  for (Color c : cells_) n += c == Color::Empty ? 1 : 0;
  return n;
}

std::string Board::to_string() const {
  std::string s;
  for (Color c : cells_) s.push_back(to_char(c));
  return s;
}

Board Board::from_string(const std::string& s) {
  if (s.size() != kCells) throw Error(ErrorCode::SchemaError, "board string must have 9 characters");
  Board b;
  for (size_t i = 0; i < s.size(); ++i) {
    switch (s[i]) {
      case '.': b.cells_[i] = Color::Empty; break;
      case 'R': b.cells_[i] = Color::Red; break;
      case 'B': b.cells_[i] = Color::Blue; break;
      default: throw Error(ErrorCode::SchemaError, "bad board character '" + std::string(1, s[i]) + "'");
    }
  }
  return b;
}

Color TargetConfig::expected(Cell c) const {
  if (!center) return Color::Empty;
  return c.even() ? *center : opposite(*center);
}

Board new_board() { return Board{}; }

TargetConfig infer_target(const Board& b) {
  TargetConfig t;
  for (int i = 0; i < kCells; ++i) {
    Cell cell = Cell::from_index(i);
    Color c = b.at(cell);
    if (c == Color::Empty || b.misplaced() == cell) continue;
    Color implied = cell.even() ? c : opposite(c);
    if (!t.center) {
      t.center = implied;
    } else if (*t.center != implied) {
      throw Error(ErrorCode::Inconsistent,
                  "board " + b.to_string() + " matches neither valid configuration");
    }
  }
  return t;
}

Board apply_move(const Board& b, Cell cell, Color color, bool allow_wrong) {
  if (cell.row < 0 || cell.row > 2 || cell.col < 0 || cell.col > 2 || color == Color::Empty) {
    throw Error(ErrorCode::IllegalPlacement, "invalid cell or color");
  }
  if (b.at(cell) != Color::Empty) {
    throw Error(ErrorCode::CellOccupied, "cell " + cell.to_string() + " is occupied");
  }
  TargetConfig target = infer_target(b);
  bool contradicts = target.center && target.expected(cell) != color;
  if (contradicts && !allow_wrong) {
    throw Error(ErrorCode::IllegalPlacement,
                std::string(1, to_char(color)) + " at " + cell.to_string() +
                    " contradicts the target configuration");
  }
  if (contradicts && b.misplaced()) {
    throw Error(ErrorCode::IllegalPlacement, "board already holds a misplaced block");
  }
  Board out = b;
  out.cells_[static_cast<size_t>(cell.index())] = color;
  if (contradicts) out.misplaced_ = cell;
  return out;
}

Board remove_block(const Board& b, Cell cell) {
  if (b.at(cell) == Color::Empty) {
    throw Error(ErrorCode::CellEmpty, "cell " + cell.to_string() + " is empty");
  }
  Board out = b;
  out.cells_[static_cast<size_t>(cell.index())] = Color::Empty;
  if (out.misplaced_ == cell) out.misplaced_.reset();
  return out;
}

bool is_complete_valid(const Board& b) {
  for (int i = 0; i < kCells; ++i) {
    Cell c = Cell::from_index(i);
    Color color = b.at(c);
    if (color == Color::Empty) return false;
    if (c.col < 2 && b.at({c.row, c.col + 1}) == color) return false;
    if (c.row < 2 && b.at({c.row + 1, c.col}) == color) return false;
  }
  return true;
}

std::vector<Board> enumerate_valid_full_boards() {
  std::vector<Board> out;
  for (unsigned mask = 0; mask < (1u << kCells); ++mask) {
    std::string s;
    for (int i = 0; i < kCells; ++i) s.push_back((mask >> i) & 1u ? 'B' : 'R');
    Board b = Board::from_string(s);
    if (is_complete_valid(b)) out.push_back(b);
  }
  return out;
}

std::vector<Cell> legal_cells(const Board& b, Color color) {
  std::vector<Cell> out;
  TargetConfig target = infer_target(b);
  for (int i = 0; i < kCells; ++i) {
    Cell c = Cell::from_index(i);
    if (b.at(c) != Color::Empty) continue;
    if (target.center ? target.expected(c) == color : c.even()) out.push_back(c);
  }
  return out;
}

std::vector<Cell> wrong_cells(const Board& b, Color color) {
  std::vector<Cell> out;
  TargetConfig target = infer_target(b);
  if (!target.center) return out;
  for (int i = 0; i < kCells; ++i) {
    Cell c = Cell::from_index(i);
    if (b.at(c) == Color::Empty && target.expected(c) != color) out.push_back(c);
  }
  return out;
}

}  // namespace cea
