#include <doctest.h>

#include <set>

#include "cea/error.hpp"
#include "cea/game.hpp"
#include "cea/rng.hpp"

using namespace cea;

namespace {

// Independent reference: a full board is valid iff no orthogonal neighbours
// match, checked over a plain 3x3 char grid.
bool oracle_valid(const std::string& s) {
  if (s.find('.') != std::string::npos) return false;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      char x = s[static_cast<size_t>(r * 3 + c)];
      if (c < 2 && x == s[static_cast<size_t>(r * 3 + c + 1)]) return false;
      if (r < 2 && x == s[static_cast<size_t>((r + 1) * 3 + c)]) return false;
    }
  return true;
}

std::string coloring(int mask) {
  std::string s(9, 'R');
  for (int i = 0; i < 9; ++i)
    if (mask & (1 << i)) s[static_cast<size_t>(i)] = 'B';
  return s;
}

std::string swap_colors(std::string s) {
  for (char& c : s) c = c == 'R' ? 'B' : c == 'B' ? 'R' : c;
  return s;
}

}  // namespace

TEST_SUITE("game") {

TEST_CASE("new board") {
  Board b = new_board();
  CHECK(b.empty_count() == 9);
  CHECK(b.to_string() == ".........");
  CHECK_FALSE(is_complete_valid(b));
  CHECK_FALSE(infer_target(b).center.has_value());
}

TEST_CASE("target inference") {
  CHECK(infer_target(apply_move(new_board(), {1, 1}, Color::Blue, false)).center == Color::Blue);
  CHECK(infer_target(apply_move(new_board(), {0, 0}, Color::Red, false)).center == Color::Red);

  // Blue at an edge: the valid full board holding it has Red in the center.
  Board edge = apply_move(new_board(), {0, 1}, Color::Blue, true);
  std::string with_blue_edge;
  for (int m = 0; m < 512; ++m) {
    std::string s = coloring(m);
    if (oracle_valid(s) && s[1] == 'B') with_blue_edge = s;
  }
  CHECK(infer_target(edge).center == (with_blue_edge[4] == 'R' ? Color::Red : Color::Blue));
  CHECK(infer_target(edge).center == Color::Red);
}

TEST_CASE("placement rules") {
  Board blue_center = apply_move(new_board(), {1, 1}, Color::Blue, false);
  try {
    apply_move(blue_center, {0, 0}, Color::Red, false);
    FAIL("expected IllegalPlacement");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IllegalPlacement);
  }
  CHECK_NOTHROW(apply_move(blue_center, {0, 1}, Color::Red, false));
  try {
    apply_move(blue_center, {1, 1}, Color::Red, true);
    FAIL("expected CellOccupied");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CellOccupied);
  }
  Board wrong = apply_move(blue_center, {0, 0}, Color::Red, true);
  CHECK(wrong.misplaced() == Cell{0, 0});
  CHECK(infer_target(wrong).center == Color::Blue);
  // Only one misplacement at a time.
  CHECK_THROWS_AS(apply_move(wrong, {2, 2}, Color::Red, true), Error);
}

TEST_CASE("removal") {
  Board b = apply_move(new_board(), {1, 1}, Color::Red, false);
  Board removed = remove_block(b, {1, 1});
  CHECK(removed == new_board());
  CHECK(apply_move(removed, {1, 1}, Color::Red, false) == b);
  try {
    remove_block(b, {0, 0});
    FAIL("expected CellEmpty");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CellEmpty);
  }
  Board wrong = apply_move(b, {0, 0}, Color::Blue, true);
  CHECK_FALSE(remove_block(wrong, {0, 0}).misplaced().has_value());
}

TEST_CASE("full boards agree with the brute-force reference") {
  auto valid = enumerate_valid_full_boards();
  REQUIRE(valid.size() == 2);
  CHECK(valid[0].to_string() == swap_colors(valid[1].to_string()));
  std::set<std::string> oracle;
  for (int m = 0; m < 512; ++m) {
    std::string s = coloring(m);
    CHECK(is_complete_valid(Board::from_string(s)) == oracle_valid(s));
    if (oracle_valid(s)) oracle.insert(s);
  }
  CHECK(oracle == std::set<std::string>{valid[0].to_string(), valid[1].to_string()});
  for (const auto& b : valid) {
    std::string s = b.to_string();
    char center = s[4];
    CHECK(std::count(s.begin(), s.end(), center) == 5);
    for (int i = 0; i < 9; ++i) {
      Cell c = Cell::from_index(i);
      CHECK((s[static_cast<size_t>(i)] == center) == c.even());
    }
  }
  Board adjacent = Board::from_string("RRBBRBRBR");
  CHECK_FALSE(is_complete_valid(adjacent));
}

TEST_CASE("legal moves keep the inferred target") {
  Rng rng(5);
  for (int game = 0; game < 300; ++game) {
    Board b = new_board();
    Color turn = rng.bernoulli(0.5) ? Color::Red : Color::Blue;
    std::optional<Color> target;
    while (b.empty_count() > 0) {
      auto cells = legal_cells(b, turn);
      if (b.is_empty()) {
        for (Cell c : cells) CHECK(c.even());
        CHECK(cells.size() == 5);
      }
      REQUIRE_FALSE(cells.empty());
      b = apply_move(b, cells[rng.below(cells.size())], turn, false);
      auto now = infer_target(b).center;
      REQUIRE(now.has_value());
      if (target) CHECK(now == target);
      target = now;
      for (Cell w : wrong_cells(b, turn)) CHECK_THROWS_AS(apply_move(b, w, turn, false), Error);
      turn = opposite(turn);
    }
    CHECK(is_complete_valid(b));
  }
}

TEST_CASE("board strings") {
  CHECK(Board::from_string("R...B....").at({1, 1}) == Color::Blue);
  CHECK_THROWS_AS(Board::from_string("R..."), Error);
  CHECK_THROWS_AS(Board::from_string("X........"), Error);
}

}
