#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cea/actions.hpp"
#include "cea/comfort.hpp"
#include "cea/game.hpp"
#include "cea/memory.hpp"
#include "cea/personality.hpp"

namespace cea {

// Symbolic board and turn state plus the predicted comfort fluents.
struct PlanState {
  Board board;
  FactStore facts;
  ComfortState comfort;  // prediction, never the executed actuals
  int step = 0;

  // Whose turn the facts say it is; Robot if neither is asserted.
  Performer turn() const;
  bool misplaced() const { return board.misplaced().has_value(); }
  bool holds(const Literal& l) const;
  bool goal() const;
};

// The robot moves first when it is disagreeable or extroverted.
Performer first_mover(const PersonalityVector& p);

// Empty board, facts {turn(first mover)}, fresh comfort.
PlanState initial_state(const PersonalityVector& p, const ComfortParams& params = {});

// Either a concrete action or the abstract Motivate(pole) token.
struct PlanStep {
  std::string action;
  std::optional<TraitPole> motivate;
  std::optional<Cell> cell;

  static PlanStep motivate_step(TraitPole pole) { return {"", pole, std::nullopt}; }
  bool is_motivate() const { return motivate.has_value(); }
  std::string to_string() const;

  friend bool operator==(const PlanStep&, const PlanStep&) = default;
};

struct PlannerConfig {
  int horizon = 40;
  double lambda = 0.1;
  // Reward a Motivate step is predicted to earn; recovery is g times this.
  double expected_reward = 2.0;
  int max_motivates_per_step = 4;
  long node_limit = 200000;
};

struct Plan {
  std::vector<PlanStep> steps;
  // predicted[0] is the initial state, predicted[i + 1] follows steps[i].
  std::vector<PlanState> predicted;

  bool empty() const { return steps.empty(); }
  int motivate_count() const;
  int motivate_count(TraitPole pole) const;
};

// One transition of the planning domain. Throws Error{Inconsistent} when a
// precondition fails, Error{MissingEntry} for an unknown action, or the
// board errors of apply_move / remove_block.
PlanState apply_step(const PlanState& s, const PlanStep& step, const ActionCatalog& catalog,
                     const PersonalityVector& p, const PlannerConfig& config = {});

// Preconditions of a concrete action against a state.
bool applicable(const PlanState& s, const ActionSpec& a);

// Cell the planner would use for a board-changing action; nullopt when the
// action needs a cell and none is available.
std::optional<Cell> candidate_cell(const PlanState& s, const ActionSpec& a);

// Greedy best-first depth-first search with backtracking. Throws
// Error{NoPlan}.
Plan plan(const PlanState& init, const ActionCatalog& catalog, const PersonalityVector& p,
          bool speaking, const PlannerConfig& config = {});
Plan plan(const PlanState& init, const ActionCatalog& catalog, const PersonalityVector& p,
          bool speaking, int horizon);

inline Plan replan(const PlanState& current, const ActionCatalog& catalog,
                   const PersonalityVector& p, bool speaking, const PlannerConfig& config = {}) {
  return plan(current, catalog, p, speaking, config);
}

// Predicted comfort after each prefix of the plan, starting with init.
std::vector<ComfortState> simulate(const Plan& plan, const PlanState& init,
                                   const ActionCatalog& catalog, const PersonalityVector& p,
                                   const PlannerConfig& config = {});

// Same symbolic state, and comfort magnitudes within tol.
bool same_state(const PlanState& a, const PlanState& b, double tol = 1e-9);

// Numbered steps with predicted signed comfort and its change per trait.
std::string pretty_print(const Plan& plan);

}  // namespace cea
