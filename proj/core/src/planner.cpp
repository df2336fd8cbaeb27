#include "cea/planner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <tuple>

#include "cea/error.hpp"

namespace cea {

namespace {

const Literal kTurnRobot = Literal::parse("turn(robot)");
const Literal kTurnHuman = Literal::parse("turn(human)");
const Literal kCued = Literal::parse("cued");

ComfortState apply_offsets(ComfortState c, const ActionSpec& a, const PersonalityVector& p) {
  for (const auto& [pole, delta] : a.comfort_offsets) {
    if (p.pole(pole.trait) == pole) c = apply_offset(c, pole.trait, delta);
  }
  return c;
}

// Placements and removals still needed; motivates are free.
int remaining_lower_bound(const PlanState& s) {
  return s.board.empty_count() + (s.misplaced() ? 1 : 0);
}

double heuristic(const PlanState& s, double lambda) {
  double effective = remaining_lower_bound(s) - (s.holds(kCued) ? 1 : 0);
  double slack = s.comfort.min_slack();
  if (std::isinf(slack)) slack = 0.0;
  return effective - lambda * slack;
}

std::optional<Trait> lowest_below_threshold(const ComfortState& c) {
  std::optional<Trait> out;
  for (Trait t : needs_motivation(c)) {
    if (!out || c.magnitude(t) < c.magnitude(*out)) out = t;
  }
  return out;
}

struct Candidate {
  std::vector<PlanStep> steps;  // inserted motivates, then the action
  std::vector<PlanState> states;
  double credit = 0.0;
  double f = 0.0;
  size_t index = 0;
};

class Search {
 public:
  Search(const ActionCatalog& catalog, const PersonalityVector& p, bool speaking,
         const PlannerConfig& config)
      : catalog_(catalog), p_(p), config_(config) {
    for (const ActionSpec& a : catalog.actions()) {
      if (a.kind == ActionKind::Motivational) continue;
      if (!speaking && a.modality == Modality::Verbal) continue;
      actions_.push_back(&a);
    }
  }

  bool run(const PlanState& s, int depth) {
    if (s.goal()) return true;
    if (++nodes_ > config_.node_limit) {
      exhausted_ = true;
      return false;
    }
    if (depth + remaining_lower_bound(s) > config_.horizon) return false;

    if (auto t = lowest_below_threshold(s.comfort)) {
      std::optional<PlanState> next = motivate(s, *t);
      if (!next) return false;
      return descend({PlanStep::motivate_step(*p_.pole(*t))}, {*next}, depth);
    }

    std::vector<Candidate> candidates;
    for (size_t i = 0; i < actions_.size(); ++i) {
      if (auto c = expand(s, *actions_[i], i)) candidates.push_back(std::move(*c));
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Candidate& a, const Candidate& b) {
                       return std::make_tuple(-a.credit, a.steps.size(), a.f, a.index) <
                              std::make_tuple(-b.credit, b.steps.size(), b.f, b.index);
                     });
    for (const Candidate& c : candidates) {
      if (descend(c.steps, c.states, depth)) return true;
      if (exhausted_) return false;
    }
    return false;
  }

  std::vector<PlanStep> path;
  std::vector<PlanState> states;
  bool exhausted() const { return exhausted_; }

 private:
  bool descend(const std::vector<PlanStep>& steps, const std::vector<PlanState>& next, int depth) {
    size_t mark = path.size();
    path.insert(path.end(), steps.begin(), steps.end());
    states.insert(states.end(), next.begin(), next.end());
    if (run(next.back(), depth + static_cast<int>(steps.size()))) return true;
    path.resize(mark);
    states.resize(mark);
    return false;
  }

  std::optional<PlanState> motivate(const PlanState& s, Trait t) const {
    PlanStep step = PlanStep::motivate_step(*p_.pole(t));
    PlanState next = apply_step(s, step, catalog_, p_, config_);
    if (!(next.comfort.magnitude(t) > s.comfort.magnitude(t))) return std::nullopt;
    return next;
  }

  std::optional<Candidate> expand(const PlanState& s, const ActionSpec& a, size_t index) const {
    if (!applicable(s, a)) return std::nullopt;
    std::optional<Cell> cell = candidate_cell(s, a);
    if (a.board_effect != BoardEffect::None && !cell) return std::nullopt;

    Candidate c;
    c.index = index;
    c.credit = a.credit(p_);
    PlanStep step{a.id, std::nullopt, cell};
    PlanState pre = s;
    PlanState post = apply_step(pre, step, catalog_, p_, config_);
    while (auto t = lowest_below_threshold(post.comfort)) {
      if (static_cast<int>(c.steps.size()) >= config_.max_motivates_per_step) return std::nullopt;
      std::optional<PlanState> recovered = motivate(pre, *t);
      if (!recovered) return std::nullopt;
      c.steps.push_back(PlanStep::motivate_step(*p_.pole(*t)));
      c.states.push_back(*recovered);
      pre = *recovered;
      post = apply_step(pre, step, catalog_, p_, config_);
    }
    c.steps.push_back(step);
    c.states.push_back(post);
    c.f = heuristic(post, config_.lambda);
    return c;
  }

  const ActionCatalog& catalog_;
  PersonalityVector p_;
  PlannerConfig config_;
  std::vector<const ActionSpec*> actions_;
  long nodes_ = 0;
  bool exhausted_ = false;
};

}  // namespace

Performer PlanState::turn() const {
  if (facts.holds(kTurnHuman)) return Performer::Human;
  return Performer::Robot;
}

bool PlanState::holds(const Literal& l) const {
  bool value = l.predicate == "misplaced" && l.args.empty() ? misplaced() : facts.holds(l);
  return l.negated ? !value : value;
}

bool PlanState::goal() const { return !misplaced() && is_complete_valid(board); }

Performer first_mover(const PersonalityVector& p) {
  return p.w_a() < 0.0 || p.w_e() > 0.0 ? Performer::Robot : Performer::Human;
}

PlanState initial_state(const PersonalityVector& p, const ComfortParams& params) {
  PlanState s;
  s.board = new_board();
  s.facts.assert_fact(first_mover(p) == Performer::Robot ? kTurnRobot : kTurnHuman);
  s.comfort = init_comfort(p, params);
  return s;
}

std::string PlanStep::to_string() const {
  if (motivate) return "Motivate(" + cea::to_string(*motivate) + ")";
  if (cell) return action + "@" + cell->to_string();
  return action;
}

int Plan::motivate_count() const {
  return static_cast<int>(std::count_if(steps.begin(), steps.end(),
                                        [](const PlanStep& s) { return s.is_motivate(); }));
}

int Plan::motivate_count(TraitPole pole) const {
  return static_cast<int>(std::count_if(steps.begin(), steps.end(), [&](const PlanStep& s) {
    return s.motivate == pole;
  }));
}

bool applicable(const PlanState& s, const ActionSpec& a) {
  return std::all_of(a.preconditions.begin(), a.preconditions.end(),
                     [&](const Literal& l) { return s.holds(l); });
}

std::optional<Cell> candidate_cell(const PlanState& s, const ActionSpec& a) {
  std::vector<Cell> cells;
  switch (a.board_effect) {
    case BoardEffect::None:
      return std::nullopt;
    case BoardEffect::PlaceOwnCorrect:
      cells = legal_cells(s.board, kRobotColor);
      break;
    case BoardEffect::PlaceOwnWrong:
      cells = wrong_cells(s.board, kRobotColor);
      break;
    case BoardEffect::PlaceHumansBlock:
      cells = legal_cells(s.board, kHumanColor);
      break;
    case BoardEffect::RemoveMisplaced:
      return s.board.misplaced();
  }
  if (cells.empty()) return std::nullopt;
  return cells.front();
}

PlanState apply_step(const PlanState& s, const PlanStep& step, const ActionCatalog& catalog,
                     const PersonalityVector& p, const PlannerConfig& config) {
  PlanState out = s;
  ++out.step;
  if (step.is_motivate()) {
    TraitPole pole = *step.motivate;
    if (p.pole(pole.trait) != pole) {
      throw Error(ErrorCode::Inconsistent, "Motivate(" + to_string(pole) + ") for an inactive pole");
    }
    out.comfort = apply_recovery(out.comfort, pole.trait, config.expected_reward);
    return out;
  }

  const ActionSpec& a = catalog.at(step.action);
  if (a.kind == ActionKind::Motivational) {
    throw Error(ErrorCode::Inconsistent, a.id + " is motivational; plans use Motivate tokens");
  }
  if (!applicable(s, a)) {
    throw Error(ErrorCode::Inconsistent, "preconditions of " + a.id + " do not hold");
  }
  auto need_cell = [&]() -> Cell {
    if (!step.cell) throw Error(ErrorCode::Inconsistent, a.id + " needs a cell");
    return *step.cell;
  };
  switch (a.board_effect) {
    case BoardEffect::None:
      break;
    case BoardEffect::PlaceOwnCorrect:
      out.board = apply_move(out.board, need_cell(), kRobotColor, false);
      break;
    case BoardEffect::PlaceOwnWrong: {
      Cell c = need_cell();
      auto wrong = wrong_cells(out.board, kRobotColor);
      if (std::find(wrong.begin(), wrong.end(), c) == wrong.end()) {
        throw Error(ErrorCode::IllegalPlacement, "cell " + c.to_string() + " is not a wrong cell");
      }
      out.board = apply_move(out.board, c, kRobotColor, true);
      break;
    }
    case BoardEffect::PlaceHumansBlock:
      out.board = apply_move(out.board, need_cell(), kHumanColor, false);
      break;
    case BoardEffect::RemoveMisplaced: {
      auto m = out.board.misplaced();
      if (!m) throw Error(ErrorCode::Inconsistent, "nothing to remove");
      out.board = remove_block(out.board, *m);
      break;
    }
  }
  for (const Literal& e : a.effects) out.facts.assert_fact(e);
  out.comfort = apply_offsets(apply_standard_decay(out.comfort, p), a, p);
  return out;
}

Plan plan(const PlanState& init, const ActionCatalog& catalog, const PersonalityVector& p,
          bool speaking, const PlannerConfig& config) {
  Search search(catalog, p, speaking, config);
  if (!search.run(init, 0)) {
    throw Error(ErrorCode::NoPlan, search.exhausted()
                                       ? "search node limit reached"
                                       : "no plan within horizon " + std::to_string(config.horizon));
  }
  Plan out;
  out.steps = std::move(search.path);
  out.predicted.reserve(search.states.size() + 1);
  out.predicted.push_back(init);
  for (auto& s : search.states) out.predicted.push_back(std::move(s));
  return out;
}

Plan plan(const PlanState& init, const ActionCatalog& catalog, const PersonalityVector& p,
          bool speaking, int horizon) {
  PlannerConfig config;
  config.horizon = horizon;
  return plan(init, catalog, p, speaking, config);
}

std::vector<ComfortState> simulate(const Plan& plan, const PlanState& init,
                                   const ActionCatalog& catalog, const PersonalityVector& p,
                                   const PlannerConfig& config) {
  std::vector<ComfortState> trace{init.comfort};
  PlanState s = init;
  for (const PlanStep& step : plan.steps) {
    s = apply_step(s, step, catalog, p, config);
    trace.push_back(s.comfort);
  }
  return trace;
}

bool same_state(const PlanState& a, const PlanState& b, double tol) {
  if (!(a.board == b.board) || !(a.facts == b.facts)) return false;
  for (Trait t : kAllTraits) {
    if (a.comfort.active(t) != b.comfort.active(t)) return false;
    if (std::abs(a.comfort.magnitude(t) - b.comfort.magnitude(t)) > tol) return false;
  }
  return true;
}

std::string pretty_print(const Plan& plan) {
  std::ostringstream os;
  if (plan.predicted.empty()) return "(empty plan)\n";
  const ComfortState& c0 = plan.predicted.front().comfort;
  auto traits = c0.active_traits();
  char buf[64];
  os << " 0. start";
  for (Trait t : traits) {
    std::snprintf(buf, sizeof buf, "  %c %+.2f", trait_letter(t), c0.signed_value(t));
    os << buf;
  }
  os << '\n';
  for (size_t i = 0; i < plan.steps.size(); ++i) {
    const ComfortState& before = plan.predicted[i].comfort;
    const ComfortState& after = plan.predicted[i + 1].comfort;
    std::snprintf(buf, sizeof buf, "%2zu. ", i + 1);
    os << buf << plan.steps[i].to_string();
    for (Trait t : traits) {
      std::snprintf(buf, sizeof buf, "  %c %+.2f (%+.2f)", trait_letter(t), after.signed_value(t),
                    after.signed_value(t) - before.signed_value(t));
      os << buf;
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace cea
