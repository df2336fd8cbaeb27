#include "cea/plan_validator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <string>

namespace cea {

namespace {

// Board as 9 chars over '.', 'R', 'B' with an optional misplaced index.
struct Grid {
  std::array<char, 9> c{};
  int misplaced = -1;

  // Occupied, correctly placed cells agree with `color` at `i` under the
  // checkerboard rule: same parity means same color.
  bool consistent(int i, char color) const {
    for (int j = 0; j < 9; ++j) {
      if (j == i || j == misplaced || c[j] == '.') continue;
      bool same_parity = ((i / 3 + i % 3) % 2) == ((j / 3 + j % 3) % 2);
      if (same_parity != (c[j] == color)) return false;
    }
    return true;
  }
  bool any_placed() const {
    for (int j = 0; j < 9; ++j) {
      if (j != misplaced && c[j] != '.') return true;
    }
    return false;
  }
  bool full_and_valid() const {
    if (misplaced >= 0) return false;
    for (int i = 0; i < 9; ++i) {
      if (c[i] == '.') return false;
      int r = i / 3, col = i % 3;
      if (col < 2 && c[i] == c[i + 1]) return false;
      if (r < 2 && c[i] == c[i + 3]) return false;
    }
    return true;
  }
};

struct Replay {
  Grid grid;
  std::set<std::string> facts;
  std::array<double, 3> m{};
  std::array<bool, 3> active{};
};

bool literal_holds(const Replay& r, const Literal& l) {
  bool v = (l.predicate == "misplaced" && l.args.empty())
               ? r.grid.misplaced >= 0
               : r.facts.contains(l.positive().to_string());
  return l.negated ? !v : v;
}

ValidationResult fail(int step, std::string reason) { return {false, step, std::move(reason)}; }

}  // namespace

ValidationResult validate_plan(const Plan& plan, const PlanState& init,
                               const ActionCatalog& catalog, const PersonalityVector& p,
                               bool speaking, const PlannerConfig& config) {
  const ComfortParams& cp = init.comfort.params();
  Replay r;
  for (int i = 0; i < 9; ++i) {
    Color col = init.board.cells()[static_cast<size_t>(i)];
    r.grid.c[static_cast<size_t>(i)] = col == Color::Empty ? '.' : col == kRobotColor ? 'R' : 'B';
  }
  if (auto mp = init.board.misplaced()) r.grid.misplaced = mp->index();
  for (const Literal& f : init.facts.facts()) r.facts.insert(f.to_string());
  for (Trait t : kAllTraits) {
    size_t k = static_cast<size_t>(t);
    r.active[k] = p.weight(t) != 0.0;
    r.m[k] = init.comfort.magnitude(t);
    if (r.active[k] != init.comfort.active(t)) {
      return fail(-1, "initial comfort channels do not match the personality");
    }
  }
  if (plan.predicted.size() != plan.steps.size() + 1) {
    return fail(-1, "predicted trace length does not match the step count");
  }

  auto below = [&](const Replay& s) {
    for (size_t k = 0; k < 3; ++k) {
      if (s.active[k] && s.m[k] < cp.threshold - kThresholdTolerance) return true;
    }
    return false;
  };
  auto is_motivate = [&](size_t i) { return i < plan.steps.size() && plan.steps[i].is_motivate(); };

  if (below(r) && !is_motivate(0)) return fail(0, "starts below threshold without motivating");

  for (size_t i = 0; i < plan.steps.size(); ++i) {
    const PlanStep& step = plan.steps[i];
    int si = static_cast<int>(i);
    if (step.is_motivate()) {
      TraitPole pole = *step.motivate;
      size_t k = static_cast<size_t>(pole.trait);
      double w = p.weight(pole.trait);
      bool matches = w != 0.0 && ((w > 0.0) == (pole.sign == Sign::High));
      if (!matches) return fail(si, "Motivate(" + to_string(pole) + ") for a pole the agent lacks");
      r.m[k] = std::clamp(r.m[k] + cp.recovery_gain * config.expected_reward, 0.0, cp.initial);
      if (below(r) && !is_motivate(i + 1)) {
        return fail(si, "still below threshold after the last motivate");
      }
    } else {
      const ActionSpec* a = catalog.find(step.action);
      if (!a) return fail(si, "unknown action " + step.action);
      if (a->kind == ActionKind::Motivational) return fail(si, "concrete motivational action in plan");
      if (!speaking && a->modality == Modality::Verbal) {
        return fail(si, "verbal action " + a->id + " in a non-speaking session");
      }
      for (const Literal& l : a->preconditions) {
        if (!literal_holds(r, l)) return fail(si, "precondition " + l.to_string() + " of " + a->id);
      }
      auto place = [&](char color, bool wrong) -> std::string {
        if (!step.cell) return "no cell";
        int idx = step.cell->index();
        if (r.grid.c[static_cast<size_t>(idx)] != '.') return "cell occupied";
        bool ok = r.grid.consistent(idx, color);
        if (!r.grid.any_placed() && !step.cell->even()) ok = false;
        if (wrong) {
          if (ok || !r.grid.any_placed() || r.grid.misplaced >= 0) return "not a wrong cell";
          r.grid.misplaced = idx;
        } else if (!ok) {
          return "placement contradicts the target";
        }
        r.grid.c[static_cast<size_t>(idx)] = color;
        return "";
      };
      std::string err;
      switch (a->board_effect) {
        case BoardEffect::None:
          break;
        case BoardEffect::PlaceOwnCorrect:
          err = place('R', false);
          break;
        case BoardEffect::PlaceOwnWrong:
          err = place('R', true);
          break;
        case BoardEffect::PlaceHumansBlock:
          err = place('B', false);
          break;
        case BoardEffect::RemoveMisplaced:
          if (r.grid.misplaced < 0) {
            err = "nothing to remove";
          } else {
            r.grid.c[static_cast<size_t>(r.grid.misplaced)] = '.';
            r.grid.misplaced = -1;
          }
          break;
      }
      if (!err.empty()) return fail(si, a->id + ": " + err);
      for (const Literal& e : a->effects) {
        if (e.negated) {
          r.facts.erase(e.positive().to_string());
        } else {
          r.facts.insert(e.to_string());
        }
      }
      for (size_t k = 0; k < 3; ++k) {
        if (!r.active[k]) continue;
        double w = p.weight(kAllTraits[k]);
        r.m[k] = std::max(0.0, r.m[k] - cp.decay * std::abs(w));
      }
      for (const auto& [pole, delta] : a->comfort_offsets) {
        size_t k = static_cast<size_t>(pole.trait);
        double w = p.weight(pole.trait);
        if (w != 0.0 && (w > 0.0) == (pole.sign == Sign::High)) {
          r.m[k] = std::clamp(r.m[k] + delta, 0.0, cp.initial);
        }
      }
      if (below(r)) return fail(si, "comfort below threshold after " + a->id);
    }
    const ComfortState& predicted = plan.predicted[i + 1].comfort;
    for (size_t k = 0; k < 3; ++k) {
      if (r.active[k] && std::abs(predicted.magnitude(kAllTraits[k]) - r.m[k]) > 1e-9) {
        return fail(si, "predicted comfort disagrees with replay");
      }
    }
  }
  if (!r.grid.full_and_valid()) return fail(-1, "final board is not a complete valid board");
  return {};
}

}  // namespace cea
