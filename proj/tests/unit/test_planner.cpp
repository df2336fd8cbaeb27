#include <doctest.h>

#include <algorithm>

#include "cea/error.hpp"
#include "cea/plan_validator.hpp"
#include "cea/planner.hpp"

using namespace cea;

namespace {

const ActionCatalog& cat() { return ActionCatalog::defaults(); }

int placements(const Plan& p) {
  int n = 0;
  for (size_t i = 0; i < p.steps.size(); ++i) {
    n += p.predicted[i + 1].board.empty_count() < p.predicted[i].board.empty_count();
  }
  return n;
}

// Replays the comfort of a single-trait plan with plain arithmetic.
std::vector<double> reference_trace(const Plan& plan, const PersonalityVector& p, Trait t) {
  double w = std::abs(p.weight(t));
  double m = 1.0;
  std::vector<double> out = {m};
  for (const auto& step : plan.steps) {
    if (step.is_motivate()) {
      m = std::min(1.0, m + 0.5 * 2.0);
    } else {
      m = std::max(0.0, m - 0.1 * w);
      for (const auto& [pole, d] : cat().at(step.action).comfort_offsets)
        if (p.pole(t) == pole) m = std::clamp(m + d, 0.0, 1.0);
    }
    out.push_back(m);
  }
  return out;
}

std::vector<PlanState> replay_states(const Plan& plan, PlanState s, const PersonalityVector& p) {
  std::vector<PlanState> out = {s};
  for (const auto& step : plan.steps) {
    s = apply_step(s, step, cat(), p);
    out.push_back(s);
  }
  return out;
}

PersonalityVector single(Trait t, double w) {
  return PersonalityVector::make(t == Trait::Conscientiousness ? w : 0, t == Trait::Extroversion ? w : 0,
                                 t == Trait::Agreeableness ? w : 0);
}

}  // namespace

TEST_SUITE("planner") {

TEST_CASE("first mover rule") {
  CHECK(first_mover(PersonalityVector::make(0, 0, -1)) == Performer::Robot);
  CHECK(first_mover(PersonalityVector::make(0, 1, 0)) == Performer::Robot);
  CHECK(first_mover(PersonalityVector::make(0, -1, 1)) == Performer::Human);
  CHECK(first_mover(PersonalityVector::make(1, 0, 0)) == Performer::Human);
  CHECK(initial_state(PersonalityVector::make(0, 1, 0)).turn() == Performer::Robot);
}

TEST_CASE("neutral personality places nine blocks without motivation") {
  auto p = PersonalityVector{};
  Plan plan_ = plan(initial_state(p), cat(), p, true);
  CHECK(placements(plan_) == 9);
  CHECK(plan_.motivate_count() == 0);
  CHECK(is_complete_valid(plan_.predicted.back().board));
  // Colors alternate along the predicted boards.
  char last = 0;
  for (size_t i = 0; i < plan_.steps.size(); ++i) {
    std::string a = plan_.predicted[i].board.to_string();
    std::string b = plan_.predicted[i + 1].board.to_string();
    for (size_t k = 0; k < 9; ++k)
      if (a[k] == '.' && b[k] != '.') {
        CHECK(b[k] != last);
        last = b[k];
      }
  }
}

TEST_CASE("disagreeable agent replaces the human and motivates before the drop") {
  auto p = PersonalityVector::make(0, 0, -1);
  Plan result = plan(initial_state(p), cat(), p, true);
  int replaces = static_cast<int>(std::count_if(result.steps.begin(), result.steps.end(),
                                                [](auto& s) { return s.action == "replace_human"; }));
  CHECK(replaces > 0);
  CHECK(result.motivate_count(TraitPole{Trait::Agreeableness, Sign::Low}) >= 1);

  auto ref = reference_trace(result, p, Trait::Agreeableness);
  REQUIRE(ref.size() == result.predicted.size());
  for (size_t i = 0; i < ref.size(); ++i) {
    CHECK(result.predicted[i].comfort.magnitude(Trait::Agreeableness) == doctest::Approx(ref[i]).epsilon(1e-12));
    if (i > 0 && !result.steps[i - 1].is_motivate()) CHECK(ref[i] >= 0.3);
  }
  // Without the motivation the same actions would cross the threshold.
  double m = 1.0;
  bool crossed = false;
  for (const auto& s : result.steps) {
    if (s.is_motivate()) continue;
    m -= 0.1;
    if (s.action == "replace_human") m += 0.04;
    crossed = crossed || m < 0.3;
  }
  CHECK(crossed);
}

TEST_CASE("too short a horizon has no plan") {
  auto p = PersonalityVector{};
  try {
    plan(initial_state(p), cat(), p, true, 3);
    FAIL("expected NoPlan");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoPlan);
  }
}

TEST_CASE("simulate") {
  auto p = PersonalityVector::make(0, -1, 0);
  PlanState init = initial_state(p);
  Plan empty;
  empty.predicted = {init};
  auto trace = simulate(empty, init, cat(), p);
  REQUIRE(trace.size() == 1);
  CHECK(trace[0] == init.comfort);

  Plan three;
  three.steps = {{"your_turn_cue", std::nullopt, std::nullopt},
                 {"wait_human", std::nullopt, Cell{1, 1}},
                 {"pick_place_precisely", std::nullopt, Cell{0, 1}}};
  auto t3 = simulate(three, init, cat(), p);
  REQUIRE(t3.size() == 4);
  std::vector<double> expected = {1.0, 0.9, 0.8, 0.7};
  for (size_t i = 0; i < 4; ++i) CHECK(t3[i].magnitude(Trait::Extroversion) == doctest::Approx(expected[i]));
}

TEST_CASE("replan after a misplacement starts by correcting it") {
  auto p = PersonalityVector::make(-1, 0, 0);
  Plan first = plan(initial_state(p), cat(), p, true);
  auto it = std::find_if(first.steps.begin(), first.steps.end(),
                         [](auto& s) { return s.action == "pick_place_wrongly"; });
  REQUIRE(it != first.steps.end());
  size_t k = static_cast<size_t>(it - first.steps.begin());
  PlanState after = first.predicted[k + 1];
  REQUIRE(after.misplaced());
  Plan fix = replan(after, cat(), p, true);
  std::vector<std::string> head;
  for (const auto& s : fix.steps)
    if (!s.is_motivate() && head.size() < 2) head.push_back(s.action);
  CHECK(head == std::vector<std::string>{"remove_block", "pick_place_precisely"});
}

TEST_CASE("replan below threshold starts with motivation") {
  auto p = PersonalityVector::make(0, 0, 1);
  PlanState s = initial_state(p);
  s.comfort = apply_perception(s.comfort, dominant_poles(p), WorldState::encode(Emotion::Sad, true),
                               SensitivityTable::defaults());
  s.comfort = apply_offset(s.comfort, Trait::Agreeableness, -0.7);
  REQUIRE_FALSE(needs_motivation(s.comfort).empty());
  Plan fix = replan(s, cat(), p, true);
  REQUIRE_FALSE(fix.steps.empty());
  CHECK(fix.steps[0] == PlanStep::motivate_step({Trait::Agreeableness, Sign::High}));
  CHECK(validate_plan(fix, s, cat(), p, true).ok);
}

TEST_CASE("replanning an unchanged state yields the remaining suffix") {
  for (const auto& p : archetypes())
    for (bool speaking : {true, false}) {
      Plan full = plan(initial_state(p), cat(), p, speaking);
      for (size_t k = 1; k < full.steps.size(); ++k) {
        PlanState mid = full.predicted[k];
        mid.step = 0;
        Plan rest = replan(mid, cat(), p, speaking);
        std::vector<PlanStep> suffix(full.steps.begin() + static_cast<long>(k), full.steps.end());
        CHECK_MESSAGE(rest.steps == suffix, p.to_string(), " from step ", k);
      }
    }
}

TEST_CASE("every plan passes the independent validator") {
  std::vector<PersonalityVector> people = archetypes();
  for (double c : {-1.0, -0.5, 0.0, 0.5, 1.0})
    for (double e : {-1.0, -0.5, 0.0, 0.5, 1.0})
      for (double a : {-1.0, -0.5, 0.0, 0.5, 1.0}) people.push_back(PersonalityVector::make(c, e, a));
  for (const auto& p : people)
    for (bool speaking : {true, false}) {
      PlanState init = initial_state(p);
      Plan result = plan(init, cat(), p, speaking);
      auto v = validate_plan(result, init, cat(), p, speaking);
      CHECK_MESSAGE(v.ok, p.to_string(), " speaking=", speaking, ": step ", v.step, " ", v.reason);
      CHECK(plan(init, cat(), p, speaking).steps == result.steps);
    }
}

TEST_CASE("stronger weights never plan fewer motivations") {
  for (Trait t : kAllTraits)
    for (double sign : {1.0, -1.0})
      for (bool speaking : {true, false}) {
        auto weak = single(t, 0.5 * sign);
        auto strong = single(t, 1.0 * sign);
        TraitPole pole = *strong.pole(t);
        int nw = plan(initial_state(weak), cat(), weak, speaking).motivate_count(pole);
        int ns = plan(initial_state(strong), cat(), strong, speaking).motivate_count(pole);
        CHECK_MESSAGE(ns >= nw, to_string(pole), " speaking=", speaking);
      }
}

TEST_CASE("validator rejects broken plans") {
  auto p = PersonalityVector::make(0, 0, -1);
  PlanState init = initial_state(p);
  Plan good = plan(init, cat(), p, true);
  REQUIRE(validate_plan(good, init, cat(), p, true).ok);

  SUBCASE("motivation removed") {
    Plan bad;
    for (const auto& s : good.steps)
      if (!s.is_motivate()) bad.steps.push_back(s);
    bad.predicted = replay_states(bad, init, p);
    CHECK_FALSE(validate_plan(bad, init, cat(), p, true).ok);
  }
  SUBCASE("wrong prediction") {
    Plan bad = good;
    bad.predicted[2].comfort = apply_offset(bad.predicted[2].comfort, Trait::Agreeableness, -0.01);
    CHECK_FALSE(validate_plan(bad, init, cat(), p, true).ok);
  }
  SUBCASE("goal not reached") {
    Plan bad = good;
    bad.steps.pop_back();
    bad.predicted.pop_back();
    CHECK_FALSE(validate_plan(bad, init, cat(), p, true).ok);
  }
  SUBCASE("verbal step in a silent session") {
    auto ha = PersonalityVector::make(0, 0, 1);
    PlanState hinit = initial_state(ha);
    Plan spoken = plan(hinit, cat(), ha, true);
    bool has_verbal = std::any_of(spoken.steps.begin(), spoken.steps.end(), [](auto& s) {
      return !s.is_motivate() && cat().at(s.action).modality == Modality::Verbal;
    });
    REQUIRE(has_verbal);
    CHECK(validate_plan(spoken, hinit, cat(), ha, true).ok);
    CHECK_FALSE(validate_plan(spoken, hinit, cat(), ha, false).ok);
  }
  SUBCASE("illegal cell") {
    Plan bad = good;
    for (auto& s : bad.steps)
      if (s.cell) {
        s.cell = Cell{0, 1};
        break;
      }
    CHECK_FALSE(validate_plan(bad, init, cat(), p, true).ok);
  }
}

TEST_CASE("pretty print lists every step") {
  auto p = PersonalityVector::make(0, 0, -1);
  Plan result = plan(initial_state(p), cat(), p, true);
  std::string text = pretty_print(result);
  CHECK(text.find("Motivate(LA)") != std::string::npos);
  CHECK(std::count(text.begin(), text.end(), '\n') == static_cast<long>(result.steps.size() + 1));
}

}
