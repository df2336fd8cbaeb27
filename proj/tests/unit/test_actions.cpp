#include <doctest.h>

#include <algorithm>

#include "cea/actions.hpp"
#include "cea/comfort.hpp"
#include "cea/error.hpp"
#include "cea/literal.hpp"

using namespace cea;

namespace {

std::vector<std::string> ids(const std::vector<const ActionSpec*>& v) {
  std::vector<std::string> out;
  for (auto* a : v) out.push_back(a->id);
  std::sort(out.begin(), out.end());
  return out;
}

const TraitPole HE{Trait::Extroversion, Sign::High};

std::string minimal_motivational(const std::string& extra) {
  return "action m { kind = motivational; modality = verbal; pole = HE; category = x" + extra + " }";
}

}  // namespace

TEST_SUITE("actions") {

TEST_CASE("literals") {
  auto l = Literal::parse("turn(human)");
  CHECK(l.predicate == "turn");
  CHECK(l.args == std::vector<std::string>{"human"});
  CHECK(Literal::parse("!cued").negated);
  CHECK(Literal::parse("not misplaced").negated);
  CHECK(Literal::parse("not  turn( robot )").to_string() == "!turn(robot)");
  CHECK(l.matches(Literal::parse("turn(?)")));
  CHECK_FALSE(l.matches(Literal::parse("turn(?, ?)")));
  CHECK_THROWS_AS(Literal::parse("turn(human"), Error);
  CHECK_THROWS_AS(Literal::parse(""), Error);
}

TEST_CASE("default catalogue") {
  const auto& c = ActionCatalog::defaults();
  auto he_nonverbal = c.lookup(ActionKind::Motivational, HE, Modality::NonVerbal);
  CHECK(std::find_if(he_nonverbal.begin(), he_nonverbal.end(), [](auto* a) {
          return a->id == "make_visible_movement_horizontal";
        }) != he_nonverbal.end());
  for (const auto& a : c.actions()) {
    if (a.kind == ActionKind::Standard) CHECK(a.comfort_offsets.empty());
    if (a.kind == ActionKind::Motivational) {
      CHECK(a.pole.has_value());
      CHECK(a.expected_emotion.has_value());
    }
  }
  CHECK(c.at("ask_provocative_question").expected_emotion == Emotion::Anger);
  CHECK(c.at("tell_a_joke").expected_emotion == Emotion::Happy);
  CHECK_THROWS_AS(c.at("fly"), Error);
}

TEST_CASE("availability by condition") {
  const auto& c = ActionCatalog::defaults();
  CHECK(ids(available(c, false, ActionKind::Motivational, HE)) ==
        std::vector<std::string>{"make_visible_movement_horizontal", "make_visible_movement_vertical"});
  auto speaking = ids(available(c, true, ActionKind::Motivational, HE));
  CHECK(speaking.size() == 7);
  CHECK(std::find(speaking.begin(), speaking.end(), "tell_a_joke") != speaking.end());

  auto silent_standard = ids(available(c, false, ActionKind::Standard));
  CHECK(std::find(silent_standard.begin(), silent_standard.end(), "your_turn_cue") != silent_standard.end());
  for (auto* a : available(c, false, ActionKind::Complementary)) CHECK(a->modality != Modality::Verbal);
  for (auto* a : available(c, false, ActionKind::Standard)) CHECK(a->modality != Modality::Verbal);

  for (TraitPole pole : kAllPoles) {
    CHECK_FALSE(available(c, true, ActionKind::Motivational, pole).empty());
    CHECK_FALSE(available(c, false, ActionKind::Motivational, pole).empty());
  }
}

TEST_CASE("complementary pairs credit the intended poles") {
  const auto& c = ActionCatalog::defaults();
  auto hc = PersonalityVector::make(1, 0, 0);
  auto lc = PersonalityVector::make(-1, 0, 0);
  auto ha = PersonalityVector::make(0, 0, 1);
  auto la = PersonalityVector::make(0, 0, -1);
  CHECK(c.at("pick_place_precisely").credit(hc) > 0);
  CHECK(c.at("pick_place_precisely").credit(lc) == 0);
  CHECK(c.at("pick_place_wrongly").credit(lc) > 0);
  CHECK(c.at("pick_place_wrongly").credit(hc) == 0);
  CHECK(c.at("cue_human_turn").credit(ha) > 0);
  CHECK(c.at("cue_human_turn").credit(PersonalityVector::make(0, 1, 0)) > 0);
  CHECK(c.at("replace_human").credit(la) > 0);
  CHECK(c.at("replace_human").credit(ha) == 0);
  // An offset slows the drift of its channel; it never outweighs the decay.
  for (const auto& a : c.actions())
    for (const auto& [pole, d] : a.comfort_offsets) CHECK(d < ComfortParams{}.decay);
}

TEST_CASE("serialize round-trips") {
  const auto& c = ActionCatalog::defaults();
  auto back = ActionCatalog::parse(c.serialize());
  CHECK(back == c);
}

TEST_CASE("schema errors") {
  try {
    ActionCatalog::parse(minimal_motivational(""), false);
    FAIL("expected SchemaError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SchemaError);
  }
  CHECK_NOTHROW(ActionCatalog::parse(minimal_motivational("; expect = Happy"), false));
  std::string dup = minimal_motivational("; expect = Happy") + "\n" + minimal_motivational("; expect = Happy");
  CHECK_THROWS_AS(ActionCatalog::parse(dup, false), Error);
  CHECK_THROWS_AS(ActionCatalog::parse("action s { kind = standard; modality = verbal; offsets { HE = 0.1 } }", false),
                  Error);
  CHECK_THROWS_AS(ActionCatalog::parse(minimal_motivational("; expect = Happy")), Error);
  try {
    ActionCatalog::parse("action a {\n  kind = \n}", false);
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
  }
}

}
