#include <doctest.h>

#include "../stats.hpp"
#include "cea/error.hpp"
#include "cea/memory.hpp"

using namespace cea;

namespace {

const TraitPole HE{Trait::Extroversion, Sign::High};

// Three HE actions with totals {2, 1, 1} at every state.
EpisodicMemory two_one_one(std::vector<const ActionSpec*>& candidates) {
  const auto& catalog = ActionCatalog::defaults();
  candidates = {&catalog.at("tell_a_joke"), &catalog.at("ask_a_question"), &catalog.at("capture_attention")};
  MemoryConfig config;
  config.rules.push_back({"ask_a_question", std::nullopt, std::nullopt, 0.0});
  config.rules.push_back({"capture_attention", std::nullopt, std::nullopt, 0.0});
  return EpisodicMemory::init(catalog, config);
}

}  // namespace

TEST_SUITE("memory") {

TEST_CASE("world-state encoding") {
  CHECK(encode_world_state(Emotion::Happy, true).bits() == 0b10000001);
  CHECK(encode_world_state(Emotion::Neutral, false).bits() == 0b01000000);
  for (Emotion e : kAllEmotions)
    for (bool a : {true, false}) {
      WorldState w = encode_world_state(e, a);
      CHECK(w.emotion() == e);
      CHECK(w.attentive() == a);
      CHECK(WorldState::from_bits(w.bits()) == w);
      CHECK(WorldState::from_string(w.to_string()) == w);
    }
  CHECK_THROWS_AS(WorldState::from_bits(0b00000011), Error);
  CHECK_THROWS_AS(WorldState::from_bits(0), Error);
}

TEST_CASE("table covers every state and motivational action") {
  const auto& catalog = ActionCatalog::defaults();
  auto mem = EpisodicMemory::init(catalog);
  auto motivational = catalog.lookup(ActionKind::Motivational, std::nullopt, std::nullopt);
  CHECK(mem.size() == 14 * motivational.size());
  auto angry = encode_world_state(Emotion::Anger, true);
  CHECK(mem.entry(angry, "tell_a_joke").appropriateness == 0.2);
  CHECK(mem.entry(encode_world_state(Emotion::Happy, true), "tell_a_joke").appropriateness == 1.0);
  CHECK(mem.entry(angry, "tell_a_joke").outcome == 1.0);
  CHECK_THROWS_AS(mem.entry(angry, "pick_place_precisely"), Error);
}

TEST_CASE("selection weights and draws") {
  std::vector<const ActionSpec*> cands;
  auto mem = two_one_one(cands);
  auto w = encode_world_state(Emotion::Neutral, true);
  CHECK(selection_weights(mem, w, cands) == std::vector<double>{2, 1, 1});

  Rng rng(2024);
  std::vector<long> counts(3, 0);
  for (int i = 0; i < 10000; ++i) {
    const ActionSpec& a = select_motivational(mem, HE, w, cands, rng);
    for (size_t k = 0; k < 3; ++k)
      if (&a == cands[k]) ++counts[k];
  }
  CHECK(std::abs(counts[0] / 10000.0 - 0.5) <= 0.02);
  CHECK(std::abs(counts[1] / 10000.0 - 0.25) <= 0.02);
  CHECK(std::abs(counts[2] / 10000.0 - 0.25) <= 0.02);
  CHECK(test::chi_square_p(counts, {0.5, 0.25, 0.25}) > 0.01);

  std::vector<const ActionSpec*> one = {cands[1]};
  for (int i = 0; i < 50; ++i) CHECK(&select_motivational(mem, HE, w, one, rng) == cands[1]);
  std::vector<const ActionSpec*> none;
  try {
    select_motivational(mem, HE, w, none, rng);
    FAIL("expected NoCandidates");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoCandidates);
  }
}

TEST_CASE("selection law over random reward vectors") {
  const auto& catalog = ActionCatalog::defaults();
  auto cands = available(catalog, true, ActionKind::Motivational, HE);
  Rng setup(77);
  for (int trial = 0; trial < 5; ++trial) {
    auto mem = EpisodicMemory::init(catalog);
    auto w = encode_world_state(kAllEmotions[setup.below(7)], setup.bernoulli(0.5));
    std::vector<double> probs;
    double total = 0;
    for (auto* a : cands) {
      mem.set_outcome(w, a->id, 0.05 + 2.0 * setup.uniform());
      probs.push_back(mem.entry(w, a->id).total());
      total += probs.back();
    }
    for (double& p : probs) p /= total;
    std::vector<long> counts(cands.size(), 0);
    Rng rng(1000 + static_cast<uint64_t>(trial));
    for (int i = 0; i < 20000; ++i) {
      const ActionSpec& a = select_motivational(mem, HE, w, cands, rng);
      for (size_t k = 0; k < cands.size(); ++k)
        if (&a == cands[k]) ++counts[k];
    }
    CHECK(test::chi_square_p(counts, probs) > 0.001);
  }
}

TEST_CASE("reward update rule") {
  const auto& catalog = ActionCatalog::defaults();
  auto mem = EpisodicMemory::init(catalog);
  const ActionSpec& q = catalog.at("ask_provocative_question");
  auto w = encode_world_state(Emotion::Neutral, true);
  auto other = encode_world_state(Emotion::Happy, true);
  auto snapshot = mem;

  double before = mem.entry(w, q.id).total();
  CHECK(mem.update_reward(w, q, Emotion::Anger) == doctest::Approx(before + 0.25));
  CHECK(mem.entry(w, q.id).outcome == 1.25);
  mem = snapshot;
  mem.update_reward(w, q, Emotion::Happy);
  CHECK(mem.entry(w, q.id).outcome == 0.75);

  // Only the touched entry moves.
  for (Emotion e : kAllEmotions)
    for (bool a : {true, false})
      for (const auto* act : catalog.lookup(ActionKind::Motivational, std::nullopt, std::nullopt)) {
        auto s = encode_world_state(e, a);
        if (s == w && act->id == q.id) continue;
        CHECK(mem.entry(s, act->id) == snapshot.entry(s, act->id));
      }

  mem.set_outcome(other, q.id, 0.05);
  CHECK(mem.update_reward(other, q, Emotion::Happy) == doctest::Approx(mem.entry(other, q.id).appropriateness + 0.05));
  CHECK(mem.entry(other, q.id).outcome == 0.05);
}

TEST_CASE("mismatches fall, matches rise") {
  const auto& catalog = ActionCatalog::defaults();
  auto mem = EpisodicMemory::init(catalog);
  const ActionSpec& joke = catalog.at("tell_a_joke");
  auto w = encode_world_state(Emotion::Sad, false);
  double last = mem.entry(w, joke.id).total();
  for (int i = 0; i < 10; ++i) {
    bool above_floor = mem.entry(w, joke.id).outcome > 0.05;
    double now = mem.update_reward(w, joke, Emotion::Anger);
    if (above_floor) {
      CHECK(now < last);
    } else {
      CHECK(now == last);
    }
    last = now;
  }
  CHECK(mem.entry(w, joke.id).outcome == 0.05);
  double up = mem.update_reward(w, joke, Emotion::Happy);
  CHECK(up > last);
}

TEST_CASE("dump round-trips") {
  const auto& catalog = ActionCatalog::defaults();
  auto mem = EpisodicMemory::init(catalog);
  mem.update_reward(encode_world_state(Emotion::Fear, true), catalog.at("threatening_move_sagittal"), Emotion::Fear);
  mem.set_outcome(encode_world_state(Emotion::Sad, false), "tell_a_joke", 0.3);
  auto back = EpisodicMemory::load_dump(mem.dump());
  CHECK(back == mem);
  CHECK_THROWS_AS(EpisodicMemory::load_dump("entry { state = 11000000; action = x; appropriateness = 1; outcome = 1 }"),
                  Error);
}

TEST_CASE("memory config") {
  auto c = MemoryConfig::parse("learning { delta = 0.5; floor = 0.1 }\nrule { action = a; emotion = Sad; value = 0.3 }");
  CHECK(c.delta == 0.5);
  CHECK(c.floor == 0.1);
  REQUIRE(c.rules.size() == 1);
  CHECK(c.rules[0].emotion == Emotion::Sad);
  CHECK_THROWS_AS(MemoryConfig::parse("learning { delta = -1 }"), Error);
  CHECK(MemoryConfig::defaults().delta == 0.25);
  CHECK(MemoryConfig::defaults().floor == 0.05);
}

TEST_CASE("fact store") {
  FactStore fs;
  fs = assert_fact(fs, "turn(human)");
  fs = assert_fact(fs, "turn(human)");
  CHECK(query(fs, "turn(?)").size() == 1);
  CHECK(query(fs, "turn(?)")[0].to_string() == "turn(human)");
  CHECK(query(fs, "unknown(?)").empty());
  fs.assert_fact("!turn(human)");
  CHECK(fs.size() == 0);
  fs.assert_fact("cued");
  CHECK(fs.holds("cued"));
  fs.retract(Literal::parse("cued"));
  CHECK_FALSE(fs.holds("cued"));
}

}
