#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "cea/error.hpp"
#include "cea/personality.hpp"

using namespace cea;

namespace {

int rank(Level l) { return static_cast<int>(l); }
int rank(SpeedLevel l) { return static_cast<int>(l); }

Level flip(Level l) { return l == Level::High ? Level::Low : l == Level::Low ? Level::High : Level::Mid; }
SpeedLevel flip(SpeedLevel l) {
  return l == SpeedLevel::High ? SpeedLevel::Slow : l == SpeedLevel::Slow ? SpeedLevel::High : SpeedLevel::Middle;
}

std::vector<std::string> poles_of(const PersonalityVector& p) {
  std::vector<std::string> out;
  for (auto pole : dominant_poles(p)) out.push_back(to_string(pole));
  return out;
}

const std::vector<double> kGrid = {-1, -0.75, -0.5, -0.25, 0, 0.25, 0.5, 0.75, 1};

}  // namespace

TEST_SUITE("personality") {

TEST_CASE("construction and poles") {
  CHECK(PersonalityVector::make(0, 0, 0).is_neutral());
  CHECK(poles_of(PersonalityVector::make(0, 0, 0)).empty());
  CHECK(poles_of(PersonalityVector::make(1, -1, 0.5)) == std::vector<std::string>{"HC", "LE", "HA"});
  CHECK(poles_of(PersonalityVector::make(0, 1, 0)) == std::vector<std::string>{"HE"});
  CHECK(poles_of(PersonalityVector::make(-1, 0, -1)) == std::vector<std::string>{"LC", "LA"});
  try {
    PersonalityVector::make(0, 1.2, 0);
    FAIL("expected OutOfRange");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OutOfRange);
  }
  CHECK_THROWS_AS(PersonalityVector::make(std::nan(""), 0, 0), Error);
  CHECK(PersonalityVector::parse("0.5,-1,0") == PersonalityVector::make(0.5, -1, 0));
  CHECK_THROWS_AS(PersonalityVector::parse("1,2"), Error);
}

TEST_CASE("twelve archetypes, each with two full-weight poles") {
  auto all = archetypes();
  CHECK(all.size() == 12);
  for (const auto& p : all) {
    auto poles = dominant_poles(p);
    CHECK(poles.size() == 2);
    for (auto pole : poles) CHECK(std::abs(p.weight(pole.trait)) == 1.0);
  }
  std::sort(all.begin(), all.end(), [](auto& a, auto& b) { return a.to_string() < b.to_string(); });
  CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());
}

TEST_CASE("parameter map examples") {
  auto he = generate_parameters(PersonalityVector::make(0, 1, 0), ActionClass::PickPlace);
  CHECK(he.velocity == SpeedLevel::High);
  CHECK(he.amplitude == Level::High);
  CHECK(he.volume == Level::High);

  auto neutral = generate_parameters(PersonalityVector::make(0, 0, 0), ActionClass::PickPlace);
  CHECK(neutral == BehavioralParameters{});
  CHECK(neutral.language_style.empty());

  auto hc = generate_parameters(PersonalityVector::make(1, 0, 0), ActionClass::PickPlace);
  CHECK(hc.straightness == Level::High);
  CHECK(hc.language_style == std::set<std::string>{"Scrupulous", "Precise"});
}

TEST_CASE("bucket edges sit at +-0.5") {
  const auto& map = ParameterMap::defaults();
  auto e = [&](double w) { return map.generate(PersonalityVector::make(0, w, 0), ActionClass::Speech).volume; };
  CHECK(e(0.5) == Level::High);
  CHECK(e(0.49) == Level::Mid);
  CHECK(e(-0.49) == Level::Mid);
  CHECK(e(-0.5) == Level::Low);
}

TEST_CASE("generation is pure") {
  for (double c : kGrid)
    for (double a : kGrid) {
      auto p = PersonalityVector::make(c, 0.25, a);
      CHECK(generate_parameters(p, ActionClass::Speech) == generate_parameters(p, ActionClass::Speech));
    }
}

TEST_CASE("raising extroversion never lowers speed or amplitude") {
  for (double c : kGrid)
    for (double a : kGrid)
      for (size_t i = 0; i + 1 < kGrid.size(); ++i) {
        auto lo = generate_parameters(PersonalityVector::make(c, kGrid[i], a), ActionClass::PickPlace);
        auto hi = generate_parameters(PersonalityVector::make(c, kGrid[i + 1], a), ActionClass::PickPlace);
        CHECK(rank(hi.velocity) >= rank(lo.velocity));
        CHECK(rank(hi.amplitude) >= rank(lo.amplitude));
        CHECK(rank(hi.volume) >= rank(lo.volume));
      }
}

TEST_CASE("flipping a lone trait flips what it controls") {
  for (double w : kGrid) {
    if (w == 0) continue;
    auto e = generate_parameters(PersonalityVector::make(0, w, 0), ActionClass::PickPlace);
    auto ef = generate_parameters(PersonalityVector::make(0, -w, 0), ActionClass::PickPlace);
    CHECK(ef.velocity == flip(e.velocity));
    CHECK(ef.amplitude == flip(e.amplitude));
    CHECK(ef.volume == flip(e.volume));

    auto a = generate_parameters(PersonalityVector::make(0, 0, w), ActionClass::PickPlace);
    auto af = generate_parameters(PersonalityVector::make(0, 0, -w), ActionClass::PickPlace);
    CHECK(af.acceleration == flip(a.acceleration));
    CHECK(af.straightness == flip(a.straightness));

    auto c = generate_parameters(PersonalityVector::make(w, 0, 0), ActionClass::PickPlace);
    auto cf = generate_parameters(PersonalityVector::make(-w, 0, 0), ActionClass::PickPlace);
    CHECK(cf.straightness == flip(c.straightness));
  }
}

TEST_CASE("style tags come from the lists of the active poles") {
  const auto& map = ParameterMap::defaults();
  auto vocab = map.vocabulary();
  for (double c : kGrid)
    for (double e : kGrid)
      for (double a : kGrid) {
        auto p = PersonalityVector::make(c, e, a);
        auto params = map.generate(p, ActionClass::Speech);
        for (const auto& tag : params.language_style) {
          CHECK(vocab.contains(tag));
          bool owned = false;
          for (auto pole : dominant_poles(p)) {
            const auto& list = map.styles(pole);
            owned = owned || std::find(list.begin(), list.end(), tag) != list.end();
          }
          CHECK(owned);
        }
      }
  for (auto pole : kAllPoles) CHECK_FALSE(map.styles(pole).empty());
}

TEST_CASE("replacement parameter map") {
  auto map = ParameterMap::parse(R"(
    buckets { high = 0.8; low = -0.8 }
    styles { HE = [Loud]; LE = [Soft]; HA = [Kind]; LA = [Harsh]; HC = [Neat]; LC = [Messy] }
  )");
  auto params = map.generate(PersonalityVector::make(0, 0.6, 0), ActionClass::Speech);
  CHECK(params.volume == Level::Mid);
  CHECK(params.language_style == std::set<std::string>{"Loud"});
  CHECK_THROWS_AS(ParameterMap::parse("buckets { high = 0.2; low = 0.4 }"), Error);
}

}
