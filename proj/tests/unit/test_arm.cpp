#include <doctest.h>

#include <cmath>

#include "cea/arm.hpp"
#include "cea/error.hpp"

using namespace cea;

namespace {

double polyline(const std::vector<Vec3>& w, size_t a, size_t b) {
  double s = 0;
  for (size_t i = a; i < b; ++i) {
    double dx = w[i + 1].x - w[i].x, dy = w[i + 1].y - w[i].y, dz = w[i + 1].z - w[i].z;
    s += std::sqrt(dx * dx + dy * dy + dz * dz);
  }
  return s;
}

BehavioralParameters params_with(SpeedLevel speed, Level amplitude, Level straightness) {
  BehavioralParameters p;
  p.velocity = speed;
  p.amplitude = amplitude;
  p.straightness = straightness;
  return p;
}

Trajectory pick_place(const PersonalityVector& p, int slot = 0, Cell cell = {1, 1}) {
  return synth_pick_place(Geometry::defaults(), slot, cell, generate_parameters(p, ActionClass::PickPlace));
}

}  // namespace

TEST_SUITE("arm") {

TEST_CASE("speed levels map to exact scales") {
  CHECK(speed_scale(SpeedLevel::Slow) == 0.5);
  CHECK(speed_scale(SpeedLevel::Middle) == 0.75);
  CHECK(speed_scale(SpeedLevel::High) == 1.0);
  for (SpeedLevel s : {SpeedLevel::Slow, SpeedLevel::Middle, SpeedLevel::High}) {
    auto t = synth_pick_place(Geometry::defaults(), 2, {0, 2}, params_with(s, Level::Mid, Level::Mid));
    CHECK(t.speed_scale == speed_scale(s));
  }
}

TEST_CASE("geometry defaults") {
  const auto& g = Geometry::defaults();
  CHECK(g.cell({1, 1}) == Vec3{0.5, 0.0, 0.0});
  CHECK(g.cell({0, 0}).x == doctest::Approx(0.44));
  CHECK(g.cell({2, 2}).y == doctest::Approx(0.06));
  for (int i = 0; i < kCells; ++i) {
    CHECK(g.bounds.contains(g.slot(Color::Red, i)));
    CHECK(g.bounds.contains(g.slot(Color::Blue, i)));
    CHECK(g.slot(Color::Red, i).y < 0);
  }
  CHECK_THROWS_AS(g.slot(Color::Red, 9), Error);
  CHECK_THROWS_AS(Geometry::parse("rest = [2.0, 0, 0.3]"), Error);
  CHECK_THROWS_AS(Geometry::parse("pitch = 0"), Error);
}

TEST_CASE("straight and dogleg metrics") {
  Trajectory t;
  t.waypoints = {{0, 0, 0}, {0.3, 0, 0}};
  CHECK(path_metrics(t).straightness_ratio == 1.0);
  t.waypoints = {{0, 0, 0}, {0.3, 0, 0}, {0.3, 0.4, 0}};
  CHECK(path_metrics(t).straightness_ratio == doctest::Approx((0.3 + 0.4) / 0.5));
  CHECK(path_metrics(t).path_length == doctest::Approx(0.7));
}

TEST_CASE("amplitude sets the apex over the transit") {
  const auto& cfg = MotionConfig::defaults();
  auto high = synth_pick_place(Geometry::defaults(), 0, {1, 1}, params_with(SpeedLevel::Middle, Level::High, Level::Mid));
  auto low = synth_pick_place(Geometry::defaults(), 0, {1, 1}, params_with(SpeedLevel::Middle, Level::Low, Level::Mid));
  REQUIRE(high.transit);
  double apex_high = 0, apex_low = 0;
  for (size_t i = high.transit->first; i <= high.transit->second; ++i) apex_high = std::max(apex_high, high.waypoints[i].z);
  for (size_t i = low.transit->first; i <= low.transit->second; ++i) apex_low = std::max(apex_low, low.waypoints[i].z);
  CHECK(apex_high == doctest::Approx(cfg.z_base + 0.20));
  CHECK(apex_high - apex_low == doctest::Approx(0.15));
  CHECK(path_metrics(high).apex_z == doctest::Approx(apex_high));
}

TEST_CASE("straightness level bounds the transit detour") {
  for (int slot = 0; slot < kCells; ++slot)
    for (int c = 0; c < kCells; ++c) {
      auto t = synth_pick_place(Geometry::defaults(), slot, Cell::from_index(c),
                                params_with(SpeedLevel::Middle, Level::Mid, Level::High));
      auto [a, b] = *t.transit;
      double chord = polyline({t.waypoints[a], t.waypoints[b]}, 0, 1);
      CHECK(polyline(t.waypoints, a, b) / chord <= 1.05);
      auto low = synth_pick_place(Geometry::defaults(), slot, Cell::from_index(c),
                                  params_with(SpeedLevel::Middle, Level::Mid, Level::Low));
      CHECK(path_metrics(low).straightness_ratio > path_metrics(t).straightness_ratio);
    }
}

TEST_CASE("personality signatures on the same move") {
  for (int slot = 0; slot < kCells; ++slot)
    for (int c = 0; c < kCells; ++c) {
      Cell cell = Cell::from_index(c);
      CHECK(path_metrics(pick_place(PersonalityVector::make(0, 1, 0), slot, cell)).apex_z >
            path_metrics(pick_place(PersonalityVector::make(0, -1, 0), slot, cell)).apex_z);
      CHECK(path_metrics(pick_place(PersonalityVector::make(1, 0, 0), slot, cell)).straightness_ratio <
            path_metrics(pick_place(PersonalityVector::make(-1, 0, 0), slot, cell)).straightness_ratio);
    }
}

TEST_CASE("durations follow the trapezoidal profile") {
  // Cruise time scales exactly with 1/speed; the ramp term is what remains.
  const MotionConfig config;
  auto fast = synth_pick_place(Geometry::defaults(), 4, {0, 0}, params_with(SpeedLevel::High, Level::Mid, Level::Mid));
  auto slow = synth_pick_place(Geometry::defaults(), 4, {0, 0}, params_with(SpeedLevel::Slow, Level::Mid, Level::Mid));
  double length = polyline(fast.waypoints, 0, fast.waypoints.size() - 1);
  double a = config.a_max * fast.accel_scale;
  double vf = config.v_max * fast.speed_scale, vs = config.v_max * slow.speed_scale;
  CHECK(vs == doctest::Approx(vf / 2));
  CHECK(fast.duration - fast.hold == doctest::Approx(length / vf + vf / a));
  CHECK(slow.duration - slow.hold == doctest::Approx(length / vs + vs / a));
  CHECK((fast.duration - fast.hold - vf / a) / (slow.duration - slow.hold - vs / a) == doctest::Approx(0.5));

  // On long paths the ramp correction stays under 5%.
  double ratio = profile_duration(20.0, 0.5, 1.0) / profile_duration(20.0, 0.25, 1.0);
  CHECK(std::abs(ratio - 0.5) / 0.5 < 0.05);
  // Too short to reach cruise speed: triangular profile.
  CHECK(profile_duration(0.1, 0.5, 1.0) == doctest::Approx(2 * std::sqrt(0.1)));
  CHECK(profile_duration(0.0, 0.5, 1.0) == 0.0);

  auto times = waypoint_times(fast);
  REQUIRE(times.size() == fast.waypoints.size());
  CHECK(times.front() == 0.0);
  CHECK(times.back() == doctest::Approx(fast.duration));
  for (size_t i = 1; i < times.size(); ++i) CHECK(times[i] >= times[i - 1]);
}

TEST_CASE("gestures") {
  const auto& g = Geometry::defaults();
  auto sweep = synth_gesture("make_visible_movement_horizontal", params_with(SpeedLevel::High, Level::High, Level::Mid));
  double ymin = 1, ymax = -1;
  for (const auto& w : sweep.waypoints) {
    ymin = std::min(ymin, w.y - g.rest.y);
    ymax = std::max(ymax, w.y - g.rest.y);
  }
  CHECK(ymax == doctest::Approx(0.25));
  CHECK(ymin == doctest::Approx(-0.25));

  auto retract = synth_gesture("retracting_movement", BehavioralParameters{});
  CHECK(std::hypot(retract.waypoints.back().x, retract.waypoints.back().y) <
        std::hypot(retract.waypoints.front().x, retract.waypoints.front().y));

  auto wait = synth_gesture("wait_some_seconds", BehavioralParameters{});
  for (const auto& w : wait.waypoints) CHECK(w == g.rest);
  CHECK(path_metrics(wait).path_length == 0.0);
  CHECK(wait.duration == doctest::Approx(MotionConfig::defaults().wait_seconds));

  try {
    synth_gesture("moonwalk", BehavioralParameters{});
    FAIL("expected UnknownGesture");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownGesture);
  }
}

TEST_CASE("every synthesized waypoint stays in the workspace") {
  const auto& g = Geometry::defaults();
  for (const auto& p : archetypes()) {
    auto params = generate_parameters(p, ActionClass::PickPlace);
    for (int slot = 0; slot < kCells; ++slot)
      for (int c = 0; c < kCells; ++c)
        for (const auto& w : synth_pick_place(g, slot, Cell::from_index(c), params).waypoints)
          CHECK(g.bounds.contains(w));
    for (const auto& id : gesture_ids())
      for (const auto& w : synth_gesture(id, params).waypoints) CHECK(g.bounds.contains(w));
  }
  CHECK_THROWS_AS(synth_transfer(g, g.rest, Vec3{2.0, 0, 0}, BehavioralParameters{}, "x"), Error);
}

TEST_CASE("execution and failures") {
  auto t = pick_place(PersonalityVector::make(0, 1, 0));
  VirtualClock clock;
  FailureModel none;
  Rng rng(1);
  for (int i = 0; i < 100; ++i) CHECK(execute(t, clock, none, rng).completed);
  CHECK(clock.now() == doctest::Approx(100 * t.duration));

  FailureModel forced;
  forced.forced_waypoint = 3;
  VirtualClock c2;
  auto out = execute(t, c2, forced, rng);
  CHECK_FALSE(out.completed);
  CHECK(out.failed_at == 3);
  CHECK(out.duration == doctest::Approx(waypoint_times(t)[3]));
  CHECK(execute(t, c2, forced, rng).completed);

  FailureModel always{1.0, std::nullopt};
  for (int i = 0; i < 50; ++i) {
    auto o = execute(t, c2, always, rng);
    CHECK_FALSE(o.completed);
    CHECK(o.failed_at >= 1);
    CHECK(o.failed_at < t.waypoints.size());
  }
}

}
