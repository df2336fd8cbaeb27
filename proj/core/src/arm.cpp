#include "cea/arm.hpp"

#include <algorithm>
#include <cmath>

#include "cea/confdoc.hpp"
#include "cea/data.hpp"
#include "cea/error.hpp"

namespace cea {

namespace {

Vec3 vec(const confdoc::Value& v) {
  auto n = v.numbers();
  if (n.size() != 3) {
    throw Error(ErrorCode::SchemaError,
                "at " + confdoc::to_string(v.position()) + ": expected [x, y, z]");
  }
  return {n[0], n[1], n[2]};
}

template <typename T>
std::array<T, 3> triple(const confdoc::Value& v) {
  auto n = v.numbers();
  if (n.size() != 3) {
    throw Error(ErrorCode::SchemaError,
                "at " + confdoc::to_string(v.position()) + ": expected three values for Low, Mid, High");
  }
  return {static_cast<T>(n[0]), static_cast<T>(n[1]), static_cast<T>(n[2])};
}

std::array<Vec3, kCells> grid(const Vec3& center, double pitch) {
  std::array<Vec3, kCells> out{};
  for (int i = 0; i < kCells; ++i) {
    Cell c = Cell::from_index(i);
    out[static_cast<size_t>(i)] = center + Vec3{(c.row - 1) * pitch, (c.col - 1) * pitch, 0.0};
  }
  return out;
}

std::string fmt(const Vec3& p) {
  return "(" + confdoc::format_number(p.x) + ", " + confdoc::format_number(p.y) + ", " +
         confdoc::format_number(p.z) + ")";
}

void check_bounds(const Trajectory& t, const Bounds& b) {
  for (const Vec3& p : t.waypoints) {
    if (!b.contains(p)) {
      throw Error(ErrorCode::OutOfWorkspace, t.action + " leaves the workspace at " + fmt(p));
    }
  }
}

double polyline_length(const std::vector<Vec3>& w, size_t first, size_t last) {
  double sum = 0.0;
  for (size_t i = first; i < last; ++i) sum += distance(w[i], w[i + 1]);
  return sum;
}

// Time to cover arc length s of a profile over total length L.
double time_at(double s, double length, double v, double a) {
  if (length <= 0.0) return 0.0;
  if (length >= v * v / a) {
    double ramp = v * v / (2.0 * a);
    double total = length / v + v / a;
    if (s <= ramp) return std::sqrt(2.0 * s / a);
    if (s <= length - ramp) return v / a + (s - ramp) / v;
    return total - std::sqrt(2.0 * std::max(0.0, length - s) / a);
  }
  double total = 2.0 * std::sqrt(length / a);
  if (s <= length / 2.0) return std::sqrt(2.0 * s / a);
  return total - std::sqrt(2.0 * std::max(0.0, length - s) / a);
}

size_t level_index(Level l) { return static_cast<size_t>(l); }

void finish(Trajectory& t, const BehavioralParameters& params, const MotionConfig& config) {
  t.speed_scale = speed_scale(params.velocity);
  t.accel_scale = speed_scale(params.acceleration);
  double length = polyline_length(t.waypoints, 0, t.waypoints.size() - 1);
  t.duration = profile_duration(length, config.v_max * t.speed_scale, config.a_max * t.accel_scale) +
               t.hold;
}

}  // namespace

double Vec3::norm() const { return std::sqrt(x * x + y * y + z * z); }

double distance(const Vec3& a, const Vec3& b) { return (a - b).norm(); }

bool Bounds::contains(const Vec3& p) const {
  constexpr double eps = 1e-12;
  return p.x >= min.x - eps && p.x <= max.x + eps && p.y >= min.y - eps && p.y <= max.y + eps &&
         p.z >= min.z - eps && p.z <= max.z + eps;
}

const Geometry& Geometry::defaults() {
  static const Geometry g = parse(data::builtin("geometry.conf"));
  return g;
}

Geometry Geometry::parse(std::string_view text) {
  confdoc::Block doc = confdoc::parse(text);
  Geometry g;
  g.rest = vec(doc.get("rest"));
  double pitch = doc.get("pitch").number();
  g.cells = grid(vec(doc.get("board_center")), pitch);
  g.red_slots = grid(vec(doc.get("red_slots")), pitch);
  g.blue_slots = grid(vec(doc.get("blue_slots")), pitch);
  if (const confdoc::Block* b = doc.child("bounds")) {
    g.bounds.min = vec(b->get("min"));
    g.bounds.max = vec(b->get("max"));
  }
  g.validate();
  return g;
}

Geometry Geometry::load(const std::string& path) { return parse(data::read_file(path)); }

void Geometry::validate() const {
  auto check = [&](const Vec3& p, const std::string& what) {
    if (!bounds.contains(p)) throw Error(ErrorCode::BadConfig, what + " " + fmt(p) + " is out of bounds");
  };
  check(rest, "rest pose");
  for (size_t i = 0; i < cells.size(); ++i) {
    check(cells[i], "cell");
    check(red_slots[i], "red slot");
    check(blue_slots[i], "blue slot");
    for (size_t j = 0; j < i; ++j) {
      if (distance(cells[i], cells[j]) < 1e-9) throw Error(ErrorCode::BadConfig, "cells coincide");
    }
  }
}

const Vec3& Geometry::slot(Color color, int index) const {
  if (index < 0 || index >= kCells || color == Color::Empty) {
    throw Error(ErrorCode::OutOfRange, "no home slot " + std::to_string(index));
  }
  return color == kRobotColor ? red_slots[static_cast<size_t>(index)]
                              : blue_slots[static_cast<size_t>(index)];
}

const MotionConfig& MotionConfig::defaults() {
  static const MotionConfig c = parse(data::builtin("geometry.conf"));
  return c;
}

MotionConfig MotionConfig::parse(std::string_view text) {
  confdoc::Block doc = confdoc::parse(text);
  MotionConfig c;
  const confdoc::Block* m = doc.child("motion");
  if (!m) return c;
  if (auto* v = m->find("v_max")) c.v_max = v->number();
  if (auto* v = m->find("a_max")) c.a_max = v->number();
  if (auto* v = m->find("z_base")) c.z_base = v->number();
  if (auto* v = m->find("amplitude")) c.amplitude = triple<double>(*v);
  if (auto* v = m->find("deviation_count")) c.deviation_count = triple<int>(*v);
  if (auto* v = m->find("deviation_offset")) c.deviation_offset = triple<double>(*v);
  if (auto* v = m->find("gesture_amplitude")) c.gesture_amplitude = triple<double>(*v);
  if (auto* v = m->find("wait_seconds")) c.wait_seconds = v->number();
  if (!(c.v_max > 0.0 && c.a_max > 0.0)) throw Error(ErrorCode::BadConfig, "v_max and a_max must be positive");
  return c;
}

double speed_scale(SpeedLevel level) {
  switch (level) {
    case SpeedLevel::Slow:
      return 0.5;
    case SpeedLevel::Middle:
      return 0.75;
    case SpeedLevel::High:
      return 1.0;
  }
  return 1.0;
}

double profile_duration(double length, double v, double a) {
  if (length <= 0.0) return 0.0;
  if (length >= v * v / a) return length / v + v / a;
  return 2.0 * std::sqrt(length / a);
}

std::vector<double> waypoint_times(const Trajectory& t, const MotionConfig& config) {
  double v = config.v_max * t.speed_scale;
  double a = config.a_max * t.accel_scale;
  double length = polyline_length(t.waypoints, 0, t.waypoints.empty() ? 0 : t.waypoints.size() - 1);
  std::vector<double> out;
  double s = 0.0;
  for (size_t i = 0; i < t.waypoints.size(); ++i) {
    if (i > 0) s += distance(t.waypoints[i - 1], t.waypoints[i]);
    out.push_back(time_at(s, length, v, a));
  }
  if (!out.empty() && t.hold > 0.0) out.back() += t.hold;
  return out;
}

Trajectory synth_transfer(const Geometry& geom, const Vec3& from, const Vec3& to,
                          const BehavioralParameters& params, std::string action,
                          const MotionConfig& config) {
  Trajectory t;
  t.action = std::move(action);
  double lift = config.z_base + config.amplitude[level_index(params.amplitude)];
  Vec3 grasp{from.x, from.y, from.z + config.z_base};
  Vec3 release{to.x, to.y, to.z + config.z_base};
  Vec3 post_grasp{from.x, from.y, from.z + lift};
  Vec3 pre_release{to.x, to.y, to.z + lift};

  t.waypoints = {geom.rest, post_grasp, grasp, post_grasp};
  size_t transit_first = t.waypoints.size() - 1;

  size_t s = level_index(params.straightness);
  int n = config.deviation_count[s];
  double offset = config.deviation_offset[s];
  Vec3 chord = pre_release - post_grasp;
  double horizontal = std::hypot(chord.x, chord.y);
  Vec3 lateral = horizontal > 0.0 ? Vec3{-chord.y / horizontal, chord.x / horizontal, 0.0}
                                  : Vec3{0.0, 1.0, 0.0};
  for (int i = 1; i <= n; ++i) {
    double f = static_cast<double>(i) / (n + 1);
    double side = i % 2 == 1 ? 1.0 : -1.0;
    t.waypoints.push_back(post_grasp + chord * f + lateral * (offset * side));
  }

  t.waypoints.push_back(pre_release);
  t.transit = std::make_pair(transit_first, t.waypoints.size() - 1);
  t.waypoints.push_back(release);
  t.waypoints.push_back(pre_release);
  t.waypoints.push_back(geom.rest);

  finish(t, params, config);
  check_bounds(t, geom.bounds);
  return t;
}

Trajectory synth_pick_place(const Geometry& geom, int from_slot, Cell to_cell,
                            const BehavioralParameters& params, const MotionConfig& config) {
  if (to_cell.row < 0 || to_cell.row > 2 || to_cell.col < 0 || to_cell.col > 2) {
    throw Error(ErrorCode::OutOfRange, "no cell " + to_cell.to_string());
  }
  return synth_transfer(geom, geom.slot(kRobotColor, from_slot), geom.cell(to_cell), params,
                        "pick_place", config);
}

const std::vector<std::string>& gesture_ids() {
  static const std::vector<std::string> ids = {
      "make_visible_movement_horizontal", "make_visible_movement_vertical",
      "retracting_movement",              "hide_gripper_behind_arm",
      "move_closer_to_human",             "threatening_move_horizontal",
      "threatening_move_sagittal",        "tease_with_gripper",
      "keep_attention_on_task_gesture",   "random_movement",
      "wait_some_seconds"};
  return ids;
}

Trajectory synth_gesture(std::string_view gesture, const BehavioralParameters& params,
                         const Geometry& geom, const MotionConfig& config) {
  const Vec3 r = geom.rest;
  const double a = config.gesture_amplitude[level_index(params.amplitude)];
  Trajectory t;
  t.action = std::string(gesture);
  auto& w = t.waypoints;
  if (gesture == "make_visible_movement_horizontal") {
    w = {r, r + Vec3{0, a, 0}, r + Vec3{0, -a, 0}, r};
  } else if (gesture == "make_visible_movement_vertical") {
    w = {r, r + Vec3{0, 0, 0.6 * a}, r + Vec3{0, 0, -0.6 * a}, r};
  } else if (gesture == "retracting_movement") {
    w = {r, r + Vec3{-a, 0, 0}};
  } else if (gesture == "hide_gripper_behind_arm") {
    w = {r, r + Vec3{-a, 0, -0.4 * a}};
  } else if (gesture == "move_closer_to_human") {
    w = {r, r + Vec3{a, 0, 0}};
  } else if (gesture == "threatening_move_horizontal") {
    w = {r, r + Vec3{0, a, 0}, r + Vec3{0, -a, 0}, r + Vec3{0, a, 0}, r};
  } else if (gesture == "threatening_move_sagittal") {
    w = {r, r + Vec3{a, 0, -0.3 * a}, r, r + Vec3{a, 0, -0.3 * a}, r};
  } else if (gesture == "tease_with_gripper") {
    w = {r, r + Vec3{0, 0, 0.02}, r, r + Vec3{0, 0, 0.02}, r};
  } else if (gesture == "keep_attention_on_task_gesture") {
    w = {r, geom.cell({1, 1}) + Vec3{0, 0, 0.15}, r};
  } else if (gesture == "random_movement") {
    w = {r, r + Vec3{0.5 * a, 0.7 * a, 0.2 * a}, r + Vec3{-0.3 * a, -0.6 * a, -0.2 * a},
         r + Vec3{0.4 * a, -0.2 * a, 0.3 * a}, r};
  } else if (gesture == "wait_some_seconds") {
    w = {r, r};
    t.hold = config.wait_seconds;
  } else {
    throw Error(ErrorCode::UnknownGesture, "unknown gesture '" + std::string(gesture) + "'");
  }
  finish(t, params, config);
  check_bounds(t, geom.bounds);
  return t;
}

PathMetrics path_metrics(const Trajectory& t) {
  PathMetrics m;
  const auto& w = t.waypoints;
  if (w.empty()) return m;
  size_t first = 0;
  size_t last = w.size() - 1;
  m.path_length = polyline_length(w, first, last);
  m.duration = t.duration;
  if (t.transit) std::tie(first, last) = *t.transit;
  m.apex_z = w[first].z;
  for (size_t i = first; i <= last; ++i) m.apex_z = std::max(m.apex_z, w[i].z);
  double chord = distance(w[first], w[last]);
  double along = polyline_length(w, first, last);
  m.straightness_ratio = chord > 0.0 ? along / chord : 1.0;
  return m;
}

ExecutionOutcome execute(const Trajectory& t, VirtualClock& clock, FailureModel& failure, Rng& rng,
                         const MotionConfig& config) {
  std::optional<size_t> fail_at;
  if (failure.forced_waypoint) {
    fail_at = failure.forced_waypoint;
    failure.forced_waypoint.reset();
  } else if (failure.probability > 0.0 && rng.bernoulli(failure.probability) && t.waypoints.size() > 1) {
    fail_at = 1 + rng.below(t.waypoints.size() - 1);
  }
  if (fail_at) {
    size_t k = std::min(*fail_at, t.waypoints.size() - 1);
    double elapsed = waypoint_times(t, config)[k];
    clock.advance(elapsed);
    return ExecutionOutcome::failed(k, elapsed);
  }
  clock.advance(t.duration);
  return ExecutionOutcome::done(t.duration);
}

}  // namespace cea
