#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cea/game.hpp"
#include "cea/personality.hpp"
#include "cea/rng.hpp"

namespace cea {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  double norm() const;

  friend bool operator==(const Vec3&, const Vec3&) = default;
};

double distance(const Vec3& a, const Vec3& b);

struct Bounds {
  Vec3 min{-0.3, -0.6, 0.0};
  Vec3 max{0.9, 0.6, 0.8};
  bool contains(const Vec3& p) const;
};

// Fixed workspace frame: x away from the robot base towards the human,
// z up from the table.
struct Geometry {
  Vec3 rest;
  std::array<Vec3, kCells> cells{};
  std::array<Vec3, kCells> red_slots{};
  std::array<Vec3, kCells> blue_slots{};
  Bounds bounds;

  static const Geometry& defaults();
  // Throws Error{BadConfig} if a position is out of bounds or two cells
  // coincide.
  static Geometry parse(std::string_view text);
  static Geometry load(const std::string& path);
  void validate() const;

  const Vec3& cell(Cell c) const { return cells[static_cast<size_t>(c.index())]; }
  const Vec3& slot(Color color, int index) const;
};

// Calibration of the motion synthesis.
struct MotionConfig {
  double v_max = 0.5;  // m/s
  double a_max = 1.0;  // m/s^2
  double z_base = 0.02;
  std::array<double, 3> amplitude{0.05, 0.12, 0.20};  // Low, Mid, High
  // Lateral deviation waypoints per straightness level: count and offset.
  std::array<int, 3> deviation_count{2, 1, 0};
  std::array<double, 3> deviation_offset{0.06, 0.03, 0.0};
  std::array<double, 3> gesture_amplitude{0.10, 0.175, 0.25};
  double wait_seconds = 3.0;

  static const MotionConfig& defaults();
  static MotionConfig parse(std::string_view text);
};

double speed_scale(SpeedLevel level);

struct Trajectory {
  std::vector<Vec3> waypoints;
  double speed_scale = 1.0;
  double accel_scale = 1.0;
  double hold = 0.0;      // motionless time added to the profile
  double duration = 0.0;  // seconds, derived
  std::string action;
  // Waypoint index range [first, last] carrying the block between slot and
  // cell; apex and straightness are measured over it when present.
  std::optional<std::pair<size_t, size_t>> transit;
};

// Blended trapezoidal profile over the whole polyline: cruise at
// v = v_max*speed_scale with ramps at a = a_max*accel_scale, or a triangular
// profile when the path is too short to reach v.
double profile_duration(double length, double v, double a);

// Time at which each waypoint is reached under the same profile.
std::vector<double> waypoint_times(const Trajectory& t, const MotionConfig& config = MotionConfig::defaults());

// Throws Error{OutOfWorkspace}.
Trajectory synth_transfer(const Geometry& geom, const Vec3& from, const Vec3& to,
                          const BehavioralParameters& params, std::string action,
                          const MotionConfig& config = MotionConfig::defaults());
Trajectory synth_pick_place(const Geometry& geom, int from_slot, Cell to_cell,
                            const BehavioralParameters& params,
                            const MotionConfig& config = MotionConfig::defaults());

// Throws Error{UnknownGesture} or Error{OutOfWorkspace}.
Trajectory synth_gesture(std::string_view gesture, const BehavioralParameters& params,
                         const Geometry& geom = Geometry::defaults(),
                         const MotionConfig& config = MotionConfig::defaults());
const std::vector<std::string>& gesture_ids();

struct PathMetrics {
  double path_length = 0.0;
  double apex_z = 0.0;
  double straightness_ratio = 1.0;
  double duration = 0.0;
};

PathMetrics path_metrics(const Trajectory& t);

class VirtualClock {
 public:
  double now() const { return now_; }
  void advance(double dt) { now_ += dt; }
  void set(double t) { now_ = t; }

 private:
  double now_ = 0.0;
};

struct FailureModel {
  double probability = 0.0;
  // One-shot failure at this waypoint on the next execution.
  std::optional<size_t> forced_waypoint;
};

struct ExecutionOutcome {
  bool completed = true;
  double duration = 0.0;
  size_t failed_at = 0;  // waypoint index when !completed

  static ExecutionOutcome done(double d) { return {true, d, 0}; }
  static ExecutionOutcome failed(size_t k, double d) { return {false, d, k}; }
};

// Advances the clock by the trajectory duration, or up to the failing
// waypoint. A random failure picks a waypoint in [1, n-1].
ExecutionOutcome execute(const Trajectory& t, VirtualClock& clock, FailureModel& failure, Rng& rng,
                         const MotionConfig& config = MotionConfig::defaults());

}  // namespace cea
