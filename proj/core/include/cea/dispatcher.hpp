#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cea/actions.hpp"
#include "cea/arm.hpp"
#include "cea/comfort.hpp"
#include "cea/game.hpp"
#include "cea/memory.hpp"
#include "cea/personality.hpp"
#include "cea/planner.hpp"
#include "cea/rng.hpp"
#include "cea/speech.hpp"
#include "cea/usersim.hpp"

namespace cea {

enum class SessionMode { Batch, Live };

struct SessionConfig {
  PersonalityVector personality;
  bool speaking = true;
  SessionMode mode = SessionMode::Batch;
  // Required in batch mode.
  std::optional<uint64_t> seed;
  ComfortParams comfort;
  PlannerConfig planner;
  std::string profile = "reactive";
  // Directory with replacement data files (catalog.conf, templates.conf,
  // profiles.conf, geometry.conf, sensitivity.conf, memory.conf,
  // params.conf); the built-in copies are used when empty.
  std::string data_dir;
  double failure_probability = 0.0;
  int step_limit = 500;
  // Overrides the personality-based first-mover rule.
  std::optional<Performer> first_mover;
  // Starting reward table, e.g. loaded from an earlier session.
  std::optional<EpisodicMemory> memory;
  double perception_window = 3.0;
};

enum class EventKind {
  Perceived,
  Planned,
  Replanned,
  ActionStarted,
  ActionCompleted,
  ActionFailed,
  ComfortUpdated,
  RewardUpdated,
  HumanMoved,
  Utterance,
  SessionEnded
};

std::string_view to_string(EventKind k);
std::optional<EventKind> parse_event_kind(std::string_view s);

struct SessionEvent {
  long tick = 0;  // strictly increasing across the session
  int step = 0;   // decision cycle that emitted it
  double t = 0.0; // virtual seconds
  EventKind kind = EventKind::Perceived;
  std::string data;  // JSON object with kind-specific fields

  // One line of the events-jsonl export, without the newline.
  std::string to_json() const;
  // Throws Error{ParseError}.
  static SessionEvent from_json(std::string_view line);

  friend bool operator==(const SessionEvent&, const SessionEvent&) = default;
};

// Expected vs actual signed comfort after one executed step.
struct ComfortRow {
  int tick = 0;
  std::string action;
  Trait trait = Trait::Conscientiousness;
  double expected = 0.0;
  double actual = 0.0;
  double threshold = 0.0;  // signed like the trait weight
};

struct TrajectoryRow {
  double t = 0.0;
  Vec3 p;
  std::string action;
};

struct SessionSummary {
  std::map<std::string, int> category_counts;
  std::map<std::string, int> action_counts;
  std::map<std::string, int> motivational_counts;  // by pole
  int robot_placements = 0;
  int human_placements = 0;
  int wrong_placements = 0;
  int replans = 0;
  int failures = 0;
  int verbal_utterances = 0;
  int steps = 0;
  bool complete_valid = false;
  std::string final_board;
};

struct SessionLog {
  std::string personality;
  bool speaking = true;
  uint64_t seed = 0;
  std::string profile;
  std::vector<SessionEvent> events;
  std::vector<ComfortRow> comfort;
  std::vector<TrajectoryRow> trajectory;
  std::vector<PathMetrics> pick_place_metrics;
  SessionSummary summary;
};

// One collaborative game session. Batch sessions simulate the human; live
// sessions take human moves and perception from outside.
class Session {
 public:
  // Loads data, initializes comfort and memory, decides the first mover and
  // computes the first plan. Throws Error{BadConfig} (e.g. missing seed in
  // batch mode), load errors, or Error{NoPlan}.
  static Session create(const SessionConfig& config);

  Session(Session&&) noexcept;
  Session& operator=(Session&&) noexcept;
  ~Session();

  // One decision cycle. In live mode a cycle that reaches a wait_human step
  // returns no action events and leaves the plan in place. Throws
  // Error{SessionEnded}.
  std::vector<SessionEvent> step();

  // Batch only: Error{BadConfig} in live mode. Throws
  // Error{StepLimitExceeded}.
  const SessionLog& run_to_completion();

  // Live only (Error{NotLiveSession}). The move must be the human's
  // (Error{NotYourTurn}) and legal (Error{IllegalPlacement} /
  // Error{CellOccupied}); it is applied at once.
  std::vector<SessionEvent> post_human_move(Cell cell);
  // Live only. Queued as if sensed now; applied on the next step.
  void inject_perception(Emotion e, bool attentive);

  bool ended() const;
  bool awaiting_human() const;
  Performer turn() const;
  const Board& board() const;
  const ComfortState& comfort() const;
  const Plan& current_plan() const;
  size_t plan_cursor() const;
  const EpisodicMemory& memory() const;
  const SessionConfig& config() const;
  const SessionLog& log() const;
  double now() const;
  const std::string& last_utterance() const;
  // Arranges the next arm motion to fail at a waypoint.
  void inject_failure(size_t waypoint);
  void set_sentence_client(SentenceClient* client);

 private:
  struct Impl;
  explicit Session(std::unique_ptr<Impl> impl);
  std::unique_ptr<Impl> impl_;
};

}  // namespace cea
