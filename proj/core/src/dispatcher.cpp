#include "cea/dispatcher.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <json.hpp>

#include "cea/data.hpp"
#include "cea/error.hpp"

namespace cea {

using nlohmann::json;

namespace {

constexpr std::array<std::string_view, 11> kEventNames = {
    "Perceived",      "Planned",       "Replanned",  "ActionStarted",
    "ActionCompleted", "ActionFailed", "ComfortUpdated", "RewardUpdated",
    "HumanMoved",     "Utterance",     "SessionEnded"};

// Virtual durations of non-arm activity, in seconds.
constexpr double kSecondsPerChar = 0.06;
constexpr double kSpeechPause = 0.5;
constexpr double kSoundSeconds = 1.0;
constexpr double kHumanMoveSeconds = 4.0;

enum Stream : uint64_t { kSelection = 1, kReaction, kHumanMove, kSpeech, kFailure };

struct Resources {
  ActionCatalog catalog;
  TemplateStore templates;
  ProfileLibrary profiles;
  Geometry geometry;
  MotionConfig motion;
  SensitivityTable sensitivity;
  MemoryConfig memory;
  ParameterMap params;

  static Resources load(const std::string& dir) {
    if (dir.empty()) {
      return {ActionCatalog::defaults(),  TemplateStore::defaults(), ProfileLibrary::defaults(),
              Geometry::defaults(),       MotionConfig::defaults(),  SensitivityTable::defaults(),
              MemoryConfig::defaults(),   ParameterMap::defaults()};
    }
    std::string geometry = data::read(dir, "geometry.conf");
    return {ActionCatalog::parse(data::read(dir, "catalog.conf")),
            TemplateStore::parse(data::read(dir, "templates.conf")),
            ProfileLibrary::parse(data::read(dir, "profiles.conf")),
            Geometry::parse(geometry),
            MotionConfig::parse(geometry),
            SensitivityTable::parse(data::read(dir, "sensitivity.conf")),
            MemoryConfig::parse(data::read(dir, "memory.conf")),
            ParameterMap::parse(data::read(dir, "params.conf"))};
  }
};

std::string trait_key(Trait t) { return std::string(1, trait_letter(t)); }

json signed_values(const ComfortState& c) {
  json out = json::object();
  for (Trait t : c.active_traits()) out[trait_key(t)] = c.signed_value(t);
  return out;
}

json cell_json(Cell c) { return json::array({c.row, c.col}); }

ActionClass action_class(const ActionSpec& a) {
  if (a.motion == "pick_place") return ActionClass::PickPlace;
  if (!a.motion.empty()) return ActionClass::CommunicativeGesture;
  return ActionClass::Speech;
}

json params_json(const BehavioralParameters& b) {
  return {{"velocity", to_string(b.velocity)},
          {"acceleration", to_string(b.acceleration)},
          {"amplitude", to_string(b.amplitude)},
          {"straightness", to_string(b.straightness)},
          {"volume", to_string(b.volume)}};
}

}  // namespace

std::string_view to_string(EventKind k) { return kEventNames[static_cast<size_t>(k)]; }

std::optional<EventKind> parse_event_kind(std::string_view s) {
  for (size_t i = 0; i < kEventNames.size(); ++i) {
    if (kEventNames[i] == s) return static_cast<EventKind>(i);
  }
  return std::nullopt;
}

std::string SessionEvent::to_json() const {
  json j;
  j["tick"] = tick;
  j["step"] = step;
  j["t"] = t;
  j["kind"] = std::string(to_string(kind));
  j["data"] = data.empty() ? json::object() : json::parse(data);
  return j.dump();
}

SessionEvent SessionEvent::from_json(std::string_view line) {
  try {
    json j = json::parse(line);
    SessionEvent e;
    e.tick = j.at("tick").get<long>();
    e.step = j.at("step").get<int>();
    e.t = j.at("t").get<double>();
    auto kind = parse_event_kind(j.at("kind").get<std::string>());
    if (!kind) throw Error(ErrorCode::ParseError, "unknown event kind");
    e.kind = *kind;
    e.data = j.at("data").dump();
    return e;
  } catch (const json::exception& ex) {
    throw Error(ErrorCode::ParseError, std::string("bad event line: ") + ex.what());
  }
}

struct Session::Impl {
  SessionConfig config;
  Resources res;
  const UserModel* user = nullptr;
  uint64_t seed = 0;
  Rng rng_select, rng_react, rng_move, rng_speech, rng_failure;

  Board board;
  FactStore facts;
  ComfortState comfort;
  EpisodicMemory memory;
  PerceptionWindow window;
  size_t applied_samples = 0;  // samples already turned into comfort changes
  std::vector<PerceptionWindow::Sample> pending;

  Plan plan;
  size_t cursor = 0;
  bool planned_once = false;

  VirtualClock clock;
  FailureModel failure;
  std::array<std::array<bool, kCells>, 2> slot_used{};
  std::optional<Cell> last_move;
  std::vector<std::string> history;
  std::string last_utterance;
  SentenceClient* client = nullptr;

  SessionLog log;
  std::vector<SessionEvent>* sink = nullptr;
  int step_index = 0;
  bool ended = false;

  PersonalityVector p() const { return config.personality; }
  bool live() const { return config.mode == SessionMode::Live; }

  PlanState actual() const {
    PlanState s;
    s.board = board;
    s.facts = facts;
    s.comfort = comfort;
    s.step = cursor < plan.predicted.size() ? plan.predicted[cursor].step : 0;
    return s;
  }

  void emit(EventKind kind, json data) {
    SessionEvent e;
    e.tick = static_cast<long>(log.events.size()) + 1;
    e.step = step_index;
    e.t = clock.now();
    e.kind = kind;
    e.data = data.dump();
    log.events.push_back(e);
    if (sink) sink->push_back(e);
  }

  void comfort_changed(const ComfortState& before, const std::string& cause,
                       const std::string& action) {
    json deltas = json::object();
    bool any = false;
    for (Trait t : comfort.active_traits()) {
      double d = comfort.magnitude(t) - before.magnitude(t);
      deltas[trait_key(t)] = d;
      any = any || d != 0.0;
    }
    if (!any && cause == "perception") return;
    json data{{"cause", cause}, {"delta", deltas}, {"values", signed_values(comfort)}};
    if (!action.empty()) data["action"] = action;
    emit(EventKind::ComfortUpdated, data);
  }

  void record_comfort(const std::string& action, const ComfortState& expected) {
    for (Trait t : comfort.active_traits()) {
      double sign = comfort.weight(t) > 0.0 ? 1.0 : -1.0;
      log.comfort.push_back({step_index, action, t, expected.signed_value(t), comfort.signed_value(t),
                             sign * comfort.threshold()});
    }
  }

  WorldState world_now() {
    Emotion e = filter_emotion(window, clock.now());
    bool a = filter_attention(window, clock.now());
    return WorldState::encode(e, a);
  }

  void add_sample(const Perception& pr) {
    window.add(clock.now(), pr.emotion, pr.attentive);
    pending.push_back({clock.now(), pr.emotion, pr.attentive});
  }

  // Pending samples become comfort changes once each.
  void apply_pending_perception() {
    if (pending.empty()) return;
    auto poles = dominant_poles(p());
    Emotion filtered = filter_emotion(window, clock.now());
    for (size_t i = 0; i < pending.size(); ++i) {
      // The filtered emotion with this sample's own attention flag.
      WorldState w = WorldState::encode(filtered, pending[i].attentive);
      emit(EventKind::Perceived, {{"emotion", to_string(pending[i].emotion)},
                                  {"attentive", pending[i].attentive},
                                  {"filtered", to_string(w.emotion())},
                                  {"state", w.to_string()}});
      ComfortState before = comfort;
      comfort = apply_perception(comfort, poles, w, res.sensitivity);
      comfort_changed(before, "perception", "");
    }
    pending.clear();
  }

  std::string replan_reason() const {
    if (!planned_once) return "initial";
    if (cursor >= plan.steps.size()) return "exhausted";
    PlanState now = actual();
    if (!same_state(now, plan.predicted[cursor])) return "drift";
    const PlanStep& next = plan.steps[cursor];
    if (!next.is_motivate()) {
      const ActionSpec& a = res.catalog.at(next.action);
      if (!applicable(now, a)) return "precondition";
      if (a.performer == Performer::Robot && a.board_effect != BoardEffect::None &&
          candidate_cell(now, a) != next.cell) {
        return "precondition";
      }
    }
    return "";
  }

  void make_plan(const std::string& reason) {
    PlanState init = actual();
    init.step = 0;
    plan = cea::plan(init, res.catalog, p(), config.speaking, config.planner);
    cursor = 0;
    json data{{"reason", reason},
              {"steps", json::array()},
              {"motivates", plan.motivate_count()},
              {"expected", json::array()}};
    for (const auto& s : plan.steps) data["steps"].push_back(s.to_string());
    for (const auto& s : plan.predicted) data["expected"].push_back(signed_values(s.comfort));
    if (planned_once) ++log.summary.replans;
    emit(planned_once ? EventKind::Replanned : EventKind::Planned, data);
    planned_once = true;
  }

  int take_slot(Color c) {
    auto& used = slot_used[c == kRobotColor ? 0 : 1];
    for (size_t i = 0; i < used.size(); ++i) {
      if (!used[i]) {
        used[i] = true;
        return static_cast<int>(i);
      }
    }
    throw Error(ErrorCode::Inconsistent, "no free home slot");
  }

  int return_slot(Color c) {
    auto& used = slot_used[c == kRobotColor ? 0 : 1];
    for (size_t i = used.size(); i-- > 0;) {
      if (used[i]) {
        used[i] = false;
        return static_cast<int>(i);
      }
    }
    return 0;
  }

  // Runs the arm; records the trajectory. Returns false on failure.
  bool move_arm(const Trajectory& t, json& completed) {
    double start = clock.now();
    std::vector<double> times = waypoint_times(t, res.motion);
    ExecutionOutcome out = execute(t, clock, failure, rng_failure, res.motion);
    size_t last = out.completed ? t.waypoints.size() : out.failed_at + 1;
    for (size_t i = 0; i < last; ++i) log.trajectory.push_back({start + times[i], t.waypoints[i], t.action});
    completed["duration"] = out.duration;
    if (!out.completed) {
      completed["waypoint"] = out.failed_at;
      return false;
    }
    return true;
  }

  void speak(const ActionSpec& a, const BehavioralParameters& params) {
    UtteranceRequest req = make_request(a, params, p(), config.speaking);
    WorldState w = world_now();
    req.emotion = w.emotion();
    req.attentive = w.attentive();
    if (last_move) req.last_move = last_move->to_string();
    req.history = history;
    Utterance u = realize(req, res.templates, rng_speech, client);
    json data{{"action", a.id}, {"modality", std::string(to_string(a.modality))},
              {"volume", to_string(u.volume)}};
    if (u.cue) {
      data["cue"] = *u.cue;
      clock.advance(kSoundSeconds);
    } else {
      data["text"] = u.text;
      data["style"] = req.style;
      history.push_back(u.text);
      last_utterance = u.text;
      ++log.summary.verbal_utterances;
      clock.advance(kSpeechPause + kSecondsPerChar * static_cast<double>(u.text.size()));
    }
    emit(EventKind::Utterance, data);
  }

  // Performs the action's outward behavior. Board changes happen only when
  // the arm motion completes. Returns false on an arm failure.
  bool perform(const ActionSpec& a, std::optional<Cell> cell) {
    BehavioralParameters params = res.params.generate(p(), action_class(a));
    json started{{"action", a.id},
                 {"kind", std::string(to_string(a.kind))},
                 {"modality", std::string(to_string(a.modality))},
                 {"params", params_json(params)}};
    if (a.pole) started["pole"] = to_string(*a.pole);
    if (cell) started["cell"] = cell_json(*cell);
    emit(EventKind::ActionStarted, started);
    ++log.summary.action_counts[a.id];
    if (!a.category.empty()) ++log.summary.category_counts[a.category];

    json done{{"action", a.id}};
    bool ok = true;
    if (a.modality == Modality::Verbal || a.modality == Modality::Sound) {
      speak(a, params);
    }
    switch (a.board_effect) {
      case BoardEffect::None:
        if (!a.motion.empty() && a.motion != "pick_place") {
          ok = move_arm(synth_gesture(a.motion, params, res.geometry, res.motion), done);
        }
        break;
      case BoardEffect::PlaceOwnCorrect:
      case BoardEffect::PlaceOwnWrong: {
        int slot = take_slot(kRobotColor);
        Trajectory t = synth_transfer(res.geometry, res.geometry.slot(kRobotColor, slot),
                                      res.geometry.cell(*cell), params, a.id, res.motion);
        ok = move_arm(t, done);
        if (ok) {
          board = apply_move(board, *cell, kRobotColor, a.board_effect == BoardEffect::PlaceOwnWrong);
          last_move = cell;
          ++log.summary.robot_placements;
          if (a.board_effect == BoardEffect::PlaceOwnWrong) ++log.summary.wrong_placements;
          log.pick_place_metrics.push_back(path_metrics(t));
        } else {
          return_slot(kRobotColor);
        }
        break;
      }
      case BoardEffect::PlaceHumansBlock:
        if (a.performer == Performer::Human) {
          Cell c = choose_human_move(*user, board, rng_move);
          board = apply_move(board, c, kHumanColor, false);
          take_slot(kHumanColor);
          last_move = c;
          ++log.summary.human_placements;
          clock.advance(kHumanMoveSeconds);
          done["duration"] = kHumanMoveSeconds;
          emit(EventKind::HumanMoved, {{"cell", cell_json(c)}, {"board", board.to_string()}});
        } else {
          int slot = take_slot(kHumanColor);
          Trajectory t = synth_transfer(res.geometry, res.geometry.slot(kHumanColor, slot),
                                        res.geometry.cell(*cell), params, a.id, res.motion);
          ok = move_arm(t, done);
          if (ok) {
            board = apply_move(board, *cell, kHumanColor, false);
            last_move = cell;
            ++log.summary.robot_placements;
            log.pick_place_metrics.push_back(path_metrics(t));
          } else {
            return_slot(kHumanColor);
          }
        }
        break;
      case BoardEffect::RemoveMisplaced: {
        Cell from = *board.misplaced();
        Color color = board.at(from);
        int slot = return_slot(color);
        Trajectory t = synth_transfer(res.geometry, res.geometry.cell(from),
                                      res.geometry.slot(color, slot), params, a.id, res.motion);
        ok = move_arm(t, done);
        if (ok) {
          board = remove_block(board, from);
        } else {
          slot_used[color == kRobotColor ? 0 : 1][static_cast<size_t>(slot)] = true;
        }
        break;
      }
    }
    if (!ok) {
      ++log.summary.failures;
      emit(EventKind::ActionFailed, done);
      return false;
    }
    done["board"] = board.to_string();
    emit(EventKind::ActionCompleted, done);
    return true;
  }

  void user_reacts(const ActionSpec& a) {
    if (live()) return;
    add_sample(react(*user, a.category, rng_react));
  }

  void run_motivate(TraitPole pole, const ComfortState& expected) {
    auto candidates = available(res.catalog, config.speaking, ActionKind::Motivational, pole);
    WorldState w = world_now();
    const ActionSpec& a = select_motivational(memory, pole, w, candidates, rng_select);
    ++log.summary.motivational_counts[to_string(pole)];
    perform(a, std::nullopt);
    user_reacts(a);
    Emotion observed = filter_emotion(window, clock.now());
    double before_total = memory.entry(w, a.id).total();
    double total = memory.update_reward(w, a, observed);
    json reward{{"action", a.id},
                {"state", w.to_string()},
                {"observed", to_string(observed)},
                {"total", total},
                {"change", total - before_total}};
    if (a.expected_emotion) reward["expected"] = to_string(*a.expected_emotion);
    emit(EventKind::RewardUpdated, reward);
    ComfortState before = comfort;
    comfort = apply_recovery(comfort, pole.trait, total);
    comfort_changed(before, "recovery", a.id);
    record_comfort(a.id, expected);
  }

  void run_action(const PlanStep& step, const ComfortState& expected) {
    const ActionSpec& a = res.catalog.at(step.action);
    bool ok = perform(a, step.cell);
    ComfortState before = comfort;
    comfort = apply_standard_decay(comfort, p());
    if (ok) {
      for (const Literal& e : a.effects) facts.assert_fact(e);
      for (const auto& [pole, delta] : a.comfort_offsets) {
        if (p().pole(pole.trait) == pole) comfort = apply_offset(comfort, pole.trait, delta);
      }
    }
    comfort_changed(before, "action", a.id);
    record_comfort(a.id, expected);
    user_reacts(a);
  }

  std::vector<SessionEvent> step() {
    if (ended) throw Error(ErrorCode::SessionEnded, "session has ended");
    std::vector<SessionEvent> out;
    sink = &out;
    ++step_index;
    apply_pending_perception();

    if (!board.misplaced() && is_complete_valid(board)) {
      finish();
      sink = nullptr;
      return out;
    }
    if (std::string reason = replan_reason(); !reason.empty()) make_plan(reason);

    const PlanStep& next = plan.steps[cursor];
    if (live() && !next.is_motivate() && res.catalog.at(next.action).performer == Performer::Human) {
      sink = nullptr;
      return out;
    }
    PlanStep s = next;
    ComfortState expected = plan.predicted[cursor + 1].comfort;
    ++cursor;
    if (s.is_motivate()) {
      run_motivate(*s.motivate, expected);
    } else {
      run_action(s, expected);
    }
    ++log.summary.steps;
    sink = nullptr;
    return out;
  }

  void finish() {
    ended = true;
    log.summary.complete_valid = is_complete_valid(board) && !board.misplaced();
    log.summary.final_board = board.to_string();
    emit(EventKind::SessionEnded, {{"board", board.to_string()},
                                   {"complete_valid", log.summary.complete_valid},
                                   {"robot_placements", log.summary.robot_placements}});
  }
};

Session::Session(std::unique_ptr<Impl> impl) : impl_(std::move(impl)) {}
Session::Session(Session&&) noexcept = default;
Session& Session::operator=(Session&&) noexcept = default;
Session::~Session() = default;

Session Session::create(const SessionConfig& config) {
  if (config.mode == SessionMode::Batch && !config.seed) {
    throw Error(ErrorCode::BadConfig, "batch sessions need a seed");
  }
  if (config.step_limit <= 0) throw Error(ErrorCode::BadConfig, "step limit must be positive");
  if (!(config.failure_probability >= 0.0 && config.failure_probability < 1.0)) {
    throw Error(ErrorCode::BadConfig, "failure probability must lie in [0, 1)");
  }
  config.comfort.validate();
  auto impl = std::make_unique<Impl>();
  Impl& s = *impl;
  s.config = config;
  s.res = Resources::load(config.data_dir);
  s.res.sensitivity.validate(config.comfort.initial);
  s.user = &s.res.profiles.at(config.profile);
  s.seed = config.seed.value_or(0);
  s.rng_select = Rng::stream(s.seed, kSelection);
  s.rng_react = Rng::stream(s.seed, kReaction);
  s.rng_move = Rng::stream(s.seed, kHumanMove);
  s.rng_speech = Rng::stream(s.seed, kSpeech);
  s.rng_failure = Rng::stream(s.seed, kFailure);
  s.failure.probability = config.failure_probability;
  s.window = PerceptionWindow(config.perception_window);

  s.board = new_board();
  Performer first = config.first_mover.value_or(first_mover(config.personality));
  s.facts.assert_fact(first == Performer::Robot ? "turn(robot)" : "turn(human)");
  s.comfort = init_comfort(config.personality, config.comfort);
  s.memory = config.memory ? *config.memory : EpisodicMemory::init(s.res.catalog, s.res.memory);

  s.log.personality = config.personality.to_string();
  s.log.speaking = config.speaking;
  s.log.seed = s.seed;
  s.log.profile = config.profile;
  s.make_plan("initial");
  return Session(std::move(impl));
}

std::vector<SessionEvent> Session::step() { return impl_->step(); }

const SessionLog& Session::run_to_completion() {
  if (impl_->live()) throw Error(ErrorCode::BadConfig, "run_to_completion needs a batch session");
  while (!impl_->ended) {
    if (impl_->step_index >= impl_->config.step_limit) {
      throw Error(ErrorCode::StepLimitExceeded,
                  "no valid board after " + std::to_string(impl_->config.step_limit) + " steps");
    }
    impl_->step();
  }
  return impl_->log;
}

std::vector<SessionEvent> Session::post_human_move(Cell cell) {
  Impl& s = *impl_;
  if (!s.live()) throw Error(ErrorCode::NotLiveSession, "human moves are simulated in batch mode");
  if (s.ended) throw Error(ErrorCode::SessionEnded, "session has ended");
  if (!s.facts.holds("turn(human)")) throw Error(ErrorCode::NotYourTurn, "it is the robot's turn");
  if (cell.row < 0 || cell.row > 2 || cell.col < 0 || cell.col > 2) {
    throw Error(ErrorCode::OutOfRange, "no cell " + cell.to_string());
  }
  auto legal = legal_cells(s.board, kHumanColor);
  if (s.board.at(cell) != Color::Empty) {
    throw Error(ErrorCode::CellOccupied, "cell " + cell.to_string() + " is occupied");
  }
  if (std::find(legal.begin(), legal.end(), cell) == legal.end()) {
    throw Error(ErrorCode::IllegalPlacement, "cell " + cell.to_string() + " breaks the pattern");
  }
  std::vector<SessionEvent> out;
  s.sink = &out;
  const ActionSpec* wait = nullptr;
  for (const ActionSpec& a : s.res.catalog.actions()) {
    if (a.performer == Performer::Human && a.board_effect == BoardEffect::PlaceHumansBlock) wait = &a;
  }
  s.board = apply_move(s.board, cell, kHumanColor, false);
  s.take_slot(kHumanColor);
  s.last_move = cell;
  ++s.log.summary.human_placements;
  s.emit(EventKind::HumanMoved, {{"cell", cell_json(cell)}, {"board", s.board.to_string()}});
  if (wait) {
    ++s.log.summary.action_counts[wait->id];
    for (const Literal& e : wait->effects) s.facts.assert_fact(e);
    ComfortState before = s.comfort;
    s.comfort = apply_standard_decay(s.comfort, s.p());
    s.comfort_changed(before, "action", wait->id);
  } else {
    s.facts.retract(Literal::parse("turn(human)"));
    s.facts.assert_fact("turn(robot)");
  }
  s.sink = nullptr;
  return out;
}

void Session::inject_perception(Emotion e, bool attentive) {
  Impl& s = *impl_;
  if (!s.live()) throw Error(ErrorCode::NotLiveSession, "perception is simulated in batch mode");
  s.add_sample({e, attentive});
}

bool Session::ended() const { return impl_->ended; }

bool Session::awaiting_human() const {
  const Impl& s = *impl_;
  // A finished board ends the session on the next step; nothing to wait for.
  if (s.ended || (!s.board.misplaced() && is_complete_valid(s.board))) return false;
  return s.facts.holds("turn(human)");
}

Performer Session::turn() const { return impl_->facts.holds("turn(human)") ? Performer::Human : Performer::Robot; }
const Board& Session::board() const { return impl_->board; }
const ComfortState& Session::comfort() const { return impl_->comfort; }
const Plan& Session::current_plan() const { return impl_->plan; }
size_t Session::plan_cursor() const { return impl_->cursor; }
const EpisodicMemory& Session::memory() const { return impl_->memory; }
const SessionConfig& Session::config() const { return impl_->config; }
const SessionLog& Session::log() const { return impl_->log; }
double Session::now() const { return impl_->clock.now(); }
const std::string& Session::last_utterance() const { return impl_->last_utterance; }
void Session::inject_failure(size_t waypoint) { impl_->failure.forced_waypoint = waypoint; }
void Session::set_sentence_client(SentenceClient* client) { impl_->client = client; }

}  // namespace cea
