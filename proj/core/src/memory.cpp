#include "cea/memory.hpp"

#include <algorithm>
#include <cmath>

#include "cea/confdoc.hpp"
#include "cea/data.hpp"
#include "cea/error.hpp"

namespace cea {

namespace {

std::vector<WorldState> all_world_states() {
  std::vector<WorldState> out;
  for (Emotion e : kAllEmotions) {
    out.push_back(WorldState::encode(e, false));
    out.push_back(WorldState::encode(e, true));
  }
  return out;
}

std::string key_text(WorldState w, std::string_view action) {
  return w.to_string() + "/" + std::string(action);
}

}  // namespace

const MemoryConfig& MemoryConfig::defaults() {
  static const MemoryConfig config = parse(data::builtin("memory.conf"));
  return config;
}

namespace {

// Reads the learning block and the rule blocks; other blocks are ignored.
MemoryConfig config_from(const confdoc::Block& doc) {
  MemoryConfig c;
  if (const confdoc::Block* l = doc.child("learning")) {
    for (const auto& f : l->fields) {
      double v = f.value.number();
      if (f.key == "delta") {
        c.delta = v;
      } else if (f.key == "floor") {
        c.floor = v;
      } else if (f.key == "initial_outcome") {
        c.initial_outcome = v;
      } else if (f.key == "appropriateness") {
        c.default_appropriateness = v;
      } else {
        throw Error(ErrorCode::SchemaError,
                    "at " + confdoc::to_string(f.pos) + ": unknown key '" + f.key + "'");
      }
    }
  }
  for (const confdoc::Block* b : doc.children_of("rule")) {
    AppropriatenessRule r;
    r.action = b->get("action").str();
    if (const auto* v = b->find("emotion")) {
      auto e = parse_emotion(v->str());
      if (!e) {
        throw Error(ErrorCode::SchemaError,
                    "at " + confdoc::to_string(v->position()) + ": unknown emotion '" + v->str() + "'");
      }
      r.emotion = *e;
    }
    if (const auto* v = b->find("attentive")) r.attentive = v->boolean();
    r.value = b->get("value").number();
    c.rules.push_back(r);
  }
  c.validate();
  return c;
}

}  // namespace

MemoryConfig MemoryConfig::parse(std::string_view text) { return config_from(confdoc::parse(text)); }

MemoryConfig MemoryConfig::load(const std::string& path) { return parse(data::read_file(path)); }

void MemoryConfig::validate() const {
  if (!(delta > 0.0)) throw Error(ErrorCode::BadConfig, "learning delta must be positive");
  if (!(floor > 0.0)) throw Error(ErrorCode::BadConfig, "outcome floor must be positive");
  if (!(initial_outcome >= floor)) {
    throw Error(ErrorCode::BadConfig, "initial outcome must be at least the floor");
  }
  if (!(default_appropriateness >= 0.0)) {
    throw Error(ErrorCode::BadConfig, "appropriateness must be non-negative");
  }
  for (const auto& r : rules) {
    if (!(r.value >= 0.0)) {
      throw Error(ErrorCode::BadConfig, "appropriateness for " + r.action + " must be non-negative");
    }
  }
}

EpisodicMemory EpisodicMemory::init(const ActionCatalog& catalog, const MemoryConfig& config) {
  config.validate();
  EpisodicMemory mem;
  mem.config_ = config;
  auto motivational = catalog.lookup(ActionKind::Motivational, std::nullopt, std::nullopt);
  for (const ActionSpec* a : motivational) {
    if (a->expected_emotion) mem.expected_[a->id] = *a->expected_emotion;
  }
  for (WorldState w : all_world_states()) {
    for (const ActionSpec* a : motivational) {
      RewardEntry e;
      e.appropriateness = config.default_appropriateness;
      e.outcome = config.initial_outcome;
      // Later rules win.
      for (const auto& r : config.rules) {
        if (r.action != a->id) continue;
        if (r.emotion && *r.emotion != w.emotion()) continue;
        if (r.attentive && *r.attentive != w.attentive()) continue;
        e.appropriateness = r.value;
      }
      mem.table_[{w, a->id}] = e;
    }
  }
  return mem;
}

const RewardEntry& EpisodicMemory::entry(WorldState w, std::string_view action) const {
  auto it = table_.find({w, std::string(action)});
  if (it == table_.end()) {
    throw Error(ErrorCode::MissingEntry, "no reward entry for " + key_text(w, action));
  }
  return it->second;
}

bool EpisodicMemory::contains(WorldState w, std::string_view action) const {
  return table_.contains({w, std::string(action)});
}

std::optional<Emotion> EpisodicMemory::expected_emotion(std::string_view action) const {
  auto it = expected_.find(std::string(action));
  if (it == expected_.end()) return std::nullopt;
  return it->second;
}

double EpisodicMemory::update_reward(WorldState w, const ActionSpec& action, Emotion observed) {
  auto it = table_.find({w, action.id});
  if (it == table_.end()) {
    throw Error(ErrorCode::MissingEntry, "no reward entry for " + key_text(w, action.id));
  }
  RewardEntry& e = it->second;
  std::optional<Emotion> expected = action.expected_emotion;
  if (!expected) expected = expected_emotion(action.id);
  if (expected && observed == *expected) {
    e.outcome += config_.delta;
  } else {
    e.outcome = std::max(config_.floor, e.outcome - config_.delta);
  }
  return e.total();
}

void EpisodicMemory::set_outcome(WorldState w, std::string_view action, double outcome) {
  auto it = table_.find({w, std::string(action)});
  if (it == table_.end()) {
    throw Error(ErrorCode::MissingEntry, "no reward entry for " + key_text(w, action));
  }
  it->second.outcome = std::max(config_.floor, outcome);
}

std::string EpisodicMemory::dump() const {
  confdoc::Block root;
  confdoc::Block learning;
  learning.type = "learning";
  learning.set("delta", confdoc::number_value(config_.delta));
  learning.set("floor", confdoc::number_value(config_.floor));
  learning.set("initial_outcome", confdoc::number_value(config_.initial_outcome));
  learning.set("appropriateness", confdoc::number_value(config_.default_appropriateness));
  root.add_child(std::move(learning));
  for (const auto& r : config_.rules) {
    confdoc::Block b;
    b.type = "rule";
    b.set("action", confdoc::word(r.action));
    if (r.emotion) b.set("emotion", confdoc::word(std::string(to_string(*r.emotion))));
    if (r.attentive) b.set("attentive", confdoc::word(*r.attentive ? "true" : "false"));
    b.set("value", confdoc::number_value(r.value));
    root.add_child(std::move(b));
  }
  for (const auto& [action, e] : expected_) {
    confdoc::Block b;
    b.type = "expect";
    b.name = action;
    b.set("emotion", confdoc::word(std::string(to_string(e))));
    root.add_child(std::move(b));
  }
  for (const auto& [key, e] : table_) {
    confdoc::Block b;
    b.type = "entry";
    b.set("state", confdoc::word(key.first.to_string()));
    b.set("action", confdoc::word(key.second));
    b.set("appropriateness", confdoc::number_value(e.appropriateness));
    b.set("outcome", confdoc::number_value(e.outcome));
    root.add_child(std::move(b));
  }
  return confdoc::write(root);
}

EpisodicMemory EpisodicMemory::load_dump(std::string_view text) {
  confdoc::Block doc = confdoc::parse(text);
  EpisodicMemory mem;
  mem.config_ = config_from(doc);
  for (const confdoc::Block* b : doc.children_of("expect")) {
    const auto& v = b->get("emotion");
    auto e = parse_emotion(v.str());
    if (!e) {
      throw Error(ErrorCode::SchemaError,
                  "at " + confdoc::to_string(v.position()) + ": unknown emotion '" + v.str() + "'");
    }
    mem.expected_[b->name] = *e;
  }
  for (const confdoc::Block* b : doc.children_of("entry")) {
    RewardEntry e;
    e.appropriateness = b->get("appropriateness").number();
    e.outcome = b->get("outcome").number();
    if (e.appropriateness < 0.0 || e.outcome < mem.config_.floor) {
      throw Error(ErrorCode::SchemaError,
                  "at " + confdoc::to_string(b->pos) + ": reward entry out of range");
    }
    WorldState w = WorldState::from_string(b->get("state").str());
    mem.table_[{w, b->get("action").str()}] = e;
  }
  return mem;
}

std::vector<double> selection_weights(const EpisodicMemory& mem, WorldState w,
                                      std::span<const ActionSpec* const> candidates) {
  std::vector<double> out;
  out.reserve(candidates.size());
  for (const ActionSpec* a : candidates) out.push_back(mem.entry(w, a->id).total());
  return out;
}

const ActionSpec& select_motivational(const EpisodicMemory& mem, TraitPole pole, WorldState w,
                                      std::span<const ActionSpec* const> candidates, Rng& rng) {
  if (candidates.empty()) {
    throw Error(ErrorCode::NoCandidates, "no motivational action available for " + to_string(pole));
  }
  std::vector<double> weights = selection_weights(mem, w, candidates);
  double total = 0.0;
  for (double x : weights) total += x;
  // Always consume one draw so the stream position does not depend on the
  // candidate count.
  double u = rng.uniform();
  if (!(total > 0.0)) return *candidates[static_cast<size_t>(u * static_cast<double>(candidates.size()))];
  double target = u * total;
  double acc = 0.0;
  for (size_t i = 0; i < candidates.size(); ++i) {
    acc += weights[i];
    if (target < acc) return *candidates[i];
  }
  return *candidates.back();
}

FactStore::FactStore(std::initializer_list<std::string> literals) {
  for (const auto& l : literals) assert_fact(l);
}

void FactStore::assert_fact(const Literal& l) {
  if (l.negated) {
    retract(l);
    return;
  }
  facts_.insert(l);
}

void FactStore::retract(const Literal& l) { facts_.erase(l.positive()); }

std::vector<Literal> FactStore::query(const Literal& pattern) const {
  std::vector<Literal> out;
  Literal p = pattern.positive();
  for (const Literal& f : facts_) {
    if (f.matches(p)) out.push_back(f);
  }
  return out;
}

}  // namespace cea
