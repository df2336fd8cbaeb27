#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cea/actions.hpp"
#include "cea/literal.hpp"
#include "cea/rng.hpp"
#include "cea/world_state.hpp"

namespace cea {

inline WorldState encode_world_state(Emotion e, bool attentive) {
  return WorldState::encode(e, attentive);
}

struct RewardEntry {
  double appropriateness = 1.0;  // fixed at init
  double outcome = 1.0;          // learned, never below the floor
  double total() const { return appropriateness + outcome; }

  friend bool operator==(const RewardEntry&, const RewardEntry&) = default;
};

// An appropriateness override for one action in some contexts.
struct AppropriatenessRule {
  std::string action;
  std::optional<Emotion> emotion;  // any emotion when absent
  std::optional<bool> attentive;   // either attention state when absent
  double value = 1.0;

  friend bool operator==(const AppropriatenessRule&, const AppropriatenessRule&) = default;
};

struct MemoryConfig {
  double delta = 0.25;  // outcome step on match / mismatch
  double floor = 0.05;  // outcome never drops below this
  double initial_outcome = 1.0;
  double default_appropriateness = 1.0;
  std::vector<AppropriatenessRule> rules;

  static const MemoryConfig& defaults();
  static MemoryConfig parse(std::string_view text);
  static MemoryConfig load(const std::string& path);
  // Throws Error{BadConfig}.
  void validate() const;

  friend bool operator==(const MemoryConfig&, const MemoryConfig&) = default;
};

// Reward table keyed by (world state, action id) over every reachable world
// state and every motivational action of the catalogue.
class EpisodicMemory {
 public:
  EpisodicMemory() = default;
  static EpisodicMemory init(const ActionCatalog& catalog,
                             const MemoryConfig& config = MemoryConfig::defaults());

  // Throws Error{MissingEntry}.
  const RewardEntry& entry(WorldState w, std::string_view action) const;
  bool contains(WorldState w, std::string_view action) const;
  std::optional<Emotion> expected_emotion(std::string_view action) const;
  const MemoryConfig& config() const { return config_; }
  size_t size() const { return table_.size(); }

  // Outcome += delta when the observed emotion matches the expected one,
  // else max(floor, outcome - delta). Returns the new total.
  // Throws Error{MissingEntry}.
  double update_reward(WorldState w, const ActionSpec& action, Emotion observed);

  // Overwrites one entry's outcome (test fixtures, persistence).
  void set_outcome(WorldState w, std::string_view action, double outcome);

  // Structured text document keyed by bit string and action id.
  std::string dump() const;
  static EpisodicMemory load_dump(std::string_view text);

  friend bool operator==(const EpisodicMemory&, const EpisodicMemory&) = default;

 private:
  MemoryConfig config_;
  std::map<std::pair<WorldState, std::string>, RewardEntry> table_;
  std::map<std::string, Emotion> expected_;
};

// Selection weights of `candidates` at world state `w` (total rewards).
std::vector<double> selection_weights(const EpisodicMemory& mem, WorldState w,
                                      std::span<const ActionSpec* const> candidates);

// Draws one candidate with probability proportional to its total reward at
// `w`. Throws Error{NoCandidates} on an empty list, Error{MissingEntry} if a
// candidate is not in memory.
const ActionSpec& select_motivational(const EpisodicMemory& mem, TraitPole pole, WorldState w,
                                      std::span<const ActionSpec* const> candidates, Rng& rng);

// Set of ground literals.
class FactStore {
 public:
  FactStore() = default;
  FactStore(std::initializer_list<std::string> literals);

  void assert_fact(const Literal& l);
  void assert_fact(std::string_view literal) { assert_fact(Literal::parse(literal)); }
  void retract(const Literal& l);
  bool holds(const Literal& l) const { return facts_.contains(l.positive()); }
  bool holds(std::string_view literal) const { return holds(Literal::parse(literal)); }
  // Exact predicate name; "?" arguments match anything.
  std::vector<Literal> query(const Literal& pattern) const;
  std::vector<Literal> query(std::string_view pattern) const { return query(Literal::parse(pattern)); }
  size_t size() const { return facts_.size(); }
  const std::set<Literal>& facts() const { return facts_; }

  friend bool operator==(const FactStore&, const FactStore&) = default;

 private:
  std::set<Literal> facts_;
};

inline FactStore assert_fact(FactStore fs, std::string_view literal) {
  fs.assert_fact(literal);
  return fs;
}

inline std::vector<Literal> query(const FactStore& fs, std::string_view pattern) {
  return fs.query(pattern);
}

}  // namespace cea
