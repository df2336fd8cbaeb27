#pragma once

#include <array>
#include <deque>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "cea/emotion.hpp"
#include "cea/game.hpp"
#include "cea/rng.hpp"
#include "cea/world_state.hpp"

namespace cea {

using EmotionDistribution = std::array<double, kAllEmotions.size()>;

// Simulated collaborator: how it feels about each category of agent action
// and how often it pays attention.
struct UserModel {
  std::string name;
  double attention = 0.8;
  std::map<std::string, double> attention_by_category;
  std::map<std::string, EmotionDistribution> reactions;

  // Throws Error{BadConfig} unless probabilities lie in [0, 1] and every
  // distribution sums to 1.
  void validate() const;
  // Unknown categories react with Neutral.
  const EmotionDistribution& distribution(std::string_view category) const;
  double attention_for(std::string_view category) const;
};

// Named profiles from a document of `profile name { ... }` blocks.
class ProfileLibrary {
 public:
  static const ProfileLibrary& defaults();
  static ProfileLibrary parse(std::string_view text);
  static ProfileLibrary load(const std::string& path);

  // Throws Error{MissingEntry}.
  const UserModel& at(std::string_view name) const;
  std::vector<std::string> names() const;

 private:
  std::map<std::string, UserModel, std::less<>> profiles_;
};

struct Perception {
  Emotion emotion = Emotion::Neutral;
  bool attentive = true;

  WorldState world() const { return WorldState::encode(emotion, attentive); }
  friend bool operator==(const Perception&, const Perception&) = default;
};

// Draws one emotion and one attention flag, always consuming two values.
Perception react(const UserModel& u, std::string_view category, Rng& rng);

// Uniform over the legal cells for the human's color. Throws
// Error{NoLegalCell}.
Cell choose_human_move(const UserModel& u, const Board& board, Rng& rng);

// Timestamped perception samples over a sliding span of virtual time.
class PerceptionWindow {
 public:
  struct Sample {
    double t = 0.0;
    Emotion emotion = Emotion::Neutral;
    bool attentive = true;
  };

  explicit PerceptionWindow(double span = 3.0) : span_(span) {}

  void add(double t, Emotion e, bool attentive = true);
  // Drops samples with t <= now - span.
  void evict(double now);
  const std::deque<Sample>& samples() const { return samples_; }
  double span() const { return span_; }

 private:
  double span_;
  std::deque<Sample> samples_;
};

// Mode of the samples still in the window at `now`; Neutral when empty,
// ties go to the earlier emotion in enum order.
Emotion filter_emotion(PerceptionWindow& w, double now);
// Most recent in-window attention flag; attentive when empty.
bool filter_attention(PerceptionWindow& w, double now);

}  // namespace cea
