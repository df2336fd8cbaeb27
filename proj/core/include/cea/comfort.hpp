#pragma once

#include <array>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "cea/personality.hpp"
#include "cea/world_state.hpp"

namespace cea {

// Magnitudes move in decimal steps that binary doubles cannot hold exactly;
// a value this close to Th counts as sitting on it.
inline constexpr double kThresholdTolerance = 1e-9;

struct ComfortParams {
  double threshold = 0.3;      // Th
  double initial = 1.0;        // C0
  double decay = 0.1;          // k, scaled by |w| per standard action
  double recovery_gain = 0.5;  // g

  // Throws Error{BadConfig} unless 0 < Th < C0, k > 0 and g >= 0.
  void validate() const;

  friend bool operator==(const ComfortParams&, const ComfortParams&) = default;
};

// Per-trait comfort magnitudes. Channels exist only for active traits and
// never interact; each magnitude stays inside [0, C0]. The signed value
// shown in traces carries the sign of the trait weight.
class ComfortState {
 public:
  ComfortState() = default;

  bool active(Trait t) const { return channel(t).active; }
  double magnitude(Trait t) const { return channel(t).magnitude; }
  double signed_value(Trait t) const;
  double weight(Trait t) const { return channel(t).weight; }
  std::vector<Trait> active_traits() const;
  // Distance above threshold of the lowest active channel; +inf when none.
  double min_slack() const;

  const ComfortParams& params() const { return params_; }
  double threshold() const { return params_.threshold; }
  long tick() const { return tick_; }

  friend bool operator==(const ComfortState&, const ComfortState&) = default;

 private:
  friend ComfortState init_comfort(const PersonalityVector&, const ComfortParams&);
  friend ComfortState apply_standard_decay(const ComfortState&, const PersonalityVector&);
  friend ComfortState apply_offset(const ComfortState&, Trait, double);
  friend ComfortState apply_recovery(const ComfortState&, Trait, double);

  struct Channel {
    bool active = false;
    double weight = 0.0;
    double magnitude = 0.0;
    friend bool operator==(const Channel&, const Channel&) = default;
  };

  const Channel& channel(Trait t) const { return channels_[static_cast<size_t>(t)]; }
  Channel& channel(Trait t) { return channels_[static_cast<size_t>(t)]; }
  double clamp(double m) const;

  std::array<Channel, 3> channels_{};
  ComfortParams params_;
  long tick_ = 0;
};

// Throws Error{BadConfig} on invalid parameters.
ComfortState init_comfort(const PersonalityVector& p, const ComfortParams& params);
ComfortState init_comfort(const PersonalityVector& p, double threshold, double initial, double decay);

// m <- max(0, m - k*|w|) on every active channel; tick + 1.
ComfortState apply_standard_decay(const ComfortState& s, const PersonalityVector& p);

// m <- clamp(m + delta). Throws Error{InactiveChannel}.
ComfortState apply_offset(const ComfortState& s, Trait t, double delta);

// m <- clamp(m + g*reward). Throws Error{InactiveChannel}, or
// Error{OutOfRange} for a negative reward.
ComfortState apply_recovery(const ComfortState& s, Trait t, double reward);

// Active traits with m strictly below Th (beyond kThresholdTolerance), in
// C, E, A order.
std::vector<Trait> needs_motivation(const ComfortState& s);

// Comfort deltas triggered by what the agent perceives, per pole.
class SensitivityTable {
 public:
  static const SensitivityTable& defaults();
  static SensitivityTable parse(std::string_view text);
  static SensitivityTable load(const std::string& path);

  double emotion_delta(TraitPole pole, Emotion e) const;
  double attention_delta(TraitPole pole, bool attentive) const;
  void set_emotion_delta(TraitPole pole, Emotion e, double delta);
  void set_attention_delta(TraitPole pole, bool attentive, double delta);

  // Throws Error{BadConfig} if any delta lies outside [-C0, +C0].
  void validate(double initial) const;

 private:
  std::map<TraitPole, std::map<Emotion, double>> emotion_;
  std::map<TraitPole, std::array<double, 2>> attention_;  // [inattentive, attentive]
};

// For each pole whose channel is active:
// m <- clamp(m + table[pole, emotion] + table[pole, attention]).
ComfortState apply_perception(const ComfortState& s, std::span<const TraitPole> poles,
                              WorldState world, const SensitivityTable& table);

}  // namespace cea
