#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace cea {

namespace confdoc {
struct Block;
}

enum class Trait { Conscientiousness, Extroversion, Agreeableness };

inline constexpr std::array<Trait, 3> kAllTraits = {
    Trait::Conscientiousness, Trait::Extroversion, Trait::Agreeableness};

std::string_view to_string(Trait t);
char trait_letter(Trait t);

enum class Sign { High, Low };

struct TraitPole {
  Trait trait = Trait::Conscientiousness;
  Sign sign = Sign::High;

  friend auto operator<=>(const TraitPole&, const TraitPole&) = default;
};

inline constexpr std::array<TraitPole, 6> kAllPoles = {
    TraitPole{Trait::Conscientiousness, Sign::High}, TraitPole{Trait::Conscientiousness, Sign::Low},
    TraitPole{Trait::Extroversion, Sign::High},      TraitPole{Trait::Extroversion, Sign::Low},
    TraitPole{Trait::Agreeableness, Sign::High},     TraitPole{Trait::Agreeableness, Sign::Low}};

// "HC", "LE", ...
std::string to_string(TraitPole p);
std::optional<TraitPole> parse_pole(std::string_view s);
TraitPole opposite(TraitPole p);

// A point in [-1,+1]^3 over (conscientiousness, extroversion, agreeableness).
// Zero weight marks the trait inactive.
class PersonalityVector {
 public:
  PersonalityVector() = default;

  // Throws Error{OutOfRange} if any weight lies outside [-1,+1] or is NaN.
  static PersonalityVector make(double w_c, double w_e, double w_a);

  double w_c() const { return w_[0]; }
  double w_e() const { return w_[1]; }
  double w_a() const { return w_[2]; }
  double weight(Trait t) const { return w_[static_cast<size_t>(t)]; }
  bool active(Trait t) const { return weight(t) != 0.0; }
  std::optional<TraitPole> pole(Trait t) const;
  bool is_neutral() const { return w_ == std::array<double, 3>{0.0, 0.0, 0.0}; }

  // "c,e,a"
  std::string to_string() const;
  static PersonalityVector parse(std::string_view csv);

  friend bool operator==(const PersonalityVector&, const PersonalityVector&) = default;

 private:
  std::array<double, 3> w_{0.0, 0.0, 0.0};
};

// One pole per nonzero weight, in C, E, A order.
std::vector<TraitPole> dominant_poles(const PersonalityVector& p);

// The twelve two-trait archetypes: every pair of traits at full weight,
// all four sign combinations, third trait neutral.
std::vector<PersonalityVector> archetypes();

enum class Level { Low, Mid, High };
enum class SpeedLevel { Slow, Middle, High };

std::string_view to_string(Level l);
std::string_view to_string(SpeedLevel l);

enum class ActionClass { PickPlace, CommunicativeGesture, Speech };

struct BehavioralParameters {
  Level volume = Level::Mid;
  std::set<std::string> language_style;
  SpeedLevel velocity = SpeedLevel::Middle;
  SpeedLevel acceleration = SpeedLevel::Middle;
  Level amplitude = Level::Mid;
  Level straightness = Level::Mid;

  friend bool operator==(const BehavioralParameters&, const BehavioralParameters&) = default;
};

// Deterministic stand-in for the learned personality generator: weights are
// bucketed at the configured cut points and mapped along the correlation
// directions (E -> speed, amplitude, volume; A -> acceleration; mean of A
// and C -> straightness).
class ParameterMap {
 public:
  static const ParameterMap& defaults();
  // Key/value document; see docs/formats.md.
  static ParameterMap parse(std::string_view text);
  static ParameterMap load(const std::string& path);

  BehavioralParameters generate(const PersonalityVector& p, ActionClass cls) const;

  double high_cut() const { return high_cut_; }
  double low_cut() const { return low_cut_; }
  const std::vector<std::string>& styles(TraitPole pole) const;
  // Every tag across all six lists.
  std::set<std::string> vocabulary() const;

 private:
  static ParameterMap from_doc(const confdoc::Block& doc);
  Level bucket(double w) const;

  double high_cut_ = 0.5;
  double low_cut_ = -0.5;
  std::map<TraitPole, std::vector<std::string>> styles_;
};

inline BehavioralParameters generate_parameters(const PersonalityVector& p, ActionClass cls) {
  return ParameterMap::defaults().generate(p, cls);
}

}  // namespace cea
