#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cea/emotion.hpp"
#include "cea/literal.hpp"
#include "cea/personality.hpp"

namespace cea {

enum class ActionKind { Standard, Complementary, Motivational };
enum class Modality { Verbal, NonVerbal, Sound };
enum class BoardEffect { None, PlaceOwnCorrect, PlaceOwnWrong, PlaceHumansBlock, RemoveMisplaced };
enum class Performer { Robot, Human };

std::string_view to_string(ActionKind k);
std::string_view to_string(Modality m);
std::string_view to_string(BoardEffect e);

struct ActionSpec {
  std::string id;
  ActionKind kind = ActionKind::Standard;
  Modality modality = Modality::NonVerbal;
  Performer performer = Performer::Robot;
  std::optional<TraitPole> pole;
  // Keyed by pole: an offset only reaches an agent whose active pole on
  // that trait matches, and is applied to the trait's magnitude channel.
  std::map<TraitPole, double> comfort_offsets;
  std::vector<Literal> preconditions;
  std::vector<Literal> effects;
  BoardEffect board_effect = BoardEffect::None;
  std::optional<Emotion> expected_emotion;
  // Reaction category the simulated user responds to.
  std::string category;
  // Arm motion: "pick_place", a gesture id, or empty for none.
  std::string motion;
  // Sound cue id for Sound actions.
  std::string cue;

  // Sum of the offsets this action credits to `p`'s active poles.
  double credit(const PersonalityVector& p) const;

  friend bool operator==(const ActionSpec&, const ActionSpec&) = default;
};

class ActionCatalog {
 public:
  static const ActionCatalog& defaults();
  // Validates per-entry invariants; with require_coverage also checks that
  // every motivational and task action of the default domain is present.
  // Throws Error{ParseError} (with line:column) or Error{SchemaError}.
  static ActionCatalog parse(std::string_view text, bool require_coverage = true);
  static ActionCatalog load(const std::string& path, bool require_coverage = true);

  std::string serialize() const;

  const std::vector<ActionSpec>& actions() const { return actions_; }
  const ActionSpec* find(std::string_view id) const;
  // Throws Error{MissingEntry}.
  const ActionSpec& at(std::string_view id) const;
  size_t index_of(std::string_view id) const;
  std::vector<const ActionSpec*> lookup(ActionKind kind, std::optional<TraitPole> pole,
                                        std::optional<Modality> modality) const;

  static const std::vector<std::string>& required_ids();

  friend bool operator==(const ActionCatalog&, const ActionCatalog&) = default;

 private:
  std::vector<ActionSpec> actions_;
};

// Actions of `kind` usable in the given condition. Verbal actions are dropped
// when not speaking; Sound is allowed in both. With a pole, Motivational
// entries must belong to it and Complementary entries must credit it.
std::vector<const ActionSpec*> available(const ActionCatalog& catalog, bool speaking,
                                         ActionKind kind,
                                         std::optional<TraitPole> pole = std::nullopt);

}  // namespace cea
