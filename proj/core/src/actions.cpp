#include "cea/actions.hpp"

#include <algorithm>
#include <set>

#include "cea/confdoc.hpp"
#include "cea/data.hpp"
#include "cea/error.hpp"

namespace cea {

std::string_view to_string(ActionKind k) {
  switch (k) {
    case ActionKind::Standard: return "standard";
    case ActionKind::Complementary: return "complementary";
    case ActionKind::Motivational: return "motivational";
  }
  return "";
}

std::string_view to_string(Modality m) {
  switch (m) {
    case Modality::Verbal: return "verbal";
    case Modality::NonVerbal: return "nonverbal";
    case Modality::Sound: return "sound";
  }
  return "";
}

std::string_view to_string(BoardEffect e) {
  switch (e) {
    case BoardEffect::None: return "none";
    case BoardEffect::PlaceOwnCorrect: return "place_own_correct";
    case BoardEffect::PlaceOwnWrong: return "place_own_wrong";
    case BoardEffect::PlaceHumansBlock: return "place_humans_block";
    case BoardEffect::RemoveMisplaced: return "remove_misplaced";
  }
  return "";
}

double ActionSpec::credit(const PersonalityVector& p) const {
  double sum = 0.0;
  for (const auto& [pole, delta] : comfort_offsets) {
    if (p.pole(pole.trait) == pole) sum += delta;
  }
  return sum;
}

namespace {

[[noreturn]] void schema(confdoc::Position pos, const std::string& msg) {
  throw Error(ErrorCode::SchemaError, "at " + confdoc::to_string(pos) + ": " + msg);
}

template <typename E, size_t N>
E parse_enum(const confdoc::Value& v, const std::array<E, N>& values, const char* what) {
  for (E e : values) {
    if (to_string(e) == v.str()) return e;
  }
  schema(v.position(), std::string("unknown ") + what + " '" + v.str() + "'");
}

constexpr std::array<ActionKind, 3> kKinds = {ActionKind::Standard, ActionKind::Complementary,
                                              ActionKind::Motivational};
constexpr std::array<Modality, 3> kModalities = {Modality::Verbal, Modality::NonVerbal,
                                                 Modality::Sound};
constexpr std::array<BoardEffect, 5> kEffects = {
    BoardEffect::None, BoardEffect::PlaceOwnCorrect, BoardEffect::PlaceOwnWrong,
    BoardEffect::PlaceHumansBlock, BoardEffect::RemoveMisplaced};

std::vector<Literal> parse_literals(const confdoc::Value& v) {
  std::vector<Literal> out;
  for (const auto& item : v.items()) {
    try {
      out.push_back(Literal::parse(item.str()));
    } catch (const Error& e) {
      throw Error(ErrorCode::ParseError,
                  "at " + confdoc::to_string(item.position()) + ": " + e.detail());
    }
  }
  return out;
}

ActionSpec parse_action(const confdoc::Block& b) {
  static const std::set<std::string> known = {"kind",  "modality", "performer", "pole",
                                              "pre",   "effects",  "board",     "expect",
                                              "category", "motion", "cue"};
  ActionSpec a;
  a.id = b.name;
  if (a.id.empty()) schema(b.pos, "action block needs an id");
  for (const auto& f : b.fields) {
    if (!known.contains(f.key)) schema(f.pos, "action '" + a.id + "': unknown key '" + f.key + "'");
  }
  a.kind = parse_enum(b.get("kind"), kKinds, "kind");
  a.modality = parse_enum(b.get("modality"), kModalities, "modality");
  if (const auto* v = b.find("performer")) {
    if (v->str() == "human") {
      a.performer = Performer::Human;
    } else if (v->str() != "robot") {
      schema(v->position(), "performer must be robot or human");
    }
  }
  if (const auto* v = b.find("pole")) {
    a.pole = parse_pole(v->str());
    if (!a.pole) schema(v->position(), "unknown pole '" + v->str() + "'");
  }
  if (const auto* off = b.child("offsets")) {
    for (const auto& f : off->fields) {
      auto pole = parse_pole(f.key);
      if (!pole) schema(f.pos, "unknown pole '" + f.key + "' in offsets");
      a.comfort_offsets[*pole] = f.value.number();
    }
  }
  if (const auto* v = b.find("pre")) a.preconditions = parse_literals(*v);
  if (const auto* v = b.find("effects")) a.effects = parse_literals(*v);
  if (const auto* v = b.find("board")) a.board_effect = parse_enum(*v, kEffects, "board effect");
  if (const auto* v = b.find("expect")) {
    a.expected_emotion = parse_emotion(v->str());
    if (!a.expected_emotion) schema(v->position(), "unknown emotion '" + v->str() + "'");
  }
  if (const auto* v = b.find("category")) a.category = v->str();
  if (const auto* v = b.find("motion")) a.motion = v->str();
  if (const auto* v = b.find("cue")) a.cue = v->str();

  auto fail = [&](const std::string& msg) { schema(b.pos, "action '" + a.id + "': " + msg); };
  if (a.kind == ActionKind::Standard && !a.comfort_offsets.empty()) {
    fail("standard actions carry no comfort offsets");
  }
  if (a.kind == ActionKind::Motivational) {
    if (!a.pole) fail("motivational actions need a pole");
    if (!a.expected_emotion) fail("motivational actions need an expected emotion");
  }
  if (a.kind == ActionKind::Standard && a.pole) fail("standard actions have no pole");
  if (a.modality == Modality::Sound && a.cue.empty()) fail("sound actions need a cue");
  return a;
}

}  // namespace

const std::vector<std::string>& ActionCatalog::required_ids() {
  static const std::vector<std::string> ids = {
      // task actions
      "pick_place_precisely", "pick_place_wrongly", "replace_human", "remove_block",
      "cue_human_turn", "your_turn_cue", "wait_human",
      // HE
      "say_enthusiastic_sentence", "tell_a_joke", "ask_a_question", "capture_attention",
      "tell_a_personal_story", "make_visible_movement_horizontal",
      "make_visible_movement_vertical",
      // LE
      "ask_if_you_can_be_useful", "ask_a_reflective_question",
      "say_you_prefer_private_conversation", "retracting_movement",
      "hide_gripper_behind_arm",
      // HA
      "express_empathy", "give_a_compliment", "ask_if_you_can_help",
      "declare_no_reason_to_be_angry", "move_closer_to_human",
      // LA
      "make_contrastive_statement", "express_disapproval", "ask_provocative_question",
      "insist_you_are_always_right", "threatening_move_horizontal",
      "threatening_move_sagittal", "tease_with_gripper",
      // HC
      "remind_to_be_focused", "offer_guidance", "promote_ethical_behavior",
      "keep_attention_on_task_gesture",
      // LC
      "distract_with_random_questions", "make_thoughtless_remarks", "say_inconsistent_things",
      "random_movement", "wait_some_seconds"};
  return ids;
}

const ActionCatalog& ActionCatalog::defaults() {
  static const ActionCatalog catalog = parse(data::builtin("catalog.conf"));
  return catalog;
}

ActionCatalog ActionCatalog::parse(std::string_view text, bool require_coverage) {
  confdoc::Block doc = confdoc::parse(text);
  ActionCatalog c;
  std::set<std::string> seen;
  for (const auto& child : doc.children) {
    if (child.type != "action") schema(child.pos, "unexpected block '" + child.type + "'");
    ActionSpec a = parse_action(child);
    if (!seen.insert(a.id).second) schema(child.pos, "duplicate action id '" + a.id + "'");
    c.actions_.push_back(std::move(a));
  }
  if (!doc.fields.empty()) schema(doc.fields.front().pos, "unexpected top-level key");
  if (require_coverage) {
    for (const auto& id : required_ids()) {
      if (!seen.contains(id)) throw Error(ErrorCode::SchemaError, "catalogue lacks action '" + id + "'");
    }
    for (TraitPole pole : kAllPoles) {
      if (c.lookup(ActionKind::Motivational, pole, Modality::NonVerbal).empty()) {
        throw Error(ErrorCode::SchemaError,
                    "catalogue has no non-verbal motivational action for " + to_string(pole));
      }
    }
  }
  return c;
}

ActionCatalog ActionCatalog::load(const std::string& path, bool require_coverage) {
  std::string text = data::read_file(path);
  try {
    return parse(text, require_coverage);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.detail());
  }
}

std::string ActionCatalog::serialize() const {
  using confdoc::Value;
  confdoc::Block root;
  for (const auto& a : actions_) {
    confdoc::Block b;
    b.type = "action";
    b.name = a.id;
    b.set("kind", confdoc::word(std::string(to_string(a.kind))));
    b.set("modality", confdoc::word(std::string(to_string(a.modality))));
    if (a.performer == Performer::Human) b.set("performer", confdoc::word("human"));
    if (a.pole) b.set("pole", confdoc::word(to_string(*a.pole)));
    auto literals = [](const std::vector<Literal>& ls) {
      std::vector<Value> items;
      for (const auto& l : ls) items.push_back(confdoc::word(l.to_string()));
      return Value::list(std::move(items));
    };
    if (!a.preconditions.empty()) b.set("pre", literals(a.preconditions));
    if (!a.effects.empty()) b.set("effects", literals(a.effects));
    if (a.board_effect != BoardEffect::None) {
      b.set("board", confdoc::word(std::string(to_string(a.board_effect))));
    }
    if (a.expected_emotion) b.set("expect", confdoc::word(std::string(to_string(*a.expected_emotion))));
    if (!a.category.empty()) b.set("category", confdoc::word(a.category));
    if (!a.motion.empty()) b.set("motion", confdoc::word(a.motion));
    if (!a.cue.empty()) b.set("cue", confdoc::word(a.cue));
    if (!a.comfort_offsets.empty()) {
      confdoc::Block off;
      off.type = "offsets";
      for (const auto& [pole, d] : a.comfort_offsets) off.set(to_string(pole), confdoc::number_value(d));
      b.add_child(std::move(off));
    }
    root.add_child(std::move(b));
  }
  return confdoc::write(root);
}

const ActionSpec* ActionCatalog::find(std::string_view id) const {
  for (const auto& a : actions_) {
    if (a.id == id) return &a;
  }
  return nullptr;
}

const ActionSpec& ActionCatalog::at(std::string_view id) const {
  if (const auto* a = find(id)) return *a;
  throw Error(ErrorCode::MissingEntry, "no action '" + std::string(id) + "' in catalogue");
}

size_t ActionCatalog::index_of(std::string_view id) const {
  for (size_t i = 0; i < actions_.size(); ++i) {
    if (actions_[i].id == id) return i;
  }
  throw Error(ErrorCode::MissingEntry, "no action '" + std::string(id) + "' in catalogue");
}

std::vector<const ActionSpec*> ActionCatalog::lookup(ActionKind kind, std::optional<TraitPole> pole,
                                                     std::optional<Modality> modality) const {
  std::vector<const ActionSpec*> out;
  for (const auto& a : actions_) {
    if (a.kind != kind) continue;
    if (modality && a.modality != *modality) continue;
    if (pole) {
      bool match = a.pole == pole || a.comfort_offsets.contains(*pole);
      if (!match) continue;
    }
    out.push_back(&a);
  }
  return out;
}

std::vector<const ActionSpec*> available(const ActionCatalog& catalog, bool speaking,
                                         ActionKind kind, std::optional<TraitPole> pole) {
  std::vector<const ActionSpec*> out;
  for (const ActionSpec* a : catalog.lookup(kind, pole, std::nullopt)) {
    if (!speaking && a->modality == Modality::Verbal) continue;
    out.push_back(a);
  }
  return out;
}

}  // namespace cea
