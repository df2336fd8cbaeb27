#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "cea/actions.hpp"
#include "cea/emotion.hpp"
#include "cea/personality.hpp"
#include "cea/rng.hpp"

namespace cea {

struct UtteranceRequest {
  std::string action;
  Modality modality = Modality::Verbal;
  std::string cue;  // for Sound actions
  bool speaking = true;
  std::set<std::string> style;
  std::vector<TraitPole> poles;
  Emotion emotion = Emotion::Neutral;
  bool attentive = true;
  Level volume = Level::Mid;
  std::string last_move;  // empty when no block has been placed yet
  std::vector<std::string> history;
};

UtteranceRequest make_request(const ActionSpec& action, const BehavioralParameters& params,
                              const PersonalityVector& p, bool speaking);

struct Utterance {
  std::string text;
  Level volume = Level::Mid;
  std::optional<std::string> cue;

  friend bool operator==(const Utterance&, const Utterance&) = default;
};

struct Template {
  std::set<std::string> tags;
  std::string text;
};

class TemplateStore {
 public:
  static const TemplateStore& defaults();
  static TemplateStore parse(std::string_view text);
  static TemplateStore load(const std::string& path);

  // Empty when the action has no templates.
  const std::vector<Template>& variants(std::string_view action) const;
  std::vector<std::string> actions() const;

 private:
  std::map<std::string, std::vector<Template>, std::less<>> templates_;
};

// Picks among the variants sharing the most tags with the request (seeded
// choice among ties) and fills {emotion} and {last_move}. Sound actions
// yield an empty text and the cue. Throws Error{MissingTemplate}, or
// Error{Inconsistent} for a Verbal action in a non-speaking session.
Utterance render(const UtteranceRequest& req, const TemplateStore& templates, Rng& rng);

// Prompt sent to an external sentence generator.
std::string default_prompt();

// JSON document {prompt, input: {emotion, attention, personality,
// language style, action}, history}. The prompt text can be replaced, e.g.
// from a file.
std::string build_llm_request(const UtteranceRequest& req,
                                 std::string_view prompt = default_prompt());

// Seam for an external sentence generator. Returning nullopt falls back to
// the templates.
class SentenceClient {
 public:
  virtual ~SentenceClient() = default;
  virtual std::optional<std::string> generate(const std::string& request_json) = 0;
};

// External client when one is set and answers, templates otherwise.
Utterance realize(const UtteranceRequest& req, const TemplateStore& templates, Rng& rng,
                  SentenceClient* client);

}  // namespace cea
