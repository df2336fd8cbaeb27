#include "cea/speech.hpp"

#include <algorithm>
#include <cctype>

#include <json.hpp>

#include "cea/confdoc.hpp"
#include "cea/data.hpp"
#include "cea/error.hpp"

namespace cea {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string substitute(std::string text, std::string_view slot, std::string_view value) {
  size_t pos = 0;
  while ((pos = text.find(slot, pos)) != std::string::npos) {
    text.replace(pos, slot.size(), value);
    pos += value.size();
  }
  return text;
}

}  // namespace

UtteranceRequest make_request(const ActionSpec& action, const BehavioralParameters& params,
                              const PersonalityVector& p, bool speaking) {
  UtteranceRequest r;
  r.action = action.id;
  r.modality = action.modality;
  r.cue = action.cue;
  r.speaking = speaking;
  r.style = params.language_style;
  r.poles = dominant_poles(p);
  r.volume = params.volume;
  return r;
}

const TemplateStore& TemplateStore::defaults() {
  static const TemplateStore store = parse(data::builtin("templates.conf"));
  return store;
}

TemplateStore TemplateStore::parse(std::string_view text) {
  confdoc::Block doc = confdoc::parse(text);
  TemplateStore store;
  for (const confdoc::Block* b : doc.children_of("template")) {
    if (b->name.empty()) {
      throw Error(ErrorCode::SchemaError, "at " + confdoc::to_string(b->pos) + ": template needs an action id");
    }
    Template t;
    if (const auto* tags = b->find("tags")) {
      for (auto& tag : tags->strings()) t.tags.insert(tag);
    }
    t.text = b->get("text").str();
    store.templates_[b->name].push_back(std::move(t));
  }
  return store;
}

TemplateStore TemplateStore::load(const std::string& path) { return parse(data::read_file(path)); }

const std::vector<Template>& TemplateStore::variants(std::string_view action) const {
  static const std::vector<Template> none;
  auto it = templates_.find(action);
  return it == templates_.end() ? none : it->second;
}

std::vector<std::string> TemplateStore::actions() const {
  std::vector<std::string> out;
  for (const auto& [id, v] : templates_) out.push_back(id);
  return out;
}

Utterance render(const UtteranceRequest& req, const TemplateStore& templates, Rng& rng) {
  Utterance u;
  u.volume = req.volume;
  if (req.modality == Modality::Sound) {
    u.cue = req.cue;
    return u;
  }
  if (req.modality == Modality::Verbal && !req.speaking) {
    throw Error(ErrorCode::Inconsistent, "verbal action " + req.action + " in a non-speaking session");
  }
  const auto& variants = templates.variants(req.action);
  if (variants.empty()) throw Error(ErrorCode::MissingTemplate, "no template for " + req.action);

  std::vector<size_t> best;
  size_t best_overlap = 0;
  for (size_t i = 0; i < variants.size(); ++i) {
    size_t overlap = static_cast<size_t>(std::count_if(
        variants[i].tags.begin(), variants[i].tags.end(),
        [&](const std::string& tag) { return req.style.contains(tag); }));
    if (best.empty() || overlap > best_overlap) {
      best = {i};
      best_overlap = overlap;
    } else if (overlap == best_overlap) {
      best.push_back(i);
    }
  }
  const Template& t = variants[best[rng.below(best.size())]];
  std::string text = substitute(t.text, "{emotion}", lower(to_string(req.emotion)));
  text = substitute(std::move(text), "{last_move}", req.last_move.empty() ? "the board" : req.last_move);
  u.text = std::move(text);
  return u;
}

std::string default_prompt() {
  return "You voice a robotic arm that is playing a cooperative game with a person: together "
         "you fill a 3x3 board with colored blocks. Write one short sentence for the robot to "
         "say and return it in the text field. The input gives the person's emotion (emotion) "
         "and whether they are paying attention (attention), the robot's personality "
         "(personality), which shapes the reply, the language style to use (language style), "
         "and the kind of verbal action to perform (action). Avoid repeating sentences from "
         "the history.";
}

std::string build_llm_request(const UtteranceRequest& req, std::string_view prompt) {
  nlohmann::json poles = nlohmann::json::array();
  for (TraitPole p : req.poles) poles.push_back(to_string(p));
  nlohmann::json style = nlohmann::json::array();
  for (const auto& s : req.style) style.push_back(s);
  nlohmann::json doc;
  doc["prompt"] = std::string(prompt);
  doc["input"] = {
      {"emotion", lower(to_string(req.emotion))},
      {"attention", req.attentive ? "attentive" : "distracted"},
      {"personality", poles},
      {"language style", style},
      {"action", req.action},
  };
  doc["history"] = req.history;
  return doc.dump();
}

Utterance realize(const UtteranceRequest& req, const TemplateStore& templates, Rng& rng,
                  SentenceClient* client) {
  if (client && req.modality == Modality::Verbal && req.speaking) {
    if (auto text = client->generate(build_llm_request(req)); text && !text->empty()) {
      return {*text, req.volume, std::nullopt};
    }
  }
  return render(req, templates, rng);
}

}  // namespace cea
