#include "cea/emotion.hpp"

#include <cctype>
#include <string>

#include "cea/error.hpp"

namespace cea {

std::string_view to_string(Emotion e) {
  switch (e) {
    case Emotion::Happy: return "Happy";
    case Emotion::Sad: return "Sad";
    case Emotion::Surprise: return "Surprise";
    case Emotion::Disgust: return "Disgust";
    case Emotion::Fear: return "Fear";
    case Emotion::Anger: return "Anger";
    case Emotion::Neutral: return "Neutral";
  }
  return "Neutral";
}

std::optional<Emotion> parse_emotion(std::string_view name) {
  for (Emotion e : kAllEmotions) {
    std::string_view n = to_string(e);
    if (n.size() != name.size()) continue;
    bool same = true;
    for (size_t i = 0; i < n.size(); ++i) {
      if (std::tolower(static_cast<unsigned char>(n[i])) !=
          std::tolower(static_cast<unsigned char>(name[i]))) {
        same = false;
        break;
      }
    }
    if (same) return e;
  }
  return std::nullopt;
}

Emotion emotion_from_string(std::string_view name) {
  if (auto e = parse_emotion(name)) return *e;
  throw Error(ErrorCode::SchemaError, "unknown emotion '" + std::string(name) + "'");
}

}  // namespace cea
