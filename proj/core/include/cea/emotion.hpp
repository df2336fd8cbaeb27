#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace cea {

// Declaration order is the tie-break order used by the perception filter.
enum class Emotion { Happy, Sad, Surprise, Disgust, Fear, Anger, Neutral };

inline constexpr std::array<Emotion, 7> kAllEmotions = {
    Emotion::Happy, Emotion::Sad,   Emotion::Surprise, Emotion::Disgust,
    Emotion::Fear,  Emotion::Anger, Emotion::Neutral};

std::string_view to_string(Emotion e);
std::optional<Emotion> parse_emotion(std::string_view name);
// Throws Error{SchemaError}.
Emotion emotion_from_string(std::string_view name);

}  // namespace cea
