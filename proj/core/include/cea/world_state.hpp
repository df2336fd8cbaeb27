#pragma once

#include <cstdint>
#include <string>

#include "cea/emotion.hpp"

namespace cea {

// Episodic context key: bits 0..6 one-hot over the emotion enum, bit 7 set
// when the user is attentive.
class WorldState {
 public:
  WorldState() : bits_(bit_of(Emotion::Neutral) | kAttentionBit) {}

  static WorldState encode(Emotion e, bool attentive) {
    WorldState w;
    w.bits_ = static_cast<uint8_t>(bit_of(e) | (attentive ? kAttentionBit : 0));
    return w;
  }
  // Throws Error{SchemaError} unless exactly one emotion bit is set.
  static WorldState from_bits(uint8_t bits);
  // Eight '0'/'1' characters, bit 0 first.
  static WorldState from_string(const std::string& s);

  uint8_t bits() const { return bits_; }
  Emotion emotion() const;
  bool attentive() const { return (bits_ & kAttentionBit) != 0; }
  std::string to_string() const;

  friend auto operator<=>(const WorldState&, const WorldState&) = default;

 private:
  static constexpr uint8_t kAttentionBit = 0x80;
  static constexpr uint8_t bit_of(Emotion e) {
    return static_cast<uint8_t>(1u << static_cast<unsigned>(e));
  }

  uint8_t bits_;
};

}  // namespace cea
