#include "cea/world_state.hpp"

#include <bit>

#include "cea/error.hpp"

namespace cea {

WorldState WorldState::from_bits(uint8_t bits) {
  if (std::popcount(static_cast<unsigned>(bits & 0x7F)) != 1) {
    throw Error(ErrorCode::SchemaError,
                "world state needs exactly one emotion bit, got " + std::to_string(bits));
  }
  WorldState w;
  w.bits_ = bits;
  return w;
}

WorldState WorldState::from_string(const std::string& s) {
  if (s.size() != 8) throw Error(ErrorCode::SchemaError, "world state '" + s + "' is not 8 bits");
  uint8_t bits = 0;
  for (size_t i = 0; i < 8; ++i) {
    if (s[i] == '1') {
      bits = static_cast<uint8_t>(bits | (1u << i));
    } else if (s[i] != '0') {
      throw Error(ErrorCode::SchemaError, "world state '" + s + "' has a non-bit character");
    }
  }
  return from_bits(bits);
}

Emotion WorldState::emotion() const {
  unsigned low = bits_ & 0x7F;
  return static_cast<Emotion>(std::countr_zero(low));
}

std::string WorldState::to_string() const {
  std::string s(8, '0');
  for (size_t i = 0; i < 8; ++i) {
    if (bits_ & (1u << i)) s[i] = '1';
  }
  return s;
}

}  // namespace cea
