#include "cea/comfort.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cea/confdoc.hpp"
#include "cea/data.hpp"
#include "cea/error.hpp"

namespace cea {

void ComfortParams::validate() const {
  std::ostringstream os;
  if (!(initial > 0.0)) os << "C0 must be positive; ";
  if (!(threshold > 0.0 && threshold < initial)) os << "threshold must satisfy 0 < Th < C0; ";
  if (!(decay > 0.0)) os << "decay rate must be positive; ";
  if (!(recovery_gain >= 0.0)) os << "recovery gain must be non-negative; ";
  std::string msg = os.str();
  if (!msg.empty()) throw Error(ErrorCode::BadConfig, msg.substr(0, msg.size() - 2));
}

double ComfortState::signed_value(Trait t) const {
  const Channel& c = channel(t);
  if (!c.active) return 0.0;
  return c.weight > 0.0 ? c.magnitude : -c.magnitude;
}

std::vector<Trait> ComfortState::active_traits() const {
  std::vector<Trait> out;
  for (Trait t : kAllTraits) {
    if (active(t)) out.push_back(t);
  }
  return out;
}

double ComfortState::min_slack() const {
  double slack = std::numeric_limits<double>::infinity();
  for (const Channel& c : channels_) {
    if (c.active) slack = std::min(slack, c.magnitude - params_.threshold);
  }
  return slack;
}

double ComfortState::clamp(double m) const { return std::clamp(m, 0.0, params_.initial); }

ComfortState init_comfort(const PersonalityVector& p, const ComfortParams& params) {
  params.validate();
  ComfortState s;
  s.params_ = params;
  for (Trait t : kAllTraits) {
    auto& c = s.channel(t);
    c.active = p.active(t);
    c.weight = p.weight(t);
    c.magnitude = c.active ? params.initial : 0.0;
  }
  return s;
}

ComfortState init_comfort(const PersonalityVector& p, double threshold, double initial,
                          double decay) {
  ComfortParams params;
  params.threshold = threshold;
  params.initial = initial;
  params.decay = decay;
  return init_comfort(p, params);
}

ComfortState apply_standard_decay(const ComfortState& s, const PersonalityVector& p) {
  ComfortState out = s;
  for (Trait t : kAllTraits) {
    auto& c = out.channel(t);
    if (!c.active) continue;
    c.magnitude = std::max(0.0, c.magnitude - s.params_.decay * std::abs(p.weight(t)));
  }
  ++out.tick_;
  return out;
}

ComfortState apply_offset(const ComfortState& s, Trait t, double delta) {
  if (!s.active(t)) {
    throw Error(ErrorCode::InactiveChannel,
                "no comfort channel for " + std::string(to_string(t)));
  }
  ComfortState out = s;
  auto& c = out.channel(t);
  c.magnitude = out.clamp(c.magnitude + delta);
  return out;
}

ComfortState apply_recovery(const ComfortState& s, Trait t, double reward) {
  if (!(reward >= 0.0)) throw Error(ErrorCode::OutOfRange, "recovery reward must be >= 0");
  return apply_offset(s, t, s.params_.recovery_gain * reward);
}

std::vector<Trait> needs_motivation(const ComfortState& s) {
  std::vector<Trait> out;
  for (Trait t : s.active_traits()) {
    if (s.magnitude(t) < s.threshold() - kThresholdTolerance) out.push_back(t);
  }
  return out;
}

const SensitivityTable& SensitivityTable::defaults() {
  static const SensitivityTable table = parse(data::builtin("sensitivity.conf"));
  return table;
}

SensitivityTable SensitivityTable::parse(std::string_view text) {
  confdoc::Block doc = confdoc::parse(text);
  SensitivityTable table;
  for (const confdoc::Block* b : doc.children_of("pole")) {
    auto pole = parse_pole(b->name);
    if (!pole) {
      throw Error(ErrorCode::SchemaError,
                  "at " + confdoc::to_string(b->pos) + ": unknown pole '" + b->name + "'");
    }
    for (const auto& f : b->fields) {
      double delta = f.value.number();
      if (f.key == "attentive" || f.key == "inattentive") {
        table.set_attention_delta(*pole, f.key == "attentive", delta);
      } else if (auto e = parse_emotion(f.key)) {
        table.set_emotion_delta(*pole, *e, delta);
      } else {
        throw Error(ErrorCode::SchemaError, "at " + confdoc::to_string(f.pos) +
                                                ": unknown stimulus '" + f.key + "'");
      }
    }
  }
  return table;
}

SensitivityTable SensitivityTable::load(const std::string& path) {
  return parse(data::read_file(path));
}

double SensitivityTable::emotion_delta(TraitPole pole, Emotion e) const {
  auto it = emotion_.find(pole);
  if (it == emotion_.end()) return 0.0;
  auto jt = it->second.find(e);
  return jt == it->second.end() ? 0.0 : jt->second;
}

double SensitivityTable::attention_delta(TraitPole pole, bool attentive) const {
  auto it = attention_.find(pole);
  return it == attention_.end() ? 0.0 : it->second[attentive ? 1 : 0];
}

void SensitivityTable::set_emotion_delta(TraitPole pole, Emotion e, double delta) {
  emotion_[pole][e] = delta;
}

void SensitivityTable::set_attention_delta(TraitPole pole, bool attentive, double delta) {
  attention_[pole][attentive ? 1 : 0] = delta;
}

void SensitivityTable::validate(double initial) const {
  auto check = [&](TraitPole pole, double d) {
    if (std::abs(d) > initial) {
      throw Error(ErrorCode::BadConfig, "sensitivity delta for " + to_string(pole) +
                                            " exceeds C0 in magnitude");
    }
  };
  for (const auto& [pole, m] : emotion_) {
    for (const auto& [e, d] : m) check(pole, d);
  }
  for (const auto& [pole, a] : attention_) {
    check(pole, a[0]);
    check(pole, a[1]);
  }
}

ComfortState apply_perception(const ComfortState& s, std::span<const TraitPole> poles,
                              WorldState world, const SensitivityTable& table) {
  ComfortState out = s;
  for (TraitPole pole : poles) {
    if (!out.active(pole.trait)) continue;
    double delta = table.emotion_delta(pole, world.emotion()) +
                   table.attention_delta(pole, world.attentive());
    if (delta != 0.0) out = apply_offset(out, pole.trait, delta);
  }
  return out;
}

}  // namespace cea
