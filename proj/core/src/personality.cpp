#include "cea/personality.hpp"

#include <cmath>
#include <sstream>

#include "cea/confdoc.hpp"
#include "cea/data.hpp"
#include "cea/error.hpp"

namespace cea {

std::string_view to_string(Trait t) {
  switch (t) {
    case Trait::Conscientiousness: return "Conscientiousness";
    case Trait::Extroversion: return "Extroversion";
    case Trait::Agreeableness: return "Agreeableness";
  }
  return "";
}

char trait_letter(Trait t) {
  switch (t) {
    case Trait::Conscientiousness: return 'C';
    case Trait::Extroversion: return 'E';
    case Trait::Agreeableness: return 'A';
  }
  return '?';
}

std::string to_string(TraitPole p) {
  std::string s;
  s.push_back(p.sign == Sign::High ? 'H' : 'L');
  s.push_back(trait_letter(p.trait));
  return s;
}

std::optional<TraitPole> parse_pole(std::string_view s) {
  for (TraitPole p : kAllPoles) {
    if (to_string(p) == s) return p;
  }
  return std::nullopt;
}

TraitPole opposite(TraitPole p) {
  return {p.trait, p.sign == Sign::High ? Sign::Low : Sign::High};
}

PersonalityVector PersonalityVector::make(double w_c, double w_e, double w_a) {
  for (double w : {w_c, w_e, w_a}) {
    if (!(w >= -1.0 && w <= 1.0)) {
      std::ostringstream os;
      os << "personality weight " << w << " outside [-1, +1]";
      throw Error(ErrorCode::OutOfRange, os.str());
    }
  }
  PersonalityVector p;
  p.w_ = {w_c, w_e, w_a};
  return p;
}

std::optional<TraitPole> PersonalityVector::pole(Trait t) const {
  double w = weight(t);
  if (w == 0.0) return std::nullopt;
  return TraitPole{t, w > 0.0 ? Sign::High : Sign::Low};
}

std::string PersonalityVector::to_string() const {
  return confdoc::format_number(w_[0]) + "," + confdoc::format_number(w_[1]) + "," +
         confdoc::format_number(w_[2]);
}

PersonalityVector PersonalityVector::parse(std::string_view csv) {
  std::vector<double> ws;
  std::string item;
  std::string s(csv);
  std::stringstream ss(s);
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      ws.push_back(std::stod(item, &used));
      while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::BadConfig, "bad personality component '" + item + "'");
    }
  }
  if (ws.size() != 3) {
    throw Error(ErrorCode::BadConfig, "personality needs three comma-separated weights");
  }
  return make(ws[0], ws[1], ws[2]);
}

std::vector<TraitPole> dominant_poles(const PersonalityVector& p) {
  std::vector<TraitPole> out;
  for (Trait t : kAllTraits) {
    if (auto pole = p.pole(t)) out.push_back(*pole);
  }
  return out;
}

std::vector<PersonalityVector> archetypes() {
  std::vector<PersonalityVector> out;
  const std::array<std::pair<int, int>, 3> pairs{{{0, 1}, {0, 2}, {1, 2}}};
  for (auto [i, j] : pairs) {
    for (double si : {1.0, -1.0}) {
      for (double sj : {1.0, -1.0}) {
        std::array<double, 3> w{0.0, 0.0, 0.0};
        w[static_cast<size_t>(i)] = si;
        w[static_cast<size_t>(j)] = sj;
        out.push_back(PersonalityVector::make(w[0], w[1], w[2]));
      }
    }
  }
  return out;
}

std::string_view to_string(Level l) {
  switch (l) {
    case Level::Low: return "Low";
    case Level::Mid: return "Mid";
    case Level::High: return "High";
  }
  return "";
}

std::string_view to_string(SpeedLevel l) {
  switch (l) {
    case SpeedLevel::Slow: return "Slow";
    case SpeedLevel::Middle: return "Middle";
    case SpeedLevel::High: return "High";
  }
  return "";
}

namespace {

SpeedLevel as_speed(Level l) {
  switch (l) {
    case Level::Low: return SpeedLevel::Slow;
    case Level::Mid: return SpeedLevel::Middle;
    case Level::High: return SpeedLevel::High;
  }
  return SpeedLevel::Middle;
}

}  // namespace

const ParameterMap& ParameterMap::defaults() {
  static const ParameterMap map = parse(data::builtin("params.conf"));
  return map;
}

ParameterMap ParameterMap::parse(std::string_view text) { return from_doc(confdoc::parse(text)); }

ParameterMap ParameterMap::load(const std::string& path) {
  return from_doc(confdoc::parse_file(path));
}

ParameterMap ParameterMap::from_doc(const confdoc::Block& doc) {
  ParameterMap m;
  if (const auto* b = doc.child("buckets")) {
    m.high_cut_ = b->get("high").number();
    m.low_cut_ = b->get("low").number();
    if (!(m.low_cut_ < 0.0 && 0.0 < m.high_cut_)) {
      throw Error(ErrorCode::SchemaError, "buckets: cuts must satisfy low < 0 < high");
    }
  }
  const auto* styles = doc.child("styles");
  if (styles == nullptr) throw Error(ErrorCode::SchemaError, "parameter map has no 'styles' block");
  for (TraitPole pole : kAllPoles) {
    m.styles_[pole] = styles->get(to_string(pole)).strings();
  }
  return m;
}

const std::vector<std::string>& ParameterMap::styles(TraitPole pole) const {
  return styles_.at(pole);
}

std::set<std::string> ParameterMap::vocabulary() const {
  std::set<std::string> out;
  for (const auto& [pole, tags] : styles_) out.insert(tags.begin(), tags.end());
  return out;
}

Level ParameterMap::bucket(double w) const {
  if (w >= high_cut_) return Level::High;
  if (w <= low_cut_) return Level::Low;
  return Level::Mid;
}

BehavioralParameters ParameterMap::generate(const PersonalityVector& p, ActionClass) const {
  BehavioralParameters out;
  Level e = bucket(p.w_e());
  out.volume = e;
  out.amplitude = e;
  out.velocity = as_speed(e);
  out.acceleration = as_speed(bucket(p.w_a()));
  out.straightness = bucket((p.w_a() + p.w_c()) / 2.0);
  for (TraitPole pole : dominant_poles(p)) {
    const auto& tags = styles(pole);
    out.language_style.insert(tags.begin(), tags.end());
  }
  return out;
}

}  // namespace cea
