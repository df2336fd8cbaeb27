#include "cea/usersim.hpp"

#include <cmath>

#include "cea/confdoc.hpp"
#include "cea/data.hpp"
#include "cea/error.hpp"

namespace cea {

namespace {

const EmotionDistribution kNeutralOnly = [] {
  EmotionDistribution d{};
  d[static_cast<size_t>(Emotion::Neutral)] = 1.0;
  return d;
}();

[[noreturn]] void schema(confdoc::Position pos, const std::string& msg) {
  throw Error(ErrorCode::SchemaError, "at " + confdoc::to_string(pos) + ": " + msg);
}

UserModel from_block(const confdoc::Block& b) {
  UserModel u;
  u.name = b.name;
  if (const auto* v = b.find("attention")) u.attention = v->number();
  if (const confdoc::Block* a = b.child("attention_by")) {
    for (const auto& f : a->fields) u.attention_by_category[f.key] = f.value.number();
  }
  for (const confdoc::Block* r : b.children_of("reaction")) {
    if (r->name.empty()) schema(r->pos, "reaction needs a category name");
    EmotionDistribution d{};
    for (const auto& f : r->fields) {
      auto e = parse_emotion(f.key);
      if (!e) schema(f.pos, "unknown emotion '" + f.key + "'");
      d[static_cast<size_t>(*e)] = f.value.number();
    }
    u.reactions[r->name] = d;
  }
  try {
    u.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::BadConfig, "profile " + u.name + ": " + e.detail());
  }
  return u;
}

}  // namespace

void UserModel::validate() const {
  auto prob = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (!prob(attention)) throw Error(ErrorCode::BadConfig, "attention must lie in [0, 1]");
  for (const auto& [cat, p] : attention_by_category) {
    if (!prob(p)) throw Error(ErrorCode::BadConfig, "attention for " + cat + " must lie in [0, 1]");
  }
  for (const auto& [cat, d] : reactions) {
    double sum = 0.0;
    for (double p : d) {
      if (!prob(p)) throw Error(ErrorCode::BadConfig, "reaction " + cat + " has a probability outside [0, 1]");
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      throw Error(ErrorCode::BadConfig, "reaction " + cat + " sums to " + confdoc::format_number(sum));
    }
  }
}

const EmotionDistribution& UserModel::distribution(std::string_view category) const {
  auto it = reactions.find(std::string(category));
  return it == reactions.end() ? kNeutralOnly : it->second;
}

double UserModel::attention_for(std::string_view category) const {
  auto it = attention_by_category.find(std::string(category));
  return it == attention_by_category.end() ? attention : it->second;
}

const ProfileLibrary& ProfileLibrary::defaults() {
  static const ProfileLibrary lib = parse(data::builtin("profiles.conf"));
  return lib;
}

ProfileLibrary ProfileLibrary::parse(std::string_view text) {
  confdoc::Block doc = confdoc::parse(text);
  ProfileLibrary lib;
  for (const confdoc::Block* b : doc.children_of("profile")) {
    if (b->name.empty()) schema(b->pos, "profile needs a name");
    if (lib.profiles_.contains(b->name)) schema(b->pos, "duplicate profile " + b->name);
    lib.profiles_[b->name] = from_block(*b);
  }
  return lib;
}

ProfileLibrary ProfileLibrary::load(const std::string& path) { return parse(data::read_file(path)); }

const UserModel& ProfileLibrary::at(std::string_view name) const {
  auto it = profiles_.find(name);
  if (it == profiles_.end()) throw Error(ErrorCode::MissingEntry, "no profile '" + std::string(name) + "'");
  return it->second;
}

std::vector<std::string> ProfileLibrary::names() const {
  std::vector<std::string> out;
  for (const auto& [name, u] : profiles_) out.push_back(name);
  return out;
}

Perception react(const UserModel& u, std::string_view category, Rng& rng) {
  const EmotionDistribution& d = u.distribution(category);
  double x = rng.uniform();
  double attention_draw = rng.uniform();
  Perception p;
  p.emotion = Emotion::Neutral;
  double acc = 0.0;
  Emotion last_nonzero = Emotion::Neutral;
  bool picked = false;
  for (Emotion e : kAllEmotions) {
    double q = d[static_cast<size_t>(e)];
    if (q <= 0.0) continue;
    last_nonzero = e;
    acc += q;
    if (x < acc) {
      p.emotion = e;
      picked = true;
      break;
    }
  }
  // Rounding can leave x just above the accumulated mass.
  if (!picked) p.emotion = last_nonzero;
  p.attentive = attention_draw < u.attention_for(category);
  return p;
}

Cell choose_human_move(const UserModel&, const Board& board, Rng& rng) {
  std::vector<Cell> cells = legal_cells(board, kHumanColor);
  if (cells.empty()) throw Error(ErrorCode::NoLegalCell, "no legal cell for the human on " + board.to_string());
  return cells[rng.below(cells.size())];
}

void PerceptionWindow::add(double t, Emotion e, bool attentive) {
  samples_.push_back({t, e, attentive});
}

void PerceptionWindow::evict(double now) {
  std::erase_if(samples_, [&](const Sample& s) { return s.t <= now - span_; });
}

Emotion filter_emotion(PerceptionWindow& w, double now) {
  w.evict(now);
  std::array<int, kAllEmotions.size()> counts{};
  for (const auto& s : w.samples()) ++counts[static_cast<size_t>(s.emotion)];
  Emotion best = Emotion::Neutral;
  int best_count = 0;
  for (Emotion e : kAllEmotions) {
    int c = counts[static_cast<size_t>(e)];
    if (c > best_count) {
      best = e;
      best_count = c;
    }
  }
  return best;
}

bool filter_attention(PerceptionWindow& w, double now) {
  w.evict(now);
  return w.samples().empty() ? true : w.samples().back().attentive;
}

}  // namespace cea
