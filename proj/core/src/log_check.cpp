#include "cea/log_check.hpp"

#include <cmath>

#include <json.hpp>

#include "cea/comfort.hpp"
#include "cea/game.hpp"

namespace cea {

using nlohmann::json;

namespace {

std::string at(const SessionEvent& e) {
  return "tick " + std::to_string(e.tick) + " (" + std::string(to_string(e.kind)) + ")";
}

}  // namespace

std::vector<std::string> check_log(const std::vector<SessionEvent>& events,
                                   const LogCheckOptions& options) {
  std::vector<std::string> out;
  long last_tick = 0;
  bool ended = false;
  std::string board = std::string(kCells, '.');
  char last_color = 0;

  for (const SessionEvent& e : events) {
    if (e.tick != last_tick + 1) out.push_back(at(e) + ": ticks must count up from 1");
    last_tick = e.tick;
    if (ended) out.push_back(at(e) + ": event after SessionEnded");
    json d = json::parse(e.data, nullptr, false);
    if (!d.is_object()) {
      out.push_back(at(e) + ": data is not a JSON object");
      continue;
    }

    switch (e.kind) {
      case EventKind::Utterance:
        if (!options.speaking && d.value("modality", "") == "verbal") {
          out.push_back(at(e) + ": verbal utterance in a non-speaking session");
        }
        break;
      case EventKind::Planned:
      case EventKind::Replanned: {
        const json& steps = d["steps"];
        const json& expected = d["expected"];
        if (!steps.is_array() || !expected.is_array() || expected.size() != steps.size() + 1) {
          out.push_back(at(e) + ": plan without one prediction per step");
          break;
        }
        for (size_t i = 0; i < steps.size(); ++i) {
          if (steps[i].get<std::string>().rfind("Motivate(", 0) == 0) continue;
          for (const auto& [trait, value] : expected[i + 1].items()) {
            if (std::abs(value.get<double>()) < options.threshold - kThresholdTolerance) {
              out.push_back(at(e) + ": step " + std::to_string(i + 1) + " predicts " + trait +
                            " below threshold");
            }
          }
        }
        break;
      }
      case EventKind::ActionCompleted:
      case EventKind::HumanMoved: {
        if (!d.contains("board")) break;
        std::string next = d["board"].get<std::string>();
        if (next.size() != board.size()) {
          out.push_back(at(e) + ": malformed board");
          break;
        }
        int added = 0;
        int removed = 0;
        char color = 0;
        for (size_t i = 0; i < next.size(); ++i) {
          if (board[i] == '.' && next[i] != '.') {
            ++added;
            color = next[i];
          } else if (board[i] != '.' && next[i] == '.') {
            ++removed;
          } else if (board[i] != next[i]) {
            out.push_back(at(e) + ": a block changed color in place");
          }
        }
        if (added + removed > 1) out.push_back(at(e) + ": more than one block moved");
        if (removed == 1) last_color = 0;
        if (added == 1) {
          if (color == last_color) out.push_back(at(e) + ": two placements of the same color in a row");
          last_color = color;
        }
        board = next;
        break;
      }
      case EventKind::SessionEnded: {
        ended = true;
        if (options.require_end) {
          Board b = Board::from_string(d.value("board", std::string()));
          if (!is_complete_valid(b)) out.push_back(at(e) + ": session ended without a valid full board");
          if (d.value("board", std::string()) != board) {
            out.push_back(at(e) + ": final board differs from the replayed placements");
          }
        }
        break;
      }
      default:
        break;
    }
  }
  if (options.require_end && !ended) out.push_back("log has no SessionEnded event");
  return out;
}

}  // namespace cea
