#pragma once

#include <string>
#include <vector>

#include "cea/dispatcher.hpp"

namespace cea {

// Session invariants checked from the event stream alone, so the same
// check runs on a live log or on an events-jsonl file read back from disk.
struct LogCheckOptions {
  bool speaking = true;
  double threshold = 0.3;
  // Require a SessionEnded event with a complete, valid board.
  bool require_end = true;
};

// One message per violated invariant; empty when the log is clean.
std::vector<std::string> check_log(const std::vector<SessionEvent>& events,
                                   const LogCheckOptions& options);

inline std::vector<std::string> check_log(const SessionLog& log, double threshold = 0.3) {
  return check_log(log.events, {log.speaking, threshold, true});
}

}  // namespace cea
