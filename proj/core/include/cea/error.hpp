#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cea {

enum class ErrorCode {
  OutOfRange,
  BadConfig,
  InactiveChannel,
  ParseError,
  SchemaError,
  Inconsistent,
  CellOccupied,
  IllegalPlacement,
  CellEmpty,
  NoCandidates,
  MissingEntry,
  NoPlan,
  OutOfWorkspace,
  UnknownGesture,
  NoLegalCell,
  NotLiveSession,
  MissingTemplate,
  SessionEnded,
  StepLimitExceeded,
  NotYourTurn,
  Io,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }
  // what() without the leading code name.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace cea
