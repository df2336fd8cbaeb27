#include "cea/error.hpp"

namespace cea {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::BadConfig: return "BadConfig";
    case ErrorCode::InactiveChannel: return "InactiveChannel";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::Inconsistent: return "Inconsistent";
    case ErrorCode::CellOccupied: return "CellOccupied";
    case ErrorCode::IllegalPlacement: return "IllegalPlacement";
    case ErrorCode::CellEmpty: return "CellEmpty";
    case ErrorCode::NoCandidates: return "NoCandidates";
    case ErrorCode::MissingEntry: return "MissingEntry";
    case ErrorCode::NoPlan: return "NoPlan";
    case ErrorCode::OutOfWorkspace: return "OutOfWorkspace";
    case ErrorCode::UnknownGesture: return "UnknownGesture";
    case ErrorCode::NoLegalCell: return "NoLegalCell";
    case ErrorCode::NotLiveSession: return "NotLiveSession";
    case ErrorCode::MissingTemplate: return "MissingTemplate";
    case ErrorCode::SessionEnded: return "SessionEnded";
    case ErrorCode::StepLimitExceeded: return "StepLimitExceeded";
    case ErrorCode::NotYourTurn: return "NotYourTurn";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), detail_(what) {}

}  // namespace cea
