#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cea/dispatcher.hpp"

namespace cea {

enum class TraceFormat { EventsJsonl, ComfortCsv, TrajectoryCsv, Summary };

// "events-jsonl", "comfort-csv", "trajectory-csv", "summary".
std::optional<TraceFormat> parse_trace_format(std::string_view s);
std::string_view to_string(TraceFormat f);
std::string_view file_name(TraceFormat f);

std::string export_trace(const SessionLog& log, TraceFormat format);
// Throws Error{Io}.
void write_trace(const SessionLog& log, TraceFormat format, const std::string& path);

// Throws Error{ParseError}.
std::vector<SessionEvent> read_events_jsonl(std::string_view text);

}  // namespace cea
