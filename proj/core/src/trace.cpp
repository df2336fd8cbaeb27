#include "cea/trace.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cea/error.hpp"

namespace cea {

namespace {

std::string num(double v) {
  // Shortest round-trip form, same as the JSON writer.
  return nlohmann::json(v).dump();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::optional<TraceFormat> parse_trace_format(std::string_view s) {
  if (s == "events-jsonl") return TraceFormat::EventsJsonl;
  if (s == "comfort-csv") return TraceFormat::ComfortCsv;
  if (s == "trajectory-csv") return TraceFormat::TrajectoryCsv;
  if (s == "summary") return TraceFormat::Summary;
  return std::nullopt;
}

std::string_view to_string(TraceFormat f) {
  switch (f) {
    case TraceFormat::EventsJsonl:
      return "events-jsonl";
    case TraceFormat::ComfortCsv:
      return "comfort-csv";
    case TraceFormat::TrajectoryCsv:
      return "trajectory-csv";
    case TraceFormat::Summary:
      return "summary";
  }
  return "";
}

std::string_view file_name(TraceFormat f) {
  switch (f) {
    case TraceFormat::EventsJsonl:
      return "events.jsonl";
    case TraceFormat::ComfortCsv:
      return "comfort.csv";
    case TraceFormat::TrajectoryCsv:
      return "trajectory.csv";
    case TraceFormat::Summary:
      return "summary.json";
  }
  return "";
}

std::string export_trace(const SessionLog& log, TraceFormat format) {
  std::ostringstream os;
  switch (format) {
    case TraceFormat::EventsJsonl:
      for (const auto& e : log.events) os << e.to_json() << '\n';
      break;
    case TraceFormat::ComfortCsv:
      os << "tick,action_id,trait,expected_signed_value,actual_signed_value,threshold\n";
      for (const auto& r : log.comfort) {
        os << r.tick << ',' << csv_field(r.action) << ',' << trait_letter(r.trait) << ','
           << num(r.expected) << ',' << num(r.actual) << ',' << num(r.threshold) << '\n';
      }
      break;
    case TraceFormat::TrajectoryCsv:
      os << "t,x,y,z,action_id\n";
      for (const auto& r : log.trajectory) {
        os << num(r.t) << ',' << num(r.p.x) << ',' << num(r.p.y) << ',' << num(r.p.z) << ','
           << csv_field(r.action) << '\n';
      }
      break;
    case TraceFormat::Summary: {
      const SessionSummary& s = log.summary;
      nlohmann::json j;
      j["personality"] = log.personality;
      j["speaking"] = log.speaking;
      j["seed"] = log.seed;
      j["profile"] = log.profile;
      j["steps"] = s.steps;
      j["complete_valid"] = s.complete_valid;
      j["final_board"] = s.final_board;
      j["category_counts"] = s.category_counts;
      j["action_counts"] = s.action_counts;
      j["motivational_counts"] = s.motivational_counts;
      j["robot_placements"] = s.robot_placements;
      j["human_placements"] = s.human_placements;
      j["wrong_placements"] = s.wrong_placements;
      j["replans"] = s.replans;
      j["failures"] = s.failures;
      j["verbal_utterances"] = s.verbal_utterances;
      os << j.dump(2) << '\n';
      break;
    }
  }
  return os.str();
}

void write_trace(const SessionLog& log, TraceFormat format, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write '" + path + "'");
  out << export_trace(log, format);
  if (!out) throw Error(ErrorCode::Io, "write to '" + path + "' failed");
}

std::vector<SessionEvent> read_events_jsonl(std::string_view text) {
  std::vector<SessionEvent> out;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty()) out.push_back(SessionEvent::from_json(line));
    pos = end + 1;
  }
  return out;
}

}  // namespace cea
