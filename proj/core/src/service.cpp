#include "cea/service.hpp"

#include <chrono>
#include <condition_variable>
#include <filesystem>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "cea/error.hpp"
#include "cea/trace.hpp"

namespace cea {

using nlohmann::json;

namespace {

int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotYourTurn:
    case ErrorCode::NotLiveSession:
      return 409;
    case ErrorCode::IllegalPlacement:
    case ErrorCode::CellOccupied:
    case ErrorCode::OutOfRange:
      return 422;
    case ErrorCode::SessionEnded:
      return 410;
    case ErrorCode::MissingEntry:
      return 404;
    default:
      return 400;
  }
}

void reply(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void reply_error(httplib::Response& res, int status, const std::string& code, const std::string& message) {
  reply(res, status, {{"error", code}, {"message", message}});
}

void reply_error(httplib::Response& res, const Error& e) {
  reply_error(res, status_for(e.code()), std::string(to_string(e.code())), e.detail());
}

json events_json(const std::vector<SessionEvent>& events) {
  json out = json::array();
  for (const auto& e : events) out.push_back(json::parse(e.to_json()));
  return out;
}

PersonalityVector personality_from(const json& v) {
  if (v.is_string()) return PersonalityVector::parse(v.get<std::string>());
  if (v.is_array() && v.size() == 3 && v[0].is_number() && v[1].is_number() && v[2].is_number()) {
    return PersonalityVector::make(v[0].get<double>(), v[1].get<double>(), v[2].get<double>());
  }
  throw Error(ErrorCode::SchemaError, "personality must be [c, e, a] or \"c,e,a\"");
}

SessionConfig config_from(const json& body, const std::string& data_dir) {
  if (!body.is_object()) throw Error(ErrorCode::SchemaError, "body must be a JSON object");
  if (!body.contains("personality")) throw Error(ErrorCode::SchemaError, "personality is required");
  SessionConfig c;
  c.data_dir = data_dir;
  c.mode = SessionMode::Live;
  c.personality = personality_from(body["personality"]);
  try {
    if (body.contains("speaking")) c.speaking = body["speaking"].get<bool>();
    if (body.contains("mode")) {
      std::string m = body["mode"].get<std::string>();
      if (m == "batch") {
        c.mode = SessionMode::Batch;
      } else if (m != "live") {
        throw Error(ErrorCode::SchemaError, "mode must be live or batch");
      }
    }
    if (body.contains("seed")) c.seed = body["seed"].get<uint64_t>();
    if (c.mode == SessionMode::Live && !c.seed) c.seed = 0;
    if (body.contains("profile")) c.profile = body["profile"].get<std::string>();
    if (body.contains("horizon")) c.planner.horizon = body["horizon"].get<int>();
    if (body.contains("threshold")) c.comfort.threshold = body["threshold"].get<double>();
    if (body.contains("initial")) c.comfort.initial = body["initial"].get<double>();
    if (body.contains("decay")) c.comfort.decay = body["decay"].get<double>();
    if (body.contains("recovery_gain")) c.comfort.recovery_gain = body["recovery_gain"].get<double>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::SchemaError, e.what());
  }
  return c;
}

std::string status_of(const Session& s) {
  if (s.ended()) return "ended";
  if (s.awaiting_human()) return "awaiting_human";
  return "running";
}

}  // namespace

struct SessionService::Entry {
  std::string id;
  double created_at = 0.0;
  std::mutex m;
  std::condition_variable cv;
  Session session;

  Entry(std::string id_, double t, Session s) : id(std::move(id_)), created_at(t), session(std::move(s)) {}

  json handle() const {
    return {{"id", id},
            {"created_at", created_at},
            {"mode", session.config().mode == SessionMode::Live ? "live" : "batch"},
            {"status", status_of(session)}};
  }

  json snapshot() const {
    json comfort = json::object();
    for (Trait t : session.comfort().active_traits()) {
      comfort[std::string(1, trait_letter(t))] = session.comfort().signed_value(t);
    }
    json j = handle();
    j["board"] = session.board().to_string();
    j["turn"] = session.turn() == Performer::Human ? "human" : "robot";
    j["comfort"] = comfort;
    j["threshold"] = session.comfort().threshold();
    j["last_utterance"] = session.last_utterance();
    j["tick"] = session.log().events.size();
    j["personality"] = session.config().personality.to_string();
    j["speaking"] = session.config().speaking;
    return j;
  }
};

struct SessionService::Worker {
  std::thread thread;
};

SessionService::SessionService(ServiceOptions options)
    : options_(std::move(options)), server_(std::make_unique<httplib::Server>()),
      worker_(std::make_unique<Worker>()) {
  register_routes(*server_);
}

SessionService::~SessionService() { stop(); }

std::shared_ptr<SessionService::Entry> SessionService::find(const std::string& id) const {
  std::lock_guard lock(mutex_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

size_t SessionService::session_count() const {
  std::lock_guard lock(mutex_);
  return sessions_.size();
}

void SessionService::register_routes(httplib::Server& server) {
  static const auto t0 = std::chrono::steady_clock::now();

  server.Post("/sessions", [this](const httplib::Request& req, httplib::Response& res) {
    json body = json::parse(req.body, nullptr, false);
    if (body.is_discarded()) return reply_error(res, 400, "ParseError", "body is not JSON");
    try {
      SessionConfig config = config_from(body, options_.data_dir);
      Session s = Session::create(config);
      double t = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      std::shared_ptr<Entry> entry;
      {
        std::lock_guard lock(mutex_);
        std::string id = "s" + std::to_string(next_id_++);
        entry = std::make_shared<Entry>(id, t, std::move(s));
        sessions_[id] = entry;
      }
      reply(res, 201, entry->handle());
    } catch (const Error& e) {
      reply_error(res, 400, std::string(to_string(e.code())), e.detail());
    }
  });

  auto with_entry = [this](auto handler) {
    return [this, handler](const httplib::Request& req, httplib::Response& res) {
      auto entry = find(req.matches[1]);
      if (!entry) return reply_error(res, 404, "NotFound", "no session " + std::string(req.matches[1]));
      handler(*entry, req, res);
    };
  };

  server.Get(R"(/sessions/([^/]+))", with_entry([](Entry& e, const httplib::Request&, httplib::Response& res) {
    std::lock_guard lock(e.m);
    reply(res, 200, e.snapshot());
  }));

  server.Post(R"(/sessions/([^/]+)/move)", with_entry([](Entry& e, const httplib::Request& req, httplib::Response& res) {
    json body = json::parse(req.body, nullptr, false);
    Cell cell;
    if (body.is_object() && body.contains("row") && body.contains("col") && body["row"].is_number_integer() &&
        body["col"].is_number_integer()) {
      cell = {body["row"].get<int>(), body["col"].get<int>()};
    } else if (body.is_object() && body.contains("cell") && body["cell"].is_array() && body["cell"].size() == 2 &&
               body["cell"][0].is_number_integer() && body["cell"][1].is_number_integer()) {
      cell = {body["cell"][0].get<int>(), body["cell"][1].get<int>()};
    } else {
      return reply_error(res, 422, "SchemaError", "expected {\"row\": r, \"col\": c}");
    }
    std::vector<SessionEvent> events;
    {
      std::lock_guard lock(e.m);
      try {
        events = e.session.post_human_move(cell);
      } catch (const Error& err) {
        return reply_error(res, err);
      }
    }
    e.cv.notify_all();
    reply(res, 200, {{"events", events_json(events)}});
  }));

  server.Post(R"(/sessions/([^/]+)/perception)", with_entry([](Entry& e, const httplib::Request& req, httplib::Response& res) {
    json body = json::parse(req.body, nullptr, false);
    if (!body.is_object() || !body.contains("emotion") || !body["emotion"].is_string()) {
      return reply_error(res, 422, "SchemaError", "expected {\"emotion\": name, \"attentive\": bool}");
    }
    auto emotion = parse_emotion(body["emotion"].get<std::string>());
    if (!emotion) return reply_error(res, 422, "SchemaError", "unknown emotion");
    bool attentive = true;
    if (body.contains("attentive")) {
      if (!body["attentive"].is_boolean()) return reply_error(res, 422, "SchemaError", "attentive must be a boolean");
      attentive = body["attentive"].get<bool>();
    }
    std::lock_guard lock(e.m);
    try {
      e.session.inject_perception(*emotion, attentive);
    } catch (const Error& err) {
      return reply_error(res, err);
    }
    reply(res, 200, {{"ok", true}});
  }));

  server.Post(R"(/sessions/([^/]+)/advance)", with_entry([](Entry& e, const httplib::Request&, httplib::Response& res) {
    std::vector<SessionEvent> events;
    json snap;
    {
      std::lock_guard lock(e.m);
      try {
        events = e.session.step();
      } catch (const Error& err) {
        return reply_error(res, err);
      }
      snap = e.snapshot();
    }
    e.cv.notify_all();
    reply(res, 200, {{"events", events_json(events)}, {"state", snap}});
  }));

  server.Get(R"(/sessions/([^/]+)/export)", with_entry([](Entry& e, const httplib::Request& req, httplib::Response& res) {
    std::string name = req.has_param("format") ? req.get_param_value("format") : "events-jsonl";
    auto format = parse_trace_format(name);
    if (!format) return reply_error(res, 400, "BadFormat", "unknown export format '" + name + "'");
    std::lock_guard lock(e.m);
    std::string body = export_trace(e.session.log(), *format);
    const char* type = *format == TraceFormat::Summary        ? "application/json"
                       : *format == TraceFormat::EventsJsonl ? "application/x-ndjson"
                                                              : "text/csv";
    res.set_content(body, type);
  }));

  server.Get(R"(/sessions/([^/]+)/events)", with_entry([this](Entry& e, const httplib::Request& req, httplib::Response& res) {
    bool follow = !(req.has_param("follow") && req.get_param_value("follow") == "0");
    auto entry = find(req.matches[1]);
    auto offset = std::make_shared<size_t>(0);
    res.set_header("Cache-Control", "no-cache");
    res.set_chunked_content_provider(
        "text/event-stream", [this, entry, offset, follow](size_t, httplib::DataSink& sink) {
          std::vector<SessionEvent> fresh;
          bool ended = false;
          {
            std::unique_lock lock(entry->m);
            entry->cv.wait_for(lock, std::chrono::milliseconds(200), [&] {
              return entry->session.log().events.size() > *offset || stopping_;
            });
            const auto& all = entry->session.log().events;
            fresh.assign(all.begin() + static_cast<long>(*offset), all.end());
            *offset = all.size();
            ended = entry->session.ended();
          }
          for (const auto& ev : fresh) {
            std::string msg = "id: " + std::to_string(ev.tick) + "\nevent: " + std::string(to_string(ev.kind)) +
                              "\ndata: " + ev.to_json() + "\n\n";
            if (!sink.write(msg.data(), msg.size())) return false;
          }
          if (ended || !follow || stopping_) sink.done();
          return true;
        });
    (void)e;
  }));

  if (!options_.static_dir.empty()) server.set_mount_point("/", options_.static_dir);
}

bool SessionService::listen(const std::string& host, int port) {
  bool ok = server_->listen(host, port);
  snapshot();
  return ok;
}

int SessionService::start_background(const std::string& host) {
  int port = server_->bind_to_any_port(host);
  if (port < 0) return -1;
  worker_->thread = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
  return port;
}

void SessionService::stop() {
  stopping_ = true;
  {
    std::lock_guard lock(mutex_);
    for (auto& [id, e] : sessions_) e->cv.notify_all();
  }
  if (server_) server_->stop();
  if (worker_ && worker_->thread.joinable()) {
    worker_->thread.join();
    snapshot();
  }
}

void SessionService::snapshot() const {
  if (options_.snapshot_dir.empty()) return;
  std::filesystem::create_directories(options_.snapshot_dir);
  std::lock_guard lock(mutex_);
  for (const auto& [id, e] : sessions_) {
    std::lock_guard inner(e->m);
    for (TraceFormat f : {TraceFormat::EventsJsonl, TraceFormat::Summary}) {
      write_trace(e->session.log(), f, options_.snapshot_dir + "/" + id + "-" + std::string(file_name(f)));
    }
  }
}

}  // namespace cea
