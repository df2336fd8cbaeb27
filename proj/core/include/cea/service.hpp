#pragma once

#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "cea/dispatcher.hpp"
#include "cea/speech.hpp"

namespace httplib {
class Server;
}

namespace cea {

struct ServiceOptions {
  std::string static_dir;    // served at / when set
  std::string snapshot_dir;  // exports written here on shutdown when set
  std::string data_dir;      // default data directory for new sessions
};

// Live-play session API over HTTP with JSON bodies and a server-sent event
// stream per session. See docs/service.md for the schemas.
class SessionService {
 public:
  explicit SessionService(ServiceOptions options = {});
  ~SessionService();

  void register_routes(httplib::Server& server);

  // Blocks until stop(). Returns false if the address cannot be bound.
  bool listen(const std::string& host, int port);
  // Binds an ephemeral port and serves on a background thread; returns the
  // port, or -1.
  int start_background(const std::string& host = "127.0.0.1");
  void stop();

  // Writes events-jsonl and summary for every session into snapshot_dir.
  void snapshot() const;
  size_t session_count() const;

 private:
  struct Entry;
  std::shared_ptr<Entry> find(const std::string& id) const;

  ServiceOptions options_;
  mutable std::mutex mutex_;
  std::map<std::string, std::shared_ptr<Entry>> sessions_;
  long next_id_ = 1;
  std::atomic<bool> stopping_{false};
  std::unique_ptr<httplib::Server> server_;
  struct Worker;
  std::unique_ptr<Worker> worker_;
};

// Posts the request document to an HTTP endpoint and reads {"text": ...}
// from the reply. The bearer key is read from an environment variable.
// Only plain http:// endpoints are supported.
class HttpSentenceClient : public SentenceClient {
 public:
  HttpSentenceClient(std::string endpoint, std::string key_env = "CEA_LLM_KEY");
  std::optional<std::string> generate(const std::string& request_json) override;

 private:
  std::string endpoint_;
  std::string key_env_;
};

}  // namespace cea
