#include <cstdlib>

#include <httplib.h>
#include <json.hpp>

#include "cea/service.hpp"

namespace cea {

HttpSentenceClient::HttpSentenceClient(std::string endpoint, std::string key_env)
    : endpoint_(std::move(endpoint)), key_env_(std::move(key_env)) {}

std::optional<std::string> HttpSentenceClient::generate(const std::string& request_json) {
  // Split "http://host:port/path".
  const std::string scheme = "http://";
  if (endpoint_.rfind(scheme, 0) != 0) return std::nullopt;
  size_t slash = endpoint_.find('/', scheme.size());
  std::string host = endpoint_.substr(0, slash);
  std::string path = slash == std::string::npos ? "/" : endpoint_.substr(slash);

  httplib::Client client(host);
  client.set_connection_timeout(5);
  client.set_read_timeout(30);
  httplib::Headers headers;
  if (const char* key = std::getenv(key_env_.c_str())) {
    headers.emplace("Authorization", std::string("Bearer ") + key);
  }
  auto res = client.Post(path, headers, request_json, "application/json");
  if (!res || res->status != 200) return std::nullopt;
  auto body = nlohmann::json::parse(res->body, nullptr, false);
  if (body.is_discarded() || !body.contains("text") || !body["text"].is_string()) return std::nullopt;
  return body["text"].get<std::string>();
}

}  // namespace cea
