#include "cea/data.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <utility>

#include "cea/error.hpp"

namespace cea::data {

namespace detail {
extern const std::pair<std::string_view, std::string_view> kEmbedded[];
extern const unsigned kEmbeddedCount;
}  // namespace detail

std::string_view builtin(std::string_view name) {
  for (unsigned i = 0; i < detail::kEmbeddedCount; ++i) {
    if (detail::kEmbedded[i].first == name) return detail::kEmbedded[i].second;
  }
  throw Error(ErrorCode::Io, "no builtin data file '" + std::string(name) + "'");
}

std::vector<std::string> builtin_names() {
  std::vector<std::string> out;
  for (unsigned i = 0; i < detail::kEmbeddedCount; ++i) {
    out.emplace_back(detail::kEmbedded[i].first);
  }
  return out;
}

std::string read(const std::string& dir, std::string_view name) {
  if (dir.empty()) return std::string(builtin(name));
  std::filesystem::path d(dir);
  if (!std::filesystem::is_directory(d)) throw Error(ErrorCode::Io, "no data directory '" + dir + "'");
  std::filesystem::path f = d / name;
  if (!std::filesystem::exists(f)) return std::string(builtin(name));
  return read_file(f.string());
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace cea::data
