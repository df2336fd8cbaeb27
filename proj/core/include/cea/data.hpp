#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace cea::data {

// Contents of a default file shipped under core/data, compiled into the
// library. Throws Error{Io} for an unknown name.
std::string_view builtin(std::string_view name);
std::vector<std::string> builtin_names();

// Whole file as text. Throws Error{Io}.
std::string read_file(const std::string& path);

// Text of `name` from `dir` when dir is non-empty and holds the file, else
// the builtin copy. Throws Error{Io} if dir is given but is not a directory.
std::string read(const std::string& dir, std::string_view name);

}  // namespace cea::data
