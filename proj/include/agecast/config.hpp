#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>

namespace agecast {

// Line-oriented "key = value" configuration with [section] headers.
// '#' and ';' start comments; blank lines are ignored; keys are looked up as
// "section.key" (no section means the bare key). Values keep inner spaces.
class FileConfig {
 public:
  static FileConfig parse_file(const std::filesystem::path& path);
  static FileConfig parse_string(const std::string& text);

  std::optional<std::string> get(const std::string& key) const;
  double get_double(const std::string& key) const;
  std::int64_t get_int(const std::string& key) const;
  bool get_bool(const std::string& key) const;

  bool has(const std::string& key) const { return entries_.count(key) > 0; }
  const std::map<std::string, std::string>& entries() const {
    return entries_;
  }

 private:
  std::map<std::string, std::string> entries_;
};

}  // namespace agecast
