#include "agecast/config.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace agecast {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

FileConfig FileConfig::parse_string(const std::string& text) {
  FileConfig cfg;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto comment = line.find_first_of("#;");
    if (comment != std::string::npos) line.erase(comment);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) {
        throw std::invalid_argument("config line " + std::to_string(lineno) +
                                    ": malformed section header");
      }
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": empty key");
    }
    cfg.entries_[section.empty() ? key : section + "." + key] = value;
  }
  return cfg;
}

FileConfig FileConfig::parse_file(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) {
    throw std::ios_base::failure("cannot open config file: " + path.string());
  }
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_string(ss.str());
}

std::optional<std::string> FileConfig::get(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

double FileConfig::get_double(const std::string& key) const {
  const auto v = get(key);
  if (!v) throw std::invalid_argument("config: missing key " + key);
  std::size_t pos = 0;
  const double d = std::stod(*v, &pos);
  if (pos != v->size()) {
    throw std::invalid_argument("config: bad number for " + key + ": " + *v);
  }
  return d;
}

std::int64_t FileConfig::get_int(const std::string& key) const {
  const auto v = get(key);
  if (!v) throw std::invalid_argument("config: missing key " + key);
  std::size_t pos = 0;
  const long long i = std::stoll(*v, &pos);
  if (pos != v->size()) {
    throw std::invalid_argument("config: bad integer for " + key + ": " + *v);
  }
  return i;
}

bool FileConfig::get_bool(const std::string& key) const {
  const auto v = get(key);
  if (!v) throw std::invalid_argument("config: missing key " + key);
  if (*v == "true" || *v == "1" || *v == "yes" || *v == "on") return true;
  if (*v == "false" || *v == "0" || *v == "no" || *v == "off") return false;
  throw std::invalid_argument("config: bad boolean for " + key + ": " + *v);
}

}  // namespace agecast
