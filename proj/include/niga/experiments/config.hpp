#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "niga/errors.hpp"
#include "niga/experiments/report.hpp"

namespace niga::experiments {

/// Plain-text model description: one `key = value` per line, `#` starts a comment.
class KeyValueConfig {
 public:
  static KeyValueConfig parse(std::istream& is) {
    KeyValueConfig c;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
      ++lineno;
      if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      const std::string body = trim(line);
      if (body.empty()) continue;
      const auto eq = body.find('=');
      if (eq == std::string::npos) throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
      const std::string key = trim(body.substr(0, eq));
      const std::string value = trim(body.substr(eq + 1));
      if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
      if (c.values_.count(key)) throw ConfigError("config line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
      c.values_[key] = value;
    }
    return c;
  }

  static KeyValueConfig load(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot read config file " + path.string());
    return parse(is);
  }

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  void set(const std::string& key, const std::string& value) { values_[key] = value; }

  std::string get(const std::string& key, const std::string& fallback) const {
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
  }

  double get_double(const std::string& key, double fallback) const {
    if (!has(key)) return fallback;
    return to_double(key, values_.at(key));
  }

  int get_int(const std::string& key, int fallback) const {
    if (!has(key)) return fallback;
    const double v = to_double(key, values_.at(key));
    if (v != static_cast<int>(v)) throw ConfigError("config key '" + key + "' must be an integer");
    return static_cast<int>(v);
  }

  /// Comma or blank separated list of integers.
  std::vector<int> get_ints(const std::string& key, std::vector<int> fallback) const {
    if (!has(key)) return fallback;
    std::string s = values_.at(key);
    for (char& ch : s) {
      if (ch == ',') ch = ' ';
    }
    std::stringstream ss(s);
    std::vector<int> out;
    for (std::string tok; ss >> tok;) out.push_back(static_cast<int>(to_double(key, tok)));
    if (out.empty()) throw ConfigError("config key '" + key + "' is an empty list");
    return out;
  }

  /// Rejects keys outside `allowed`.
  void require_known(const std::set<std::string>& allowed) const {
    for (const auto& [k, v] : values_) {
      if (!allowed.count(k)) throw ConfigError("unknown config key '" + k + "'");
    }
  }

  Json to_json() const {
    Json j = Json::object();
    for (const auto& [k, v] : values_) j[k] = v;
    return j;
  }

 private:
  static std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  }

  static double to_double(const std::string& key, const std::string& v) {
    std::size_t used = 0;
    double d = 0.0;
    try {
      d = std::stod(v, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != v.size()) throw ConfigError("config key '" + key + "': not a number: '" + v + "'");
    return d;
  }

  std::map<std::string, std::string> values_;
};

}  // namespace niga::experiments
