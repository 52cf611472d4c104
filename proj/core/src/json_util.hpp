#pragma once

#include <json.hpp>

#include <algorithm>
#include <initializer_list>
#include <string>
#include <vector>

#include "cdyson/errors.hpp"

namespace cdyson::detail {

using nlohmann::json;

inline std::size_t edit_distance(const std::string& a, const std::string& b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

inline void require_object(const json& j, const std::string& path) {
  if (!j.is_object())
    throw ConfigError(path + ": expected a JSON object");
}

/// Reject unknown keys, suggesting the nearest allowed key when close.
inline void check_keys(const json& j, const std::string& path,
                       std::initializer_list<const char*> allowed) {
  require_object(j, path);
  for (const auto& item : j.items()) {
    const std::string& key = item.key();
    bool known = false;
    for (const char* a : allowed)
      if (key == a) { known = true; break; }
    if (known) continue;
    std::string best;
    std::size_t best_d = 3;  // suggest only near misses
    for (const char* a : allowed) {
      const std::size_t d = edit_distance(key, a);
      if (d < best_d) { best_d = d; best = a; }
    }
    std::string msg = path + ": unknown key \"" + key + "\"";
    if (!best.empty()) msg += ", did you mean \"" + best + "\"?";
    throw ConfigError(msg);
  }
}

inline const json& require_field(const json& j, const std::string& path, const char* key) {
  auto it = j.find(key);
  if (it == j.end())
    throw ConfigError(path + ": missing required key \"" + std::string(key) + "\"");
  return *it;
}

inline double as_number(const json& j, const std::string& path) {
  if (!j.is_number())
    throw ConfigError(path + ": expected a number");
  return j.get<double>();
}

inline double number_field(const json& j, const std::string& path, const char* key) {
  return as_number(require_field(j, path, key), path + "." + key);
}

inline double number_or(const json& j, const std::string& path, const char* key, double fallback) {
  auto it = j.find(key);
  return it == j.end() ? fallback : as_number(*it, path + "." + key);
}

}  // namespace cdyson::detail
