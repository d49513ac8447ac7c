#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <string>

#include <json.hpp>

#include "ballpot/errors.hpp"

namespace ballpot::detail {

using nlohmann::json;

inline std::string joinPath(const std::string& base, const std::string& key) {
  return base.empty() ? key : base + "." + key;
}

inline std::string indexPath(const std::string& base, std::size_t i) { return base + "[" + std::to_string(i) + "]"; }

[[noreturn]] inline void fieldError(const std::string& path, const std::string& what) {
  throw ConfigError(path + ": " + what);
}

inline const json& requireObject(const json& v, const std::string& path) {
  if (!v.is_object()) fieldError(path.empty() ? "<root>" : path, "expected an object");
  return v;
}

inline void rejectUnknown(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) fieldError(joinPath(path, key), "unknown field");
  }
}

inline const json& requireField(const json& obj, const std::string& path, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) fieldError(joinPath(path, key), "missing required field");
  return *it;
}

inline double asNumber(const json& v, const std::string& path) {
  if (!v.is_number()) fieldError(path, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fieldError(path, "expected a finite number");
  return x;
}

inline std::uint64_t asUnsigned(const json& v, const std::string& path) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    fieldError(path, "expected a nonnegative integer");
  }
  return v.get<std::uint64_t>();
}

inline std::string asString(const json& v, const std::string& path) {
  if (!v.is_string()) fieldError(path, "expected a string");
  return v.get<std::string>();
}

inline bool asBool(const json& v, const std::string& path) {
  if (!v.is_boolean()) fieldError(path, "expected true or false");
  return v.get<bool>();
}

inline const json& requireArray(const json& v, const std::string& path) {
  if (!v.is_array()) fieldError(path, "expected an array");
  return v;
}

}  // namespace ballpot::detail
