// Copyright 2026 The hybridsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Helpers shared by the JSON readers. Private to the library.
#ifndef HYBRIDSIM_SRC_JSON_UTIL_HPP_
#define HYBRIDSIM_SRC_JSON_UTIL_HPP_

#include <initializer_list>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "hybridsim/errors.hpp"

namespace hybridsim::json_util {

using nlohmann::json;

inline json parse(std::string_view text, std::string_view what) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(ParseErrorKind::kBadValue,
                     std::string(what) + ": malformed JSON: " + e.what());
  }
}

[[noreturn]] inline void schema_error(std::string_view where,
                                      const std::string& msg) {
  throw ParseError(ParseErrorKind::kSchema, std::string(where) + ": " + msg);
}

inline void expect_object(const json& j, std::string_view where) {
  if (!j.is_object()) schema_error(where, "expected an object");
}

inline void expect_array(const json& j, std::string_view where) {
  if (!j.is_array()) schema_error(where, "expected an array");
}

inline void reject_unknown_keys(const json& j, std::string_view where,
                                std::initializer_list<std::string_view> allowed) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (std::string_view key : allowed) ok = ok || key == it.key();
    if (!ok) schema_error(where, "unknown key '" + it.key() + "'");
  }
}

inline double number(const json& j, std::string_view key,
                     std::string_view where) {
  auto it = j.find(key);
  if (it == j.end())
    schema_error(where, "missing key '" + std::string(key) + "'");
  if (!it->is_number())
    schema_error(where, "key '" + std::string(key) + "' must be a number");
  return it->get<double>();
}

inline double number_or(const json& j, std::string_view key, double fallback,
                        std::string_view where) {
  if (!j.contains(key)) return fallback;
  return number(j, key, where);
}

inline std::string string(const json& j, std::string_view key,
                          std::string_view where) {
  auto it = j.find(key);
  if (it == j.end())
    schema_error(where, "missing key '" + std::string(key) + "'");
  if (!it->is_string())
    schema_error(where, "key '" + std::string(key) + "' must be a string");
  return it->get<std::string>();
}

inline bool boolean_or(const json& j, std::string_view key, bool fallback,
                       std::string_view where) {
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_boolean())
    schema_error(where, "key '" + std::string(key) + "' must be a boolean");
  return it->get<bool>();
}

}  // namespace hybridsim::json_util

#endif  // HYBRIDSIM_SRC_JSON_UTIL_HPP_
