// Copyright 2026 The GGQ Authors
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

#pragma once

#include <charconv>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <variant>

#include "ggq/error.hpp"

namespace ggq {

/// A property value: text, integer, real or boolean.
using PropertyValue = std::variant<std::string, std::int64_t, double, bool>;

/// Key -> value properties of a node or an edge. The "type" key carries the
/// element classification used by edge-type regular expressions.
using PropertyMap = std::map<std::string, PropertyValue, std::less<>>;

inline constexpr std::string_view kTypeKey = "type";

enum class ValueKind { kText, kNumber, kBoolean };

inline ValueKind kind_of(const PropertyValue& value) {
  switch (value.index()) {
    case 0: return ValueKind::kText;
    case 1:
    case 2: return ValueKind::kNumber;
    default: return ValueKind::kBoolean;
  }
}

inline const char* to_string(ValueKind kind) {
  switch (kind) {
    case ValueKind::kText: return "text";
    case ValueKind::kNumber: return "number";
    case ValueKind::kBoolean: return "boolean";
  }
  return "?";
}

enum class CmpOp { kEq, kNe, kLt, kLe, kGt, kGe };

inline const char* to_string(CmpOp op) {
  switch (op) {
    case CmpOp::kEq: return "=";
    case CmpOp::kNe: return "!=";
    case CmpOp::kLt: return "<";
    case CmpOp::kLe: return "<=";
    case CmpOp::kGt: return ">";
    case CmpOp::kGe: return ">=";
  }
  return "?";
}

template <class T>
bool apply_ordering(const T& lhs, CmpOp op, const T& rhs) {
  switch (op) {
    case CmpOp::kEq: return lhs == rhs;
    case CmpOp::kNe: return lhs != rhs;
    case CmpOp::kLt: return lhs < rhs;
    case CmpOp::kLe: return lhs <= rhs;
    case CmpOp::kGt: return lhs > rhs;
    case CmpOp::kGe: return lhs >= rhs;
  }
  return false;
}

namespace detail {

inline double as_real(const PropertyValue& v) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return static_cast<double>(*i);
  return std::get<double>(v);
}

inline bool values_equal(const PropertyValue& lhs, const PropertyValue& rhs) {
  if (kind_of(lhs) != kind_of(rhs)) return false;
  switch (kind_of(lhs)) {
    case ValueKind::kText: return std::get<std::string>(lhs) == std::get<std::string>(rhs);
    case ValueKind::kBoolean: return std::get<bool>(lhs) == std::get<bool>(rhs);
    case ValueKind::kNumber:
      if (lhs.index() == 1 && rhs.index() == 1) {
        return std::get<std::int64_t>(lhs) == std::get<std::int64_t>(rhs);
      }
      return as_real(lhs) == as_real(rhs);
  }
  return false;
}

}  // namespace detail

/// Compares two values. Equality across kinds is false (and `!=` true);
/// ordering across kinds, or on booleans, throws TypeMismatch.
inline bool compare_values(const PropertyValue& lhs, CmpOp op, const PropertyValue& rhs) {
  if (op == CmpOp::kEq) return detail::values_equal(lhs, rhs);
  if (op == CmpOp::kNe) return !detail::values_equal(lhs, rhs);
  const ValueKind lk = kind_of(lhs);
  const ValueKind rk = kind_of(rhs);
  if (lk != rk || lk == ValueKind::kBoolean) {
    throw Error(ErrorCode::kTypeMismatch, std::string("cannot order ") + to_string(lk) +
                                              " against " + to_string(rk));
  }
  if (lk == ValueKind::kText) {
    return apply_ordering(std::get<std::string>(lhs), op, std::get<std::string>(rhs));
  }
  if (lhs.index() == 1 && rhs.index() == 1) {
    return apply_ordering(std::get<std::int64_t>(lhs), op, std::get<std::int64_t>(rhs));
  }
  return apply_ordering(detail::as_real(lhs), op, detail::as_real(rhs));
}

inline std::string quote_string(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

inline std::string format_real(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  std::string out(buf, res.ptr);
  if (out.find_first_of(".eEn") == std::string::npos) out += ".0";
  return out;
}

/// Renders a value in the literal syntax of the predicate language.
inline std::string format_value(const PropertyValue& value) {
  switch (value.index()) {
    case 0: return quote_string(std::get<std::string>(value));
    case 1: return std::to_string(std::get<std::int64_t>(value));
    case 2: return format_real(std::get<double>(value));
    default: return std::get<bool>(value) ? "true" : "false";
  }
}

}  // namespace ggq
