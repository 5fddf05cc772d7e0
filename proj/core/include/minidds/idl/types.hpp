// Copyright 2026 The minidds Authors
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

#ifndef MINIDDS__IDL__TYPES_HPP_
#define MINIDDS__IDL__TYPES_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace minidds::idl
{

enum class PrimitiveKind : std::uint8_t
{
  kBoolean,
  kOctet,
  kShort,
  kUnsignedShort,
  kLong,
  kUnsignedLong,
  kLongLong,
  kUnsignedLongLong,
  kFloat,
  kDouble,
  kString,
};

/// IDL spelling, e.g. "unsigned long long".
std::string_view idl_name(PrimitiveKind kind);

/// Identifier-style spelling, e.g. "unsigned_long_long".
std::string_view to_string(PrimitiveKind kind);

/// Natural alignment and encoded width of fixed-size kinds. Strings align
/// to their 4-byte length prefix.
std::size_t alignment_of(PrimitiveKind kind);

struct FieldDescriptor
{
  std::string name;
  PrimitiveKind kind = PrimitiveKind::kLong;
  bool is_key = false;

  friend bool operator==(const FieldDescriptor &, const FieldDescriptor &) = default;
};

struct TypeDescriptor
{
  std::string name;
  std::vector<FieldDescriptor> fields;

  bool is_keyed() const;
  std::optional<std::size_t> field_index(std::string_view field_name) const;

  friend bool operator==(const TypeDescriptor &, const TypeDescriptor &) = default;
};

/// Alternative index equals the PrimitiveKind value.
using Value = std::variant<bool, std::uint8_t, std::int16_t, std::uint16_t, std::int32_t,
    std::uint32_t, std::int64_t, std::uint64_t, float, double, std::string>;

inline PrimitiveKind kind_of(const Value & v) {return static_cast<PrimitiveKind>(v.index());}

Value default_value(PrimitiveKind kind);
std::string to_string(const Value & v);

struct Sample
{
  std::string type_name;
  std::vector<Value> values;

  friend bool operator==(const Sample &, const Sample &) = default;
};

/// Sample with every field at its zero value.
Sample make_sample(const TypeDescriptor & type);

/// True when `name` matches [A-Za-z_][A-Za-z0-9_]*.
bool is_identifier(std::string_view name);

}  // namespace minidds::idl

#endif  // MINIDDS__IDL__TYPES_HPP_
