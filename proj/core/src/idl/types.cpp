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

#include "minidds/idl/types.hpp"

#include <cctype>
#include <sstream>

namespace minidds::idl
{

std::string_view idl_name(PrimitiveKind kind)
{
  switch (kind) {
    case PrimitiveKind::kBoolean: return "boolean";
    case PrimitiveKind::kOctet: return "octet";
    case PrimitiveKind::kShort: return "short";
    case PrimitiveKind::kUnsignedShort: return "unsigned short";
    case PrimitiveKind::kLong: return "long";
    case PrimitiveKind::kUnsignedLong: return "unsigned long";
    case PrimitiveKind::kLongLong: return "long long";
    case PrimitiveKind::kUnsignedLongLong: return "unsigned long long";
    case PrimitiveKind::kFloat: return "float";
    case PrimitiveKind::kDouble: return "double";
    case PrimitiveKind::kString: return "string";
  }
  return "?";
}

std::string_view to_string(PrimitiveKind kind)
{
  switch (kind) {
    case PrimitiveKind::kUnsignedShort: return "unsigned_short";
    case PrimitiveKind::kUnsignedLong: return "unsigned_long";
    case PrimitiveKind::kLongLong: return "long_long";
    case PrimitiveKind::kUnsignedLongLong: return "unsigned_long_long";
    default: return idl_name(kind);
  }
}

std::size_t alignment_of(PrimitiveKind kind)
{
  switch (kind) {
    case PrimitiveKind::kBoolean:
    case PrimitiveKind::kOctet:
      return 1;
    case PrimitiveKind::kShort:
    case PrimitiveKind::kUnsignedShort:
      return 2;
    case PrimitiveKind::kLong:
    case PrimitiveKind::kUnsignedLong:
    case PrimitiveKind::kFloat:
    case PrimitiveKind::kString:
      return 4;
    case PrimitiveKind::kLongLong:
    case PrimitiveKind::kUnsignedLongLong:
    case PrimitiveKind::kDouble:
      return 8;
  }
  return 1;
}

bool TypeDescriptor::is_keyed() const
{
  for (const auto & f : fields) {
    if (f.is_key) {
      return true;
    }
  }
  return false;
}

std::optional<std::size_t> TypeDescriptor::field_index(std::string_view field_name) const
{
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (fields[i].name == field_name) {
      return i;
    }
  }
  return std::nullopt;
}

Value default_value(PrimitiveKind kind)
{
  switch (kind) {
    case PrimitiveKind::kBoolean: return false;
    case PrimitiveKind::kOctet: return std::uint8_t{0};
    case PrimitiveKind::kShort: return std::int16_t{0};
    case PrimitiveKind::kUnsignedShort: return std::uint16_t{0};
    case PrimitiveKind::kLong: return std::int32_t{0};
    case PrimitiveKind::kUnsignedLong: return std::uint32_t{0};
    case PrimitiveKind::kLongLong: return std::int64_t{0};
    case PrimitiveKind::kUnsignedLongLong: return std::uint64_t{0};
    case PrimitiveKind::kFloat: return 0.0f;
    case PrimitiveKind::kDouble: return 0.0;
    case PrimitiveKind::kString: return std::string{};
  }
  return false;
}

std::string to_string(const Value & v)
{
  return std::visit([](const auto & x) -> std::string {
             using T = std::decay_t<decltype(x)>;
             if constexpr (std::is_same_v<T, std::string>) {
               return "\"" + x + "\"";
             } else if constexpr (std::is_same_v<T, bool>) {
               return x ? "true" : "false";
             } else if constexpr (std::is_same_v<T, std::uint8_t>) {
               return std::to_string(static_cast<unsigned>(x));
             } else {
               std::ostringstream os;
               os << x;
               return os.str();
             }
           }, v);
}

Sample make_sample(const TypeDescriptor & type)
{
  Sample s{type.name, {}};
  s.values.reserve(type.fields.size());
  for (const auto & f : type.fields) {
    s.values.push_back(default_value(f.kind));
  }
  return s;
}

bool is_identifier(std::string_view name)
{
  if (name.empty()) {
    return false;
  }
  auto first = static_cast<unsigned char>(name[0]);
  if (!(std::isalpha(first) || first == '_')) {
    return false;
  }
  for (char c : name.substr(1)) {
    auto u = static_cast<unsigned char>(c);
    if (!(std::isalnum(u) || u == '_')) {
      return false;
    }
  }
  return true;
}

}  // namespace minidds::idl
