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

#ifndef SUPPORT__IDL_FIXTURES_HPP_
#define SUPPORT__IDL_FIXTURES_HPP_

#include <random>
#include <string>
#include <vector>

#include "minidds/idl/types.hpp"

namespace minidds::test
{

// Benchmark record type, verbatim including the blank lines.
inline constexpr const char * kClimatIdl = R"(
struct Climat {

    unsigned long key;
    float climatDistVisi;
    float climatHeure;
    long climatSport;
    long climatHorizon;
    float rainDensity;
    float rainSize;
    float wiperAngle;
};
)";

inline idl::Value random_value(idl::PrimitiveKind kind, std::mt19937_64 & rng)
{
  using idl::PrimitiveKind;
  auto bits = rng();
  switch (kind) {
    case PrimitiveKind::kBoolean: return (bits & 1) != 0;
    case PrimitiveKind::kOctet: return static_cast<std::uint8_t>(bits);
    case PrimitiveKind::kShort: return static_cast<std::int16_t>(bits);
    case PrimitiveKind::kUnsignedShort: return static_cast<std::uint16_t>(bits);
    case PrimitiveKind::kLong: return static_cast<std::int32_t>(bits);
    case PrimitiveKind::kUnsignedLong: return static_cast<std::uint32_t>(bits);
    case PrimitiveKind::kLongLong: return static_cast<std::int64_t>(bits);
    case PrimitiveKind::kUnsignedLongLong: return static_cast<std::uint64_t>(bits);
    case PrimitiveKind::kFloat:
      return static_cast<float>(static_cast<std::int32_t>(bits)) / 1024.0f;
    case PrimitiveKind::kDouble:
      return static_cast<double>(static_cast<std::int64_t>(bits)) / 3.0;
    case PrimitiveKind::kString: {
        std::string s(bits % 13, '\0');
        for (auto & c : s) {
          c = static_cast<char>(rng());
        }
        return s;
      }
  }
  return false;
}

inline idl::Sample random_sample(const idl::TypeDescriptor & type, std::mt19937_64 & rng)
{
  idl::Sample s{type.name, {}};
  for (const auto & f : type.fields) {
    s.values.push_back(random_value(f.kind, rng));
  }
  return s;
}

/// Random descriptor whose key flags are reproducible by the parser's key
/// rule.
inline idl::TypeDescriptor random_descriptor(std::mt19937_64 & rng, int index = 0)
{
  idl::TypeDescriptor type;
  type.name = "T" + std::to_string(index);
  const int field_count = 1 + static_cast<int>(rng() % 8);
  for (int i = 0; i < field_count; ++i) {
    idl::FieldDescriptor f;
    f.name = (rng() % 5 == 0) ? "key" : "f" + std::to_string(i);
    if (type.field_index(f.name)) {
      f.name = "f" + std::to_string(i);
    }
    f.kind = static_cast<idl::PrimitiveKind>(rng() % 11);
    f.is_key = rng() % 4 == 0;
    type.fields.push_back(f);
  }
  if (!type.is_keyed()) {
    for (auto & f : type.fields) {
      f.is_key = f.name == "key";
    }
  }
  return type;
}

}  // namespace minidds::test

#endif  // SUPPORT__IDL_FIXTURES_HPP_
