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

#include <gtest/gtest.h>

#include <bit>
#include <cstring>
#include <random>
#include <set>

#include "minidds/idl/codec.hpp"
#include "minidds/idl/parser.hpp"
#include "support/idl_fixtures.hpp"

using namespace minidds;
using namespace minidds::idl;

namespace
{

TypeDescriptor climat() {return parse_idl(test::kClimatIdl).at(0);}

Sample climat_sample(std::uint32_t key, float visi = 1.5f)
{
  auto s = make_sample(climat());
  s.values[0] = key;
  s.values[1] = visi;
  s.values[3] = std::int32_t{-7};
  return s;
}

// Independent layout oracle: walks offsets one byte at a time and copies the
// host representation (little-endian hosts only).
std::vector<std::uint8_t> layout_oracle(const std::vector<Value> & values)
{
  static_assert(std::endian::native == std::endian::little);
  std::vector<std::uint8_t> out;
  for (const auto & v : values) {
    std::visit([&out](const auto & x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::string>) {
          while (out.size() % 4 != 0) {out.push_back(0);}
          std::uint32_t n = static_cast<std::uint32_t>(x.size());
          std::uint8_t raw[4];
          std::memcpy(raw, &n, 4);
          out.insert(out.end(), raw, raw + 4);
          out.insert(out.end(), x.begin(), x.end());
        } else {
          while (out.size() % sizeof(T) != 0) {out.push_back(0);}
          std::uint8_t raw[sizeof(T)];
          std::memcpy(raw, &x, sizeof(T));
          out.insert(out.end(), raw, raw + sizeof(T));
        }
      }, v);
  }
  return out;
}

std::uint64_t reference_fnv1a(const std::vector<std::uint8_t> & bytes)
{
  std::uint64_t h = 14695981039346656037ull;
  for (auto b : bytes) {
    h = (h ^ b) * 1099511628211ull;
  }
  return h;
}

}  // namespace

TEST(ParseIdl, ClimatType)
{
  auto types = parse_idl(test::kClimatIdl);
  ASSERT_EQ(types.size(), 1u);
  const auto & t = types[0];
  EXPECT_EQ(t.name, "Climat");
  const std::vector<std::pair<std::string, PrimitiveKind>> expected = {
    {"key", PrimitiveKind::kUnsignedLong}, {"climatDistVisi", PrimitiveKind::kFloat},
    {"climatHeure", PrimitiveKind::kFloat}, {"climatSport", PrimitiveKind::kLong},
    {"climatHorizon", PrimitiveKind::kLong}, {"rainDensity", PrimitiveKind::kFloat},
    {"rainSize", PrimitiveKind::kFloat}, {"wiperAngle", PrimitiveKind::kFloat},
  };
  ASSERT_EQ(t.fields.size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    EXPECT_EQ(t.fields[i].name, expected[i].first);
    EXPECT_EQ(t.fields[i].kind, expected[i].second);
    EXPECT_EQ(t.fields[i].is_key, i == 0);
  }
}

TEST(ParseIdl, EmptyStruct)
{
  try {
    parse_idl("struct A { };");
    FAIL();
  } catch (const ParseError & e) {
    EXPECT_EQ(e.line(), 1);
    EXPECT_EQ(e.column(), 12);
  }
}

TEST(ParseIdl, DuplicateField)
{
  try {
    parse_idl("struct B { long x; long x; };");
    FAIL();
  } catch (const ParseError & e) {
    EXPECT_EQ(e.column(), 25);
    EXPECT_NE(e.message().find("duplicate field"), std::string::npos);
  }
}

TEST(ParseIdl, DuplicateType)
{
  try {
    parse_idl("struct A { long x; };\nstruct A { long y; };");
    FAIL();
  } catch (const ParseError & e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_EQ(e.column(), 8);
  }
}

TEST(ParseIdl, MultiWordKindsAndAnnotations)
{
  auto types = parse_idl(
    "// header comment\n"
    "struct M {\n"
    "  unsigned long long id; //@key\n"
    "  long long big;\n"
    "  unsigned short port;   // just a comment\n"
    "  short s; boolean b; octet o; double d; string name;\n"
    "  long key;\n"
    "};\n"
    "struct N { string key; };");
  ASSERT_EQ(types.size(), 2u);
  const auto & m = types[0];
  ASSERT_EQ(m.fields.size(), 9u);
  EXPECT_EQ(m.fields[0].kind, PrimitiveKind::kUnsignedLongLong);
  EXPECT_TRUE(m.fields[0].is_key);
  EXPECT_EQ(m.fields[1].kind, PrimitiveKind::kLongLong);
  EXPECT_EQ(m.fields[2].kind, PrimitiveKind::kUnsignedShort);
  EXPECT_FALSE(m.fields[8].is_key) << "explicit annotation disables the name fallback";
  EXPECT_TRUE(types[1].fields[0].is_key);
}

TEST(ParseIdl, ErrorPositions)
{
  auto position = [](const char * src) {
      try {
        parse_idl(src);
      } catch (const ParseError & e) {
        return std::make_pair(e.line(), e.column());
      }
      return std::make_pair(0, 0);
    };
  EXPECT_EQ(position("struct X { int a; };"), std::make_pair(1, 12));
  EXPECT_EQ(position("struct X {\n  long a\n};"), std::make_pair(3, 1));
  EXPECT_EQ(position("struct X { long a; }"), std::make_pair(1, 21));
  EXPECT_EQ(position("struct X { unsigned float a; };"), std::make_pair(1, 21));
  EXPECT_EQ(position("struct X { long long; };"), std::make_pair(1, 21));
  EXPECT_EQ(position("struct X { long a; }; $"), std::make_pair(1, 23));
  EXPECT_EQ(position("//@key\nstruct X { long a; };"), std::make_pair(1, 1));
  EXPECT_EQ(position("struct X { long a;\n //@key\n};"), std::make_pair(2, 2));
}

TEST(ParseIdl, NoTypes)
{
  EXPECT_TRUE(parse_idl("").empty());
  EXPECT_TRUE(parse_idl("  // nothing here\n").empty());
}

TEST(ParseIdl, PrintReparseRoundTrip)
{
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    std::vector<TypeDescriptor> types;
    const int n = 1 + static_cast<int>(rng() % 3);
    for (int k = 0; k < n; ++k) {
      types.push_back(test::random_descriptor(rng, k));
    }
    auto text = print_idl(types);
    EXPECT_EQ(parse_idl(text), types) << text;
  }
}

TEST(Serialize, ClimatIsThirtyTwoBytes)
{
  auto bytes = serialize(climat(), climat_sample(7));
  EXPECT_EQ(bytes.size(), 32u);
  EXPECT_EQ(serialized_size(climat(), climat_sample(7)), 32u);
}

TEST(Serialize, SingleOctet)
{
  auto t = parse_idl("struct S { octet b; };").at(0);
  Sample s{"S", {std::uint8_t{0x7F}}};
  EXPECT_EQ(serialize(t, s), (Bytes{0x7F}));
}

TEST(Serialize, PaddingBeforeLong)
{
  auto t = parse_idl("struct P { octet a; long b; };").at(0);
  Sample s{"P", {std::uint8_t{1}, std::int32_t{2}}};
  const Bytes expected{0x01, 0x00, 0x00, 0x00, 0x02, 0x00, 0x00, 0x00};
  EXPECT_EQ(layout_oracle(s.values), expected);
  EXPECT_EQ(serialize(t, s), expected);
}

TEST(Serialize, MatchesLayoutOracleOnRandomTypes)
{
  std::mt19937_64 rng(12);
  for (int i = 0; i < 500; ++i) {
    auto t = test::random_descriptor(rng);
    auto s = test::random_sample(t, rng);
    auto bytes = serialize(t, s);
    EXPECT_EQ(bytes, layout_oracle(s.values));
    EXPECT_EQ(bytes.size(), serialized_size(t, s));
  }
}

TEST(Serialize, TypeMismatch)
{
  auto t = climat();
  auto s = climat_sample(1);
  s.values[0] = std::int32_t{1};
  try {
    serialize(t, s);
    FAIL();
  } catch (const Error & e) {
    EXPECT_EQ(e.code(), Errc::kTypeMismatch);
  }
  s.values.pop_back();
  EXPECT_THROW(serialize(t, s), Error);
}

TEST(Deserialize, RoundTripRandom)
{
  std::mt19937_64 rng(13);
  for (int i = 0; i < 1000; ++i) {
    auto t = test::random_descriptor(rng);
    auto s = test::random_sample(t, rng);
    EXPECT_EQ(deserialize(t, serialize(t, s)), s);
  }
  auto c = climat_sample(42, -3.25f);
  EXPECT_EQ(deserialize(climat(), serialize(climat(), c)), c);
}

TEST(Deserialize, Truncation)
{
  auto bytes = serialize(climat(), climat_sample(1));
  bytes.pop_back();
  ASSERT_EQ(bytes.size(), 31u);
  try {
    deserialize(climat(), bytes);
    FAIL();
  } catch (const DecodeError & e) {
    EXPECT_EQ(e.offset(), 28u);
  }
  EXPECT_THROW(deserialize(climat(), Bytes{}), DecodeError);
}

TEST(Deserialize, TrailingBytesAndBadFields)
{
  auto bytes = serialize(climat(), climat_sample(1));
  bytes.push_back(0);
  try {
    deserialize(climat(), bytes);
    FAIL();
  } catch (const DecodeError & e) {
    EXPECT_EQ(e.offset(), 32u);
  }
  auto str = parse_idl("struct S { string s; };").at(0);
  EXPECT_THROW(deserialize(str, Bytes{5, 0, 0, 0, 'a', 'b'}), DecodeError);
  auto flag = parse_idl("struct F { boolean b; };").at(0);
  EXPECT_THROW(deserialize(flag, Bytes{2}), DecodeError);
}

TEST(Deserialize, NeverReadsPastInput)
{
  std::mt19937_64 rng(14);
  for (int i = 0; i < 2000; ++i) {
    auto t = test::random_descriptor(rng);
    auto bytes = serialize(t, test::random_sample(t, rng));
    // Truncate or mutate, then decode from an exactly sized heap buffer.
    if (!bytes.empty() && (rng() & 1)) {
      bytes.resize(rng() % bytes.size());
    } else if (!bytes.empty()) {
      bytes[rng() % bytes.size()] ^= static_cast<std::uint8_t>(1 + rng() % 255);
    }
    try {
      deserialize(t, bytes);
    } catch (const DecodeError &) {
    }
  }
}

TEST(KeyHash, UnkeyedTypeIsNil)
{
  auto t = parse_idl("struct U { long a; string b; };").at(0);
  std::mt19937_64 rng(15);
  for (int i = 0; i < 10; ++i) {
    EXPECT_EQ(key_hash(t, test::random_sample(t, rng)), kNilHandle);
  }
}

TEST(KeyHash, DependsOnlyOnKeyFields)
{
  EXPECT_EQ(key_hash(climat(), climat_sample(5, 1.0f)), key_hash(climat(), climat_sample(5, 9.0f)));
}

TEST(KeyHash, FrozenReferenceValues)
{
  // FNV-1a 64 of the 4-byte little-endian key, computed with a separate
  // reference implementation.
  EXPECT_EQ(key_hash(climat(), climat_sample(1)), 0xad2aca7747985764ull);
  EXPECT_EQ(key_hash(climat(), climat_sample(2)), 0x8d1ace904a398d17ull);
  EXPECT_EQ(key_hash(climat(), climat_sample(5)), 0x2d401a55eec16520ull);
  EXPECT_EQ(reference_fnv1a({1, 0, 0, 0}), 0xad2aca7747985764ull);

  auto s = parse_idl("struct K { long pad; string name; //@key\n };").at(0);
  Sample v{"K", {std::int32_t{9}, std::string("abc")}};
  EXPECT_EQ(key_hash(s, v), 0x86629da0e55e56d2ull);
}

TEST(KeyHash, NoCollisionWithNilOverSixteenBitKeys)
{
  auto t = climat();
  auto s = make_sample(t);
  std::set<InstanceHandle> seen;
  for (std::uint32_t k = 0; k < (1u << 16); ++k) {
    s.values[0] = k;
    auto h = key_hash(t, s);
    ASSERT_NE(h, kNilHandle) << k;
    seen.insert(h);
  }
  EXPECT_EQ(seen.size(), 1u << 16);
}
