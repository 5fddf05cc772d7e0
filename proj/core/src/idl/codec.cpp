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

#include "minidds/idl/codec.hpp"

#include <bit>
#include <cstring>

namespace minidds::idl
{

namespace
{

constexpr std::size_t align_up(std::size_t offset, std::size_t alignment)
{
  return (offset + alignment - 1) / alignment * alignment;
}

template<typename U>
void put_le(Bytes & out, U v)
{
  for (std::size_t i = 0; i < sizeof(U); ++i) {
    out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
}

template<typename U>
U get_le(std::span<const std::uint8_t> in, std::size_t at)
{
  U v = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) {
    v |= static_cast<U>(U{in[at + i]} << (8 * i));
  }
  return v;
}

// Encodes one value at the end of `out` without leading padding.
void encode_value(Bytes & out, const Value & v)
{
  std::visit([&out](const auto & x) {
      using T = std::decay_t<decltype(x)>;
      if constexpr (std::is_same_v<T, bool>) {
        out.push_back(x ? 1 : 0);
      } else if constexpr (std::is_same_v<T, std::string>) {
        put_le(out, static_cast<std::uint32_t>(x.size()));
        out.insert(out.end(), x.begin(), x.end());
      } else if constexpr (std::is_same_v<T, float>) {
        put_le(out, std::bit_cast<std::uint32_t>(x));
      } else if constexpr (std::is_same_v<T, double>) {
        put_le(out, std::bit_cast<std::uint64_t>(x));
      } else {
        put_le(out, static_cast<std::make_unsigned_t<T>>(x));
      }
    }, v);
}

std::size_t encoded_width(const Value & v)
{
  if (const auto * s = std::get_if<std::string>(&v)) {
    return 4 + s->size();
  }
  return alignment_of(kind_of(v));
}

class Reader
{
public:
  explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}

  void align(std::size_t alignment)
  {
    auto next = align_up(pos_, alignment);
    need(next - pos_, "padding");
    pos_ = next;
  }

  template<typename U>
  U fixed(const char * what)
  {
    need(sizeof(U), what);
    U v = get_le<U>(in_, pos_);
    pos_ += sizeof(U);
    return v;
  }

  Value read(PrimitiveKind kind)
  {
    align(alignment_of(kind));
    switch (kind) {
      case PrimitiveKind::kBoolean: {
          auto at = pos_;
          auto b = fixed<std::uint8_t>("boolean");
          if (b > 1) {
            throw DecodeError(at, "invalid boolean value " + std::to_string(b));
          }
          return b == 1;
        }
      case PrimitiveKind::kOctet: return fixed<std::uint8_t>("octet");
      case PrimitiveKind::kShort:
        return static_cast<std::int16_t>(fixed<std::uint16_t>("short"));
      case PrimitiveKind::kUnsignedShort: return fixed<std::uint16_t>("unsigned short");
      case PrimitiveKind::kLong:
        return static_cast<std::int32_t>(fixed<std::uint32_t>("long"));
      case PrimitiveKind::kUnsignedLong: return fixed<std::uint32_t>("unsigned long");
      case PrimitiveKind::kLongLong:
        return static_cast<std::int64_t>(fixed<std::uint64_t>("long long"));
      case PrimitiveKind::kUnsignedLongLong: return fixed<std::uint64_t>("unsigned long long");
      case PrimitiveKind::kFloat: return std::bit_cast<float>(fixed<std::uint32_t>("float"));
      case PrimitiveKind::kDouble: return std::bit_cast<double>(fixed<std::uint64_t>("double"));
      case PrimitiveKind::kString: {
          auto at = pos_;
          auto len = fixed<std::uint32_t>("string length");
          if (len > in_.size() - pos_) {
            throw DecodeError(at, "string length " + std::to_string(len) + " exceeds remaining " +
                    std::to_string(in_.size() - pos_) + " bytes");
          }
          std::string s(reinterpret_cast<const char *>(in_.data() + pos_), len);
          pos_ += len;
          return s;
        }
    }
    throw DecodeError(pos_, "unknown field kind");
  }

  std::size_t position() const {return pos_;}
  std::size_t size() const {return in_.size();}

private:
  void need(std::size_t n, const char * what)
  {
    if (n > in_.size() - pos_) {
      throw DecodeError(pos_, std::string("truncated input reading ") + what);
    }
  }

  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

}  // namespace

void check_sample(const TypeDescriptor & type, const Sample & sample)
{
  if (sample.values.size() != type.fields.size()) {
    throw Error(Errc::kTypeMismatch,
            "type " + type.name + " has " + std::to_string(type.fields.size()) +
            " fields, sample has " + std::to_string(sample.values.size()));
  }
  for (std::size_t i = 0; i < type.fields.size(); ++i) {
    if (kind_of(sample.values[i]) != type.fields[i].kind) {
      throw Error(Errc::kTypeMismatch,
              "field " + type.fields[i].name + " expects " +
              std::string(to_string(type.fields[i].kind)) + ", got " +
              std::string(to_string(kind_of(sample.values[i]))));
    }
  }
}

Bytes serialize(const TypeDescriptor & type, const Sample & sample)
{
  check_sample(type, sample);
  Bytes out;
  out.reserve(serialized_size(type, sample));
  for (const auto & v : sample.values) {
    out.resize(align_up(out.size(), alignment_of(kind_of(v))), 0);
    encode_value(out, v);
  }
  return out;
}

std::size_t serialized_size(const TypeDescriptor & type, const Sample & sample)
{
  check_sample(type, sample);
  std::size_t size = 0;
  for (const auto & v : sample.values) {
    size = align_up(size, alignment_of(kind_of(v))) + encoded_width(v);
  }
  return size;
}

Sample deserialize(const TypeDescriptor & type, std::span<const std::uint8_t> bytes)
{
  Reader reader(bytes);
  Sample sample{type.name, {}};
  sample.values.reserve(type.fields.size());
  for (const auto & f : type.fields) {
    sample.values.push_back(reader.read(f.kind));
  }
  if (reader.position() != reader.size()) {
    throw DecodeError(reader.position(),
            std::to_string(reader.size() - reader.position()) + " trailing bytes");
  }
  return sample;
}

InstanceHandle key_hash(const TypeDescriptor & type, const Sample & sample)
{
  check_sample(type, sample);
  if (!type.is_keyed()) {
    return kNilHandle;
  }
  Bytes key_bytes;
  for (std::size_t i = 0; i < type.fields.size(); ++i) {
    if (type.fields[i].is_key) {
      encode_value(key_bytes, sample.values[i]);
    }
  }
  std::uint64_t h = kFnvOffsetBasis;
  for (auto b : key_bytes) {
    h ^= b;
    h *= kFnvPrime;
  }
  // 0 is reserved for unkeyed types.
  return h == kNilHandle ? 1 : h;
}

}  // namespace minidds::idl
