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

#ifndef MINIDDS__IDL__CODEC_HPP_
#define MINIDDS__IDL__CODEC_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "minidds/error.hpp"
#include "minidds/idl/types.hpp"

namespace minidds::idl
{

using Bytes = std::vector<std::uint8_t>;

class DecodeError : public Error
{
public:
  DecodeError(std::size_t offset, const std::string & reason)
  : Error(Errc::kDecode, "offset " + std::to_string(offset) + ": " + reason), offset_(offset) {}
  std::size_t offset() const noexcept {return offset_;}

private:
  std::size_t offset_;
};

// Layout: fields in declaration order, little-endian, each aligned to its
// natural size relative to offset 0 with zero padding. A string is a u32
// byte count followed by the bytes, no terminator. No trailing padding.

/// Throws Error(kTypeMismatch) when the sample does not fit the type.
Bytes serialize(const TypeDescriptor & type, const Sample & sample);

/// Throws DecodeError on truncation, bad string length, invalid boolean or
/// trailing bytes.
Sample deserialize(const TypeDescriptor & type, std::span<const std::uint8_t> bytes);

/// Encoded length of `sample` without encoding it.
std::size_t serialized_size(const TypeDescriptor & type, const Sample & sample);

/// Throws Error(kTypeMismatch) on field count or kind mismatch.
void check_sample(const TypeDescriptor & type, const Sample & sample);

using InstanceHandle = std::uint64_t;

/// Handle shared by every sample of an unkeyed type.
inline constexpr InstanceHandle kNilHandle = 0;

/// 64-bit FNV-1a offset basis and prime.
inline constexpr std::uint64_t kFnvOffsetBasis = 0xcbf29ce484222325ull;
inline constexpr std::uint64_t kFnvPrime = 0x100000001b3ull;

/// FNV-1a over the key fields encoded back to back without padding. Keyed
/// samples never map to kNilHandle.
InstanceHandle key_hash(const TypeDescriptor & type, const Sample & sample);

}  // namespace minidds::idl

#endif  // MINIDDS__IDL__CODEC_HPP_
