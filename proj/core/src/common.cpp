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

#include <cstdio>
#include <random>

#include "minidds/error.hpp"
#include "minidds/guid.hpp"
#include "minidds/time.hpp"

namespace minidds
{

std::string_view to_string(Errc code)
{
  switch (code) {
    case Errc::kInvalidArgument: return "InvalidArgument";
    case Errc::kPreconditionNotMet: return "PreconditionNotMet";
    case Errc::kImmutablePolicy: return "ImmutablePolicy";
    case Errc::kNotApplicable: return "NotApplicable";
    case Errc::kInvalidQos: return "InvalidQos";
    case Errc::kInconsistentTopic: return "InconsistentTopic";
    case Errc::kTypeMismatch: return "TypeMismatch";
    case Errc::kResourceLimits: return "ResourceLimits";
    case Errc::kTransportUnavailable: return "TransportUnavailable";
    case Errc::kSampleTooLarge: return "SampleTooLarge";
    case Errc::kNoMatchWithinTimeout: return "NoMatchWithinTimeout";
    case Errc::kParse: return "ParseError";
    case Errc::kDecode: return "DecodeError";
    case Errc::kWire: return "WireError";
    case Errc::kFom: return "FomError";
    case Errc::kEmptyTrace: return "EmptyTrace";
  }
  return "Unknown";
}

std::string to_string(Duration d)
{
  if (is_infinite(d)) {
    return "INFINITE";
  }
  return std::to_string(d.count()) + "ns";
}

Timestamp SystemClock::monotonic_now() const
{
  return std::chrono::duration_cast<Timestamp>(
    std::chrono::steady_clock::now().time_since_epoch());
}

Timestamp SystemClock::wall_now() const
{
  return std::chrono::duration_cast<Timestamp>(
    std::chrono::system_clock::now().time_since_epoch());
}

std::array<std::uint8_t, 16> Guid::bytes() const noexcept
{
  std::array<std::uint8_t, 16> out{};
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    out[i] = prefix[i];
  }
  for (std::size_t i = 0; i < entity.bytes.size(); ++i) {
    out[12 + i] = entity.bytes[i];
  }
  return out;
}

Guid Guid::from_bytes(const std::array<std::uint8_t, 16> & raw) noexcept
{
  Guid g;
  for (std::size_t i = 0; i < g.prefix.size(); ++i) {
    g.prefix[i] = raw[i];
  }
  for (std::size_t i = 0; i < g.entity.bytes.size(); ++i) {
    g.entity.bytes[i] = raw[12 + i];
  }
  return g;
}

GuidPrefix make_random_prefix()
{
  std::random_device rd;
  std::mt19937_64 gen((static_cast<std::uint64_t>(rd()) << 32) ^ rd());
  GuidPrefix p{};
  for (auto & b : p) {
    b = static_cast<std::uint8_t>(gen());
  }
  return p;
}

std::string to_string(const GuidPrefix & prefix)
{
  std::string out;
  char buf[3];
  for (auto b : prefix) {
    std::snprintf(buf, sizeof(buf), "%02x", b);
    out += buf;
  }
  return out;
}

std::string to_string(const Guid & guid)
{
  char buf[12];
  std::snprintf(buf, sizeof(buf), ".%08x", guid.entity.value());
  return to_string(guid.prefix) + buf;
}

}  // namespace minidds
