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

#ifndef MINIDDS__RTPS__WIRE_HPP_
#define MINIDDS__RTPS__WIRE_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "minidds/dcps/endpoint.hpp"
#include "minidds/dcps/history.hpp"
#include "minidds/error.hpp"
#include "minidds/guid.hpp"
#include "minidds/idl/codec.hpp"

namespace minidds::rtps
{

using idl::Bytes;
using dcps::SequenceNumber;

inline constexpr std::array<std::uint8_t, 4> kMagic = {'M', 'D', 'D', 'S'};
inline constexpr std::uint8_t kVersionMajor = 1;
inline constexpr std::uint8_t kVersionMinor = 0;
/// magic(4) version(2) reserved(2) sender prefix(12).
inline constexpr std::size_t kHeaderSize = 20;
inline constexpr std::size_t kSubmessageHeaderSize = 4;
/// Fixed part of a DATA body before the payload.
inline constexpr std::size_t kDataFixedSize = 36;
inline constexpr std::size_t kMaxDatagramSize = 65507;
/// Largest payload a single DATA message can carry.
inline constexpr std::size_t kMaxPayloadSize =
  kMaxDatagramSize - kHeaderSize - kSubmessageHeaderSize - kDataFixedSize;
inline constexpr std::uint32_t kMaxBitmapLength = 256;

enum class SubmessageKind : std::uint8_t
{
  kAnnounce = 0x01,
  kData = 0x02,
  kHeartbeat = 0x03,
  kAckNack = 0x04,
  kGap = 0x05,
};

class WireError : public Error
{
public:
  WireError(std::size_t offset, const std::string & reason)
  : Error(Errc::kWire, "offset " + std::to_string(offset) + ": " + reason), offset_(offset) {}
  std::size_t offset() const noexcept {return offset_;}

private:
  std::size_t offset_;
};

/// IPv4 address and UDP port.
struct Locator
{
  std::array<std::uint8_t, 4> address{};
  std::uint16_t port = 0;

  friend auto operator<=>(const Locator &, const Locator &) = default;
};

std::string to_string(const Locator & locator);
/// Parses "a.b.c.d:port". Throws Error(kInvalidArgument).
Locator parse_locator(std::string_view text);

struct Announce
{
  std::uint32_t domain_id = 0;
  Locator unicast;
  std::vector<dcps::EndpointDescriptor> endpoints;

  friend bool operator==(const Announce &, const Announce &) = default;
};

struct Data
{
  EntityId writer;
  /// kEntityIdUnknown addresses every reader of the destination.
  EntityId reader;
  SequenceNumber sequence = 0;
  std::int64_t source_timestamp = 0;
  std::uint64_t instance = 0;
  Bytes payload;

  friend bool operator==(const Data &, const Data &) = default;
};

struct Heartbeat
{
  EntityId writer;
  SequenceNumber first = 1;
  SequenceNumber last = 0;
  std::uint32_t count = 0;

  friend bool operator==(const Heartbeat &, const Heartbeat &) = default;
};

/// Acknowledges every sequence below `base`; bit i of `missing` requests
/// `base + i`.
struct AckNack
{
  EntityId reader;
  Guid writer;
  SequenceNumber base = 1;
  std::vector<bool> missing;

  std::vector<SequenceNumber> requested() const;
  friend bool operator==(const AckNack &, const AckNack &) = default;
};

/// Sequences [start, end] will never be sent.
struct Gap
{
  EntityId writer;
  SequenceNumber start = 1;
  SequenceNumber end = 1;

  friend bool operator==(const Gap &, const Gap &) = default;
};

using Submessage = std::variant<Announce, Data, Heartbeat, AckNack, Gap>;

SubmessageKind kind_of(const Submessage & s);

struct Message
{
  GuidPrefix sender{};
  std::vector<Submessage> submessages;

  friend bool operator==(const Message &, const Message &) = default;
};

/// Throws WireError when a submessage body exceeds 65535 bytes or the
/// datagram exceeds kMaxDatagramSize, or when a field violates its range.
Bytes encode(const Message & message);

/// Throws WireError(offset, reason). Unknown submessage kinds are skipped.
Message decode(std::span<const std::uint8_t> bytes);

}  // namespace minidds::rtps

#endif  // MINIDDS__RTPS__WIRE_HPP_
