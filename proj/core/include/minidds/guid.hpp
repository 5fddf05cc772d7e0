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

#ifndef MINIDDS__GUID_HPP_
#define MINIDDS__GUID_HPP_

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <string>

namespace minidds
{

using GuidPrefix = std::array<std::uint8_t, 12>;

/// 4-byte entity id stored big-endian so that bytewise order equals
/// numeric order. Id 0 is reserved and means "all entities".
struct EntityId
{
  std::array<std::uint8_t, 4> bytes{};

  static constexpr EntityId from_uint(std::uint32_t v) noexcept
  {
    return EntityId{{static_cast<std::uint8_t>(v >> 24), static_cast<std::uint8_t>(v >> 16),
        static_cast<std::uint8_t>(v >> 8), static_cast<std::uint8_t>(v)}};
  }
  constexpr std::uint32_t value() const noexcept
  {
    return (std::uint32_t{bytes[0]} << 24) | (std::uint32_t{bytes[1]} << 16) |
           (std::uint32_t{bytes[2]} << 8) | std::uint32_t{bytes[3]};
  }
  constexpr bool is_unknown() const noexcept {return value() == 0;}

  friend constexpr auto operator<=>(const EntityId &, const EntityId &) = default;
};

inline constexpr EntityId kEntityIdUnknown{};

/// Endpoint identity: participant prefix followed by entity id. Ordered
/// bytewise, prefix first.
struct Guid
{
  GuidPrefix prefix{};
  EntityId entity{};

  friend constexpr auto operator<=>(const Guid &, const Guid &) = default;

  std::array<std::uint8_t, 16> bytes() const noexcept;
  static Guid from_bytes(const std::array<std::uint8_t, 16> & raw) noexcept;
};

/// Fresh participant prefix from the system entropy source.
GuidPrefix make_random_prefix();

std::string to_string(const GuidPrefix & prefix);
std::string to_string(const Guid & guid);

}  // namespace minidds

template<>
struct std::hash<minidds::Guid>
{
  std::size_t operator()(const minidds::Guid & g) const noexcept
  {
    std::size_t h = 1469598103934665603ull;
    for (auto b : g.bytes()) {
      h = (h ^ b) * 1099511628211ull;
    }
    return h;
  }
};

#endif  // MINIDDS__GUID_HPP_
