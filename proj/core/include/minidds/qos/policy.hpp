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

#ifndef MINIDDS__QOS__POLICY_HPP_
#define MINIDDS__QOS__POLICY_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace minidds::qos
{

/// Entity kinds a policy can attach to.
enum class EntityKind : std::uint8_t
{
  kTopic,
  kDataReader,
  kDataWriter,
  kDomainParticipant,
  kPublisher,
  kSubscriber,
};

/// Short form used in the policy table: T, DR, DW, DP, P, S.
std::string_view abbreviation(EntityKind kind);
std::optional<EntityKind> entity_kind_from_abbreviation(std::string_view s);

/// The eighteen policies, in table row order.
enum class QosPolicyId : std::uint8_t
{
  kDurability,
  kDurabilityService,
  kLifespan,
  kHistory,
  kPresentation,
  kReliability,
  kPartition,
  kDestinationOrder,
  kOwnership,
  kOwnershipStrength,
  kDeadline,
  kLatencyBudget,
  kTransportPriority,
  kTimeBasedFilter,
  kResourceLimits,
  kUserData,
  kTopicData,
  kGroupData,
};

inline constexpr std::size_t kPolicyCount = 18;

inline constexpr std::array<QosPolicyId, kPolicyCount> kAllPolicies = {
  QosPolicyId::kDurability, QosPolicyId::kDurabilityService, QosPolicyId::kLifespan,
  QosPolicyId::kHistory, QosPolicyId::kPresentation, QosPolicyId::kReliability,
  QosPolicyId::kPartition, QosPolicyId::kDestinationOrder, QosPolicyId::kOwnership,
  QosPolicyId::kOwnershipStrength, QosPolicyId::kDeadline, QosPolicyId::kLatencyBudget,
  QosPolicyId::kTransportPriority, QosPolicyId::kTimeBasedFilter, QosPolicyId::kResourceLimits,
  QosPolicyId::kUserData, QosPolicyId::kTopicData, QosPolicyId::kGroupData,
};

/// Upper-case policy name with underscores, e.g. "OWNERSHIP_STRENGTH".
std::string_view to_string(QosPolicyId id);
std::optional<QosPolicyId> policy_from_string(std::string_view name);

enum class RxO : std::uint8_t {kYes, kNo, kNotApplicable};

enum class PolicyGroup : std::uint8_t
{
  kDataAvailability,
  kDataDelivery,
  kDataTimeliness,
  kResources,
  kConfiguration,
};

std::string_view to_string(RxO rxo);
std::string_view to_string(PolicyGroup group);

/// Bitmask over EntityKind.
class EntityKindSet
{
public:
  constexpr EntityKindSet() = default;
  constexpr EntityKindSet(std::initializer_list<EntityKind> kinds)
  {
    for (auto k : kinds) {
      bits_ |= bit(k);
    }
  }

  constexpr bool contains(EntityKind k) const noexcept {return (bits_ & bit(k)) != 0;}
  constexpr bool empty() const noexcept {return bits_ == 0;}
  constexpr std::uint8_t bits() const noexcept {return bits_;}

  friend constexpr bool operator==(EntityKindSet, EntityKindSet) = default;

private:
  static constexpr std::uint8_t bit(EntityKind k) noexcept
  {
    return static_cast<std::uint8_t>(1u << static_cast<unsigned>(k));
  }
  std::uint8_t bits_ = 0;
};

struct PolicyMeta
{
  QosPolicyId id;
  EntityKindSet applicability;
  RxO rxo;
  bool modifiable;
  PolicyGroup group;
};

/// Static metadata row for a policy. Total over QosPolicyId.
const PolicyMeta & policy_meta(QosPolicyId id);

inline bool is_applicable(QosPolicyId id, EntityKind kind)
{
  return policy_meta(id).applicability.contains(kind);
}

}  // namespace minidds::qos

#endif  // MINIDDS__QOS__POLICY_HPP_
