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

#ifndef MINIDDS__QOS__VALUES_HPP_
#define MINIDDS__QOS__VALUES_HPP_

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "minidds/qos/policy.hpp"
#include "minidds/time.hpp"

namespace minidds::qos
{

using ::minidds::to_string;

// Enumerators within each kind are declared weakest first; compatibility
// compares them with the built-in ordering.

enum class DurabilityKind : std::uint8_t {kVolatile, kTransientLocal};
enum class HistoryKind : std::uint8_t {kKeepLast, kKeepAll};
enum class AccessScope : std::uint8_t {kInstance, kTopic};
enum class ReliabilityKind : std::uint8_t {kBestEffort, kReliable};
enum class DestinationOrderKind : std::uint8_t {kByReceptionTimestamp, kBySourceTimestamp};
enum class OwnershipKind : std::uint8_t {kShared, kExclusive};

inline constexpr std::int32_t kLengthUnlimited = -1;

struct DurabilityQos
{
  static constexpr QosPolicyId kId = QosPolicyId::kDurability;
  DurabilityKind kind = DurabilityKind::kVolatile;
  friend bool operator==(const DurabilityQos &, const DurabilityQos &) = default;
};

struct DurabilityServiceQos
{
  static constexpr QosPolicyId kId = QosPolicyId::kDurabilityService;
  Duration cleanup_delay{0};
  friend bool operator==(const DurabilityServiceQos &, const DurabilityServiceQos &) = default;
};

struct LifespanQos
{
  static constexpr QosPolicyId kId = QosPolicyId::kLifespan;
  Duration duration = kInfinite;
  friend bool operator==(const LifespanQos &, const LifespanQos &) = default;
};

struct HistoryQos
{
  static constexpr QosPolicyId kId = QosPolicyId::kHistory;
  HistoryKind kind = HistoryKind::kKeepLast;
  std::int32_t depth = 1;
  friend bool operator==(const HistoryQos &, const HistoryQos &) = default;
};

struct PresentationQos
{
  static constexpr QosPolicyId kId = QosPolicyId::kPresentation;
  AccessScope access_scope = AccessScope::kInstance;
  bool coherent_access = false;
  bool ordered_access = false;
  friend bool operator==(const PresentationQos &, const PresentationQos &) = default;
};

struct ReliabilityQos
{
  static constexpr QosPolicyId kId = QosPolicyId::kReliability;
  ReliabilityKind kind = ReliabilityKind::kBestEffort;
  friend bool operator==(const ReliabilityQos &, const ReliabilityQos &) = default;
};

/// An empty list stands for the single default partition "".
struct PartitionQos
{
  static constexpr QosPolicyId kId = QosPolicyId::kPartition;
  std::vector<std::string> names;
  friend bool operator==(const PartitionQos &, const PartitionQos &) = default;
};

struct DestinationOrderQos
{
  static constexpr QosPolicyId kId = QosPolicyId::kDestinationOrder;
  DestinationOrderKind kind = DestinationOrderKind::kByReceptionTimestamp;
  friend bool operator==(const DestinationOrderQos &, const DestinationOrderQos &) = default;
};

struct OwnershipQos
{
  static constexpr QosPolicyId kId = QosPolicyId::kOwnership;
  OwnershipKind kind = OwnershipKind::kShared;
  friend bool operator==(const OwnershipQos &, const OwnershipQos &) = default;
};

struct OwnershipStrengthQos
{
  static constexpr QosPolicyId kId = QosPolicyId::kOwnershipStrength;
  std::int32_t value = 0;
  friend bool operator==(const OwnershipStrengthQos &, const OwnershipStrengthQos &) = default;
};

struct DeadlineQos
{
  static constexpr QosPolicyId kId = QosPolicyId::kDeadline;
  Duration period = kInfinite;
  friend bool operator==(const DeadlineQos &, const DeadlineQos &) = default;
};

struct LatencyBudgetQos
{
  static constexpr QosPolicyId kId = QosPolicyId::kLatencyBudget;
  Duration duration{0};
  friend bool operator==(const LatencyBudgetQos &, const LatencyBudgetQos &) = default;
};

struct TransportPriorityQos
{
  static constexpr QosPolicyId kId = QosPolicyId::kTransportPriority;
  std::int32_t value = 0;
  friend bool operator==(const TransportPriorityQos &, const TransportPriorityQos &) = default;
};

struct TimeBasedFilterQos
{
  static constexpr QosPolicyId kId = QosPolicyId::kTimeBasedFilter;
  Duration minimum_separation{0};
  friend bool operator==(const TimeBasedFilterQos &, const TimeBasedFilterQos &) = default;
};

/// kLengthUnlimited in any field means no limit.
struct ResourceLimitsQos
{
  static constexpr QosPolicyId kId = QosPolicyId::kResourceLimits;
  std::int32_t max_samples = kLengthUnlimited;
  std::int32_t max_instances = kLengthUnlimited;
  std::int32_t max_samples_per_instance = kLengthUnlimited;
  friend bool operator==(const ResourceLimitsQos &, const ResourceLimitsQos &) = default;
};

struct UserDataQos
{
  static constexpr QosPolicyId kId = QosPolicyId::kUserData;
  std::vector<std::uint8_t> value;
  friend bool operator==(const UserDataQos &, const UserDataQos &) = default;
};

struct TopicDataQos
{
  static constexpr QosPolicyId kId = QosPolicyId::kTopicData;
  std::vector<std::uint8_t> value;
  friend bool operator==(const TopicDataQos &, const TopicDataQos &) = default;
};

struct GroupDataQos
{
  static constexpr QosPolicyId kId = QosPolicyId::kGroupData;
  std::vector<std::uint8_t> value;
  friend bool operator==(const GroupDataQos &, const GroupDataQos &) = default;
};

/// Alternative index equals the QosPolicyId value.
using QosValue = std::variant<
  DurabilityQos, DurabilityServiceQos, LifespanQos, HistoryQos, PresentationQos,
  ReliabilityQos, PartitionQos, DestinationOrderQos, OwnershipQos, OwnershipStrengthQos,
  DeadlineQos, LatencyBudgetQos, TransportPriorityQos, TimeBasedFilterQos,
  ResourceLimitsQos, UserDataQos, TopicDataQos, GroupDataQos>;

static_assert(std::variant_size_v<QosValue> == kPolicyCount);

inline QosPolicyId policy_id_of(const QosValue & v)
{
  return static_cast<QosPolicyId>(v.index());
}

QosValue default_value(QosPolicyId id);

/// Compact human-readable rendering, e.g. "RELIABILITY{RELIABLE}".
std::string to_string(const QosValue & v);

std::string_view to_string(DurabilityKind k);
std::string_view to_string(HistoryKind k);
std::string_view to_string(AccessScope k);
std::string_view to_string(ReliabilityKind k);
std::string_view to_string(DestinationOrderKind k);
std::string_view to_string(OwnershipKind k);

}  // namespace minidds::qos

#endif  // MINIDDS__QOS__VALUES_HPP_
