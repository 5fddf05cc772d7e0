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

#include "minidds/qos/policy.hpp"

#include <stdexcept>

namespace minidds::qos
{

namespace
{

using EK = EntityKind;
using PG = PolicyGroup;

constexpr EntityKindSet T_DR_DW{EK::kTopic, EK::kDataReader, EK::kDataWriter};
constexpr EntityKindSet T_DW{EK::kTopic, EK::kDataWriter};
constexpr EntityKindSet P_S{EK::kPublisher, EK::kSubscriber};

// Row order, applicability, RxO, changeability and group of each policy.
constexpr std::array<PolicyMeta, kPolicyCount> kTable = {{
  {QosPolicyId::kDurability, T_DR_DW, RxO::kYes, false, PG::kDataAvailability},
  {QosPolicyId::kDurabilityService, T_DW, RxO::kNo, false, PG::kDataAvailability},
  {QosPolicyId::kLifespan, T_DW, RxO::kNotApplicable, true, PG::kDataAvailability},
  {QosPolicyId::kHistory, T_DR_DW, RxO::kNo, false, PG::kDataAvailability},
  {QosPolicyId::kPresentation, P_S, RxO::kYes, false, PG::kDataDelivery},
  {QosPolicyId::kReliability, T_DR_DW, RxO::kYes, false, PG::kDataDelivery},
  {QosPolicyId::kPartition, P_S, RxO::kNo, true, PG::kDataDelivery},
  {QosPolicyId::kDestinationOrder, T_DR_DW, RxO::kYes, false, PG::kDataDelivery},
  {QosPolicyId::kOwnership, T_DR_DW, RxO::kYes, false, PG::kDataDelivery},
  {QosPolicyId::kOwnershipStrength, {EK::kDataWriter}, RxO::kNotApplicable, true,
    PG::kDataTimeliness},
  {QosPolicyId::kDeadline, T_DR_DW, RxO::kYes, true, PG::kDataTimeliness},
  {QosPolicyId::kLatencyBudget, T_DR_DW, RxO::kYes, true, PG::kDataTimeliness},
  {QosPolicyId::kTransportPriority, T_DW, RxO::kNotApplicable, true, PG::kDataTimeliness},
  {QosPolicyId::kTimeBasedFilter, {EK::kDataReader}, RxO::kNotApplicable, true, PG::kResources},
  {QosPolicyId::kResourceLimits, T_DR_DW, RxO::kNo, false, PG::kResources},
  {QosPolicyId::kUserData, {EK::kDomainParticipant, EK::kDataReader, EK::kDataWriter}, RxO::kNo,
    true, PG::kConfiguration},
  {QosPolicyId::kTopicData, {EK::kTopic}, RxO::kNo, true, PG::kConfiguration},
  {QosPolicyId::kGroupData, P_S, RxO::kNo, true, PG::kConfiguration},
}};

constexpr bool table_in_enum_order()
{
  for (std::size_t i = 0; i < kTable.size(); ++i) {
    if (static_cast<std::size_t>(kTable[i].id) != i || kTable[i].applicability.empty()) {
      return false;
    }
  }
  return true;
}
static_assert(table_in_enum_order());

constexpr std::array<std::string_view, kPolicyCount> kNames = {
  "DURABILITY", "DURABILITY_SERVICE", "LIFESPAN", "HISTORY", "PRESENTATION", "RELIABILITY",
  "PARTITION", "DESTINATION_ORDER", "OWNERSHIP", "OWNERSHIP_STRENGTH", "DEADLINE",
  "LATENCY_BUDGET", "TRANSPORT_PRIORITY", "TIME_BASED_FILTER", "RESOURCE_LIMITS", "USER_DATA",
  "TOPIC_DATA", "GROUP_DATA",
};

}  // namespace

std::string_view abbreviation(EntityKind kind)
{
  switch (kind) {
    case EntityKind::kTopic: return "T";
    case EntityKind::kDataReader: return "DR";
    case EntityKind::kDataWriter: return "DW";
    case EntityKind::kDomainParticipant: return "DP";
    case EntityKind::kPublisher: return "P";
    case EntityKind::kSubscriber: return "S";
  }
  return "?";
}

std::optional<EntityKind> entity_kind_from_abbreviation(std::string_view s)
{
  for (auto k : {EK::kTopic, EK::kDataReader, EK::kDataWriter, EK::kDomainParticipant,
      EK::kPublisher, EK::kSubscriber})
  {
    if (abbreviation(k) == s) {
      return k;
    }
  }
  return std::nullopt;
}

std::string_view to_string(QosPolicyId id)
{
  return kNames.at(static_cast<std::size_t>(id));
}

std::optional<QosPolicyId> policy_from_string(std::string_view name)
{
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == name) {
      return static_cast<QosPolicyId>(i);
    }
  }
  return std::nullopt;
}

std::string_view to_string(RxO rxo)
{
  switch (rxo) {
    case RxO::kYes: return "Y";
    case RxO::kNo: return "N";
    case RxO::kNotApplicable: return "-";
  }
  return "?";
}

std::string_view to_string(PolicyGroup group)
{
  switch (group) {
    case PolicyGroup::kDataAvailability: return "Data Availability";
    case PolicyGroup::kDataDelivery: return "Data Delivery";
    case PolicyGroup::kDataTimeliness: return "Data Timeliness";
    case PolicyGroup::kResources: return "Resources";
    case PolicyGroup::kConfiguration: return "Configuration";
  }
  return "?";
}

const PolicyMeta & policy_meta(QosPolicyId id)
{
  auto index = static_cast<std::size_t>(id);
  if (index >= kTable.size()) {
    throw std::out_of_range("unknown QoS policy id");
  }
  return kTable[index];
}

}  // namespace minidds::qos
