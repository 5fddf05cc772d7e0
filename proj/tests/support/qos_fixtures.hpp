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

#ifndef SUPPORT__QOS_FIXTURES_HPP_
#define SUPPORT__QOS_FIXTURES_HPP_

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "minidds/qos/profile.hpp"

namespace minidds::test
{

// Policy table transcribed by hand, one row per line:
// name | applicability | RxO | modifiable | group
inline constexpr const char * kPolicyTableFixture = R"(DURABILITY|T,DR,DW|Y|N|Data Availability
DURABILITY_SERVICE|T,DW|N|N|Data Availability
LIFESPAN|T,DW|-|Y|Data Availability
HISTORY|T,DR,DW|N|N|Data Availability
PRESENTATION|P,S|Y|N|Data Delivery
RELIABILITY|T,DR,DW|Y|N|Data Delivery
PARTITION|P,S|N|Y|Data Delivery
DESTINATION_ORDER|T,DR,DW|Y|N|Data Delivery
OWNERSHIP|T,DR,DW|Y|N|Data Delivery
OWNERSHIP_STRENGTH|DW|-|Y|Data Timeliness
DEADLINE|T,DR,DW|Y|Y|Data Timeliness
LATENCY_BUDGET|T,DR,DW|Y|Y|Data Timeliness
TRANSPORT_PRIORITY|T,DW|-|Y|Data Timeliness
TIME_BASED_FILTER|DR|-|Y|Resources
RESOURCE_LIMITS|T,DR,DW|N|N|Resources
USER_DATA|DP,DR,DW|N|Y|Configuration
TOPIC_DATA|T|N|Y|Configuration
GROUP_DATA|P,S|N|Y|Configuration
)";

struct PolicyRow
{
  std::string name;
  std::vector<std::string> applicability;
  std::string rxo;
  std::string modifiable;
  std::string group;
};

inline std::vector<std::string> split(const std::string & s, char sep)
{
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, sep)) {
    out.push_back(item);
  }
  return out;
}

inline std::vector<PolicyRow> policy_table_rows()
{
  std::vector<PolicyRow> rows;
  for (const auto & line : split(kPolicyTableFixture, '\n')) {
    if (line.empty()) {
      continue;
    }
    auto cols = split(line, '|');
    rows.push_back({cols.at(0), split(cols.at(1), ','), cols.at(2), cols.at(3), cols.at(4)});
  }
  return rows;
}

/// Random value for a policy; every generated value passes validation.
inline qos::QosValue random_value(qos::QosPolicyId id, std::mt19937_64 & rng)
{
  using namespace minidds::qos;
  auto coin = [&rng] {return (rng() & 1) != 0;};
  auto pick_ms = [&rng](std::initializer_list<std::int64_t> ms) {
      auto v = *(ms.begin() + rng() % ms.size());
      return v < 0 ? kInfinite : Duration{v * 1'000'000};
    };
  switch (id) {
    case QosPolicyId::kDurability:
      return DurabilityQos{coin() ? DurabilityKind::kVolatile : DurabilityKind::kTransientLocal};
    case QosPolicyId::kDurabilityService:
      return DurabilityServiceQos{pick_ms({0, 5, 100})};
    case QosPolicyId::kLifespan:
      return LifespanQos{pick_ms({-1, 1, 10, 1000})};
    case QosPolicyId::kHistory:
      return coin() ? HistoryQos{HistoryKind::kKeepAll, 1} :
             HistoryQos{HistoryKind::kKeepLast, static_cast<std::int32_t>(1 + rng() % 8)};
    case QosPolicyId::kPresentation:
      return PresentationQos{coin() ? AccessScope::kInstance : AccessScope::kTopic, coin(),
        coin()};
    case QosPolicyId::kReliability:
      return ReliabilityQos{coin() ? ReliabilityKind::kBestEffort : ReliabilityKind::kReliable};
    case QosPolicyId::kPartition: {
        static const std::vector<std::string> pool{"", "a", "b", "c"};
        PartitionQos p;
        for (const auto & n : pool) {
          if (coin()) {
            p.names.push_back(n);
          }
        }
        return p;
      }
    case QosPolicyId::kDestinationOrder:
      return DestinationOrderQos{coin() ? DestinationOrderKind::kByReceptionTimestamp :
               DestinationOrderKind::kBySourceTimestamp};
    case QosPolicyId::kOwnership:
      return OwnershipQos{coin() ? OwnershipKind::kShared : OwnershipKind::kExclusive};
    case QosPolicyId::kOwnershipStrength:
      return OwnershipStrengthQos{static_cast<std::int32_t>(rng() % 20)};
    case QosPolicyId::kDeadline:
      return DeadlineQos{pick_ms({-1, 5, 10, 20})};
    case QosPolicyId::kLatencyBudget:
      return LatencyBudgetQos{pick_ms({0, 1, 5})};
    case QosPolicyId::kTransportPriority:
      return TransportPriorityQos{static_cast<std::int32_t>(rng() % 10)};
    case QosPolicyId::kTimeBasedFilter:
      return TimeBasedFilterQos{pick_ms({0, 1, 2})};
    case QosPolicyId::kResourceLimits: {
        auto per = static_cast<std::int32_t>(1 + rng() % 10);
        return ResourceLimitsQos{coin() ? kLengthUnlimited : per * 4,
          coin() ? kLengthUnlimited : static_cast<std::int32_t>(1 + rng() % 4), per};
      }
    case QosPolicyId::kUserData:
      return UserDataQos{{static_cast<std::uint8_t>(rng())}};
    case QosPolicyId::kTopicData:
      return TopicDataQos{{static_cast<std::uint8_t>(rng()), 0x01}};
    case QosPolicyId::kGroupData:
      return GroupDataQos{{}};
  }
  return default_value(id);
}

/// Random valid profile for `kind`: each applicable policy present with
/// probability one half.
inline qos::QosProfile random_profile(qos::EntityKind kind, std::mt19937_64 & rng)
{
  qos::QosProfile profile(kind);
  for (auto id : qos::kAllPolicies) {
    if (qos::is_applicable(id, kind) && (rng() & 1)) {
      profile.put(random_value(id, rng));
    }
  }
  if (kind == qos::EntityKind::kDataReader && profile.contains(qos::QosPolicyId::kDeadline) &&
    profile.contains(qos::QosPolicyId::kTimeBasedFilter) &&
    !qos::validate_profile(profile).empty())
  {
    profile.erase(qos::QosPolicyId::kTimeBasedFilter);
  }
  return profile;
}

}  // namespace minidds::test

#endif  // SUPPORT__QOS_FIXTURES_HPP_
