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

#ifndef SUPPORT__RXO_ORACLE_HPP_
#define SUPPORT__RXO_ORACLE_HPP_

#include <chrono>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "minidds/qos/profile.hpp"

namespace minidds::test
{

// One side of the ordering grid: reliability x durability x destination
// order x deadline, each as an index into its ordered value list.
struct RxoPoint
{
  int reliability;   // 0 BEST_EFFORT < 1 RELIABLE
  int durability;    // 0 VOLATILE < 1 TRANSIENT_LOCAL
  int order;         // 0 BY_RECEPTION < 1 BY_SOURCE
  int deadline;      // 0 5 ms, 1 10 ms, 2 infinite

  qos::QosProfile profile(qos::EntityKind kind) const
  {
    using namespace std::chrono_literals;
    qos::QosProfile p(kind);
    p.put(qos::ReliabilityQos{reliability ? qos::ReliabilityKind::kReliable :
      qos::ReliabilityKind::kBestEffort});
    p.put(qos::DurabilityQos{durability ? qos::DurabilityKind::kTransientLocal :
      qos::DurabilityKind::kVolatile});
    p.put(qos::DestinationOrderQos{order ? qos::DestinationOrderKind::kBySourceTimestamp :
      qos::DestinationOrderKind::kByReceptionTimestamp});
    const Duration periods[] = {5ms, 10ms, kInfinite};
    p.put(qos::DeadlineQos{periods[deadline]});
    return p;
  }
};

inline std::vector<RxoPoint> rxo_grid()
{
  std::vector<RxoPoint> out;
  for (int r = 0; r < 2; ++r) {
    for (int d = 0; d < 2; ++d) {
      for (int o = 0; o < 2; ++o) {
        for (int dl = 0; dl < 3; ++dl) {
          out.push_back({r, d, o, dl});
        }
      }
    }
  }
  return out;
}

/// Offered must be at least as strong as requested on the first three
/// axes and at least as frequent on the deadline.
inline std::set<qos::QosPolicyId> rxo_oracle(const RxoPoint & offered, const RxoPoint & requested)
{
  std::set<qos::QosPolicyId> violated;
  if (offered.reliability < requested.reliability) {
    violated.insert(qos::QosPolicyId::kReliability);
  }
  if (offered.durability < requested.durability) {
    violated.insert(qos::QosPolicyId::kDurability);
  }
  if (offered.order < requested.order) {
    violated.insert(qos::QosPolicyId::kDestinationOrder);
  }
  if (offered.deadline > requested.deadline) {
    violated.insert(qos::QosPolicyId::kDeadline);
  }
  return violated;
}

/// Runs every offered x requested pair through check_compatibility.
/// Returns the number of pairs checked; `mismatch` receives a description
/// of each disagreement.
inline std::size_t rxo_exhaustive(const std::function<void(const std::string &)> & mismatch)
{
  std::size_t pairs = 0;
  const auto grid = rxo_grid();
  for (const auto & o : grid) {
    for (const auto & r : grid) {
      ++pairs;
      const auto expected = rxo_oracle(o, r);
      const auto report = qos::check_compatibility(o.profile(qos::EntityKind::kDataWriter),
          r.profile(qos::EntityKind::kDataReader));
      std::set<qos::QosPolicyId> got;
      for (const auto & v : report.violations) {
        got.insert(v.policy);
      }
      if (report.compatible != expected.empty() || got != expected) {
        mismatch("offered {" + std::to_string(o.reliability) + std::to_string(o.durability) +
          std::to_string(o.order) + std::to_string(o.deadline) + "} requested {" +
          std::to_string(r.reliability) + std::to_string(r.durability) +
          std::to_string(r.order) + std::to_string(r.deadline) + "}");
      }
    }
  }
  return pairs;
}

}  // namespace minidds::test

#endif  // SUPPORT__RXO_ORACLE_HPP_
