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

#ifndef MINIDDS__DCPS__ENDPOINT_HPP_
#define MINIDDS__DCPS__ENDPOINT_HPP_

#include <cstdint>
#include <string>
#include <string_view>

#include "minidds/guid.hpp"
#include "minidds/qos/profile.hpp"

namespace minidds::dcps
{

enum class EndpointKind : std::uint8_t {kWriter = 1, kReader = 2};

std::string_view to_string(EndpointKind kind);

/// Discovery-visible identity of a writer or reader.
///
/// `qos` carries the RxO policies, PARTITION, OWNERSHIP_STRENGTH and
/// LIFESPAN of the effective endpoint profile (see discovery_qos()).
struct EndpointDescriptor
{
  Guid guid;
  std::int32_t domain_id = 0;
  std::string topic_name;
  std::string type_name;
  EndpointKind kind = EndpointKind::kWriter;
  qos::QosProfile qos;

  friend bool operator==(const EndpointDescriptor &, const EndpointDescriptor &) = default;
};

/// True for the policies an endpoint descriptor carries.
bool is_discovery_policy(qos::QosPolicyId id);

/// Subset of `effective` published through discovery. The result is not
/// marked enabled.
qos::QosProfile discovery_qos(const qos::QosProfile & effective);

enum class MatchFailure : std::uint8_t
{
  kNone,
  kSameKind,
  kDomain,
  kTopicName,
  kTypeName,
  kPartition,
  kIncompatibleQos,
};

std::string_view to_string(MatchFailure failure);

struct MatchResult
{
  bool matched = false;
  MatchFailure failure = MatchFailure::kNone;
  /// Writer profile checked against reader profile. Filled whenever the
  /// check ran.
  qos::CompatibilityReport report;
};

/// Symmetric in its arguments: the writer side is always taken as offered.
MatchResult match_endpoints(const EndpointDescriptor & a, const EndpointDescriptor & b);

}  // namespace minidds::dcps

#endif  // MINIDDS__DCPS__ENDPOINT_HPP_
