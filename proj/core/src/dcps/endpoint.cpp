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

#include "minidds/dcps/endpoint.hpp"

namespace minidds::dcps
{

std::string_view to_string(EndpointKind kind)
{
  return kind == EndpointKind::kWriter ? "writer" : "reader";
}

std::string_view to_string(MatchFailure failure)
{
  switch (failure) {
    case MatchFailure::kNone: return "matched";
    case MatchFailure::kSameKind: return "both endpoints have the same kind";
    case MatchFailure::kDomain: return "domain id differs";
    case MatchFailure::kTopicName: return "topic name differs";
    case MatchFailure::kTypeName: return "type name differs";
    case MatchFailure::kPartition: return "partitions do not intersect";
    case MatchFailure::kIncompatibleQos: return "incompatible QoS";
  }
  return "?";
}

bool is_discovery_policy(qos::QosPolicyId id)
{
  using qos::QosPolicyId;
  return qos::policy_meta(id).rxo == qos::RxO::kYes || id == QosPolicyId::kPartition ||
         id == QosPolicyId::kOwnershipStrength || id == QosPolicyId::kLifespan;
}

qos::QosProfile discovery_qos(const qos::QosProfile & effective)
{
  qos::QosProfile out(effective.entity_kind());
  for (const auto & [id, value] : effective.policies()) {
    if (is_discovery_policy(id)) {
      out.put(value);
    }
  }
  return out;
}

MatchResult match_endpoints(const EndpointDescriptor & a, const EndpointDescriptor & b)
{
  MatchResult result;
  if (a.kind == b.kind) {
    result.failure = MatchFailure::kSameKind;
    return result;
  }
  const EndpointDescriptor & writer = a.kind == EndpointKind::kWriter ? a : b;
  const EndpointDescriptor & reader = a.kind == EndpointKind::kWriter ? b : a;
  if (writer.domain_id != reader.domain_id) {
    result.failure = MatchFailure::kDomain;
  } else if (writer.topic_name != reader.topic_name) {
    result.failure = MatchFailure::kTopicName;
  } else if (writer.type_name != reader.type_name) {
    result.failure = MatchFailure::kTypeName;
  } else if (!qos::partitions_intersect(writer.qos.get<qos::PartitionQos>(),
    reader.qos.get<qos::PartitionQos>()))
  {
    result.failure = MatchFailure::kPartition;
  } else {
    result.report = qos::check_compatibility(writer.qos, reader.qos);
    result.failure = result.report.compatible ? MatchFailure::kNone :
      MatchFailure::kIncompatibleQos;
  }
  result.matched = result.failure == MatchFailure::kNone;
  return result;
}

}  // namespace minidds::dcps
