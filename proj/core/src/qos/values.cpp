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

#include "minidds/qos/values.hpp"

#include <cstdio>
#include <stdexcept>

namespace minidds::qos
{

namespace
{

template<std::size_t I = 0>
QosValue make_default(std::size_t index)
{
  if constexpr (I < std::variant_size_v<QosValue>) {
    if (index == I) {
      return QosValue{std::in_place_index<I>};
    }
    return make_default<I + 1>(index);
  } else {
    throw std::out_of_range("unknown QoS policy id");
  }
}

std::string hex(const std::vector<std::uint8_t> & bytes)
{
  std::string out;
  char buf[3];
  for (auto b : bytes) {
    std::snprintf(buf, sizeof(buf), "%02x", b);
    out += buf;
  }
  return out;
}

std::string limit(std::int32_t v)
{
  return v == kLengthUnlimited ? "UNLIMITED" : std::to_string(v);
}

struct Renderer
{
  std::string operator()(const DurabilityQos & v) const {return std::string(to_string(v.kind));}
  std::string operator()(const DurabilityServiceQos & v) const
  {
    return "cleanup_delay=" + to_string(v.cleanup_delay);
  }
  std::string operator()(const LifespanQos & v) const {return to_string(v.duration);}
  std::string operator()(const HistoryQos & v) const
  {
    std::string s(to_string(v.kind));
    if (v.kind == HistoryKind::kKeepLast) {
      s += "(" + std::to_string(v.depth) + ")";
    }
    return s;
  }
  std::string operator()(const PresentationQos & v) const
  {
    return std::string(to_string(v.access_scope)) + ",coherent=" +
           (v.coherent_access ? "true" : "false") + ",ordered=" +
           (v.ordered_access ? "true" : "false");
  }
  std::string operator()(const ReliabilityQos & v) const {return std::string(to_string(v.kind));}
  std::string operator()(const PartitionQos & v) const
  {
    std::string s = "[";
    for (std::size_t i = 0; i < v.names.size(); ++i) {
      s += (i ? ",\"" : "\"") + v.names[i] + "\"";
    }
    return s + "]";
  }
  std::string operator()(const DestinationOrderQos & v) const
  {
    return std::string(to_string(v.kind));
  }
  std::string operator()(const OwnershipQos & v) const {return std::string(to_string(v.kind));}
  std::string operator()(const OwnershipStrengthQos & v) const {return std::to_string(v.value);}
  std::string operator()(const DeadlineQos & v) const {return to_string(v.period);}
  std::string operator()(const LatencyBudgetQos & v) const {return to_string(v.duration);}
  std::string operator()(const TransportPriorityQos & v) const {return std::to_string(v.value);}
  std::string operator()(const TimeBasedFilterQos & v) const
  {
    return to_string(v.minimum_separation);
  }
  std::string operator()(const ResourceLimitsQos & v) const
  {
    return "max_samples=" + limit(v.max_samples) + ",max_instances=" + limit(v.max_instances) +
           ",max_samples_per_instance=" + limit(v.max_samples_per_instance);
  }
  std::string operator()(const UserDataQos & v) const {return hex(v.value);}
  std::string operator()(const TopicDataQos & v) const {return hex(v.value);}
  std::string operator()(const GroupDataQos & v) const {return hex(v.value);}
};

}  // namespace

QosValue default_value(QosPolicyId id)
{
  return make_default(static_cast<std::size_t>(id));
}

std::string to_string(const QosValue & v)
{
  return std::string(to_string(policy_id_of(v))) + "{" + std::visit(Renderer{}, v) + "}";
}

std::string_view to_string(DurabilityKind k)
{
  return k == DurabilityKind::kVolatile ? "VOLATILE" : "TRANSIENT_LOCAL";
}

std::string_view to_string(HistoryKind k)
{
  return k == HistoryKind::kKeepLast ? "KEEP_LAST" : "KEEP_ALL";
}

std::string_view to_string(AccessScope k)
{
  return k == AccessScope::kInstance ? "INSTANCE" : "TOPIC";
}

std::string_view to_string(ReliabilityKind k)
{
  return k == ReliabilityKind::kBestEffort ? "BEST_EFFORT" : "RELIABLE";
}

std::string_view to_string(DestinationOrderKind k)
{
  return k == DestinationOrderKind::kByReceptionTimestamp ? "BY_RECEPTION_TIMESTAMP" :
         "BY_SOURCE_TIMESTAMP";
}

std::string_view to_string(OwnershipKind k)
{
  return k == OwnershipKind::kShared ? "SHARED" : "EXCLUSIVE";
}

}  // namespace minidds::qos
