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

#include "minidds/qos/profile.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

namespace minidds::qos
{

const QosValue * QosProfile::find(QosPolicyId id) const
{
  auto it = policies_.find(id);
  return it == policies_.end() ? nullptr : &it->second;
}

QosValue QosProfile::value(QosPolicyId id) const
{
  if (const QosValue * v = find(id)) {
    return *v;
  }
  return default_value(id);
}

QosProfile & QosProfile::put(QosValue v)
{
  auto id = policy_id_of(v);
  policies_.insert_or_assign(id, std::move(v));
  return *this;
}

namespace
{

std::string name(QosPolicyId id) {return std::string(to_string(id));}

bool negative(Duration d) {return d.count() < 0;}

bool bad_limit(std::int32_t v) {return v != kLengthUnlimited && v < 1;}

// Checks a single value in isolation. Returns the message, if any.
std::optional<std::string> value_error(const QosValue & v)
{
  if (auto h = std::get_if<HistoryQos>(&v)) {
    if (h->kind == HistoryKind::kKeepLast && h->depth < 1) {
      return "HISTORY depth must be >= 1";
    }
  } else if (auto rl = std::get_if<ResourceLimitsQos>(&v)) {
    if (bad_limit(rl->max_samples) || bad_limit(rl->max_instances) ||
      bad_limit(rl->max_samples_per_instance))
    {
      return "RESOURCE_LIMITS values must be positive or UNLIMITED";
    }
    if (rl->max_samples != kLengthUnlimited && rl->max_samples_per_instance != kLengthUnlimited &&
      rl->max_samples < rl->max_samples_per_instance)
    {
      return "RESOURCE_LIMITS max_samples must be >= max_samples_per_instance";
    }
  } else if (auto ds = std::get_if<DurabilityServiceQos>(&v)) {
    if (negative(ds->cleanup_delay)) {return "DURABILITY_SERVICE cleanup_delay must be >= 0";}
  } else if (auto ls = std::get_if<LifespanQos>(&v)) {
    if (negative(ls->duration)) {return "LIFESPAN duration must be >= 0";}
  } else if (auto dl = std::get_if<DeadlineQos>(&v)) {
    if (dl->period.count() <= 0) {return "DEADLINE period must be > 0";}
  } else if (auto lb = std::get_if<LatencyBudgetQos>(&v)) {
    if (negative(lb->duration)) {return "LATENCY_BUDGET duration must be >= 0";}
  } else if (auto tbf = std::get_if<TimeBasedFilterQos>(&v)) {
    if (negative(tbf->minimum_separation)) {
      return "TIME_BASED_FILTER minimum_separation must be >= 0";
    }
  }
  return std::nullopt;
}

}  // namespace

std::vector<ValidationError> validate_profile(const QosProfile & profile)
{
  std::vector<ValidationError> errors;
  const auto kind = profile.entity_kind();
  for (const auto & [id, v] : profile.policies()) {
    if (!is_applicable(id, kind)) {
      errors.push_back({id, name(id) + " not applicable to " + std::string(abbreviation(kind))});
      continue;
    }
    if (auto msg = value_error(v)) {
      errors.push_back({id, *msg});
      continue;
    }
    if (id == QosPolicyId::kTimeBasedFilter && kind == EntityKind::kDataReader &&
      profile.contains(QosPolicyId::kDeadline))
    {
      auto sep = std::get<TimeBasedFilterQos>(v).minimum_separation;
      auto period = profile.get<DeadlineQos>().period;
      if (sep > period) {
        errors.push_back({id, "TIME_BASED_FILTER minimum_separation exceeds DEADLINE period"});
      }
    }
  }
  return errors;
}

QosProfile set_policy(const QosProfile & profile, const QosValue & value)
{
  const auto id = policy_id_of(value);
  const auto & meta = policy_meta(id);
  if (!meta.applicability.contains(profile.entity_kind())) {
    throw QosError(Errc::kNotApplicable, id,
            name(id) + " not applicable to " + std::string(abbreviation(profile.entity_kind())));
  }
  if (profile.enabled() && !meta.modifiable) {
    throw QosError(Errc::kImmutablePolicy, id,
            name(id) + " cannot be changed after the entity is enabled");
  }
  QosProfile updated = profile;
  updated.put(value);
  for (const auto & e : validate_profile(updated)) {
    if (e.policy == id) {
      throw QosError(Errc::kInvalidQos, id, e.message);
    }
  }
  return updated;
}

QosProfile set_policy(const QosProfile & profile, QosPolicyId id, const QosValue & value)
{
  if (policy_id_of(value) != id) {
    throw QosError(Errc::kInvalidArgument, id,
            "value holds " + name(policy_id_of(value)) + ", expected " + name(id));
  }
  return set_policy(profile, value);
}

namespace
{

template<typename Policy>
void check(
  const QosProfile & offered, const QosProfile & requested, bool (*ok)(const Policy &,
  const Policy &), CompatibilityReport & report)
{
  auto o = offered.get<Policy>();
  auto r = requested.get<Policy>();
  if (!ok(o, r)) {
    report.violations.push_back({Policy::kId, o, r});
  }
}

}  // namespace

CompatibilityReport check_compatibility(const QosProfile & offered, const QosProfile & requested)
{
  CompatibilityReport report;
  // Policy table order, so violations come out in a stable order.
  check<DurabilityQos>(offered, requested,
    [](const DurabilityQos & o, const DurabilityQos & r) {return o.kind >= r.kind;}, report);
  check<PresentationQos>(offered, requested,
    [](const PresentationQos & o, const PresentationQos & r) {
      return o.access_scope >= r.access_scope &&
      (o.coherent_access || !r.coherent_access) &&
      (o.ordered_access || !r.ordered_access);
    }, report);
  check<ReliabilityQos>(offered, requested,
    [](const ReliabilityQos & o, const ReliabilityQos & r) {return o.kind >= r.kind;}, report);
  check<DestinationOrderQos>(offered, requested,
    [](const DestinationOrderQos & o, const DestinationOrderQos & r) {return o.kind >= r.kind;},
    report);
  check<OwnershipQos>(offered, requested,
    [](const OwnershipQos & o, const OwnershipQos & r) {return o.kind == r.kind;}, report);
  check<DeadlineQos>(offered, requested,
    [](const DeadlineQos & o, const DeadlineQos & r) {return o.period <= r.period;}, report);
  check<LatencyBudgetQos>(offered, requested,
    [](const LatencyBudgetQos & o, const LatencyBudgetQos & r) {
      return o.duration <= r.duration;
    }, report);
  report.compatible = report.violations.empty();
  return report;
}

std::string to_string(const CompatibilityReport & report)
{
  if (report.compatible) {
    return "compatible";
  }
  std::ostringstream os;
  os << "incompatible:";
  for (const auto & v : report.violations) {
    os << "\n  " << to_string(v.policy) << ": offered " << to_string(v.offered)
       << ", requested " << to_string(v.requested);
  }
  return os.str();
}

bool partitions_intersect(const PartitionQos & a, const PartitionQos & b)
{
  static const std::vector<std::string> kDefault{""};
  const auto & left = a.names.empty() ? kDefault : a.names;
  const auto & right = b.names.empty() ? kDefault : b.names;
  return std::any_of(left.begin(), left.end(), [&right](const std::string & n) {
             return std::find(right.begin(), right.end(), n) != right.end();
           });
}

QosProfile overlay(const QosProfile & base, const QosProfile & overrides)
{
  QosProfile out(overrides.entity_kind(), overrides.enabled());
  for (const auto & [id, v] : base.policies()) {
    out.put(v);
  }
  for (const auto & [id, v] : overrides.policies()) {
    out.put(v);
  }
  return out;
}

QosProfile restrict_to(const QosProfile & profile, EntityKind kind)
{
  QosProfile out(kind, profile.enabled());
  for (const auto & [id, v] : profile.policies()) {
    if (is_applicable(id, kind)) {
      out.put(v);
    }
  }
  return out;
}

}  // namespace minidds::qos
