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

#ifndef MINIDDS__QOS__PROFILE_HPP_
#define MINIDDS__QOS__PROFILE_HPP_

#include <map>
#include <string>
#include <vector>

#include "minidds/error.hpp"
#include "minidds/qos/policy.hpp"
#include "minidds/qos/values.hpp"

namespace minidds::qos
{

/// Set of policy values attached to one entity kind. Policies that are not
/// present read as their default value.
class QosProfile
{
public:
  QosProfile() = default;
  explicit QosProfile(EntityKind kind, bool enabled = false)
  : kind_(kind), enabled_(enabled) {}

  EntityKind entity_kind() const noexcept {return kind_;}
  bool enabled() const noexcept {return enabled_;}
  void set_enabled(bool enabled) noexcept {enabled_ = enabled;}

  bool contains(QosPolicyId id) const {return policies_.count(id) != 0;}
  const QosValue * find(QosPolicyId id) const;

  /// Stored value or the default for the policy.
  QosValue value(QosPolicyId id) const;

  template<typename Policy>
  Policy get() const
  {
    if (const QosValue * v = find(Policy::kId)) {
      return std::get<Policy>(*v);
    }
    return std::get<Policy>(default_value(Policy::kId));
  }

  /// Stores a value without applicability or changeability checks. Use
  /// set_policy() for the checked path.
  QosProfile & put(QosValue v);
  void erase(QosPolicyId id) {policies_.erase(id);}

  const std::map<QosPolicyId, QosValue> & policies() const noexcept {return policies_;}

  friend bool operator==(const QosProfile &, const QosProfile &) = default;

private:
  EntityKind kind_ = EntityKind::kTopic;
  bool enabled_ = false;
  std::map<QosPolicyId, QosValue> policies_;
};

struct ValidationError
{
  QosPolicyId policy;
  std::string message;
};

/// One entry per offending policy; empty when the profile is valid.
std::vector<ValidationError> validate_profile(const QosProfile & profile);

class QosError : public Error
{
public:
  QosError(Errc code, QosPolicyId policy, const std::string & what)
  : Error(code, what), policy_(policy) {}
  QosPolicyId policy() const noexcept {return policy_;}

private:
  QosPolicyId policy_;
};

/// Checked update. Throws QosError with kNotApplicable, kImmutablePolicy
/// (enabled entity, non-modifiable policy) or kInvalidQos. The input
/// profile is never modified.
QosProfile set_policy(const QosProfile & profile, const QosValue & value);

/// As above; kInvalidArgument when `value` does not hold policy `id`.
QosProfile set_policy(const QosProfile & profile, QosPolicyId id, const QosValue & value);

struct Violation
{
  QosPolicyId policy;
  QosValue offered;
  QosValue requested;
};

struct CompatibilityReport
{
  bool compatible = true;
  std::vector<Violation> violations;
};

/// Request/offered check of a writer-side profile against a reader-side
/// profile. Only RxO=Yes policies are evaluated.
CompatibilityReport check_compatibility(const QosProfile & offered, const QosProfile & requested);

std::string to_string(const CompatibilityReport & report);

/// Exact-text intersection with an empty list meaning {""}.
bool partitions_intersect(const PartitionQos & a, const PartitionQos & b);

/// Overlays `overrides` on `base` policy by policy. The result carries the
/// entity kind and enabled flag of `overrides`.
QosProfile overlay(const QosProfile & base, const QosProfile & overrides);

/// Copy of `profile` restricted to policies applicable to `kind`.
QosProfile restrict_to(const QosProfile & profile, EntityKind kind);

}  // namespace minidds::qos

#endif  // MINIDDS__QOS__PROFILE_HPP_
