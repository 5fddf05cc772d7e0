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

#include "minidds/qos/profile_file.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace minidds::qos
{

namespace
{

std::string_view trim(std::string_view s)
{
  const char * ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) {
    return {};
  }
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::int64_t parse_int(std::string_view s)
{
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) {
    throw std::invalid_argument("expected an integer, got '" + std::string(s) + "'");
  }
  return v;
}

std::int32_t parse_int32(std::string_view s)
{
  auto v = parse_int(s);
  if (v < INT32_MIN || v > INT32_MAX) {
    throw std::invalid_argument("integer out of range: " + std::string(s));
  }
  return static_cast<std::int32_t>(v);
}

Duration parse_duration(std::string_view s)
{
  if (s == "INFINITE") {
    return kInfinite;
  }
  return Duration{parse_int(s)};
}

std::int32_t parse_limit(std::string_view s)
{
  if (s == "UNLIMITED") {
    return kLengthUnlimited;
  }
  return parse_int32(s);
}

bool parse_bool(std::string_view s)
{
  if (s == "true") {return true;}
  if (s == "false") {return false;}
  throw std::invalid_argument("expected true or false, got '" + std::string(s) + "'");
}

template<typename Enum>
Enum parse_enum(std::string_view s, std::initializer_list<Enum> options)
{
  std::string accepted;
  for (auto o : options) {
    if (to_string(o) == s) {
      return o;
    }
    accepted += (accepted.empty() ? "" : "|") + std::string(to_string(o));
  }
  throw std::invalid_argument("expected " + accepted + ", got '" + std::string(s) + "'");
}

std::vector<std::uint8_t> parse_hex(std::string_view s)
{
  if (s.size() % 2 != 0) {
    throw std::invalid_argument("hex string must have an even number of digits");
  }
  std::vector<std::uint8_t> out;
  for (std::size_t i = 0; i < s.size(); i += 2) {
    unsigned v = 0;
    auto [p, ec] = std::from_chars(s.data() + i, s.data() + i + 2, v, 16);
    if (ec != std::errc{} || p != s.data() + i + 2) {
      throw std::invalid_argument("bad hex digits in '" + std::string(s) + "'");
    }
    out.push_back(static_cast<std::uint8_t>(v));
  }
  return out;
}

std::vector<std::string> parse_list(std::string_view s)
{
  std::vector<std::string> out;
  if (s.empty()) {
    return out;
  }
  std::size_t start = 0;
  while (true) {
    auto comma = s.find(',', start);
    out.emplace_back(trim(s.substr(start, comma - start)));
    if (comma == std::string_view::npos) {
      break;
    }
    start = comma + 1;
  }
  return out;
}

std::string format_duration(Duration d)
{
  return is_infinite(d) ? "INFINITE" : std::to_string(d.count());
}

std::string format_limit(std::int32_t v)
{
  return v == kLengthUnlimited ? "UNLIMITED" : std::to_string(v);
}

std::string format_hex(const std::vector<std::uint8_t> & bytes)
{
  static const char * digits = "0123456789abcdef";
  std::string out;
  for (auto b : bytes) {
    out += digits[b >> 4];
    out += digits[b & 0xF];
  }
  return out;
}

using Setter = std::function<void (QosValue &, std::string_view)>;

struct Field
{
  std::string_view key;
  QosPolicyId policy;
  Setter set;
};

template<typename P, typename F>
Field field(std::string_view key, F f)
{
  return Field{key, P::kId, [f](QosValue & v, std::string_view s) {f(std::get<P>(v), s);}};
}

const std::vector<Field> & fields()
{
  using DK = DurabilityKind;
  static const std::vector<Field> kFields = {
    field<DurabilityQos>("durability.kind", [](DurabilityQos & p, std::string_view s) {
        p.kind = parse_enum(s, {DK::kVolatile, DK::kTransientLocal});
      }),
    field<DurabilityServiceQos>("durability_service.cleanup_delay_ns",
      [](DurabilityServiceQos & p, std::string_view s) {p.cleanup_delay = parse_duration(s);}),
    field<LifespanQos>("lifespan.duration_ns",
      [](LifespanQos & p, std::string_view s) {p.duration = parse_duration(s);}),
    field<HistoryQos>("history.kind", [](HistoryQos & p, std::string_view s) {
        p.kind = parse_enum(s, {HistoryKind::kKeepLast, HistoryKind::kKeepAll});
      }),
    field<HistoryQos>("history.depth",
      [](HistoryQos & p, std::string_view s) {p.depth = parse_int32(s);}),
    field<PresentationQos>("presentation.access_scope",
      [](PresentationQos & p, std::string_view s) {
        p.access_scope = parse_enum(s, {AccessScope::kInstance, AccessScope::kTopic});
      }),
    field<PresentationQos>("presentation.coherent_access",
      [](PresentationQos & p, std::string_view s) {p.coherent_access = parse_bool(s);}),
    field<PresentationQos>("presentation.ordered_access",
      [](PresentationQos & p, std::string_view s) {p.ordered_access = parse_bool(s);}),
    field<ReliabilityQos>("reliability.kind", [](ReliabilityQos & p, std::string_view s) {
        p.kind = parse_enum(s, {ReliabilityKind::kBestEffort, ReliabilityKind::kReliable});
      }),
    field<PartitionQos>("partition.names",
      [](PartitionQos & p, std::string_view s) {p.names = parse_list(s);}),
    field<DestinationOrderQos>("destination_order.kind",
      [](DestinationOrderQos & p, std::string_view s) {
        p.kind = parse_enum(s, {DestinationOrderKind::kByReceptionTimestamp,
          DestinationOrderKind::kBySourceTimestamp});
      }),
    field<OwnershipQos>("ownership.kind", [](OwnershipQos & p, std::string_view s) {
        p.kind = parse_enum(s, {OwnershipKind::kShared, OwnershipKind::kExclusive});
      }),
    field<OwnershipStrengthQos>("ownership_strength.value",
      [](OwnershipStrengthQos & p, std::string_view s) {p.value = parse_int32(s);}),
    field<DeadlineQos>("deadline.period_ns",
      [](DeadlineQos & p, std::string_view s) {p.period = parse_duration(s);}),
    field<LatencyBudgetQos>("latency_budget.duration_ns",
      [](LatencyBudgetQos & p, std::string_view s) {p.duration = parse_duration(s);}),
    field<TransportPriorityQos>("transport_priority.value",
      [](TransportPriorityQos & p, std::string_view s) {p.value = parse_int32(s);}),
    field<TimeBasedFilterQos>("time_based_filter.minimum_separation_ns",
      [](TimeBasedFilterQos & p, std::string_view s) {p.minimum_separation = parse_duration(s);}),
    field<ResourceLimitsQos>("resource_limits.max_samples",
      [](ResourceLimitsQos & p, std::string_view s) {p.max_samples = parse_limit(s);}),
    field<ResourceLimitsQos>("resource_limits.max_instances",
      [](ResourceLimitsQos & p, std::string_view s) {p.max_instances = parse_limit(s);}),
    field<ResourceLimitsQos>("resource_limits.max_samples_per_instance",
      [](ResourceLimitsQos & p, std::string_view s) {p.max_samples_per_instance = parse_limit(s);}),
    field<UserDataQos>("user_data.value",
      [](UserDataQos & p, std::string_view s) {p.value = parse_hex(s);}),
    field<TopicDataQos>("topic_data.value",
      [](TopicDataQos & p, std::string_view s) {p.value = parse_hex(s);}),
    field<GroupDataQos>("group_data.value",
      [](GroupDataQos & p, std::string_view s) {p.value = parse_hex(s);}),
  };
  return kFields;
}

struct Formatter
{
  std::ostringstream & os;

  void operator()(const DurabilityQos & p) {os << "durability.kind = " << to_string(p.kind) << '\n';}
  void operator()(const DurabilityServiceQos & p)
  {
    os << "durability_service.cleanup_delay_ns = " << format_duration(p.cleanup_delay) << '\n';
  }
  void operator()(const LifespanQos & p)
  {
    os << "lifespan.duration_ns = " << format_duration(p.duration) << '\n';
  }
  void operator()(const HistoryQos & p)
  {
    os << "history.kind = " << to_string(p.kind) << '\n';
    os << "history.depth = " << p.depth << '\n';
  }
  void operator()(const PresentationQos & p)
  {
    os << "presentation.access_scope = " << to_string(p.access_scope) << '\n';
    os << "presentation.coherent_access = " << (p.coherent_access ? "true" : "false") << '\n';
    os << "presentation.ordered_access = " << (p.ordered_access ? "true" : "false") << '\n';
  }
  void operator()(const ReliabilityQos & p)
  {
    os << "reliability.kind = " << to_string(p.kind) << '\n';
  }
  void operator()(const PartitionQos & p)
  {
    os << "partition.names = ";
    for (std::size_t i = 0; i < p.names.size(); ++i) {
      os << (i ? "," : "") << p.names[i];
    }
    os << '\n';
  }
  void operator()(const DestinationOrderQos & p)
  {
    os << "destination_order.kind = " << to_string(p.kind) << '\n';
  }
  void operator()(const OwnershipQos & p) {os << "ownership.kind = " << to_string(p.kind) << '\n';}
  void operator()(const OwnershipStrengthQos & p)
  {
    os << "ownership_strength.value = " << p.value << '\n';
  }
  void operator()(const DeadlineQos & p)
  {
    os << "deadline.period_ns = " << format_duration(p.period) << '\n';
  }
  void operator()(const LatencyBudgetQos & p)
  {
    os << "latency_budget.duration_ns = " << format_duration(p.duration) << '\n';
  }
  void operator()(const TransportPriorityQos & p)
  {
    os << "transport_priority.value = " << p.value << '\n';
  }
  void operator()(const TimeBasedFilterQos & p)
  {
    os << "time_based_filter.minimum_separation_ns = " << format_duration(p.minimum_separation) <<
      '\n';
  }
  void operator()(const ResourceLimitsQos & p)
  {
    os << "resource_limits.max_samples = " << format_limit(p.max_samples) << '\n';
    os << "resource_limits.max_instances = " << format_limit(p.max_instances) << '\n';
    os << "resource_limits.max_samples_per_instance = " <<
      format_limit(p.max_samples_per_instance) << '\n';
  }
  void operator()(const UserDataQos & p) {os << "user_data.value = " << format_hex(p.value) << '\n';}
  void operator()(const TopicDataQos & p)
  {
    os << "topic_data.value = " << format_hex(p.value) << '\n';
  }
  void operator()(const GroupDataQos & p)
  {
    os << "group_data.value = " << format_hex(p.value) << '\n';
  }
};

}  // namespace

QosProfile QosFile::profile_for(EntityKind kind) const
{
  QosProfile profile(kind);
  for (const auto & [id, v] : policies) {
    if (is_applicable(id, kind)) {
      profile.put(v);
    }
  }
  return profile;
}

QosFile parse_qos_file(std::string_view text)
{
  QosFile file;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    auto raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    if (auto hash = raw.find('#'); hash != std::string_view::npos) {
      raw = raw.substr(0, hash);
    }
    auto line = trim(raw);
    if (line.empty()) {
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw QosFileError(line_no, "expected 'policy.key = value'");
    }
    auto key = trim(line.substr(0, eq));
    auto value = trim(line.substr(eq + 1));

    const Field * match = nullptr;
    for (const auto & f : fields()) {
      if (f.key == key) {
        match = &f;
        break;
      }
    }
    if (match == nullptr) {
      throw QosFileError(line_no, "unknown key '" + std::string(key) + "'");
    }
    auto it = file.policies.find(match->policy);
    if (it == file.policies.end()) {
      it = file.policies.emplace(match->policy, default_value(match->policy)).first;
    }
    try {
      match->set(it->second, value);
    } catch (const std::invalid_argument & e) {
      throw QosFileError(line_no, std::string(key) + ": " + e.what());
    }
  }
  return file;
}

QosFile load_qos_file(const std::filesystem::path & path)
{
  std::ifstream in(path);
  if (!in) {
    throw Error(Errc::kInvalidArgument, "cannot open QoS file " + path.string());
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_qos_file(ss.str());
}

std::string format_qos_file(const QosFile & file)
{
  std::ostringstream os;
  for (const auto & [id, v] : file.policies) {
    std::visit(Formatter{os}, v);
  }
  return os.str();
}

}  // namespace minidds::qos
