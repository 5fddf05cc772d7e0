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

#include "minidds/dcps/reader_cache.hpp"

#include <algorithm>
#include <limits>

namespace minidds::dcps
{

namespace
{

std::size_t limit(std::int32_t v)
{
  return v == qos::kLengthUnlimited ? std::numeric_limits<std::size_t>::max() :
         static_cast<std::size_t>(v);
}

}  // namespace

ReaderCacheConfig ReaderCacheConfig::from_profiles(
  const qos::QosProfile & reader, const qos::QosProfile & topic)
{
  ReaderCacheConfig c;
  c.history = reader.get<qos::HistoryQos>();
  c.limits = reader.get<qos::ResourceLimitsQos>();
  c.ownership = reader.get<qos::OwnershipQos>().kind;
  c.destination_order = reader.get<qos::DestinationOrderQos>().kind;
  c.minimum_separation = reader.get<qos::TimeBasedFilterQos>().minimum_separation;
  c.deadline = reader.get<qos::DeadlineQos>().period;
  c.lifespan = topic.get<qos::LifespanQos>().duration;
  return c;
}

std::string_view to_string(Disposition d)
{
  switch (d) {
    case Disposition::kAccepted: return "accepted";
    case Disposition::kUnknownWriter: return "unknown_writer";
    case Disposition::kLifespanExpired: return "lifespan_expired";
    case Disposition::kNotOwner: return "not_owner";
    case Disposition::kTimeFiltered: return "time_filtered";
    case Disposition::kOutOfOrder: return "out_of_order";
    case Disposition::kResourceLimits: return "resource_limits";
  }
  return "?";
}

ReaderCache::ReaderCache(ReaderCacheConfig config)
: config_(config), deadlines_(config.deadline)
{
}

void ReaderCache::add_writer(const Guid & writer, std::int32_t strength, Duration lifespan)
{
  auto & w = writers_[writer];
  w.strength = strength;
  w.lifespan = lifespan;
}

void ReaderCache::remove_writer(const Guid & writer)
{
  writers_.erase(writer);
}

std::optional<Guid> ReaderCache::owner(InstanceHandle instance, Timestamp now) const
{
  std::optional<Guid> best;
  std::int32_t best_strength = 0;
  for (const auto & [guid, w] : writers_) {
    auto seen = w.last_seen.find(instance);
    if (seen == w.last_seen.end()) {
      continue;
    }
    const bool alive = is_infinite(config_.deadline) || now - seen->second < config_.deadline;
    if (!alive) {
      continue;
    }
    // writers_ iterates in Guid order, so strict > keeps the lowest Guid.
    if (!best || w.strength > best_strength) {
      best = guid;
      best_strength = w.strength;
    }
  }
  return best;
}

Disposition ReaderCache::on_data(ReceivedData data)
{
  const SampleInfo & info = data.info;
  auto writer = writers_.find(info.writer_guid);
  if (writer == writers_.end()) {
    ++stats_.unknown_writer;
    return Disposition::kUnknownWriter;
  }
  // Any arrival proves the writer alive for this instance.
  writer->second.last_seen[info.instance] = info.arrival_timestamp;

  const Duration lifespan = std::min(writer->second.lifespan, config_.lifespan);
  const Timestamp expires_at = saturating_add(info.source_timestamp, lifespan);
  if (info.reception_timestamp > expires_at) {
    ++stats_.lifespan_expired;
    return Disposition::kLifespanExpired;
  }

  if (config_.ownership == qos::OwnershipKind::kExclusive) {
    auto current = owner(info.instance, info.arrival_timestamp);
    if (!current || *current != info.writer_guid) {
      ++stats_.not_owner;
      return Disposition::kNotOwner;
    }
  }

  Instance & inst = instances_[info.instance];
  if (inst.last_accepted_arrival &&
    info.arrival_timestamp <
    saturating_add(*inst.last_accepted_arrival, config_.minimum_separation))
  {
    ++stats_.time_filtered;
    return Disposition::kTimeFiltered;
  }

  if (config_.destination_order == qos::DestinationOrderKind::kBySourceTimestamp &&
    inst.newest_source)
  {
    const auto & [newest_ts, newest_writer] = *inst.newest_source;
    const bool older = info.source_timestamp < newest_ts;
    const bool tie_lost = info.source_timestamp == newest_ts &&
      info.writer_guid > newest_writer;
    if (older || tie_lost) {
      ++stats_.out_of_order;
      return Disposition::kOutOfOrder;
    }
  }

  const InstanceHandle handle = info.instance;
  const Timestamp arrival = info.arrival_timestamp;
  const std::pair<Timestamp, Guid> source{info.source_timestamp, info.writer_guid};
  if (!insert(inst, Stored{std::move(data), expires_at})) {
    ++stats_.rejected_resource_limits;
    return Disposition::kResourceLimits;
  }
  inst.last_accepted_arrival = arrival;
  inst.newest_source = source;
  deadlines_.on_sample(handle, arrival);
  ++stats_.accepted;
  return Disposition::kAccepted;
}

bool ReaderCache::insert(Instance & inst, Stored stored)
{
  const std::size_t per_instance = limit(config_.limits.max_samples_per_instance);
  if (config_.history.kind == qos::HistoryKind::kKeepLast) {
    const std::size_t capacity =
      std::min(per_instance, static_cast<std::size_t>(std::max(config_.history.depth, 1)));
    if (inst.samples.size() >= capacity) {
      inst.samples.pop_front();
      --total_;
      ++stats_.evicted;
      inst.samples.push_back(std::move(stored));
      ++total_;
      return true;
    }
  } else if (inst.samples.size() >= per_instance) {
    return false;
  }
  if (total_ >= limit(config_.limits.max_samples)) {
    return false;
  }
  if (inst.samples.empty() && instance_count() >= limit(config_.limits.max_instances)) {
    return false;
  }
  inst.samples.push_back(std::move(stored));
  ++total_;
  return true;
}

std::size_t ReaderCache::instance_count() const
{
  return static_cast<std::size_t>(std::count_if(instances_.begin(), instances_.end(),
         [](const auto & kv) {return !kv.second.samples.empty();}));
}

std::vector<ReceivedData> ReaderCache::read(std::size_t max) const
{
  std::vector<ReceivedData> out;
  for (const auto & [handle, inst] : instances_) {
    for (const auto & s : inst.samples) {
      if (out.size() >= max) {
        return out;
      }
      out.push_back(s.data);
    }
  }
  return out;
}

std::vector<ReceivedData> ReaderCache::take(std::size_t max)
{
  std::vector<ReceivedData> out;
  for (auto & [handle, inst] : instances_) {
    while (!inst.samples.empty() && out.size() < max) {
      out.push_back(std::move(inst.samples.front().data));
      inst.samples.pop_front();
      --total_;
    }
    if (out.size() >= max) {
      break;
    }
  }
  return out;
}

std::size_t ReaderCache::purge_expired(Timestamp wall_now)
{
  std::size_t removed = 0;
  for (auto & [handle, inst] : instances_) {
    auto & q = inst.samples;
    auto end = std::remove_if(q.begin(), q.end(),
        [wall_now](const Stored & s) {return wall_now > s.expires_at;});
    removed += static_cast<std::size_t>(q.end() - end);
    q.erase(end, q.end());
  }
  total_ -= removed;
  stats_.expired_in_cache += removed;
  return removed;
}

}  // namespace minidds::dcps
