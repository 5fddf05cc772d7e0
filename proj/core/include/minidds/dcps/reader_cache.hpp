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

#ifndef MINIDDS__DCPS__READER_CACHE_HPP_
#define MINIDDS__DCPS__READER_CACHE_HPP_

#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "minidds/dcps/history.hpp"
#include "minidds/guid.hpp"
#include "minidds/qos/profile.hpp"

namespace minidds::dcps
{

struct SampleInfo
{
  Guid writer_guid;
  SequenceNumber sequence = 0;
  InstanceHandle instance = idl::kNilHandle;
  /// Writer wall clock at write().
  Timestamp source_timestamp{0};
  /// Reader monotonic clock at reception.
  Timestamp arrival_timestamp{0};
  /// Reader wall clock at reception.
  Timestamp reception_timestamp{0};

  friend bool operator==(const SampleInfo &, const SampleInfo &) = default;
};

struct ReceivedData
{
  SampleInfo info;
  std::shared_ptr<const idl::Bytes> payload;
};

/// Reader-side policy values driving the pipeline.
struct ReaderCacheConfig
{
  qos::HistoryQos history;
  qos::ResourceLimitsQos limits;
  qos::OwnershipKind ownership = qos::OwnershipKind::kShared;
  qos::DestinationOrderKind destination_order = qos::DestinationOrderKind::kByReceptionTimestamp;
  Duration minimum_separation{0};
  Duration deadline = kInfinite;
  /// Local topic LIFESPAN; combined with each writer's announced value.
  Duration lifespan = kInfinite;

  /// Values from an effective reader profile and the local topic profile.
  static ReaderCacheConfig from_profiles(
    const qos::QosProfile & reader, const qos::QosProfile & topic);
};

enum class Disposition : std::uint8_t
{
  kAccepted,
  kUnknownWriter,
  kLifespanExpired,
  kNotOwner,
  kTimeFiltered,
  kOutOfOrder,
  kResourceLimits,
};

std::string_view to_string(Disposition d);

struct ReaderStats
{
  std::uint64_t accepted = 0;
  std::uint64_t unknown_writer = 0;
  std::uint64_t lifespan_expired = 0;
  std::uint64_t not_owner = 0;
  std::uint64_t time_filtered = 0;
  std::uint64_t out_of_order = 0;
  std::uint64_t rejected_resource_limits = 0;
  /// Accepted samples later displaced by KEEP_LAST.
  std::uint64_t evicted = 0;
  /// Cached samples removed by LIFESPAN before being taken.
  std::uint64_t expired_in_cache = 0;
};

/// Reader history cache and the per-sample acceptance pipeline:
/// LIFESPAN, EXCLUSIVE ownership, TIME_BASED_FILTER, BY_SOURCE_TIMESTAMP
/// order, then HISTORY/RESOURCE_LIMITS insertion.
///
/// Not thread-safe; the owning reader serializes access.
class ReaderCache
{
public:
  explicit ReaderCache(ReaderCacheConfig config);

  const ReaderCacheConfig & config() const noexcept {return config_;}

  /// Registers a matched writer. Re-adding updates strength and lifespan.
  void add_writer(const Guid & writer, std::int32_t strength, Duration lifespan = kInfinite);
  void remove_writer(const Guid & writer);
  bool has_writer(const Guid & writer) const {return writers_.count(writer) != 0;}

  /// Runs the pipeline. `data.info` must carry arrival and reception times.
  Disposition on_data(ReceivedData data);

  /// Current EXCLUSIVE owner of `instance` at monotonic time `now`: the
  /// alive writer with the highest strength, lowest Guid on ties. A writer
  /// is alive for an instance while matched and heard from on it within
  /// the reader's DEADLINE period.
  std::optional<Guid> owner(InstanceHandle instance, Timestamp now) const;

  /// Up to `max` samples ordered by (instance handle, acceptance order).
  std::vector<ReceivedData> read(std::size_t max) const;
  /// As read(), removing the returned samples.
  std::vector<ReceivedData> take(std::size_t max);

  /// Drops cached samples whose lifespan ended before `wall_now`.
  std::size_t purge_expired(Timestamp wall_now);

  std::vector<std::pair<InstanceHandle, std::uint64_t>> check_deadlines(Timestamp now) const
  {
    return deadlines_.check(now);
  }

  const ReaderStats & stats() const noexcept {return stats_;}
  std::size_t size() const noexcept {return total_;}
  /// Instances currently holding at least one sample.
  std::size_t instance_count() const;

private:
  struct Stored
  {
    ReceivedData data;
    Timestamp expires_at;
  };
  struct Instance
  {
    std::deque<Stored> samples;
    std::optional<Timestamp> last_accepted_arrival;
    std::optional<std::pair<Timestamp, Guid>> newest_source;
  };
  struct WriterState
  {
    std::int32_t strength = 0;
    Duration lifespan = kInfinite;
    std::map<InstanceHandle, Timestamp> last_seen;
  };

  bool insert(Instance & inst, Stored stored);

  ReaderCacheConfig config_;
  std::map<InstanceHandle, Instance> instances_;
  std::map<Guid, WriterState> writers_;
  DeadlineTracker deadlines_;
  ReaderStats stats_;
  std::size_t total_ = 0;
};

}  // namespace minidds::dcps

#endif  // MINIDDS__DCPS__READER_CACHE_HPP_
