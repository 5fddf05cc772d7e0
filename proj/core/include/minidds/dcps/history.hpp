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

#ifndef MINIDDS__DCPS__HISTORY_HPP_
#define MINIDDS__DCPS__HISTORY_HPP_

#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "minidds/idl/codec.hpp"
#include "minidds/qos/values.hpp"
#include "minidds/time.hpp"

namespace minidds::dcps
{

using idl::InstanceHandle;
using SequenceNumber = std::uint64_t;

/// One written sample as kept by a writer.
struct CacheChange
{
  SequenceNumber sequence = 0;
  InstanceHandle instance = idl::kNilHandle;
  Timestamp source_timestamp{0};
  std::shared_ptr<const idl::Bytes> payload;
};

/// Writer-side history under HISTORY and RESOURCE_LIMITS.
///
/// KEEP_LAST evicts the oldest change of the instance once it holds `depth`
/// changes. KEEP_ALL never evicts; add() is refused while a limit is hit.
class WriterHistory
{
public:
  WriterHistory(qos::HistoryQos history, qos::ResourceLimitsQos limits);

  /// False when adding a change of `instance` would exceed a limit that
  /// eviction cannot resolve.
  bool can_add(InstanceHandle instance) const;

  /// Stores `change`, whose sequence must exceed every stored sequence.
  /// Returns the sequences evicted to make room. Throws
  /// Error(kResourceLimits) when can_add() is false.
  std::vector<SequenceNumber> add(CacheChange change);

  /// Removes one change. Returns false if it was not held.
  bool remove(SequenceNumber sequence);

  const CacheChange * find(SequenceNumber sequence) const;

  /// Lowest held sequence, or `last_added() + 1` when empty.
  SequenceNumber first() const;
  /// Highest sequence ever added, 0 before the first add.
  SequenceNumber last_added() const noexcept {return last_added_;}

  std::size_t size() const noexcept {return changes_.size();}
  bool empty() const noexcept {return changes_.empty();}
  std::size_t instance_count() const noexcept {return per_instance_.size();}

  /// Held changes in sequence order.
  const std::map<SequenceNumber, CacheChange> & changes() const noexcept {return changes_;}

private:
  std::size_t instance_capacity() const;

  qos::HistoryQos history_;
  qos::ResourceLimitsQos limits_;
  std::map<SequenceNumber, CacheChange> changes_;
  std::map<InstanceHandle, std::deque<SequenceNumber>> per_instance_;
  SequenceNumber last_added_ = 0;
};

/// Per-instance DEADLINE accounting.
///
/// Every full period that elapses between consecutive samples of an
/// instance, or since its last sample, counts as one miss. An arrival at
/// exactly k periods counts k misses. Counts never decrease.
class DeadlineTracker
{
public:
  explicit DeadlineTracker(Duration period = kInfinite) : period_(period) {}

  Duration period() const noexcept {return period_;}

  void on_sample(InstanceHandle instance, Timestamp now);

  /// (instance, cumulative misses) for instances with at least one miss,
  /// ordered by instance handle. Empty for an infinite period.
  std::vector<std::pair<InstanceHandle, std::uint64_t>> check(Timestamp now) const;

private:
  struct Entry
  {
    Timestamp last{0};
    std::uint64_t committed = 0;
  };

  std::uint64_t elapsed_periods(Timestamp from, Timestamp to) const;

  Duration period_;
  std::map<InstanceHandle, Entry> entries_;
};

}  // namespace minidds::dcps

#endif  // MINIDDS__DCPS__HISTORY_HPP_
