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

#include "minidds/dcps/history.hpp"

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

WriterHistory::WriterHistory(qos::HistoryQos history, qos::ResourceLimitsQos limits)
: history_(history), limits_(limits)
{
}

std::size_t WriterHistory::instance_capacity() const
{
  auto cap = limit(limits_.max_samples_per_instance);
  if (history_.kind == qos::HistoryKind::kKeepLast) {
    cap = std::min(cap, static_cast<std::size_t>(std::max(history_.depth, 1)));
  }
  return cap;
}

bool WriterHistory::can_add(InstanceHandle instance) const
{
  auto it = per_instance_.find(instance);
  const bool known = it != per_instance_.end();
  if (!known && per_instance_.size() >= limit(limits_.max_instances)) {
    return false;
  }
  const std::size_t held = known ? it->second.size() : 0;
  const bool evicts_own = history_.kind == qos::HistoryKind::kKeepLast &&
    held >= instance_capacity() && held > 0;
  if (!evicts_own && held >= instance_capacity()) {
    return false;
  }
  if (!evicts_own && changes_.size() >= limit(limits_.max_samples)) {
    // KEEP_LAST may still drop the oldest change overall.
    return history_.kind == qos::HistoryKind::kKeepLast && !changes_.empty();
  }
  return true;
}

std::vector<SequenceNumber> WriterHistory::add(CacheChange change)
{
  if (!can_add(change.instance)) {
    throw Error(Errc::kResourceLimits, "writer history full");
  }
  std::vector<SequenceNumber> evicted;
  auto & queue = per_instance_[change.instance];
  if (history_.kind == qos::HistoryKind::kKeepLast) {
    while (queue.size() >= instance_capacity() && !queue.empty()) {
      evicted.push_back(queue.front());
      changes_.erase(queue.front());
      queue.pop_front();
    }
    while (changes_.size() >= limit(limits_.max_samples) && !changes_.empty()) {
      auto oldest = changes_.begin()->first;
      evicted.push_back(oldest);
      remove(oldest);
    }
  }
  // remove() may have erased an emptied instance entry.
  auto & target = per_instance_[change.instance];
  target.push_back(change.sequence);
  last_added_ = std::max(last_added_, change.sequence);
  changes_.emplace(change.sequence, std::move(change));
  return evicted;
}

bool WriterHistory::remove(SequenceNumber sequence)
{
  auto it = changes_.find(sequence);
  if (it == changes_.end()) {
    return false;
  }
  auto inst = per_instance_.find(it->second.instance);
  if (inst != per_instance_.end()) {
    auto & q = inst->second;
    q.erase(std::remove(q.begin(), q.end(), sequence), q.end());
    if (q.empty()) {
      per_instance_.erase(inst);
    }
  }
  changes_.erase(it);
  return true;
}

const CacheChange * WriterHistory::find(SequenceNumber sequence) const
{
  auto it = changes_.find(sequence);
  return it == changes_.end() ? nullptr : &it->second;
}

SequenceNumber WriterHistory::first() const
{
  return changes_.empty() ? last_added_ + 1 : changes_.begin()->first;
}

std::uint64_t DeadlineTracker::elapsed_periods(Timestamp from, Timestamp to) const
{
  if (is_infinite(period_) || to <= from || period_.count() <= 0) {
    return 0;
  }
  return static_cast<std::uint64_t>((to - from) / period_);
}

void DeadlineTracker::on_sample(InstanceHandle instance, Timestamp now)
{
  auto [it, inserted] = entries_.try_emplace(instance);
  if (!inserted) {
    it->second.committed += elapsed_periods(it->second.last, now);
  }
  it->second.last = now;
}

std::vector<std::pair<InstanceHandle, std::uint64_t>> DeadlineTracker::check(Timestamp now) const
{
  std::vector<std::pair<InstanceHandle, std::uint64_t>> out;
  if (is_infinite(period_)) {
    return out;
  }
  for (const auto & [instance, e] : entries_) {
    auto total = e.committed + elapsed_periods(e.last, now);
    if (total > 0) {
      out.emplace_back(instance, total);
    }
  }
  return out;
}

}  // namespace minidds::dcps
