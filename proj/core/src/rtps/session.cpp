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

#include "minidds/rtps/session.hpp"

#include <algorithm>
#include <set>

namespace minidds::rtps
{

using dcps::SequenceNumber;

WriterSession::WriterSession(WriterSessionConfig config, qos::HistoryQos history,
  qos::ResourceLimitsQos limits)
: config_(config), history_(history, limits)
{
}

Data WriterSession::make_data(const dcps::CacheChange & change, EntityId reader) const
{
  Data d;
  d.writer = config_.writer;
  d.reader = reader;
  d.sequence = change.sequence;
  d.source_timestamp = change.source_timestamp.count();
  d.instance = change.instance;
  if (change.payload) {
    d.payload = *change.payload;
  }
  return d;
}

bool WriterSession::needed_at_locator(SequenceNumber seq, const Locator & locator) const
{
  for (const auto & [guid, proxy] : readers_) {
    if (proxy.reliable && proxy.locator == locator && proxy.needed_from() <= seq) {
      return true;
    }
  }
  return false;
}

void WriterSession::add_reader(const Guid & reader, const Locator & locator, bool reliable,
  bool wants_history, Timestamp now, std::vector<Outgoing> & out)
{
  ReaderProxy proxy;
  proxy.locator = locator;
  proxy.reliable = reliable;
  proxy.start = wants_history ? history_.first() : history_.last_added() + 1;
  readers_[reader] = proxy;

  if (wants_history) {
    for (const auto & [seq, change] : history_.changes()) {
      out.push_back({locator, make_data(change, reader.entity)});
      ++stats_.data_sent;
    }
  }
  if (reliable && proxy.start > 1) {
    // Tell the reader where its stream begins, unless a reader sharing the
    // locator still needs the earlier sequences (GAP is not addressed).
    SequenceNumber end = proxy.start - 1;
    for (const auto & [guid, other] : readers_) {
      if (guid != reader && other.reliable && other.locator == locator) {
        end = std::min(end, other.needed_from() - 1);
      }
    }
    if (end >= 1) {
      out.push_back({locator, Gap{config_.writer, 1, end}});
      ++stats_.gaps;
    }
  }
  if (reliable && proxy.needed_from() <= history_.last_added()) {
    next_heartbeat_ = now;
  }
  release();
}

void WriterSession::remove_reader(const Guid & reader)
{
  readers_.erase(reader);
  release();
}

SequenceNumber WriterSession::write(dcps::InstanceHandle instance, Timestamp source_timestamp,
  std::shared_ptr<const Bytes> payload, Timestamp now, std::vector<Outgoing> & out)
{
  dcps::CacheChange change;
  change.sequence = history_.last_added() + 1;
  change.instance = instance;
  change.source_timestamp = source_timestamp;
  change.payload = std::move(payload);
  history_.add(change);

  std::set<Locator> sent;
  bool any_reliable = false;
  for (const auto & [guid, proxy] : readers_) {
    any_reliable = any_reliable || proxy.reliable;
    if (sent.insert(proxy.locator).second) {
      out.push_back({proxy.locator, make_data(change, kEntityIdUnknown)});
      ++stats_.data_sent;
    }
  }
  if (any_reliable && !next_heartbeat_) {
    next_heartbeat_ = now + config_.heartbeat_period;
  }
  release();
  return change.sequence;
}

void WriterSession::on_acknack(const Guid & reader, const AckNack & acknack, Timestamp now,
  std::vector<Outgoing> & out)
{
  auto it = readers_.find(reader);
  if (it == readers_.end() || !it->second.reliable) {
    return;
  }
  ++stats_.acknacks;
  auto & proxy = it->second;
  const SequenceNumber last = history_.last_added();
  proxy.acked_base = std::max(proxy.acked_base, std::min(acknack.base, last + 1));
  proxy.last_resent.erase(proxy.last_resent.begin(),
    proxy.last_resent.lower_bound(proxy.acked_base));

  std::optional<Gap> gap;
  auto flush_gap = [&]() {
      if (gap) {
        out.push_back({proxy.locator, *gap});
        ++stats_.gaps;
        gap.reset();
      }
    };
  for (SequenceNumber seq : acknack.requested()) {
    if (seq > last || seq < proxy.acked_base) {
      continue;
    }
    const auto * change = history_.find(seq);
    if (change && needed_at_locator(seq, proxy.locator)) {
      flush_gap();
      auto [at, fresh] = proxy.last_resent.try_emplace(seq, now);
      if (!fresh && now - at->second < config_.response_delay) {
        continue;
      }
      at->second = now;
      out.push_back({proxy.locator, make_data(*change, reader.entity)});
      ++stats_.retransmits;
      continue;
    }
    if (gap && seq <= gap->end + 1) {
      gap->end = std::max(gap->end, seq);
    } else {
      flush_gap();
      gap = Gap{config_.writer, seq, seq};
    }
    if (!change) {
      // Everything up to the next held sequence is gone as well.
      auto next = history_.changes().upper_bound(seq);
      gap->end = std::max(gap->end,
          next == history_.changes().end() ? last : next->first - 1);
    }
  }
  flush_gap();
  release();
  if (!all_acknowledged() && !next_heartbeat_) {
    next_heartbeat_ = now + config_.heartbeat_period;
  }
}

void WriterSession::step(Timestamp now, std::vector<Outgoing> & out)
{
  if (!next_heartbeat_ || now < *next_heartbeat_) {
    return;
  }
  if (all_acknowledged()) {
    next_heartbeat_.reset();
    return;
  }
  ++heartbeat_count_;
  const Heartbeat hb{config_.writer, history_.first(), history_.last_added(), heartbeat_count_};
  std::set<Locator> sent;
  for (const auto & [guid, proxy] : readers_) {
    if (proxy.reliable && proxy.needed_from() <= hb.last && sent.insert(proxy.locator).second) {
      out.push_back({proxy.locator, hb});
      ++stats_.heartbeats;
    }
  }
  next_heartbeat_ = now + config_.heartbeat_period;
}

bool WriterSession::all_acknowledged() const
{
  for (const auto & [guid, proxy] : readers_) {
    if (proxy.reliable && proxy.needed_from() <= history_.last_added()) {
      return false;
    }
  }
  return true;
}

std::optional<SequenceNumber> WriterSession::acknowledged_base(const Guid & reader) const
{
  auto it = readers_.find(reader);
  if (it == readers_.end()) {
    return std::nullopt;
  }
  return it->second.needed_from();
}

void WriterSession::release()
{
  if (config_.transient_local) {
    return;
  }
  SequenceNumber floor = history_.last_added() + 1;
  for (const auto & [guid, proxy] : readers_) {
    if (proxy.reliable) {
      floor = std::min(floor, proxy.needed_from());
    }
  }
  while (!history_.empty() && history_.changes().begin()->first < floor) {
    history_.remove(history_.changes().begin()->first);
  }
}

bool ReliableReaderSession::in_gap(SequenceNumber seq) const
{
  auto it = gaps_.upper_bound(seq);
  if (it == gaps_.begin()) {
    return false;
  }
  --it;
  return it->second >= seq;
}

void ReliableReaderSession::add_gap(SequenceNumber start, SequenceNumber end)
{
  start = std::max(start, base_);
  if (end < start) {
    return;
  }
  // Keep ranges disjoint and non-adjacent.
  auto it = gaps_.upper_bound(start);
  if (it != gaps_.begin() && std::prev(it)->second + 1 >= start) {
    --it;
    start = it->first;
    end = std::max(end, it->second);
    it = gaps_.erase(it);
  }
  while (it != gaps_.end() && it->first <= end + 1) {
    end = std::max(end, it->second);
    it = gaps_.erase(it);
  }
  gaps_[start] = end;
}

void ReliableReaderSession::drain(std::vector<Data> & out)
{
  for (;;) {
    auto held = held_.begin();
    if (held != held_.end() && held->first == base_) {
      out.push_back(std::move(held->second));
      held_.erase(held);
      ++base_;
      ++stats_.delivered;
      continue;
    }
    if (!in_gap(base_)) {
      break;
    }
    auto range = std::prev(gaps_.upper_bound(base_));
    SequenceNumber next = range->second + 1;
    if (held != held_.end()) {
      next = std::min(next, held->first);
    }
    stats_.skipped += next - base_;
    base_ = next;
  }
  while (!gaps_.empty() && gaps_.begin()->second < base_) {
    gaps_.erase(gaps_.begin());
  }
}

std::vector<Data> ReliableReaderSession::on_data(Data data)
{
  std::vector<Data> out;
  const auto seq = data.sequence;
  if (seq < base_ || held_.count(seq)) {
    ++stats_.duplicates;
    return out;
  }
  held_.emplace(seq, std::move(data));
  drain(out);
  return out;
}

std::vector<Data> ReliableReaderSession::on_gap(const Gap & gap)
{
  std::vector<Data> out;
  add_gap(gap.start, gap.end);
  drain(out);
  return out;
}

ReliableReaderSession::HeartbeatResult ReliableReaderSession::on_heartbeat(
  const Heartbeat & heartbeat)
{
  HeartbeatResult r;
  if (last_count_ && heartbeat.count <= *last_count_) {
    return r;
  }
  last_count_ = heartbeat.count;
  if (heartbeat.first > base_) {
    add_gap(base_, heartbeat.first - 1);
    drain(r.deliver);
  }
  AckNack an;
  an.reader = reader_;
  an.writer = writer_;
  an.base = base_;
  if (heartbeat.last >= base_) {
    const auto length = std::min<SequenceNumber>(heartbeat.last - base_ + 1, kMaxBitmapLength);
    an.missing.assign(length, false);
    bool any = false;
    for (SequenceNumber i = 0; i < length; ++i) {
      const auto seq = base_ + i;
      an.missing[i] = !held_.count(seq) && !in_gap(seq);
      any = any || an.missing[i];
    }
    if (!any) {
      an.missing.clear();
    }
  }
  ++stats_.acknacks;
  r.acknack = std::move(an);
  return r;
}

std::optional<Data> BestEffortReaderSession::on_data(Data data)
{
  if (data.sequence <= last_) {
    ++stats_.duplicates;
    return std::nullopt;
  }
  if (last_ > 0) {
    stats_.lost += data.sequence - last_ - 1;
  }
  last_ = data.sequence;
  ++stats_.delivered;
  return data;
}

}  // namespace minidds::rtps
