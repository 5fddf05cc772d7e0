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

#ifndef MINIDDS__RTPS__SESSION_HPP_
#define MINIDDS__RTPS__SESSION_HPP_

#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "minidds/dcps/history.hpp"
#include "minidds/rtps/wire.hpp"
#include "minidds/time.hpp"

namespace minidds::rtps
{

/// One submessage addressed to one locator. Callers bundle these into
/// datagrams.
struct Outgoing
{
  Locator to;
  Submessage submessage;
};

struct WriterSessionConfig
{
  EntityId writer;
  Duration heartbeat_period = std::chrono::milliseconds(50);
  /// A sequence is retransmitted to a reader at most once per window.
  Duration response_delay = std::chrono::milliseconds(5);
  /// TRANSIENT_LOCAL keeps samples per HISTORY for late joiners; VOLATILE
  /// releases them once every reliable reader acknowledged them.
  bool transient_local = false;
};

struct WriterSessionStats
{
  std::uint64_t data_sent = 0;
  std::uint64_t retransmits = 0;
  std::uint64_t heartbeats = 0;
  std::uint64_t gaps = 0;
  std::uint64_t acknacks = 0;
};

/// Writer half of the reliability protocol. A single-threaded state
/// machine driven by (event, now); every method appends what must be sent
/// to `out`.
class WriterSession
{
public:
  WriterSession(WriterSessionConfig config, qos::HistoryQos history,
    qos::ResourceLimitsQos limits);

  /// `wants_history` requests the held samples (TRANSIENT_LOCAL on both
  /// sides); otherwise the reader starts after the last written sequence.
  void add_reader(const Guid & reader, const Locator & locator, bool reliable,
    bool wants_history, Timestamp now, std::vector<Outgoing> & out);
  void remove_reader(const Guid & reader);
  bool has_reader(const Guid & reader) const {return readers_.count(reader) > 0;}
  std::size_t reader_count() const noexcept {return readers_.size();}

  bool can_write(dcps::InstanceHandle instance) const {return history_.can_add(instance);}

  /// Assigns the next sequence and sends one DATA per distinct reader
  /// locator. Throws Error(kResourceLimits) when the history is full.
  dcps::SequenceNumber write(dcps::InstanceHandle instance, Timestamp source_timestamp,
    std::shared_ptr<const Bytes> payload, Timestamp now, std::vector<Outgoing> & out);

  /// `reader` is the full guid of the acknowledging reader.
  void on_acknack(const Guid & reader, const AckNack & acknack, Timestamp now,
    std::vector<Outgoing> & out);

  /// Emits HEARTBEATs while any reliable reader has unacknowledged data.
  void step(Timestamp now, std::vector<Outgoing> & out);

  /// True when every reliable reader acknowledged every written sequence.
  bool all_acknowledged() const;
  /// Lowest sequence still needed by `reader`, or nullopt if unknown.
  std::optional<dcps::SequenceNumber> acknowledged_base(const Guid & reader) const;

  const dcps::WriterHistory & history() const noexcept {return history_;}
  const WriterSessionStats & stats() const noexcept {return stats_;}
  const WriterSessionConfig & config() const noexcept {return config_;}

private:
  struct ReaderProxy
  {
    Locator locator;
    bool reliable = false;
    dcps::SequenceNumber start = 1;
    dcps::SequenceNumber acked_base = 1;
    std::map<dcps::SequenceNumber, Timestamp> last_resent;

    dcps::SequenceNumber needed_from() const {return std::max(start, acked_base);}
  };

  Data make_data(const dcps::CacheChange & change, EntityId reader) const;
  bool needed_at_locator(dcps::SequenceNumber seq, const Locator & locator) const;
  void release();

  WriterSessionConfig config_;
  dcps::WriterHistory history_;
  std::map<Guid, ReaderProxy> readers_;
  std::uint32_t heartbeat_count_ = 0;
  std::optional<Timestamp> next_heartbeat_;
  WriterSessionStats stats_;
};

struct ReaderSessionStats
{
  std::uint64_t delivered = 0;
  std::uint64_t duplicates = 0;
  /// Sequences skipped because the writer declared them unrecoverable.
  std::uint64_t skipped = 0;
  /// Best effort only: sequences never seen between delivered ones.
  std::uint64_t lost = 0;
  std::uint64_t acknacks = 0;
};

/// Reader half of the reliability protocol for one matched writer.
/// Delivers DATA strictly in sequence order without duplicates.
class ReliableReaderSession
{
public:
  ReliableReaderSession(EntityId reader, Guid writer) : reader_(reader), writer_(writer) {}

  /// Returns the samples that became deliverable, in sequence order.
  std::vector<Data> on_data(Data data);
  std::vector<Data> on_gap(const Gap & gap);

  struct HeartbeatResult
  {
    std::vector<Data> deliver;
    std::optional<AckNack> acknack;
  };
  /// Replies with the lowest missing sequence and a bitmap of the missing
  /// ones within 256 of it. Stale heartbeat counts are ignored.
  HeartbeatResult on_heartbeat(const Heartbeat & heartbeat);

  /// Every sequence below base was delivered or skipped.
  dcps::SequenceNumber base() const noexcept {return base_;}
  std::size_t held() const noexcept {return held_.size();}
  const ReaderSessionStats & stats() const noexcept {return stats_;}

private:
  void add_gap(dcps::SequenceNumber start, dcps::SequenceNumber end);
  bool in_gap(dcps::SequenceNumber seq) const;
  void drain(std::vector<Data> & out);

  EntityId reader_;
  Guid writer_;
  dcps::SequenceNumber base_ = 1;
  std::map<dcps::SequenceNumber, Data> held_;
  std::map<dcps::SequenceNumber, dcps::SequenceNumber> gaps_;  // start -> end
  std::optional<std::uint32_t> last_count_;
  ReaderSessionStats stats_;
};

/// Reader side of best-effort delivery: drops stale sequences and counts
/// the holes as losses.
class BestEffortReaderSession
{
public:
  std::optional<Data> on_data(Data data);

  dcps::SequenceNumber last() const noexcept {return last_;}
  const ReaderSessionStats & stats() const noexcept {return stats_;}

private:
  dcps::SequenceNumber last_ = 0;
  ReaderSessionStats stats_;
};

}  // namespace minidds::rtps

#endif  // MINIDDS__RTPS__SESSION_HPP_
