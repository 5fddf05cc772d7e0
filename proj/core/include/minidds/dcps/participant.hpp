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

#ifndef MINIDDS__DCPS__PARTICIPANT_HPP_
#define MINIDDS__DCPS__PARTICIPANT_HPP_

#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "minidds/dcps/endpoint.hpp"
#include "minidds/dcps/reader_cache.hpp"
#include "minidds/idl/types.hpp"
#include "minidds/qos/profile.hpp"
#include "minidds/rtps/session.hpp"
#include "minidds/rtps/transport.hpp"
#include "minidds/time.hpp"

namespace minidds::dcps
{

namespace detail
{
class Core;
}  // namespace detail

struct ParticipantConfig
{
  /// In-process network to attach to. When null the participant binds UDP.
  std::shared_ptr<rtps::InProcessNetwork> network;
  /// Unicast port; the default is 7400 + domain id with fallback upwards.
  std::optional<std::uint16_t> port;
  /// Static discovery destinations, announced to every period.
  std::vector<rtps::Locator> peers;
  /// Join the domain's multicast discovery group (UDP only).
  bool multicast = true;
  std::array<std::uint8_t, 4> advertise_address = {127, 0, 0, 1};

  Duration announce_period = std::chrono::seconds(1);
  Duration heartbeat_period = std::chrono::milliseconds(50);
  Duration response_delay = std::chrono::milliseconds(5);
  /// How long a full KEEP_ALL writer blocks before ResourceLimits.
  Duration max_blocking_time = std::chrono::milliseconds(100);

  /// Defaults to SystemClock.
  std::shared_ptr<Clock> clock;
  /// Run a receive/dispatch thread. When false the owner calls poll().
  bool dispatch_thread = true;
};

struct ParticipantStats
{
  std::uint64_t datagrams_sent = 0;
  std::uint64_t datagrams_received = 0;
  std::uint64_t bytes_sent = 0;
  std::uint64_t send_failures = 0;
  std::uint64_t decode_errors = 0;
};

/// A remote endpoint that shares a topic with a local one but could not be
/// matched.
struct IncompatibleMatch
{
  Guid remote;
  MatchFailure failure = MatchFailure::kNone;
  std::string report;
};

class Topic
{
public:
  Topic(std::string name, idl::TypeDescriptor type, qos::QosProfile qos)
  : name_(std::move(name)), type_(std::move(type)), qos_(std::move(qos)) {}

  const std::string & name() const noexcept {return name_;}
  const idl::TypeDescriptor & type() const noexcept {return type_;}
  const qos::QosProfile & qos() const noexcept {return qos_;}

private:
  std::string name_;
  idl::TypeDescriptor type_;
  qos::QosProfile qos_;
};

/// Holds the group policies (PARTITION, PRESENTATION, GROUP_DATA) applied
/// to its writers or readers.
class Publisher
{
public:
  explicit Publisher(qos::QosProfile qos) : qos_(std::move(qos)) {}
  const qos::QosProfile & qos() const noexcept {return qos_;}

private:
  qos::QosProfile qos_;
};

class Subscriber
{
public:
  explicit Subscriber(qos::QosProfile qos) : qos_(std::move(qos)) {}
  const qos::QosProfile & qos() const noexcept {return qos_;}

private:
  qos::QosProfile qos_;
};

struct WriterStats
{
  std::uint64_t written = 0;
  rtps::WriterSessionStats protocol;
};

class DataWriter
{
public:
  DataWriter(std::shared_ptr<detail::Core> core, EntityId id);
  ~DataWriter();
  DataWriter(const DataWriter &) = delete;
  DataWriter & operator=(const DataWriter &) = delete;

  Guid guid() const;
  const std::shared_ptr<Topic> & topic() const;
  const qos::QosProfile & qos() const;
  const EndpointDescriptor & descriptor() const;

  /// Returns the assigned sequence number. Throws Error(kTypeMismatch),
  /// Error(kSampleTooLarge) or, after max_blocking_time on a full
  /// KEEP_ALL history, Error(kResourceLimits).
  SequenceNumber write(const idl::Sample & sample,
    std::optional<Timestamp> source_timestamp = std::nullopt);

  std::size_t matched_readers() const;
  bool wait_for_matched(std::size_t count, Duration timeout) const;
  /// True once every matched reliable reader acknowledged every write.
  bool wait_for_acknowledgments(Duration timeout) const;
  std::vector<IncompatibleMatch> incompatible() const;
  std::vector<std::pair<InstanceHandle, std::uint64_t>> check_deadlines() const;
  WriterStats stats() const;

private:
  std::shared_ptr<detail::Core> core_;
  EntityId id_;
};

/// A deserialized sample with its metadata.
struct ReceivedSample
{
  idl::Sample data;
  SampleInfo info;
};

struct ReaderProtocolStats
{
  std::uint64_t duplicates = 0;
  std::uint64_t skipped = 0;
  std::uint64_t lost = 0;
  std::uint64_t acknacks = 0;
};

struct DataReaderStats
{
  ReaderStats cache;
  ReaderProtocolStats protocol;
};

class DataReader
{
public:
  DataReader(std::shared_ptr<detail::Core> core, EntityId id);
  ~DataReader();
  DataReader(const DataReader &) = delete;
  DataReader & operator=(const DataReader &) = delete;

  Guid guid() const;
  const std::shared_ptr<Topic> & topic() const;
  const qos::QosProfile & qos() const;
  const EndpointDescriptor & descriptor() const;

  /// Ordered by (instance handle, acceptance). Expired samples are purged
  /// first.
  std::vector<ReceivedSample> read(std::size_t max = 1u << 20);
  std::vector<ReceivedSample> take(std::size_t max = 1u << 20);
  std::size_t available() const;

  /// Blocks until the cache is non-empty or `timeout` passes.
  bool wait_for_data(Duration timeout) const;
  std::size_t matched_writers() const;
  bool wait_for_matched(std::size_t count, Duration timeout) const;
  std::vector<IncompatibleMatch> incompatible() const;
  std::vector<std::pair<InstanceHandle, std::uint64_t>> check_deadlines() const;
  DataReaderStats stats() const;

  /// Called from the dispatch context after samples were accepted. The
  /// callback must return quickly; debug builds warn when it takes over
  /// 100 ms.
  void set_listener(std::function<void()> on_data_available);

private:
  std::shared_ptr<detail::Core> core_;
  EntityId id_;
};

class DomainParticipant
{
public:
  /// Throws Error(kPreconditionNotMet) for a domain id outside [0, 57635]
  /// and Error(kTransportUnavailable) when the transport cannot be bound.
  static std::shared_ptr<DomainParticipant> create(std::int32_t domain_id,
    ParticipantConfig config = {});

  explicit DomainParticipant(std::shared_ptr<detail::Core> core);
  ~DomainParticipant();
  DomainParticipant(const DomainParticipant &) = delete;
  DomainParticipant & operator=(const DomainParticipant &) = delete;

  std::int32_t domain_id() const;
  GuidPrefix guid_prefix() const;
  rtps::Locator locator() const;

  /// Idempotent for the same name and type name. Throws
  /// Error(kInconsistentTopic) for a different type and QosError(kInvalidQos).
  std::shared_ptr<Topic> create_topic(const std::string & name, const idl::TypeDescriptor & type,
    const qos::QosProfile & qos = qos::QosProfile(qos::EntityKind::kTopic));

  std::shared_ptr<Publisher> create_publisher(
    const qos::QosProfile & qos = qos::QosProfile(qos::EntityKind::kPublisher));
  std::shared_ptr<Subscriber> create_subscriber(
    const qos::QosProfile & qos = qos::QosProfile(qos::EntityKind::kSubscriber));

  /// Effective QoS = topic policies applicable to the endpoint, overridden
  /// per policy by `qos`, plus the group policies of the publisher or
  /// subscriber. Throws QosError(kInvalidQos).
  std::shared_ptr<DataWriter> create_datawriter(const std::shared_ptr<Topic> & topic,
    const qos::QosProfile & qos = qos::QosProfile(qos::EntityKind::kDataWriter),
    const std::shared_ptr<Publisher> & publisher = nullptr);
  std::shared_ptr<DataReader> create_datareader(const std::shared_ptr<Topic> & topic,
    const qos::QosProfile & qos = qos::QosProfile(qos::EntityKind::kDataReader),
    const std::shared_ptr<Subscriber> & subscriber = nullptr);

  /// Manual mode: handles every pending datagram and due timer.
  void poll();
  /// Stops the dispatch thread; further writes fail.
  void close();

  ParticipantStats stats() const;
  std::size_t discovered_participants() const;

private:
  std::shared_ptr<detail::Core> core_;
};

}  // namespace minidds::dcps

#endif  // MINIDDS__DCPS__PARTICIPANT_HPP_
