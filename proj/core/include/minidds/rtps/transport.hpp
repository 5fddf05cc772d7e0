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

#ifndef MINIDDS__RTPS__TRANSPORT_HPP_
#define MINIDDS__RTPS__TRANSPORT_HPP_

#include <condition_variable>
#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "minidds/rtps/wire.hpp"
#include "minidds/time.hpp"

namespace minidds::rtps
{

struct Datagram
{
  Locator source;
  Bytes bytes;

  friend bool operator==(const Datagram &, const Datagram &) = default;
};

/// Datagram endpoint of one participant.
class Transport
{
public:
  virtual ~Transport() = default;

  /// Address peers use to reach this endpoint.
  virtual Locator local_locator() const = 0;

  /// Best effort; returns false when the datagram could not be handed to
  /// the network.
  virtual bool send(const Locator & to, std::span<const std::uint8_t> bytes) = 0;

  /// Waits up to `timeout` for one datagram. A zero timeout polls.
  virtual std::optional<Datagram> receive(Duration timeout) = 0;
};

inline constexpr std::uint16_t kBasePort = 7400;
/// Multicast discovery listens on its own port so that unicast ports can
/// stay exclusive per participant.
inline constexpr std::uint16_t kMulticastBasePort = 7900;
inline constexpr std::array<std::uint8_t, 4> kDefaultMulticastAddress = {239, 255, 0, 1};

inline std::uint16_t default_unicast_port(std::uint32_t domain_id)
{
  return static_cast<std::uint16_t>(kBasePort + domain_id);
}

inline Locator default_multicast_group(std::uint32_t domain_id)
{
  return Locator{kDefaultMulticastAddress, static_cast<std::uint16_t>(kMulticastBasePort + domain_id)};
}

struct UdpTransportConfig
{
  std::uint32_t domain_id = 0;
  /// Exact port to bind. When unset the default port is tried first,
  /// then the following ports.
  std::optional<std::uint16_t> port;
  /// Unicast address advertised to peers.
  std::array<std::uint8_t, 4> advertise_address = {127, 0, 0, 1};
  bool multicast = false;
  Locator multicast_group = default_multicast_group(0);
  int receive_buffer_bytes = 4 * 1024 * 1024;
};

/// UDP over IPv4 using one unicast socket and, when enabled, one socket
/// joined to the discovery multicast group.
class UdpTransport final : public Transport
{
public:
  /// Throws Error(kTransportUnavailable) when no port can be bound.
  explicit UdpTransport(const UdpTransportConfig & config);
  ~UdpTransport() override;

  UdpTransport(const UdpTransport &) = delete;
  UdpTransport & operator=(const UdpTransport &) = delete;

  Locator local_locator() const override {return local_;}
  bool send(const Locator & to, std::span<const std::uint8_t> bytes) override;
  std::optional<Datagram> receive(Duration timeout) override;

  bool multicast_active() const noexcept {return multicast_fd_ >= 0;}

private:
  int unicast_fd_ = -1;
  int multicast_fd_ = -1;
  Locator local_;
  bool send_error_logged_ = false;
};

struct LossyTransportConfig
{
  double drop_probability = 0.0;
  double duplicate_probability = 0.0;
  /// A datagram may overtake up to this many undelivered datagrams.
  std::uint32_t max_reorder_depth = 0;
  std::uint64_t seed = 0;
};

struct LossyStats
{
  std::uint64_t offered = 0;
  std::uint64_t dropped = 0;
  std::uint64_t duplicated = 0;
  std::uint64_t delivered = 0;
};

/// Seeded fault injector in front of one receive queue.
///
/// Per pushed datagram, in this order: drop with drop_probability;
/// otherwise enqueue it, plus a second copy with duplicate_probability.
/// Each copy is inserted k positions before the tail of the undelivered
/// queue, k uniform in [0, min(max_reorder_depth, queue length)].
class LossyLink
{
public:
  explicit LossyLink(LossyTransportConfig config);

  void push(Datagram datagram);
  std::optional<Datagram> pop();
  std::size_t pending() const noexcept {return queue_.size();}
  const LossyStats & stats() const noexcept {return stats_;}

private:
  double uniform();
  void enqueue(Datagram datagram);

  LossyTransportConfig config_;
  std::mt19937_64 rng_;
  std::deque<Datagram> queue_;
  LossyStats stats_;
};

/// Pushes the whole stream through one LossyLink, then drains it.
std::vector<Bytes> apply_lossy(const LossyTransportConfig & config,
  const std::vector<Bytes> & stream);

/// In-process datagram network for tests and single-process runs. Every
/// endpoint receives through its own LossyLink, seeded from the network
/// seed and the endpoint's creation index.
class InProcessNetwork : public std::enable_shared_from_this<InProcessNetwork>
{
public:
  static std::shared_ptr<InProcessNetwork> create(LossyTransportConfig config = {});

  /// New endpoint at 127.0.0.1 with the given or the next free port.
  /// Throws Error(kTransportUnavailable) if the port is taken.
  std::unique_ptr<Transport> create_transport(std::optional<std::uint16_t> port = std::nullopt,
    bool join_multicast = true);

  /// Group address delivered to every joined endpoint except the sender.
  Locator multicast_group() const {return default_multicast_group(0);}

  /// Totals over all endpoint links.
  LossyStats stats() const;

  /// Datagrams sent, before loss, per submessage kind of their first
  /// submessage.
  std::map<SubmessageKind, std::uint64_t> sent_by_kind() const;

  explicit InProcessNetwork(LossyTransportConfig config);

private:
  class Endpoint;
  friend class Endpoint;

  void deliver(const Locator & from, const Locator & to, std::span<const std::uint8_t> bytes);
  std::optional<Datagram> take(std::uint16_t port, Duration timeout);
  void detach(std::uint16_t port);

  struct Slot
  {
    std::unique_ptr<LossyLink> link;
    bool multicast = false;
  };

  LossyTransportConfig config_;
  mutable std::mutex mutex_;
  std::condition_variable cv_;
  std::map<std::uint16_t, Slot> slots_;
  std::uint16_t next_port_ = kBasePort;
  std::uint64_t created_ = 0;
  LossyStats retired_;
  std::map<SubmessageKind, std::uint64_t> sent_by_kind_;
};

}  // namespace minidds::rtps

#endif  // MINIDDS__RTPS__TRANSPORT_HPP_
