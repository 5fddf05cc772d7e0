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

#include "minidds/rtps/transport.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "minidds/log.hpp"

namespace minidds::rtps
{

namespace
{

sockaddr_in to_sockaddr(const Locator & l)
{
  sockaddr_in sa{};
  sa.sin_family = AF_INET;
  sa.sin_port = htons(l.port);
  std::memcpy(&sa.sin_addr.s_addr, l.address.data(), 4);
  return sa;
}

Locator from_sockaddr(const sockaddr_in & sa)
{
  Locator l;
  std::memcpy(l.address.data(), &sa.sin_addr.s_addr, 4);
  l.port = ntohs(sa.sin_port);
  return l;
}

bool is_multicast(const Locator & l) {return (l.address[0] & 0xF0) == 0xE0;}

int bind_udp(std::uint16_t port, const std::array<std::uint8_t, 4> & address, bool reuse)
{
  int fd = ::socket(AF_INET, SOCK_DGRAM, 0);
  if (fd < 0) {
    return -1;
  }
  if (reuse) {
    int one = 1;
    ::setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  }
  sockaddr_in sa = to_sockaddr(Locator{address, port});
  if (::bind(fd, reinterpret_cast<sockaddr *>(&sa), sizeof(sa)) != 0) {
    ::close(fd);
    return -1;
  }
  return fd;
}

constexpr int kPortAttempts = 64;

}  // namespace

UdpTransport::UdpTransport(const UdpTransportConfig & config)
{
  const std::uint16_t first = config.port.value_or(default_unicast_port(config.domain_id));
  const int attempts = config.port ? 1 : kPortAttempts;
  for (int i = 0; i < attempts && unicast_fd_ < 0; ++i) {
    const auto port = static_cast<std::uint16_t>(first + i);
    unicast_fd_ = bind_udp(port, {0, 0, 0, 0}, false);
    if (unicast_fd_ >= 0) {
      local_ = Locator{config.advertise_address, port};
    }
  }
  if (unicast_fd_ < 0) {
    throw Error(Errc::kTransportUnavailable,
            "cannot bind UDP port " + std::to_string(first) +
            (attempts > 1 ? " or the following " + std::to_string(attempts - 1) : std::string()) +
            ": " + std::strerror(errno));
  }
  ::setsockopt(unicast_fd_, SOL_SOCKET, SO_RCVBUF, &config.receive_buffer_bytes,
    sizeof(config.receive_buffer_bytes));
  ::setsockopt(unicast_fd_, SOL_SOCKET, SO_SNDBUF, &config.receive_buffer_bytes,
    sizeof(config.receive_buffer_bytes));
  int loop = 1;
  ::setsockopt(unicast_fd_, IPPROTO_IP, IP_MULTICAST_LOOP, &loop, sizeof(loop));

  if (config.multicast) {
    multicast_fd_ = bind_udp(config.multicast_group.port, config.multicast_group.address, true);
    ip_mreq mreq{};
    std::memcpy(&mreq.imr_multiaddr.s_addr, config.multicast_group.address.data(), 4);
    mreq.imr_interface.s_addr = htonl(INADDR_ANY);
    if (multicast_fd_ < 0 ||
      ::setsockopt(multicast_fd_, IPPROTO_IP, IP_ADD_MEMBERSHIP, &mreq, sizeof(mreq)) != 0)
    {
      log(LogLevel::kWarning, "multicast discovery on " + to_string(config.multicast_group) +
        " unavailable (" + std::strerror(errno) + "); relying on static peers");
      if (multicast_fd_ >= 0) {
        ::close(multicast_fd_);
      }
      multicast_fd_ = -1;
    }
  }
}

UdpTransport::~UdpTransport()
{
  if (unicast_fd_ >= 0) {
    ::close(unicast_fd_);
  }
  if (multicast_fd_ >= 0) {
    ::close(multicast_fd_);
  }
}

bool UdpTransport::send(const Locator & to, std::span<const std::uint8_t> bytes)
{
  sockaddr_in sa = to_sockaddr(to);
  auto n = ::sendto(unicast_fd_, bytes.data(), bytes.size(), 0,
      reinterpret_cast<sockaddr *>(&sa), sizeof(sa));
  if (n < 0) {
    if (!send_error_logged_) {
      send_error_logged_ = true;
      log(LogLevel::kWarning, "UDP send to " + to_string(to) + " failed: " + std::strerror(errno));
    }
    return false;
  }
  return true;
}

std::optional<Datagram> UdpTransport::receive(Duration timeout)
{
  pollfd fds[2] = {{unicast_fd_, POLLIN, 0}, {multicast_fd_, POLLIN, 0}};
  const nfds_t count = multicast_fd_ >= 0 ? 2 : 1;
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(timeout).count();
  int wait_ms = timeout <= Duration{0} ? 0 :
    static_cast<int>(std::min<std::int64_t>(std::max<std::int64_t>(ms, 1), 1000));
  if (::poll(fds, count, wait_ms) <= 0) {
    return std::nullopt;
  }
  for (nfds_t i = 0; i < count; ++i) {
    if (!(fds[i].revents & POLLIN)) {
      continue;
    }
    Datagram d;
    d.bytes.resize(65536);
    sockaddr_in from{};
    socklen_t len = sizeof(from);
    auto n = ::recvfrom(fds[i].fd, d.bytes.data(), d.bytes.size(), 0,
        reinterpret_cast<sockaddr *>(&from), &len);
    if (n < 0) {
      continue;
    }
    d.bytes.resize(static_cast<std::size_t>(n));
    d.source = from_sockaddr(from);
    return d;
  }
  return std::nullopt;
}

LossyLink::LossyLink(LossyTransportConfig config)
: config_(config), rng_(config.seed)
{
}

double LossyLink::uniform()
{
  return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
}

void LossyLink::enqueue(Datagram datagram)
{
  std::size_t back = 0;
  if (config_.max_reorder_depth > 0 && !queue_.empty()) {
    const auto span = std::min<std::size_t>(config_.max_reorder_depth, queue_.size());
    back = static_cast<std::size_t>(rng_() % (span + 1));
  }
  queue_.insert(queue_.end() - static_cast<std::ptrdiff_t>(back), std::move(datagram));
}

void LossyLink::push(Datagram datagram)
{
  ++stats_.offered;
  if (config_.drop_probability > 0.0 && uniform() < config_.drop_probability) {
    ++stats_.dropped;
    return;
  }
  if (config_.duplicate_probability > 0.0 && uniform() < config_.duplicate_probability) {
    ++stats_.duplicated;
    enqueue(datagram);
  }
  enqueue(std::move(datagram));
}

std::optional<Datagram> LossyLink::pop()
{
  if (queue_.empty()) {
    return std::nullopt;
  }
  Datagram d = std::move(queue_.front());
  queue_.pop_front();
  ++stats_.delivered;
  return d;
}

std::vector<Bytes> apply_lossy(const LossyTransportConfig & config,
  const std::vector<Bytes> & stream)
{
  LossyLink link(config);
  for (const auto & b : stream) {
    link.push(Datagram{{}, b});
  }
  std::vector<Bytes> out;
  while (auto d = link.pop()) {
    out.push_back(std::move(d->bytes));
  }
  return out;
}

class InProcessNetwork::Endpoint final : public Transport
{
public:
  Endpoint(std::shared_ptr<InProcessNetwork> net, std::uint16_t port)
  : net_(std::move(net)), port_(port) {}
  ~Endpoint() override {net_->detach(port_);}

  Locator local_locator() const override {return Locator{{127, 0, 0, 1}, port_};}

  bool send(const Locator & to, std::span<const std::uint8_t> bytes) override
  {
    net_->deliver(local_locator(), to, bytes);
    return true;
  }

  std::optional<Datagram> receive(Duration timeout) override {return net_->take(port_, timeout);}

private:
  std::shared_ptr<InProcessNetwork> net_;
  std::uint16_t port_;
};

std::shared_ptr<InProcessNetwork> InProcessNetwork::create(LossyTransportConfig config)
{
  return std::make_shared<InProcessNetwork>(config);
}

InProcessNetwork::InProcessNetwork(LossyTransportConfig config)
: config_(config)
{
}

std::unique_ptr<Transport> InProcessNetwork::create_transport(
  std::optional<std::uint16_t> port, bool join_multicast)
{
  std::lock_guard<std::mutex> lock(mutex_);
  std::uint16_t chosen = port.value_or(next_port_);
  if (!port) {
    while (slots_.count(chosen)) {
      ++chosen;
    }
  } else if (slots_.count(chosen)) {
    throw Error(Errc::kTransportUnavailable,
            "in-process port " + std::to_string(chosen) + " already in use");
  }
  next_port_ = static_cast<std::uint16_t>(std::max<int>(next_port_, chosen + 1));
  LossyTransportConfig link_config = config_;
  // splitmix-style spread so that endpoint streams are independent.
  link_config.seed = config_.seed + 0x9E3779B97F4A7C15ull * (++created_);
  slots_[chosen] = Slot{std::make_unique<LossyLink>(link_config), join_multicast};
  return std::make_unique<Endpoint>(shared_from_this(), chosen);
}

void InProcessNetwork::deliver(const Locator & from, const Locator & to,
  std::span<const std::uint8_t> bytes)
{
  {
    std::lock_guard<std::mutex> lock(mutex_);
    if (bytes.size() > kHeaderSize) {
      ++sent_by_kind_[static_cast<SubmessageKind>(bytes[kHeaderSize])];
    }
    Datagram d{from, Bytes(bytes.begin(), bytes.end())};
    if (is_multicast(to)) {
      for (auto & [port, slot] : slots_) {
        if (slot.multicast && port != from.port) {
          slot.link->push(d);
        }
      }
    } else if (to.address == std::array<std::uint8_t, 4>{127, 0, 0, 1}) {
      auto it = slots_.find(to.port);
      if (it != slots_.end()) {
        it->second.link->push(std::move(d));
      }
    }
  }
  cv_.notify_all();
}

std::optional<Datagram> InProcessNetwork::take(std::uint16_t port, Duration timeout)
{
  std::unique_lock<std::mutex> lock(mutex_);
  auto ready = [this, port]() {
      auto it = slots_.find(port);
      return it != slots_.end() && it->second.link->pending() > 0;
    };
  if (!ready() && timeout > Duration{0}) {
    cv_.wait_for(lock, std::min<Duration>(timeout, std::chrono::seconds(1)), ready);
  }
  auto it = slots_.find(port);
  if (it == slots_.end()) {
    return std::nullopt;
  }
  return it->second.link->pop();
}

void InProcessNetwork::detach(std::uint16_t port)
{
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = slots_.find(port);
  if (it != slots_.end()) {
    const auto & s = it->second.link->stats();
    retired_.offered += s.offered;
    retired_.dropped += s.dropped;
    retired_.duplicated += s.duplicated;
    retired_.delivered += s.delivered;
    slots_.erase(it);
  }
}

LossyStats InProcessNetwork::stats() const
{
  std::lock_guard<std::mutex> lock(mutex_);
  LossyStats total = retired_;
  for (const auto & [port, slot] : slots_) {
    const auto & s = slot.link->stats();
    total.offered += s.offered;
    total.dropped += s.dropped;
    total.duplicated += s.duplicated;
    total.delivered += s.delivered;
  }
  return total;
}

std::map<SubmessageKind, std::uint64_t> InProcessNetwork::sent_by_kind() const
{
  std::lock_guard<std::mutex> lock(mutex_);
  return sent_by_kind_;
}

}  // namespace minidds::rtps
