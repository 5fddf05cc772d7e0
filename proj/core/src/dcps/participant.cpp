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

#include "minidds/dcps/participant.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <map>
#include <mutex>
#include <set>
#include <thread>
#include <variant>

#include "minidds/idl/codec.hpp"
#include "minidds/log.hpp"
#include "minidds/rtps/discovery.hpp"

namespace minidds::dcps
{

namespace detail
{

namespace
{

constexpr Duration kDispatchWait = std::chrono::milliseconds(5);
constexpr auto kListenerBudget = std::chrono::milliseconds(100);
constexpr std::uint8_t kWriterKind = 0x02;
constexpr std::uint8_t kReaderKind = 0x07;

bool is_reliable(const EndpointDescriptor & e)
{
  return e.qos.get<qos::ReliabilityQos>().kind == qos::ReliabilityKind::kReliable;
}

bool is_transient_local(const EndpointDescriptor & e)
{
  return e.qos.get<qos::DurabilityQos>().kind == qos::DurabilityKind::kTransientLocal;
}

qos::QosProfile effective_qos(const Topic & topic, const qos::QosProfile & endpoint,
  qos::EntityKind kind, const qos::QosProfile * group)
{
  if (endpoint.entity_kind() != kind) {
    throw Error(Errc::kInvalidArgument, "endpoint QoS profile has entity kind " +
            std::string(qos::abbreviation(endpoint.entity_kind())));
  }
  auto effective = qos::overlay(qos::restrict_to(topic.qos(), kind), endpoint);
  const auto errors = qos::validate_profile(effective);
  if (!errors.empty()) {
    throw qos::QosError(Errc::kInvalidQos, errors.front().policy, errors.front().message);
  }
  if (group) {
    for (auto id : {qos::QosPolicyId::kPartition, qos::QosPolicyId::kPresentation,
        qos::QosPolicyId::kGroupData})
    {
      if (const auto * v = group->find(id)) {
        effective.put(*v);
      }
    }
  }
  effective.set_enabled(true);
  return effective;
}

}  // namespace

struct WriterEntry
{
  std::shared_ptr<Topic> topic;
  qos::QosProfile qos;
  EndpointDescriptor descriptor;
  std::unique_ptr<rtps::WriterSession> session;
  std::set<Guid> matched;
  std::map<Guid, IncompatibleMatch> incompatible;
  DeadlineTracker deadlines;
  std::uint64_t written = 0;
};

struct ReaderEntry
{
  using Session = std::variant<rtps::ReliableReaderSession, rtps::BestEffortReaderSession>;
  struct Remote
  {
    rtps::Locator locator;
    Session session;
  };

  std::shared_ptr<Topic> topic;
  qos::QosProfile qos;
  EndpointDescriptor descriptor;
  std::unique_ptr<ReaderCache> cache;
  std::map<Guid, Remote> matched;
  std::map<Guid, IncompatibleMatch> incompatible;
  ReaderProtocolStats retired;
  std::shared_ptr<std::function<void()>> listener;
};

class Core
{
public:
  Core(std::int32_t domain_id, ParticipantConfig config);
  ~Core() {stop();}

  void start();
  void stop();
  void poll();

  EntityId add_writer(std::shared_ptr<Topic> topic, const qos::QosProfile & qos,
    const Publisher * publisher);
  EntityId add_reader(std::shared_ptr<Topic> topic, const qos::QosProfile & qos,
    const Subscriber * subscriber);
  void remove_writer(EntityId id);
  void remove_reader(EntityId id);

  SequenceNumber write(EntityId id, const idl::Sample & sample,
    std::optional<Timestamp> source_timestamp);

  Timestamp mono() const {return clock_->monotonic_now();}
  Timestamp wall() const {return clock_->wall_now();}

  template<typename Pred>
  bool wait(std::unique_lock<std::mutex> & lock, Duration timeout, Pred pred) const
  {
    if (!dispatching_) {
      return pred();
    }
    return cv_.wait_for(lock, timeout, pred);
  }

  const std::int32_t domain_id;
  const GuidPrefix prefix;
  const ParticipantConfig config;

  mutable std::mutex mutex;
  std::map<std::string, std::shared_ptr<Topic>> topics;
  std::map<EntityId, WriterEntry> writers;
  std::map<EntityId, ReaderEntry> readers;
  ParticipantStats stats;
  std::unique_ptr<rtps::Transport> transport;
  rtps::DiscoveryDb discovery;
  bool closed = false;

private:
  struct Remote
  {
    EndpointDescriptor descriptor;
    rtps::Locator locator;
  };
  using Listeners = std::vector<std::shared_ptr<std::function<void()>>>;

  void handle(const rtps::Datagram & datagram, Timestamp now, Listeners & listeners);
  void on_data(const GuidPrefix & sender, rtps::Data data, Listeners & listeners);
  void deliver(ReaderEntry & reader, const Guid & writer, std::vector<rtps::Data> samples,
    Listeners & listeners);
  void timers(Timestamp now);
  void announce(Timestamp now);
  void apply(const std::vector<rtps::DiscoveryEvent> & events, Timestamp now);

  void match_local_writer(EntityId id, Timestamp now);
  void match_local_reader(EntityId id, Timestamp now);
  void evaluate(const EndpointDescriptor & w, const rtps::Locator & w_loc,
    const EndpointDescriptor & r, const rtps::Locator & r_loc, Timestamp now);
  void unmatch(const Guid & writer, const Guid & reader);
  void flush();
  void run();
  void call(const Listeners & listeners);

  std::shared_ptr<Clock> clock_;
  std::map<Guid, Remote> remote_;
  std::vector<rtps::Outgoing> out_;
  std::uint32_t next_entity_ = 1;
  Timestamp next_announce_{0};
  bool announce_truncation_logged_ = false;
  mutable std::condition_variable cv_;
  std::atomic<bool> stop_{false};
  std::atomic<bool> dispatching_{false};
  std::thread thread_;
  rtps::Locator multicast_;
  bool multicast_enabled_ = false;
};

Core::Core(std::int32_t domain, ParticipantConfig cfg)
: domain_id(domain), prefix(make_random_prefix()), config(std::move(cfg)),
  discovery(static_cast<std::uint32_t>(domain)),
  clock_(config.clock ? config.clock : std::make_shared<SystemClock>())
{
  const auto d = static_cast<std::uint32_t>(domain);
  if (config.network) {
    transport = config.network->create_transport(config.port);
    multicast_ = config.network->multicast_group();
    multicast_enabled_ = config.multicast;
  } else {
    rtps::UdpTransportConfig u;
    u.domain_id = d;
    u.port = config.port;
    u.advertise_address = config.advertise_address;
    u.multicast = config.multicast;
    u.multicast_group = rtps::default_multicast_group(d);
    auto udp = std::make_unique<rtps::UdpTransport>(u);
    multicast_enabled_ = udp->multicast_active();
    multicast_ = u.multicast_group;
    transport = std::move(udp);
  }
  next_announce_ = mono();
}

void Core::start()
{
  if (config.dispatch_thread) {
    dispatching_ = true;
    thread_ = std::thread([this]() {run();});
  }
}

void Core::stop()
{
  {
    std::lock_guard<std::mutex> lock(mutex);
    closed = true;
  }
  stop_ = true;
  if (thread_.joinable()) {
    thread_.join();
  }
  dispatching_ = false;
  cv_.notify_all();
}

void Core::run()
{
  while (!stop_) {
    auto datagram = transport->receive(kDispatchWait);
    Listeners listeners;
    {
      std::lock_guard<std::mutex> lock(mutex);
      const auto now = mono();
      if (datagram) {
        handle(*datagram, now, listeners);
      }
      timers(now);
      flush();
    }
    cv_.notify_all();
    call(listeners);
  }
}

void Core::poll()
{
  Listeners listeners;
  {
    std::lock_guard<std::mutex> lock(mutex);
    if (closed) {
      return;
    }
    while (auto datagram = transport->receive(Duration{0})) {
      handle(*datagram, mono(), listeners);
      flush();
    }
    timers(mono());
    flush();
  }
  cv_.notify_all();
  call(listeners);
}

void Core::call(const Listeners & listeners)
{
  for (const auto & l : listeners) {
#ifndef NDEBUG
    const auto started = std::chrono::steady_clock::now();
    (*l)();
    if (std::chrono::steady_clock::now() - started > kListenerBudget) {
      log(LogLevel::kWarning, "data listener blocked the dispatch context for over 100 ms");
    }
#else
    (*l)();
#endif
  }
}

void Core::flush()
{
  if (out_.empty()) {
    return;
  }
  // Bundle submessages per destination, keeping each datagram in bounds.
  std::map<rtps::Locator, std::vector<rtps::Submessage>> by_locator;
  std::vector<rtps::Locator> order;
  for (auto & o : out_) {
    auto [it, fresh] = by_locator.try_emplace(o.to);
    if (fresh) {
      order.push_back(o.to);
    }
    it->second.push_back(std::move(o.submessage));
  }
  out_.clear();
  auto send = [this](const rtps::Locator & to, rtps::Message & m) {
      auto bytes = rtps::encode(m);
      ++stats.datagrams_sent;
      stats.bytes_sent += bytes.size();
      if (!transport->send(to, bytes)) {
        ++stats.send_failures;
      }
      m.submessages.clear();
    };
  for (const auto & to : order) {
    rtps::Message m{prefix, {}};
    std::size_t size = rtps::kHeaderSize;
    for (auto & sub : by_locator[to]) {
      std::size_t estimate = rtps::kSubmessageHeaderSize + 64;
      if (const auto * d = std::get_if<rtps::Data>(&sub)) {
        estimate += d->payload.size();
      }
      if (!m.submessages.empty() && size + estimate > rtps::kMaxDatagramSize) {
        send(to, m);
        size = rtps::kHeaderSize;
      }
      m.submessages.push_back(std::move(sub));
      size += estimate;
    }
    if (!m.submessages.empty()) {
      send(to, m);
    }
  }
}

void Core::timers(Timestamp now)
{
  if (now >= next_announce_) {
    apply(discovery.expire(now, config.announce_period), now);
    announce(now);
    next_announce_ = now + config.announce_period;
  }
  for (auto & [id, w] : writers) {
    w.session->step(now, out_);
  }
}

void Core::announce(Timestamp)
{
  rtps::Announce a;
  a.domain_id = static_cast<std::uint32_t>(domain_id);
  a.unicast = transport->local_locator();
  for (const auto & [id, w] : writers) {
    a.endpoints.push_back(w.descriptor);
  }
  for (const auto & [id, r] : readers) {
    a.endpoints.push_back(r.descriptor);
  }
  rtps::Message m{prefix, {a}};
  rtps::Bytes bytes;
  for (;;) {
    try {
      bytes = rtps::encode(m);
      break;
    } catch (const rtps::WireError &) {
      auto & endpoints = std::get<rtps::Announce>(m.submessages[0]).endpoints;
      if (endpoints.empty()) {
        throw;
      }
      endpoints.pop_back();
      if (!announce_truncation_logged_) {
        announce_truncation_logged_ = true;
        log(LogLevel::kWarning, "endpoint set exceeds one datagram; announcing a prefix of it");
      }
    }
  }
  std::set<rtps::Locator> destinations(config.peers.begin(), config.peers.end());
  if (multicast_enabled_) {
    destinations.insert(multicast_);
  }
  for (const auto & l : discovery.participant_locators()) {
    destinations.insert(l);
  }
  destinations.erase(transport->local_locator());
  for (const auto & to : destinations) {
    ++stats.datagrams_sent;
    stats.bytes_sent += bytes.size();
    if (!transport->send(to, bytes)) {
      ++stats.send_failures;
    }
  }
}

void Core::handle(const rtps::Datagram & datagram, Timestamp now, Listeners & listeners)
{
  ++stats.datagrams_received;
  rtps::Message m;
  try {
    m = rtps::decode(datagram.bytes);
  } catch (const rtps::WireError & e) {
    ++stats.decode_errors;
    log(LogLevel::kDebug, "dropping datagram from " + rtps::to_string(datagram.source) + ": " +
      e.what());
    return;
  }
  const bool own = m.sender == prefix;
  for (auto & sub : m.submessages) {
    if (auto * a = std::get_if<rtps::Announce>(&sub)) {
      if (!own) {
        const auto known = discovery.participant_count();
        apply(discovery.on_announce(m.sender, datagram.source, *a, now), now);
        if (discovery.participant_count() > known) {
          // Answer a newcomer right away instead of at the next period.
          next_announce_ = now;
        }
      }
    } else if (auto * d = std::get_if<rtps::Data>(&sub)) {
      on_data(m.sender, std::move(*d), listeners);
    } else if (auto * hb = std::get_if<rtps::Heartbeat>(&sub)) {
      const Guid writer{m.sender, hb->writer};
      for (auto & [id, r] : readers) {
        auto it = r.matched.find(writer);
        if (it == r.matched.end()) {
          continue;
        }
        if (auto * s = std::get_if<rtps::ReliableReaderSession>(&it->second.session)) {
          auto res = s->on_heartbeat(*hb);
          if (res.acknack) {
            out_.push_back({it->second.locator, std::move(*res.acknack)});
          }
          deliver(r, writer, std::move(res.deliver), listeners);
        }
      }
    } else if (auto * gap = std::get_if<rtps::Gap>(&sub)) {
      const Guid writer{m.sender, gap->writer};
      for (auto & [id, r] : readers) {
        auto it = r.matched.find(writer);
        if (it == r.matched.end()) {
          continue;
        }
        if (auto * s = std::get_if<rtps::ReliableReaderSession>(&it->second.session)) {
          deliver(r, writer, s->on_gap(*gap), listeners);
        }
      }
    } else if (auto * an = std::get_if<rtps::AckNack>(&sub)) {
      if (an->writer.prefix != prefix) {
        continue;
      }
      auto it = writers.find(an->writer.entity);
      if (it != writers.end()) {
        it->second.session->on_acknack(Guid{m.sender, an->reader}, *an, now, out_);
      }
    }
  }
}

void Core::on_data(const GuidPrefix & sender, rtps::Data data, Listeners & listeners)
{
  const Guid writer{sender, data.writer};
  for (auto & [id, r] : readers) {
    if (!data.reader.is_unknown() && data.reader != id) {
      continue;
    }
    auto it = r.matched.find(writer);
    if (it == r.matched.end()) {
      continue;
    }
    std::vector<rtps::Data> samples;
    if (auto * s = std::get_if<rtps::ReliableReaderSession>(&it->second.session)) {
      samples = s->on_data(data);
    } else if (auto d = std::get<rtps::BestEffortReaderSession>(it->second.session).on_data(data)) {
      samples.push_back(std::move(*d));
    }
    deliver(r, writer, std::move(samples), listeners);
  }
}

void Core::deliver(ReaderEntry & reader, const Guid & writer, std::vector<rtps::Data> samples,
  Listeners & listeners)
{
  bool accepted = false;
  const auto arrival = mono();
  const auto reception = wall();
  for (auto & d : samples) {
    ReceivedData rd;
    rd.info.writer_guid = writer;
    rd.info.sequence = d.sequence;
    rd.info.instance = d.instance;
    rd.info.source_timestamp = Timestamp{d.source_timestamp};
    rd.info.arrival_timestamp = arrival;
    rd.info.reception_timestamp = reception;
    rd.payload = std::make_shared<const idl::Bytes>(std::move(d.payload));
    accepted = reader.cache->on_data(std::move(rd)) == Disposition::kAccepted || accepted;
  }
  if (accepted && reader.listener) {
    if (std::find(listeners.begin(), listeners.end(), reader.listener) == listeners.end()) {
      listeners.push_back(reader.listener);
    }
  }
}

void Core::apply(const std::vector<rtps::DiscoveryEvent> & events, Timestamp now)
{
  for (const auto & e : events) {
    const auto & guid = e.endpoint.guid;
    if (e.kind == rtps::DiscoveryEvent::Kind::kEndpointRemoved) {
      if (e.endpoint.kind == EndpointKind::kWriter) {
        for (auto & [id, r] : readers) {
          unmatch(guid, Guid{prefix, id});
        }
      } else {
        for (auto & [id, w] : writers) {
          unmatch(Guid{prefix, id}, guid);
        }
      }
      remote_.erase(guid);
      continue;
    }
    remote_[guid] = Remote{e.endpoint, e.locator};
    const auto self = transport->local_locator();
    if (e.endpoint.kind == EndpointKind::kWriter) {
      for (auto & [id, r] : readers) {
        evaluate(e.endpoint, e.locator, r.descriptor, self, now);
      }
    } else {
      for (auto & [id, w] : writers) {
        evaluate(w.descriptor, self, e.endpoint, e.locator, now);
      }
    }
  }
}

void Core::evaluate(const EndpointDescriptor & w, const rtps::Locator & w_loc,
  const EndpointDescriptor & r, const rtps::Locator & r_loc, Timestamp now)
{
  WriterEntry * lw = nullptr;
  ReaderEntry * lr = nullptr;
  if (w.guid.prefix == prefix) {
    auto it = writers.find(w.guid.entity);
    lw = it == writers.end() ? nullptr : &it->second;
  }
  if (r.guid.prefix == prefix) {
    auto it = readers.find(r.guid.entity);
    lr = it == readers.end() ? nullptr : &it->second;
  }
  const auto result = match_endpoints(w, r);
  if (!result.matched) {
    if (result.failure == MatchFailure::kTypeName || result.failure == MatchFailure::kPartition ||
      result.failure == MatchFailure::kIncompatibleQos)
    {
      const std::string report = std::string(to_string(result.failure)) +
        (result.report.violations.empty() ? std::string() : ": " + to_string(result.report));
      if (lw) {
        lw->incompatible[r.guid] = {r.guid, result.failure, report};
      }
      if (lr) {
        lr->incompatible[w.guid] = {w.guid, result.failure, report};
      }
    }
    return;
  }
  if (lw && !lw->matched.count(r.guid)) {
    lw->matched.insert(r.guid);
    lw->incompatible.erase(r.guid);
    lw->session->add_reader(r.guid, r_loc, is_reliable(r),
      is_transient_local(w) && is_transient_local(r), now, out_);
  }
  if (lr && !lr->matched.count(w.guid)) {
    lr->incompatible.erase(w.guid);
    ReaderEntry::Session session = is_reliable(r) ?
      ReaderEntry::Session(rtps::ReliableReaderSession(r.guid.entity, w.guid)) :
      ReaderEntry::Session(rtps::BestEffortReaderSession());
    lr->matched.emplace(w.guid, ReaderEntry::Remote{w_loc, std::move(session)});
    lr->cache->add_writer(w.guid, w.qos.get<qos::OwnershipStrengthQos>().value,
      w.qos.get<qos::LifespanQos>().duration);
  }
}

void Core::unmatch(const Guid & writer, const Guid & reader)
{
  if (writer.prefix == prefix) {
    auto it = writers.find(writer.entity);
    if (it != writers.end()) {
      it->second.incompatible.erase(reader);
      if (it->second.matched.erase(reader)) {
        it->second.session->remove_reader(reader);
      }
    }
  }
  if (reader.prefix == prefix) {
    auto it = readers.find(reader.entity);
    if (it != readers.end()) {
      auto & r = it->second;
      r.incompatible.erase(writer);
      auto m = r.matched.find(writer);
      if (m != r.matched.end()) {
        std::visit([&r](const auto & s) {
            r.retired.duplicates += s.stats().duplicates;
            r.retired.skipped += s.stats().skipped;
            r.retired.lost += s.stats().lost;
            r.retired.acknacks += s.stats().acknacks;
          }, m->second.session);
        r.matched.erase(m);
        r.cache->remove_writer(writer);
      }
    }
  }
}

void Core::match_local_writer(EntityId id, Timestamp now)
{
  const auto & w = writers.at(id).descriptor;
  const auto self = transport->local_locator();
  for (const auto & [guid, remote] : remote_) {
    if (remote.descriptor.kind == EndpointKind::kReader) {
      evaluate(w, self, remote.descriptor, remote.locator, now);
    }
  }
  for (const auto & [rid, r] : readers) {
    evaluate(w, self, r.descriptor, self, now);
  }
}

void Core::match_local_reader(EntityId id, Timestamp now)
{
  const auto & r = readers.at(id).descriptor;
  const auto self = transport->local_locator();
  for (const auto & [guid, remote] : remote_) {
    if (remote.descriptor.kind == EndpointKind::kWriter) {
      evaluate(remote.descriptor, remote.locator, r, self, now);
    }
  }
  for (const auto & [wid, w] : writers) {
    evaluate(w.descriptor, self, r, self, now);
  }
}

EntityId Core::add_writer(std::shared_ptr<Topic> topic, const qos::QosProfile & qos,
  const Publisher * publisher)
{
  auto effective = effective_qos(*topic, qos, qos::EntityKind::kDataWriter,
      publisher ? &publisher->qos() : nullptr);
  std::lock_guard<std::mutex> lock(mutex);
  if (closed) {
    throw Error(Errc::kPreconditionNotMet, "participant is closed");
  }
  const auto id = EntityId::from_uint((next_entity_++ << 8) | kWriterKind);
  WriterEntry w;
  w.descriptor.guid = Guid{prefix, id};
  w.descriptor.domain_id = domain_id;
  w.descriptor.topic_name = topic->name();
  w.descriptor.type_name = topic->type().name;
  w.descriptor.kind = EndpointKind::kWriter;
  w.descriptor.qos = discovery_qos(effective);
  rtps::WriterSessionConfig sc;
  sc.writer = id;
  sc.heartbeat_period = config.heartbeat_period;
  sc.response_delay = config.response_delay;
  sc.transient_local = effective.get<qos::DurabilityQos>().kind ==
    qos::DurabilityKind::kTransientLocal;
  w.session = std::make_unique<rtps::WriterSession>(sc, effective.get<qos::HistoryQos>(),
      effective.get<qos::ResourceLimitsQos>());
  w.deadlines = DeadlineTracker(effective.get<qos::DeadlineQos>().period);
  w.topic = std::move(topic);
  w.qos = std::move(effective);
  writers.emplace(id, std::move(w));
  const auto now = mono();
  match_local_writer(id, now);
  next_announce_ = now;
  timers(now);
  flush();
  cv_.notify_all();
  return id;
}

EntityId Core::add_reader(std::shared_ptr<Topic> topic, const qos::QosProfile & qos,
  const Subscriber * subscriber)
{
  auto effective = effective_qos(*topic, qos, qos::EntityKind::kDataReader,
      subscriber ? &subscriber->qos() : nullptr);
  std::lock_guard<std::mutex> lock(mutex);
  if (closed) {
    throw Error(Errc::kPreconditionNotMet, "participant is closed");
  }
  const auto id = EntityId::from_uint((next_entity_++ << 8) | kReaderKind);
  ReaderEntry r;
  r.descriptor.guid = Guid{prefix, id};
  r.descriptor.domain_id = domain_id;
  r.descriptor.topic_name = topic->name();
  r.descriptor.type_name = topic->type().name;
  r.descriptor.kind = EndpointKind::kReader;
  r.descriptor.qos = discovery_qos(effective);
  r.cache = std::make_unique<ReaderCache>(ReaderCacheConfig::from_profiles(effective,
      topic->qos()));
  r.topic = std::move(topic);
  r.qos = std::move(effective);
  readers.emplace(id, std::move(r));
  const auto now = mono();
  match_local_reader(id, now);
  next_announce_ = now;
  timers(now);
  flush();
  cv_.notify_all();
  return id;
}

void Core::remove_writer(EntityId id)
{
  std::lock_guard<std::mutex> lock(mutex);
  auto it = writers.find(id);
  if (it == writers.end()) {
    return;
  }
  const Guid guid{prefix, id};
  for (auto & [rid, r] : readers) {
    unmatch(guid, Guid{prefix, rid});
  }
  writers.erase(it);
  next_announce_ = mono();
}

void Core::remove_reader(EntityId id)
{
  std::lock_guard<std::mutex> lock(mutex);
  auto it = readers.find(id);
  if (it == readers.end()) {
    return;
  }
  const Guid guid{prefix, id};
  for (auto & [wid, w] : writers) {
    unmatch(Guid{prefix, wid}, guid);
  }
  readers.erase(it);
  next_announce_ = mono();
}

SequenceNumber Core::write(EntityId id, const idl::Sample & sample,
  std::optional<Timestamp> source_timestamp)
{
  std::unique_lock<std::mutex> lock(mutex);
  if (closed) {
    throw Error(Errc::kPreconditionNotMet, "participant is closed");
  }
  auto & w = writers.at(id);
  const auto & type = w.topic->type();
  auto payload = std::make_shared<const idl::Bytes>(idl::serialize(type, sample));
  if (payload->size() > rtps::kMaxPayloadSize) {
    throw Error(Errc::kSampleTooLarge, "serialized sample of " +
            std::to_string(payload->size()) + " bytes exceeds the " +
            std::to_string(rtps::kMaxPayloadSize) + " byte datagram payload limit");
  }
  const auto instance = idl::key_hash(type, sample);
  if (!w.session->can_write(instance)) {
    const bool freed = wait(lock, config.max_blocking_time,
        [&w, instance]() {return w.session->can_write(instance);});
    if (!freed) {
      throw Error(Errc::kResourceLimits, "writer history full for " +
              minidds::to_string(config.max_blocking_time));
    }
  }
  const auto now = mono();
  const auto seq = w.session->write(instance, source_timestamp.value_or(wall()), payload, now,
      out_);
  w.deadlines.on_sample(instance, now);
  ++w.written;
  flush();
  return seq;
}

}  // namespace detail

DataWriter::DataWriter(std::shared_ptr<detail::Core> core, EntityId id)
: core_(std::move(core)), id_(id)
{
}

DataWriter::~DataWriter() {core_->remove_writer(id_);}

Guid DataWriter::guid() const {return Guid{core_->prefix, id_};}

const std::shared_ptr<Topic> & DataWriter::topic() const
{
  std::lock_guard<std::mutex> lock(core_->mutex);
  return core_->writers.at(id_).topic;
}

const qos::QosProfile & DataWriter::qos() const
{
  std::lock_guard<std::mutex> lock(core_->mutex);
  return core_->writers.at(id_).qos;
}

const EndpointDescriptor & DataWriter::descriptor() const
{
  std::lock_guard<std::mutex> lock(core_->mutex);
  return core_->writers.at(id_).descriptor;
}

SequenceNumber DataWriter::write(const idl::Sample & sample,
  std::optional<Timestamp> source_timestamp)
{
  return core_->write(id_, sample, source_timestamp);
}

std::size_t DataWriter::matched_readers() const
{
  std::lock_guard<std::mutex> lock(core_->mutex);
  return core_->writers.at(id_).matched.size();
}

bool DataWriter::wait_for_matched(std::size_t count, Duration timeout) const
{
  std::unique_lock<std::mutex> lock(core_->mutex);
  const auto & w = core_->writers.at(id_);
  return core_->wait(lock, timeout, [&w, count]() {return w.matched.size() >= count;});
}

bool DataWriter::wait_for_acknowledgments(Duration timeout) const
{
  std::unique_lock<std::mutex> lock(core_->mutex);
  const auto & w = core_->writers.at(id_);
  return core_->wait(lock, timeout, [&w]() {return w.session->all_acknowledged();});
}

std::vector<IncompatibleMatch> DataWriter::incompatible() const
{
  std::lock_guard<std::mutex> lock(core_->mutex);
  std::vector<IncompatibleMatch> out;
  for (const auto & [guid, m] : core_->writers.at(id_).incompatible) {
    out.push_back(m);
  }
  return out;
}

std::vector<std::pair<InstanceHandle, std::uint64_t>> DataWriter::check_deadlines() const
{
  std::lock_guard<std::mutex> lock(core_->mutex);
  return core_->writers.at(id_).deadlines.check(core_->mono());
}

WriterStats DataWriter::stats() const
{
  std::lock_guard<std::mutex> lock(core_->mutex);
  const auto & w = core_->writers.at(id_);
  return WriterStats{w.written, w.session->stats()};
}

DataReader::DataReader(std::shared_ptr<detail::Core> core, EntityId id)
: core_(std::move(core)), id_(id)
{
}

DataReader::~DataReader() {core_->remove_reader(id_);}

Guid DataReader::guid() const {return Guid{core_->prefix, id_};}

const std::shared_ptr<Topic> & DataReader::topic() const
{
  std::lock_guard<std::mutex> lock(core_->mutex);
  return core_->readers.at(id_).topic;
}

const qos::QosProfile & DataReader::qos() const
{
  std::lock_guard<std::mutex> lock(core_->mutex);
  return core_->readers.at(id_).qos;
}

const EndpointDescriptor & DataReader::descriptor() const
{
  std::lock_guard<std::mutex> lock(core_->mutex);
  return core_->readers.at(id_).descriptor;
}

namespace
{

std::vector<ReceivedSample> to_samples(const idl::TypeDescriptor & type,
  const std::vector<ReceivedData> & data)
{
  std::vector<ReceivedSample> out;
  out.reserve(data.size());
  for (const auto & d : data) {
    out.push_back({idl::deserialize(type, *d.payload), d.info});
  }
  return out;
}

}  // namespace

std::vector<ReceivedSample> DataReader::read(std::size_t max)
{
  std::lock_guard<std::mutex> lock(core_->mutex);
  auto & r = core_->readers.at(id_);
  r.cache->purge_expired(core_->wall());
  return to_samples(r.topic->type(), r.cache->read(max));
}

std::vector<ReceivedSample> DataReader::take(std::size_t max)
{
  std::lock_guard<std::mutex> lock(core_->mutex);
  auto & r = core_->readers.at(id_);
  r.cache->purge_expired(core_->wall());
  return to_samples(r.topic->type(), r.cache->take(max));
}

std::size_t DataReader::available() const
{
  std::lock_guard<std::mutex> lock(core_->mutex);
  return core_->readers.at(id_).cache->size();
}

bool DataReader::wait_for_data(Duration timeout) const
{
  std::unique_lock<std::mutex> lock(core_->mutex);
  const auto & r = core_->readers.at(id_);
  return core_->wait(lock, timeout, [&r]() {return r.cache->size() > 0;});
}

std::size_t DataReader::matched_writers() const
{
  std::lock_guard<std::mutex> lock(core_->mutex);
  return core_->readers.at(id_).matched.size();
}

bool DataReader::wait_for_matched(std::size_t count, Duration timeout) const
{
  std::unique_lock<std::mutex> lock(core_->mutex);
  const auto & r = core_->readers.at(id_);
  return core_->wait(lock, timeout, [&r, count]() {return r.matched.size() >= count;});
}

std::vector<IncompatibleMatch> DataReader::incompatible() const
{
  std::lock_guard<std::mutex> lock(core_->mutex);
  std::vector<IncompatibleMatch> out;
  for (const auto & [guid, m] : core_->readers.at(id_).incompatible) {
    out.push_back(m);
  }
  return out;
}

std::vector<std::pair<InstanceHandle, std::uint64_t>> DataReader::check_deadlines() const
{
  std::lock_guard<std::mutex> lock(core_->mutex);
  return core_->readers.at(id_).cache->check_deadlines(core_->mono());
}

DataReaderStats DataReader::stats() const
{
  std::lock_guard<std::mutex> lock(core_->mutex);
  const auto & r = core_->readers.at(id_);
  DataReaderStats s{r.cache->stats(), r.retired};
  for (const auto & [guid, m] : r.matched) {
    std::visit([&s](const auto & session) {
        s.protocol.duplicates += session.stats().duplicates;
        s.protocol.skipped += session.stats().skipped;
        s.protocol.lost += session.stats().lost;
        s.protocol.acknacks += session.stats().acknacks;
      }, m.session);
  }
  return s;
}

void DataReader::set_listener(std::function<void()> on_data_available)
{
  std::lock_guard<std::mutex> lock(core_->mutex);
  auto & r = core_->readers.at(id_);
  r.listener = on_data_available ?
    std::make_shared<std::function<void()>>(std::move(on_data_available)) : nullptr;
}

std::shared_ptr<DomainParticipant> DomainParticipant::create(std::int32_t domain_id,
  ParticipantConfig config)
{
  if (domain_id < 0 || domain_id > 65535 - rtps::kMulticastBasePort) {
    throw Error(Errc::kPreconditionNotMet, "domain id " + std::to_string(domain_id) +
            " outside [0, " + std::to_string(65535 - rtps::kMulticastBasePort) + "]");
  }
  auto core = std::make_shared<detail::Core>(domain_id, std::move(config));
  core->start();
  return std::make_shared<DomainParticipant>(std::move(core));
}

DomainParticipant::DomainParticipant(std::shared_ptr<detail::Core> core)
: core_(std::move(core))
{
}

DomainParticipant::~DomainParticipant() {core_->stop();}

std::int32_t DomainParticipant::domain_id() const {return core_->domain_id;}

GuidPrefix DomainParticipant::guid_prefix() const {return core_->prefix;}

rtps::Locator DomainParticipant::locator() const {return core_->transport->local_locator();}

std::shared_ptr<Topic> DomainParticipant::create_topic(const std::string & name,
  const idl::TypeDescriptor & type, const qos::QosProfile & qos)
{
  if (name.empty()) {
    throw Error(Errc::kInvalidArgument, "topic name must not be empty");
  }
  if (qos.entity_kind() != qos::EntityKind::kTopic) {
    throw Error(Errc::kInvalidArgument, "topic QoS profile has entity kind " +
            std::string(qos::abbreviation(qos.entity_kind())));
  }
  const auto errors = qos::validate_profile(qos);
  if (!errors.empty()) {
    throw qos::QosError(Errc::kInvalidQos, errors.front().policy, errors.front().message);
  }
  std::lock_guard<std::mutex> lock(core_->mutex);
  auto it = core_->topics.find(name);
  if (it != core_->topics.end()) {
    if (it->second->type().name != type.name) {
      throw Error(Errc::kInconsistentTopic, "topic '" + name + "' already exists with type '" +
              it->second->type().name + "'");
    }
    return it->second;
  }
  auto topic = std::make_shared<Topic>(name, type, qos);
  core_->topics.emplace(name, topic);
  return topic;
}

std::shared_ptr<Publisher> DomainParticipant::create_publisher(const qos::QosProfile & qos)
{
  if (qos.entity_kind() != qos::EntityKind::kPublisher) {
    throw Error(Errc::kInvalidArgument, "publisher QoS profile has entity kind " +
            std::string(qos::abbreviation(qos.entity_kind())));
  }
  const auto errors = qos::validate_profile(qos);
  if (!errors.empty()) {
    throw qos::QosError(Errc::kInvalidQos, errors.front().policy, errors.front().message);
  }
  return std::make_shared<Publisher>(qos);
}

std::shared_ptr<Subscriber> DomainParticipant::create_subscriber(const qos::QosProfile & qos)
{
  if (qos.entity_kind() != qos::EntityKind::kSubscriber) {
    throw Error(Errc::kInvalidArgument, "subscriber QoS profile has entity kind " +
            std::string(qos::abbreviation(qos.entity_kind())));
  }
  const auto errors = qos::validate_profile(qos);
  if (!errors.empty()) {
    throw qos::QosError(Errc::kInvalidQos, errors.front().policy, errors.front().message);
  }
  return std::make_shared<Subscriber>(qos);
}

std::shared_ptr<DataWriter> DomainParticipant::create_datawriter(
  const std::shared_ptr<Topic> & topic, const qos::QosProfile & qos,
  const std::shared_ptr<Publisher> & publisher)
{
  {
    std::lock_guard<std::mutex> lock(core_->mutex);
    auto it = core_->topics.find(topic ? topic->name() : std::string());
    if (it == core_->topics.end() || it->second != topic) {
      throw Error(Errc::kPreconditionNotMet, "topic does not belong to this participant");
    }
  }
  const auto id = core_->add_writer(topic, qos, publisher.get());
  return std::make_shared<DataWriter>(core_, id);
}

std::shared_ptr<DataReader> DomainParticipant::create_datareader(
  const std::shared_ptr<Topic> & topic, const qos::QosProfile & qos,
  const std::shared_ptr<Subscriber> & subscriber)
{
  {
    std::lock_guard<std::mutex> lock(core_->mutex);
    auto it = core_->topics.find(topic ? topic->name() : std::string());
    if (it == core_->topics.end() || it->second != topic) {
      throw Error(Errc::kPreconditionNotMet, "topic does not belong to this participant");
    }
  }
  const auto id = core_->add_reader(topic, qos, subscriber.get());
  return std::make_shared<DataReader>(core_, id);
}

void DomainParticipant::poll() {core_->poll();}

void DomainParticipant::close() {core_->stop();}

ParticipantStats DomainParticipant::stats() const
{
  std::lock_guard<std::mutex> lock(core_->mutex);
  return core_->stats;
}

std::size_t DomainParticipant::discovered_participants() const
{
  std::lock_guard<std::mutex> lock(core_->mutex);
  return core_->discovery.participant_count();
}

}  // namespace minidds::dcps
