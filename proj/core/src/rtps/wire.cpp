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

#include "minidds/rtps/wire.hpp"

#include <bit>
#include <charconv>
#include <limits>
#include <set>

namespace minidds::rtps
{

namespace
{

class Writer
{
public:
  void u8(std::uint8_t v) {out_.push_back(v);}
  void u16(std::uint16_t v) {le(v);}
  void u32(std::uint32_t v) {le(v);}
  void u64(std::uint64_t v) {le(v);}
  void i32(std::int32_t v) {le(static_cast<std::uint32_t>(v));}
  void i64(std::int64_t v) {le(static_cast<std::uint64_t>(v));}
  void raw(std::span<const std::uint8_t> b) {out_.insert(out_.end(), b.begin(), b.end());}

  void text(std::string_view s, std::size_t at)
  {
    if (s.size() > std::numeric_limits<std::uint16_t>::max()) {
      throw WireError(at, "text longer than 65535 bytes");
    }
    u16(static_cast<std::uint16_t>(s.size()));
    out_.insert(out_.end(), s.begin(), s.end());
  }

  std::size_t size() const {return out_.size();}
  Bytes & bytes() {return out_;}

  void patch_u16(std::size_t at, std::uint16_t v)
  {
    out_[at] = static_cast<std::uint8_t>(v);
    out_[at + 1] = static_cast<std::uint8_t>(v >> 8);
  }

private:
  template<typename U>
  void le(U v)
  {
    for (std::size_t i = 0; i < sizeof(U); ++i) {
      out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
  }

  Bytes out_;
};

class Reader
{
public:
  Reader(std::span<const std::uint8_t> in, std::size_t base) : in_(in), base_(base) {}

  std::uint8_t u8(const char * what) {return le<std::uint8_t>(what);}
  std::uint16_t u16(const char * what) {return le<std::uint16_t>(what);}
  std::uint32_t u32(const char * what) {return le<std::uint32_t>(what);}
  std::uint64_t u64(const char * what) {return le<std::uint64_t>(what);}
  std::int32_t i32(const char * what) {return static_cast<std::int32_t>(u32(what));}
  std::int64_t i64(const char * what) {return static_cast<std::int64_t>(u64(what));}

  bool boolean(const char * what)
  {
    auto at = offset();
    auto v = u8(what);
    if (v > 1) {
      throw WireError(at, std::string("invalid boolean for ") + what);
    }
    return v == 1;
  }

  template<typename Enum>
  Enum enumeration(std::uint8_t max, const char * what)
  {
    auto at = offset();
    auto v = u8(what);
    if (v > max) {
      throw WireError(at, std::string("invalid ") + what + " " + std::to_string(v));
    }
    return static_cast<Enum>(v);
  }

  std::span<const std::uint8_t> raw(std::size_t n, const char * what)
  {
    need(n, what);
    auto s = in_.subspan(pos_, n);
    pos_ += n;
    return s;
  }

  std::string text(const char * what)
  {
    auto n = u16(what);
    auto b = raw(n, what);
    return std::string(b.begin(), b.end());
  }

  EntityId entity(const char * what)
  {
    EntityId e;
    auto b = raw(4, what);
    std::copy(b.begin(), b.end(), e.bytes.begin());
    return e;
  }

  Guid guid(const char * what)
  {
    std::array<std::uint8_t, 16> g{};
    auto b = raw(16, what);
    std::copy(b.begin(), b.end(), g.begin());
    return Guid::from_bytes(g);
  }

  std::size_t offset() const {return base_ + pos_;}
  std::size_t remaining() const {return in_.size() - pos_;}

private:
  void need(std::size_t n, const char * what)
  {
    if (n > remaining()) {
      throw WireError(offset(), std::string("truncated ") + what);
    }
  }

  template<typename U>
  U le(const char * what)
  {
    need(sizeof(U), what);
    U v = 0;
    for (std::size_t i = 0; i < sizeof(U); ++i) {
      v |= static_cast<U>(U{in_[pos_ + i]} << (8 * i));
    }
    pos_ += sizeof(U);
    return v;
  }

  std::span<const std::uint8_t> in_;
  std::size_t base_;
  std::size_t pos_ = 0;
};

std::int64_t duration_ns(Duration d) {return d.count();}

void encode_policy(Writer & w, const qos::QosValue & value)
{
  using namespace qos;
  std::visit([&w](const auto & p) {
      using P = std::decay_t<decltype(p)>;
      if constexpr (std::is_same_v<P, DurabilityQos>) {
        w.u8(static_cast<std::uint8_t>(p.kind));
      } else if constexpr (std::is_same_v<P, DurabilityServiceQos>) {
        w.i64(duration_ns(p.cleanup_delay));
      } else if constexpr (std::is_same_v<P, LifespanQos>) {
        w.i64(duration_ns(p.duration));
      } else if constexpr (std::is_same_v<P, HistoryQos>) {
        w.u8(static_cast<std::uint8_t>(p.kind));
        w.i32(p.depth);
      } else if constexpr (std::is_same_v<P, PresentationQos>) {
        w.u8(static_cast<std::uint8_t>(p.access_scope));
        w.u8(p.coherent_access ? 1 : 0);
        w.u8(p.ordered_access ? 1 : 0);
      } else if constexpr (std::is_same_v<P, ReliabilityQos>) {
        w.u8(static_cast<std::uint8_t>(p.kind));
      } else if constexpr (std::is_same_v<P, PartitionQos>) {
        w.u16(static_cast<std::uint16_t>(p.names.size()));
        for (const auto & n : p.names) {
          w.text(n, w.size());
        }
      } else if constexpr (std::is_same_v<P, DestinationOrderQos>) {
        w.u8(static_cast<std::uint8_t>(p.kind));
      } else if constexpr (std::is_same_v<P, OwnershipQos>) {
        w.u8(static_cast<std::uint8_t>(p.kind));
      } else if constexpr (std::is_same_v<P, OwnershipStrengthQos>) {
        w.i32(p.value);
      } else if constexpr (std::is_same_v<P, DeadlineQos>) {
        w.i64(duration_ns(p.period));
      } else if constexpr (std::is_same_v<P, LatencyBudgetQos>) {
        w.i64(duration_ns(p.duration));
      } else if constexpr (std::is_same_v<P, TransportPriorityQos>) {
        w.i32(p.value);
      } else if constexpr (std::is_same_v<P, TimeBasedFilterQos>) {
        w.i64(duration_ns(p.minimum_separation));
      } else if constexpr (std::is_same_v<P, ResourceLimitsQos>) {
        w.i32(p.max_samples);
        w.i32(p.max_instances);
        w.i32(p.max_samples_per_instance);
      } else {
        // USER_DATA, TOPIC_DATA, GROUP_DATA
        w.u16(static_cast<std::uint16_t>(p.value.size()));
        w.raw(p.value);
      }
    }, value);
}

qos::QosValue decode_policy(Reader & r, qos::QosPolicyId id)
{
  using namespace qos;
  auto dur = [&r](const char * what) {return Duration{r.i64(what)};};
  switch (id) {
    case QosPolicyId::kDurability:
      return DurabilityQos{r.enumeration<DurabilityKind>(1, "durability kind")};
    case QosPolicyId::kDurabilityService:
      return DurabilityServiceQos{dur("cleanup delay")};
    case QosPolicyId::kLifespan:
      return LifespanQos{dur("lifespan")};
    case QosPolicyId::kHistory: {
        auto kind = r.enumeration<HistoryKind>(1, "history kind");
        return HistoryQos{kind, r.i32("history depth")};
      }
    case QosPolicyId::kPresentation: {
        PresentationQos p;
        p.access_scope = r.enumeration<AccessScope>(1, "access scope");
        p.coherent_access = r.boolean("coherent access");
        p.ordered_access = r.boolean("ordered access");
        return p;
      }
    case QosPolicyId::kReliability:
      return ReliabilityQos{r.enumeration<ReliabilityKind>(1, "reliability kind")};
    case QosPolicyId::kPartition: {
        PartitionQos p;
        auto n = r.u16("partition count");
        for (std::uint16_t i = 0; i < n; ++i) {
          p.names.push_back(r.text("partition name"));
        }
        return p;
      }
    case QosPolicyId::kDestinationOrder:
      return DestinationOrderQos{r.enumeration<DestinationOrderKind>(1, "destination order")};
    case QosPolicyId::kOwnership:
      return OwnershipQos{r.enumeration<OwnershipKind>(1, "ownership kind")};
    case QosPolicyId::kOwnershipStrength:
      return OwnershipStrengthQos{r.i32("ownership strength")};
    case QosPolicyId::kDeadline:
      return DeadlineQos{dur("deadline")};
    case QosPolicyId::kLatencyBudget:
      return LatencyBudgetQos{dur("latency budget")};
    case QosPolicyId::kTransportPriority:
      return TransportPriorityQos{r.i32("transport priority")};
    case QosPolicyId::kTimeBasedFilter:
      return TimeBasedFilterQos{dur("minimum separation")};
    case QosPolicyId::kResourceLimits: {
        ResourceLimitsQos p;
        p.max_samples = r.i32("max samples");
        p.max_instances = r.i32("max instances");
        p.max_samples_per_instance = r.i32("max samples per instance");
        return p;
      }
    case QosPolicyId::kUserData:
    case QosPolicyId::kTopicData:
    case QosPolicyId::kGroupData: {
        auto n = r.u16("data length");
        auto b = r.raw(n, "data");
        std::vector<std::uint8_t> v(b.begin(), b.end());
        if (id == QosPolicyId::kUserData) {return UserDataQos{v};}
        if (id == QosPolicyId::kTopicData) {return TopicDataQos{v};}
        return GroupDataQos{v};
      }
  }
  throw WireError(r.offset(), "unknown policy");
}

void encode_body(Writer & w, const Announce & a)
{
  w.u32(a.domain_id);
  w.raw(a.unicast.address);
  w.u16(a.unicast.port);
  if (a.endpoints.size() > std::numeric_limits<std::uint16_t>::max()) {
    throw WireError(w.size(), "too many endpoints");
  }
  w.u16(static_cast<std::uint16_t>(a.endpoints.size()));
  for (const auto & e : a.endpoints) {
    w.raw(e.guid.bytes());
    w.u8(static_cast<std::uint8_t>(e.kind));
    w.text(e.topic_name, w.size());
    w.text(e.type_name, w.size());
    const auto & names = e.qos.get<qos::PartitionQos>().names;
    w.u16(static_cast<std::uint16_t>(names.size()));
    for (const auto & n : names) {
      w.text(n, w.size());
    }
    std::uint8_t count = 0;
    for (const auto & [id, v] : e.qos.policies()) {
      count += id != qos::QosPolicyId::kPartition;
    }
    w.u8(count);
    for (const auto & [id, v] : e.qos.policies()) {
      if (id == qos::QosPolicyId::kPartition) {
        continue;
      }
      w.u8(static_cast<std::uint8_t>(id));
      encode_policy(w, v);
    }
  }
}

Announce decode_announce(Reader & r)
{
  Announce a;
  a.domain_id = r.u32("domain id");
  auto addr = r.raw(4, "locator address");
  std::copy(addr.begin(), addr.end(), a.unicast.address.begin());
  a.unicast.port = r.u16("locator port");
  auto count = r.u16("endpoint count");
  for (std::uint16_t i = 0; i < count; ++i) {
    dcps::EndpointDescriptor e;
    e.guid = r.guid("endpoint guid");
    auto kind_at = r.offset();
    auto kind = r.u8("endpoint kind");
    if (kind != 1 && kind != 2) {
      throw WireError(kind_at, "invalid endpoint kind " + std::to_string(kind));
    }
    e.kind = static_cast<dcps::EndpointKind>(kind);
    e.domain_id = static_cast<std::int32_t>(a.domain_id);
    e.topic_name = r.text("topic name");
    e.type_name = r.text("type name");
    e.qos = qos::QosProfile(e.kind == dcps::EndpointKind::kWriter ?
        qos::EntityKind::kDataWriter : qos::EntityKind::kDataReader);
    auto partitions = r.u16("partition count");
    if (partitions > 0) {
      qos::PartitionQos p;
      for (std::uint16_t k = 0; k < partitions; ++k) {
        p.names.push_back(r.text("partition name"));
      }
      e.qos.put(p);
    }
    auto policies = r.u8("policy count");
    for (std::uint8_t k = 0; k < policies; ++k) {
      auto id_at = r.offset();
      auto raw_id = r.u8("policy id");
      if (raw_id >= qos::kPolicyCount) {
        throw WireError(id_at, "unknown policy id " + std::to_string(raw_id));
      }
      auto id = static_cast<qos::QosPolicyId>(raw_id);
      if (id == qos::QosPolicyId::kPartition || e.qos.contains(id)) {
        throw WireError(id_at, "duplicate policy id " + std::to_string(raw_id));
      }
      e.qos.put(decode_policy(r, id));
    }
    a.endpoints.push_back(std::move(e));
  }
  return a;
}

void encode_body(Writer & w, const Data & d)
{
  w.raw(d.writer.bytes);
  w.raw(d.reader.bytes);
  w.u64(d.sequence);
  w.i64(d.source_timestamp);
  w.u64(d.instance);
  w.u32(static_cast<std::uint32_t>(d.payload.size()));
  w.raw(d.payload);
}

Data decode_data(Reader & r)
{
  Data d;
  d.writer = r.entity("writer id");
  d.reader = r.entity("reader id");
  d.sequence = r.u64("sequence");
  d.source_timestamp = r.i64("source timestamp");
  d.instance = r.u64("instance handle");
  auto n = r.u32("payload length");
  auto b = r.raw(n, "payload");
  d.payload.assign(b.begin(), b.end());
  return d;
}

void encode_body(Writer & w, const Heartbeat & h)
{
  if (h.first > h.last + 1) {
    throw WireError(w.size(), "heartbeat first > last + 1");
  }
  w.raw(h.writer.bytes);
  w.u64(h.first);
  w.u64(h.last);
  w.u32(h.count);
}

Heartbeat decode_heartbeat(Reader & r)
{
  auto at = r.offset();
  Heartbeat h;
  h.writer = r.entity("writer id");
  h.first = r.u64("first sequence");
  h.last = r.u64("last sequence");
  h.count = r.u32("heartbeat count");
  if (h.first > h.last + 1) {
    throw WireError(at, "heartbeat first > last + 1");
  }
  return h;
}

void encode_body(Writer & w, const AckNack & a)
{
  if (a.missing.size() > kMaxBitmapLength) {
    throw WireError(w.size(), "bitmap longer than 256 bits");
  }
  w.raw(a.reader.bytes);
  w.raw(a.writer.bytes());
  w.u64(a.base);
  w.u32(static_cast<std::uint32_t>(a.missing.size()));
  Bytes bits((a.missing.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < a.missing.size(); ++i) {
    if (a.missing[i]) {
      bits[i / 8] |= static_cast<std::uint8_t>(1u << (i % 8));
    }
  }
  w.raw(bits);
}

AckNack decode_acknack(Reader & r)
{
  AckNack a;
  a.reader = r.entity("reader id");
  a.writer = r.guid("writer guid");
  a.base = r.u64("base sequence");
  auto len_at = r.offset();
  auto len = r.u32("bitmap length");
  if (len > kMaxBitmapLength) {
    throw WireError(len_at, "bitmap length " + std::to_string(len) + " exceeds 256");
  }
  auto bits_at = r.offset();
  auto bits = r.raw((len + 7) / 8, "bitmap");
  a.missing.resize(len);
  for (std::size_t i = 0; i < bits.size() * 8; ++i) {
    bool set = (bits[i / 8] >> (i % 8)) & 1u;
    if (i < len) {
      a.missing[i] = set;
    } else if (set) {
      throw WireError(bits_at + i / 8, "bitmap padding bits set");
    }
  }
  return a;
}

void encode_body(Writer & w, const Gap & g)
{
  if (g.start > g.end) {
    throw WireError(w.size(), "gap start > end");
  }
  w.raw(g.writer.bytes);
  w.u64(g.start);
  w.u64(g.end);
}

Gap decode_gap(Reader & r)
{
  auto at = r.offset();
  Gap g;
  g.writer = r.entity("writer id");
  g.start = r.u64("gap start");
  g.end = r.u64("gap end");
  if (g.start > g.end) {
    throw WireError(at, "gap start > end");
  }
  return g;
}

}  // namespace

std::string to_string(const Locator & l)
{
  return std::to_string(l.address[0]) + "." + std::to_string(l.address[1]) + "." +
         std::to_string(l.address[2]) + "." + std::to_string(l.address[3]) + ":" +
         std::to_string(l.port);
}

Locator parse_locator(std::string_view text)
{
  auto fail = [&text]() -> Error {
      return Error(Errc::kInvalidArgument,
               "expected a.b.c.d:port, got '" + std::string(text) + "'");
    };
  auto colon = text.rfind(':');
  if (colon == std::string_view::npos) {
    throw fail();
  }
  Locator l;
  auto host = text.substr(0, colon);
  if (host == "localhost") {
    host = "127.0.0.1";
  }
  std::size_t pos = 0;
  for (int i = 0; i < 4; ++i) {
    unsigned v = 0;
    auto end = host.find('.', pos);
    auto part = host.substr(pos, end == std::string_view::npos ? host.size() - pos : end - pos);
    auto [p, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc{} || p != part.data() + part.size() || part.empty() || v > 255 ||
      (i < 3 && end == std::string_view::npos) || (i == 3 && end != std::string_view::npos))
    {
      throw fail();
    }
    l.address[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v);
    pos = end + 1;
  }
  auto port = text.substr(colon + 1);
  unsigned v = 0;
  auto [p, ec] = std::from_chars(port.data(), port.data() + port.size(), v);
  if (ec != std::errc{} || p != port.data() + port.size() || port.empty() || v > 65535) {
    throw fail();
  }
  l.port = static_cast<std::uint16_t>(v);
  return l;
}

std::vector<SequenceNumber> AckNack::requested() const
{
  std::vector<SequenceNumber> out;
  for (std::size_t i = 0; i < missing.size(); ++i) {
    if (missing[i]) {
      out.push_back(base + i);
    }
  }
  return out;
}

SubmessageKind kind_of(const Submessage & s)
{
  static constexpr SubmessageKind kinds[] = {
    SubmessageKind::kAnnounce, SubmessageKind::kData, SubmessageKind::kHeartbeat,
    SubmessageKind::kAckNack, SubmessageKind::kGap,
  };
  return kinds[s.index()];
}

Bytes encode(const Message & message)
{
  Writer w;
  w.raw(kMagic);
  w.u8(kVersionMajor);
  w.u8(kVersionMinor);
  w.u16(0);
  w.raw(message.sender);
  for (const auto & sub : message.submessages) {
    const std::size_t start = w.size();
    w.u8(static_cast<std::uint8_t>(kind_of(sub)));
    w.u8(0);
    w.u16(0);
    std::visit([&w](const auto & body) {encode_body(w, body);}, sub);
    const std::size_t length = w.size() - start - kSubmessageHeaderSize;
    if (length > std::numeric_limits<std::uint16_t>::max()) {
      throw WireError(start, "submessage body of " + std::to_string(length) +
              " bytes exceeds 65535");
    }
    w.patch_u16(start + 2, static_cast<std::uint16_t>(length));
  }
  if (w.size() > kMaxDatagramSize) {
    throw WireError(kMaxDatagramSize, "datagram of " + std::to_string(w.size()) +
            " bytes exceeds " + std::to_string(kMaxDatagramSize));
  }
  return std::move(w.bytes());
}

Message decode(std::span<const std::uint8_t> bytes)
{
  Reader header(bytes, 0);
  auto magic = header.raw(4, "magic");
  if (!std::equal(magic.begin(), magic.end(), kMagic.begin())) {
    throw WireError(0, "bad magic");
  }
  auto major = header.u8("version");
  auto minor = header.u8("version");
  if (major != kVersionMajor || minor != kVersionMinor) {
    throw WireError(4, "unsupported version " + std::to_string(major) + "." +
            std::to_string(minor));
  }
  header.u16("reserved");
  Message m;
  auto prefix = header.raw(12, "sender prefix");
  std::copy(prefix.begin(), prefix.end(), m.sender.begin());

  std::size_t pos = kHeaderSize;
  if (pos == bytes.size()) {
    throw WireError(pos, "no submessages");
  }
  while (pos < bytes.size()) {
    Reader sub(bytes.subspan(pos), pos);
    auto kind = sub.u8("submessage kind");
    sub.u8("submessage flags");
    auto length = sub.u16("submessage length");
    auto body_at = pos + kSubmessageHeaderSize;
    if (length > bytes.size() - body_at) {
      throw WireError(pos, "submessage length " + std::to_string(length) +
              " exceeds remaining " + std::to_string(bytes.size() - body_at) + " bytes");
    }
    Reader body(bytes.subspan(body_at, length), body_at);
    switch (static_cast<SubmessageKind>(kind)) {
      case SubmessageKind::kAnnounce: m.submessages.push_back(decode_announce(body)); break;
      case SubmessageKind::kData: m.submessages.push_back(decode_data(body)); break;
      case SubmessageKind::kHeartbeat: m.submessages.push_back(decode_heartbeat(body)); break;
      case SubmessageKind::kAckNack: m.submessages.push_back(decode_acknack(body)); break;
      case SubmessageKind::kGap: m.submessages.push_back(decode_gap(body)); break;
      default:
        // Unknown kind: skipped by length.
        body.raw(length, "unknown submessage");
        break;
    }
    if (body.remaining() != 0) {
      throw WireError(body.offset(), std::to_string(body.remaining()) +
              " unparsed bytes in submessage");
    }
    pos = body_at + length;
  }
  return m;
}

}  // namespace minidds::rtps
