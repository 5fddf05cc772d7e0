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

#ifndef SUPPORT__SESSION_SIM_HPP_
#define SUPPORT__SESSION_SIM_HPP_

#include <chrono>
#include <memory>
#include <vector>

#include "minidds/rtps/session.hpp"
#include "minidds/rtps/transport.hpp"

namespace minidds::test
{

/// One writer session and one reliable reader session joined by a pair of
/// lossy links, driven on a virtual millisecond clock. Every submessage
/// crosses the wire codec.
class SessionSim
{
public:
  SessionSim(rtps::LossyTransportConfig link, qos::HistoryQos history,
    qos::ResourceLimitsQos limits = {})
  : writer_({EntityId::from_uint(0x102)}, history, limits),
    reader_(EntityId::from_uint(0x207), writer_guid()),
    to_reader_(link),
    to_writer_({link.drop_probability, link.duplicate_probability, link.max_reorder_depth,
        link.seed ^ 0x5555})
  {
    std::vector<rtps::Outgoing> out;
    writer_.add_reader(reader_guid(), reader_locator(), true, false, now(), out);
    send_to_reader(out);
  }

  static Guid writer_guid() {return Guid{{1}, EntityId::from_uint(0x102)};}
  static Guid reader_guid() {return Guid{{2}, EntityId::from_uint(0x207)};}
  static rtps::Locator reader_locator() {return rtps::Locator{{127, 0, 0, 1}, 9002};}

  Timestamp now() const {return std::chrono::milliseconds(ms_);}

  /// Writes one sample; false when the history refused it.
  bool write(dcps::InstanceHandle instance)
  {
    if (!writer_.can_write(instance)) {
      return false;
    }
    std::vector<rtps::Outgoing> out;
    writer_.write(instance, now(), std::make_shared<const rtps::Bytes>(rtps::Bytes{0x42}), now(), out);
    send_to_reader(out);
    return true;
  }

  /// Advances the clock by one millisecond and exchanges everything queued.
  void tick()
  {
    ++ms_;
    while (auto d = to_reader_.pop()) {
      for (auto & sub : rtps::decode(d->bytes).submessages) {
        on_reader_side(std::move(sub));
      }
    }
    while (auto d = to_writer_.pop()) {
      for (auto & sub : rtps::decode(d->bytes).submessages) {
        std::vector<rtps::Outgoing> out;
        writer_.on_acknack(reader_guid(), std::get<rtps::AckNack>(sub), now(), out);
        send_to_reader(out);
      }
    }
    std::vector<rtps::Outgoing> out;
    writer_.step(now(), out);
    send_to_reader(out);
  }

  /// Ticks until the writer sees everything acknowledged, at most `limit` ms.
  bool settle(int limit)
  {
    for (int i = 0; i < limit; ++i) {
      tick();
      if (writer_.all_acknowledged() && to_reader_.pending() == 0 &&
        to_writer_.pending() == 0)
      {
        return true;
      }
    }
    return false;
  }

  rtps::WriterSession & writer() {return writer_;}
  rtps::ReliableReaderSession & reader() {return reader_;}
  const std::vector<rtps::Data> & delivered() const {return delivered_;}

private:
  void send_to_reader(const std::vector<rtps::Outgoing> & out)
  {
    for (const auto & o : out) {
      to_reader_.push({{}, rtps::encode(rtps::Message{writer_guid().prefix, {o.submessage}})});
    }
  }

  void on_reader_side(rtps::Submessage sub)
  {
    std::vector<rtps::Data> got;
    if (auto * d = std::get_if<rtps::Data>(&sub)) {
      got = reader_.on_data(std::move(*d));
    } else if (auto * g = std::get_if<rtps::Gap>(&sub)) {
      got = reader_.on_gap(*g);
    } else if (auto * h = std::get_if<rtps::Heartbeat>(&sub)) {
      auto r = reader_.on_heartbeat(*h);
      got = std::move(r.deliver);
      if (r.acknack) {
        to_writer_.push({{}, rtps::encode(rtps::Message{reader_guid().prefix, {*r.acknack}})});
      }
    }
    delivered_.insert(delivered_.end(), got.begin(), got.end());
  }

  std::int64_t ms_ = 0;
  rtps::WriterSession writer_;
  rtps::ReliableReaderSession reader_;
  rtps::LossyLink to_reader_;
  rtps::LossyLink to_writer_;
  std::vector<rtps::Data> delivered_;
};

}  // namespace minidds::test

#endif  // SUPPORT__SESSION_SIM_HPP_
