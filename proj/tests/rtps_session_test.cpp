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

#include <gtest/gtest.h>

#include <chrono>
#include <random>
#include <set>

#include "minidds/error.hpp"
#include "minidds/rtps/session.hpp"
#include "support/session_sim.hpp"

using namespace minidds;
using namespace minidds::rtps;
using namespace std::chrono_literals;

namespace
{

const EntityId kWriter = EntityId::from_uint(0x102);
const EntityId kReader = EntityId::from_uint(0x207);
const Guid kWriterGuid{{1}, kWriter};
const Guid kReaderGuid{{2}, kReader};
const Locator kLocA{{127, 0, 0, 1}, 9001};
const Locator kLocB{{127, 0, 0, 1}, 9002};
const qos::HistoryQos kKeepAll{qos::HistoryKind::kKeepAll, 1};

Data data(SequenceNumber seq)
{
  Data d;
  d.writer = kWriter;
  d.sequence = seq;
  return d;
}

std::vector<SequenceNumber> seqs(const std::vector<Data> & ds)
{
  std::vector<SequenceNumber> out;
  for (const auto & d : ds) {
    out.push_back(d.sequence);
  }
  return out;
}

template<typename T>
std::vector<T> of_kind(const std::vector<Outgoing> & out)
{
  std::vector<T> r;
  for (const auto & o : out) {
    if (auto * p = std::get_if<T>(&o.submessage)) {
      r.push_back(*p);
    }
  }
  return r;
}

std::shared_ptr<const Bytes> payload() {return std::make_shared<const Bytes>(Bytes{1, 2});}

}  // namespace

TEST(ReliableReader, CompleteHeartbeatIsPureAck)
{
  ReliableReaderSession r(kReader, kWriterGuid);
  for (SequenceNumber s = 1; s <= 10; ++s) {
    r.on_data(data(s));
  }
  auto res = r.on_heartbeat({kWriter, 1, 10, 1});
  ASSERT_TRUE(res.acknack);
  EXPECT_EQ(res.acknack->base, 11u);
  EXPECT_TRUE(res.acknack->missing.empty());
  EXPECT_EQ(res.acknack->writer, kWriterGuid);
  EXPECT_EQ(res.acknack->reader, kReader);
}

TEST(ReliableReader, MissingBitmapIsSetDifference)
{
  ReliableReaderSession r(kReader, kWriterGuid);
  std::vector<Data> delivered;
  for (SequenceNumber s : {1, 2, 4, 10}) {
    auto got = r.on_data(data(s));
    delivered.insert(delivered.end(), got.begin(), got.end());
  }
  EXPECT_EQ(seqs(delivered), (std::vector<SequenceNumber>{1, 2}));
  auto res = r.on_heartbeat({kWriter, 1, 10, 1});
  ASSERT_TRUE(res.acknack);
  EXPECT_EQ(res.acknack->base, 3u);
  EXPECT_EQ(res.acknack->requested(), (std::vector<SequenceNumber>{3, 5, 6, 7, 8, 9}));

  // Filling the holes releases everything in order.
  delivered.clear();
  for (SequenceNumber s : {9, 3, 5, 3, 7, 6, 8}) {
    auto got = r.on_data(data(s));
    delivered.insert(delivered.end(), got.begin(), got.end());
  }
  EXPECT_EQ(seqs(delivered), (std::vector<SequenceNumber>{3, 4, 5, 6, 7, 8, 9, 10}));
  EXPECT_EQ(r.stats().duplicates, 1u);
}

TEST(ReliableReader, GapThenHeartbeat)
{
  ReliableReaderSession r(kReader, kWriterGuid);
  EXPECT_TRUE(r.on_gap({kWriter, 1, 4}).empty());
  EXPECT_EQ(r.base(), 5u);
  auto res = r.on_heartbeat({kWriter, 5, 10, 1});
  EXPECT_EQ(res.acknack->base, 5u);
  EXPECT_EQ(res.acknack->requested(), (std::vector<SequenceNumber>{5, 6, 7, 8, 9, 10}));
  EXPECT_EQ(r.stats().skipped, 4u);

  // The heartbeat's first sequence alone implies the same gap.
  ReliableReaderSession r2(kReader, kWriterGuid);
  r2.on_data(data(7));
  auto res2 = r2.on_heartbeat({kWriter, 5, 10, 1});
  EXPECT_EQ(res2.acknack->base, 5u);
  EXPECT_EQ(res2.acknack->requested(), (std::vector<SequenceNumber>{5, 6, 8, 9, 10}));
}

TEST(ReliableReader, HeldDataWinsOverGap)
{
  ReliableReaderSession r(kReader, kWriterGuid);
  r.on_data(data(3));
  auto got = r.on_gap({kWriter, 1, 5});
  EXPECT_EQ(seqs(got), (std::vector<SequenceNumber>{3}));
  EXPECT_EQ(r.base(), 6u);
  EXPECT_EQ(r.stats().skipped, 4u);
  // Late copies inside the gap are duplicates.
  EXPECT_TRUE(r.on_data(data(4)).empty());
}

TEST(ReliableReader, OverlappingGapsMerge)
{
  ReliableReaderSession r(kReader, kWriterGuid);
  r.on_data(data(1));
  r.on_gap({kWriter, 8, 9});
  r.on_gap({kWriter, 4, 5});
  r.on_gap({kWriter, 5, 8});
  auto res = r.on_heartbeat({kWriter, 1, 12, 1});
  EXPECT_EQ(res.acknack->requested(), (std::vector<SequenceNumber>{2, 3, 10, 11, 12}));
  auto got = r.on_gap({kWriter, 2, 3});
  EXPECT_TRUE(got.empty());
  EXPECT_EQ(r.base(), 10u);
}

TEST(ReliableReader, WindowIsCappedAndStaleCountIgnored)
{
  ReliableReaderSession r(kReader, kWriterGuid);
  auto res = r.on_heartbeat({kWriter, 1, 1000, 7});
  EXPECT_EQ(res.acknack->missing.size(), kMaxBitmapLength);
  EXPECT_FALSE(r.on_heartbeat({kWriter, 1, 1000, 7}).acknack);
  EXPECT_FALSE(r.on_heartbeat({kWriter, 1, 1000, 3}).acknack);
  EXPECT_TRUE(r.on_heartbeat({kWriter, 1, 1000, 8}).acknack);
}

TEST(BestEffortReader, DropsStaleAndCountsLosses)
{
  BestEffortReaderSession r;
  std::vector<SequenceNumber> got;
  for (SequenceNumber s : {3, 4, 4, 2, 7, 8, 6, 10}) {
    if (auto d = r.on_data(data(s))) {
      got.push_back(d->sequence);
    }
  }
  EXPECT_EQ(got, (std::vector<SequenceNumber>{3, 4, 7, 8, 10}));
  EXPECT_EQ(r.stats().lost, 3u);  // 5, 6 and 9; losses before 3 are unknown
  EXPECT_EQ(r.stats().duplicates, 3u);
}

TEST(WriterSession, BestEffortSendsOncePerLocatorAndKeepsNothing)
{
  WriterSession w({kWriter}, {qos::HistoryKind::kKeepLast, 1}, {});
  std::vector<Outgoing> out;
  w.add_reader({{2}, EntityId::from_uint(1)}, kLocA, false, false, 0ns, out);
  w.add_reader({{2}, EntityId::from_uint(2)}, kLocA, false, false, 0ns, out);
  w.add_reader({{3}, EntityId::from_uint(1)}, kLocB, false, false, 0ns, out);
  EXPECT_TRUE(out.empty());
  for (int i = 0; i < 100; ++i) {
    w.write(1, 0ns, payload(), 0ns, out);
  }
  EXPECT_EQ(out.size(), 200u);
  EXPECT_TRUE(w.history().empty());
  for (int t = 0; t < 1000; t += 10) {
    w.step(std::chrono::milliseconds(t), out);
  }
  EXPECT_EQ(out.size(), 200u);
  EXPECT_EQ(w.stats().heartbeats, 0u);
  EXPECT_EQ(w.history().last_added(), 100u);
}

TEST(WriterSession, LosslessDrainsAndGoesQuiet)
{
  test::SessionSim sim({}, kKeepAll);
  for (int i = 0; i < 10; ++i) {
    ASSERT_TRUE(sim.write(1));
  }
  EXPECT_EQ(sim.writer().history().size(), 10u);
  ASSERT_TRUE(sim.settle(200));
  EXPECT_EQ(sim.delivered().size(), 10u);
  EXPECT_TRUE(sim.writer().history().empty());
  EXPECT_EQ(sim.writer().stats().heartbeats, 1u);
  EXPECT_EQ(sim.writer().stats().retransmits, 0u);
  for (int i = 0; i < 1000; ++i) {
    sim.tick();
  }
  EXPECT_EQ(sim.writer().stats().heartbeats, 1u);
  // A new write rearms the heartbeat.
  sim.write(1);
  ASSERT_TRUE(sim.settle(200));
  EXPECT_EQ(sim.writer().stats().heartbeats, 2u);
}

TEST(WriterSession, RetransmitRateLimited)
{
  WriterSession w({kWriter, 50ms, 5ms}, kKeepAll, {});
  std::vector<Outgoing> out;
  w.add_reader(kReaderGuid, kLocA, true, false, 0ns, out);
  w.write(1, 0ns, payload(), 0ns, out);
  w.write(1, 0ns, payload(), 0ns, out);
  out.clear();
  AckNack an{kReader, kWriterGuid, 1, {true, true}};
  w.on_acknack(kReaderGuid, an, 10ms, out);
  w.on_acknack(kReaderGuid, an, 12ms, out);
  EXPECT_EQ(out.size(), 2u);
  w.on_acknack(kReaderGuid, an, 15ms, out);
  EXPECT_EQ(out.size(), 4u);
  auto resent = of_kind<Data>(out);
  EXPECT_EQ(resent[0].reader, kReader);
  EXPECT_EQ(w.stats().retransmits, 4u);
  // Acknowledging base 3 releases both.
  w.on_acknack(kReaderGuid, AckNack{kReader, kWriterGuid, 3, {}}, 20ms, out);
  EXPECT_TRUE(w.history().empty());
  EXPECT_TRUE(w.all_acknowledged());
}

TEST(WriterSession, EvictedSequencesAreGapped)
{
  // KEEP_LAST(1), two instances: 1:A 2:B 3:A 4:A leaves {2, 4}.
  WriterSession w({kWriter}, {qos::HistoryKind::kKeepLast, 1}, {});
  std::vector<Outgoing> out;
  w.add_reader(kReaderGuid, kLocA, true, false, 0ns, out);
  for (dcps::InstanceHandle h : {10, 20, 10, 10}) {
    w.write(h, 0ns, payload(), 0ns, out);
  }
  EXPECT_EQ(w.history().size(), 2u);
  out.clear();
  w.on_acknack(kReaderGuid, AckNack{kReader, kWriterGuid, 1, {true, true, true, true}}, 1ms, out);
  auto gaps = of_kind<Gap>(out);
  auto resent = of_kind<Data>(out);
  ASSERT_EQ(gaps.size(), 2u);
  EXPECT_EQ(gaps[0], (Gap{kWriter, 1, 1}));
  EXPECT_EQ(gaps[1], (Gap{kWriter, 3, 3}));
  EXPECT_EQ(seqs(resent), (std::vector<SequenceNumber>{2, 4}));
  // Gap ranges extend up to the next held sequence.
  out.clear();
  w.on_acknack(kReaderGuid, AckNack{kReader, kWriterGuid, 1, {true}}, 2ms, out);
  EXPECT_EQ(of_kind<Gap>(out), (std::vector<Gap>{{kWriter, 1, 1}}));
}

TEST(WriterSession, LateVolatileReaderStartsAfterLastWrite)
{
  WriterSession w({kWriter}, kKeepAll, {});
  std::vector<Outgoing> out;
  const Guid a{{2}, EntityId::from_uint(1)};
  const Guid b{{3}, EntityId::from_uint(1)};
  const Guid c{{2}, EntityId::from_uint(2)};
  w.add_reader(a, kLocA, true, false, 0ns, out);
  for (int i = 0; i < 5; ++i) {
    w.write(1, 0ns, payload(), 0ns, out);
  }
  out.clear();
  w.add_reader(b, kLocB, true, false, 0ns, out);
  EXPECT_EQ(of_kind<Gap>(out), (std::vector<Gap>{{kWriter, 1, 5}}));
  EXPECT_EQ(w.acknowledged_base(b), 6u);
  // Reader a still needs 1..5, so c (sharing a's locator) gets no GAP.
  out.clear();
  w.add_reader(c, kLocA, true, false, 0ns, out);
  EXPECT_TRUE(of_kind<Gap>(out).empty());
  // Once a acknowledged them they are released.
  w.on_acknack(a, AckNack{EntityId::from_uint(1), kWriterGuid, 6, {}}, 1ms, out);
  EXPECT_TRUE(w.history().empty());
  EXPECT_TRUE(w.all_acknowledged());
}

TEST(WriterSession, TransientLocalReplaysHistory)
{
  WriterSession w({kWriter, 50ms, 5ms, true}, {qos::HistoryQos{qos::HistoryKind::kKeepLast, 2}},
    {});
  std::vector<Outgoing> out;
  for (int i = 0; i < 5; ++i) {
    w.write(1, 0ns, payload(), 0ns, out);
  }
  EXPECT_TRUE(out.empty());
  EXPECT_EQ(w.history().size(), 2u);
  w.add_reader(kReaderGuid, kLocA, true, true, 0ns, out);
  EXPECT_EQ(seqs(of_kind<Data>(out)), (std::vector<SequenceNumber>{4, 5}));
  EXPECT_EQ(of_kind<Gap>(out), (std::vector<Gap>{{kWriter, 1, 3}}));
  out.clear();
  w.step(0ns, out);
  ASSERT_EQ(of_kind<Heartbeat>(out).size(), 1u);
  EXPECT_EQ(of_kind<Heartbeat>(out)[0].first, 4u);
  // Acknowledged samples stay for the next late joiner.
  w.on_acknack(kReaderGuid, AckNack{kReader, kWriterGuid, 6, {}}, 1ms, out);
  EXPECT_EQ(w.history().size(), 2u);
}

TEST(WriterSession, KeepAllBlocksUntilAcked)
{
  WriterSession w({kWriter}, kKeepAll, {3, qos::kLengthUnlimited, qos::kLengthUnlimited});
  std::vector<Outgoing> out;
  w.add_reader(kReaderGuid, kLocA, true, false, 0ns, out);
  for (int i = 0; i < 3; ++i) {
    w.write(1, 0ns, payload(), 0ns, out);
  }
  EXPECT_FALSE(w.can_write(1));
  try {
    w.write(1, 0ns, payload(), 0ns, out);
    FAIL();
  } catch (const Error & e) {
    EXPECT_EQ(e.code(), Errc::kResourceLimits);
  }
  w.on_acknack(kReaderGuid, AckNack{kReader, kWriterGuid, 2, {}}, 1ms, out);
  EXPECT_TRUE(w.can_write(1));
}

// Reliable invariant: KEEP_ALL under loss, duplication and reordering
// delivers every sequence exactly once and in order.
TEST(ReliableProperty, KeepAllDeliversEverythingInOrder)
{
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    std::mt19937_64 rng(seed);
    const double drop = 0.05 * static_cast<double>(rng() % 10);
    test::SessionSim sim({drop, 0.05, static_cast<std::uint32_t>(rng() % 6), seed}, kKeepAll);
    const int n = 300 + static_cast<int>(rng() % 300);
    for (int i = 0; i < n; ++i) {
      sim.write(1 + rng() % 3);
      if (rng() % 3 == 0) {
        sim.tick();
      }
    }
    ASSERT_TRUE(sim.settle(200000)) << "seed " << seed;
    const auto got = seqs(sim.delivered());
    ASSERT_EQ(got.size(), static_cast<std::size_t>(n)) << "seed " << seed;
    for (int i = 0; i < n; ++i) {
      ASSERT_EQ(got[static_cast<std::size_t>(i)], static_cast<SequenceNumber>(i + 1));
    }
    EXPECT_TRUE(sim.writer().history().empty());
    EXPECT_EQ(sim.reader().stats().skipped, 0u);
  }
}

// GAP soundness: with KEEP_LAST the reader never waits on an evicted
// sequence, and ends holding the newest sample of each instance.
TEST(ReliableProperty, KeepLastConvergesToNewest)
{
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    std::mt19937_64 rng(seed * 31);
    test::SessionSim sim({0.3, 0.05, 4, seed}, {qos::HistoryKind::kKeepLast, 1});
    std::map<dcps::InstanceHandle, SequenceNumber> newest;
    for (int i = 0; i < 500; ++i) {
      const dcps::InstanceHandle h = 1 + rng() % 4;
      sim.write(h);
      newest[h] = sim.writer().history().last_added();
      if (rng() % 8 == 0) {
        sim.tick();
      }
    }
    ASSERT_TRUE(sim.settle(200000)) << "seed " << seed;
    EXPECT_EQ(sim.reader().base(), 501u);
    std::map<dcps::InstanceHandle, SequenceNumber> last_seen;
    SequenceNumber prev = 0;
    for (const auto & d : sim.delivered()) {
      ASSERT_GT(d.sequence, prev);
      prev = d.sequence;
      last_seen[d.instance] = d.sequence;
    }
    EXPECT_EQ(last_seen, newest) << "seed " << seed;
    EXPECT_EQ(sim.delivered().size() + sim.reader().stats().skipped, 500u);
  }
}
