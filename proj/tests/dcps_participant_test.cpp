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

#include <atomic>
#include <chrono>
#include <set>
#include <thread>

#include "minidds/error.hpp"
#include "support/dcps_fixtures.hpp"

using namespace minidds;
using namespace minidds::dcps;
using namespace std::chrono_literals;
using test::ManualDomain;

namespace
{

std::vector<std::uint64_t> numbers(const std::vector<ReceivedSample> & samples)
{
  std::vector<std::uint64_t> out;
  for (const auto & s : samples) {
    out.push_back(std::get<std::uint64_t>(s.data.values[1]));
  }
  return out;
}

template<typename F>
Errc error_code(F && f)
{
  try {
    f();
  } catch (const Error & e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return static_cast<Errc>(255);
}

}  // namespace

TEST(Participant, NegativeDomainIsRejected)
{
  ManualDomain d;
  EXPECT_EQ(error_code([&]() {d.join(-1);}), Errc::kPreconditionNotMet);
  EXPECT_NO_THROW(d.join(0));
}

TEST(Participant, TopicCreationRules)
{
  ManualDomain d;
  auto p = d.join();
  auto t = p->create_topic("Climat", test::message_type());
  EXPECT_EQ(p->create_topic("Climat", test::message_type()), t);
  auto other = test::message_type();
  other.name = "Other";
  EXPECT_EQ(error_code([&]() {p->create_topic("Climat", other);}), Errc::kInconsistentTopic);
  qos::QosProfile bad(qos::EntityKind::kTopic);
  bad.put(qos::HistoryQos{qos::HistoryKind::kKeepLast, 0});
  EXPECT_EQ(error_code([&]() {p->create_topic("Bad", test::message_type(), bad);}),
    Errc::kInvalidQos);
}

TEST(Participant, EndpointQosRules)
{
  ManualDomain d;
  auto p = d.join();
  auto t = p->create_topic("T", test::message_type());
  auto w = p->create_datawriter(t, test::writer_qos({test::kReliable}));
  EXPECT_EQ(w->qos().get<qos::ReliabilityQos>().kind, qos::ReliabilityKind::kReliable);
  EXPECT_EQ(error_code([&]() {
      p->create_datareader(t, test::reader_qos({qos::OwnershipStrengthQos{3}}));
    }), Errc::kInvalidQos);
  EXPECT_EQ(error_code([&]() {
      p->create_datareader(t, test::reader_qos({qos::TimeBasedFilterQos{20ms},
        qos::DeadlineQos{10ms}}));
    }), Errc::kInvalidQos);
  EXPECT_EQ(error_code([&]() {p->create_datareader(t, test::writer_qos({}));}),
    Errc::kInvalidArgument);
}

TEST(Participant, TopicPoliciesFlowIntoEndpoints)
{
  ManualDomain d;
  auto p = d.join();
  qos::QosProfile tq(qos::EntityKind::kTopic);
  tq.put(qos::ReliabilityQos{qos::ReliabilityKind::kReliable});
  tq.put(qos::DeadlineQos{50ms});
  auto t = p->create_topic("T", test::message_type(), tq);
  auto r = p->create_datareader(t, test::reader_qos({qos::DeadlineQos{80ms}}));
  EXPECT_EQ(r->qos().get<qos::ReliabilityQos>().kind, qos::ReliabilityKind::kReliable);
  EXPECT_EQ(r->qos().get<qos::DeadlineQos>().period, Duration(80ms));
}

TEST(Participant, SameParticipantWriterAndReaderMatch)
{
  ManualDomain d;
  auto p = d.join();
  auto t = p->create_topic("T", test::message_type());
  auto r = p->create_datareader(t);
  auto w = p->create_datawriter(t);
  EXPECT_EQ(w->matched_readers(), 1u);
  EXPECT_EQ(r->matched_writers(), 1u);
  for (std::uint64_t i = 0; i < 100; ++i) {
    EXPECT_EQ(w->write(test::message(1, i)), i + 1);
  }
  d.pump();
  // KEEP_LAST(1) on one instance keeps the newest.
  auto got = r->take();
  ASSERT_EQ(got.size(), 1u);
  EXPECT_EQ(numbers(got), (std::vector<std::uint64_t>{99}));
  EXPECT_EQ(got[0].info.sequence, 100u);
  EXPECT_EQ(got[0].info.writer_guid, w->guid());
}

TEST(Participant, BestEffortLosslessInOrder)
{
  ManualDomain d;
  auto a = d.join();
  auto b = d.join();
  auto ta = a->create_topic("T", test::message_type());
  auto tb = b->create_topic("T", test::message_type());
  auto w = a->create_datawriter(ta);
  auto r = b->create_datareader(tb, test::reader_qos({test::kKeepAll}));
  ASSERT_GE(d.pump_until([&]() {return w->matched_readers() == 1;}, 5s).count(), 0);
  for (std::uint64_t i = 0; i < 100; ++i) {
    w->write(test::message(static_cast<std::int32_t>(i % 5), i));
    d.pump();
  }
  auto got = r->take();
  ASSERT_EQ(got.size(), 100u);
  // take orders by instance handle, then acceptance.
  std::set<std::uint64_t> all;
  for (std::size_t i = 0; i < got.size(); ++i) {
    all.insert(numbers(got)[i]);
    if (i > 0) {
      const auto & prev = got[i - 1].info;
      const auto & cur = got[i].info;
      EXPECT_TRUE(prev.instance < cur.instance ||
        (prev.instance == cur.instance && prev.sequence < cur.sequence));
    }
  }
  EXPECT_EQ(all.size(), 100u);
  EXPECT_EQ(r->stats().protocol.lost, 0u);
  EXPECT_EQ(w->stats().protocol.heartbeats, 0u);
}

TEST(Participant, MatchWithinTwoAnnouncePeriods)
{
  ManualDomain d;
  auto a = d.join();
  auto b = d.join();
  auto w = a->create_datawriter(a->create_topic("T", test::message_type()));
  d.pump(100ms, 3);
  auto r = b->create_datareader(b->create_topic("T", test::message_type()));
  auto took = d.pump_until([&]() {
        return w->matched_readers() == 1 && r->matched_writers() == 1;
      }, 2s, 10ms);
  ASSERT_GE(took.count(), 0);
  EXPECT_LE(took, Duration(2s));
}

TEST(Participant, DomainsAreIsolated)
{
  ManualDomain d;
  auto a = d.join(0);
  auto b = d.join(1);
  auto w = a->create_datawriter(a->create_topic("T", test::message_type()));
  auto r = b->create_datareader(b->create_topic("T", test::message_type()));
  d.pump(100ms, 50);
  EXPECT_EQ(w->matched_readers(), 0u);
  EXPECT_EQ(r->matched_writers(), 0u);
  EXPECT_EQ(a->discovered_participants(), 0u);
}

TEST(Participant, IncompatibleReliabilityIsReported)
{
  ManualDomain d;
  auto a = d.join();
  auto b = d.join();
  auto w = a->create_datawriter(a->create_topic("T", test::message_type()));
  auto r = b->create_datareader(b->create_topic("T", test::message_type()),
      test::reader_qos({test::kReliable}));
  d.pump(100ms, 30);
  EXPECT_EQ(r->matched_writers(), 0u);
  auto inc = r->incompatible();
  ASSERT_EQ(inc.size(), 1u);
  EXPECT_EQ(inc[0].failure, MatchFailure::kIncompatibleQos);
  EXPECT_NE(inc[0].report.find("RELIABILITY"), std::string::npos) << inc[0].report;
  EXPECT_EQ(w->incompatible().size(), 1u);
}

TEST(Participant, PartitionsFromPublisherAndSubscriber)
{
  ManualDomain d;
  auto p = d.join();
  auto t = p->create_topic("T", test::message_type());
  qos::QosProfile pq(qos::EntityKind::kPublisher);
  pq.put(qos::PartitionQos{{"a"}});
  qos::QosProfile sq(qos::EntityKind::kSubscriber);
  sq.put(qos::PartitionQos{{"b"}});
  auto w = p->create_datawriter(t, test::writer_qos({}), p->create_publisher(pq));
  auto r = p->create_datareader(t, test::reader_qos({}), p->create_subscriber(sq));
  EXPECT_EQ(w->matched_readers(), 0u);
  ASSERT_EQ(r->incompatible().size(), 1u);
  EXPECT_EQ(r->incompatible()[0].failure, MatchFailure::kPartition);
  sq.put(qos::PartitionQos{{"b", "a"}});
  auto r2 = p->create_datareader(t, test::reader_qos({}), p->create_subscriber(sq));
  EXPECT_EQ(w->matched_readers(), 1u);
}

TEST(Participant, SilentPeerIsUnmatchedAfterThreePeriods)
{
  ManualDomain d;
  auto a = d.join();
  auto b = d.join();
  auto w = a->create_datawriter(a->create_topic("T", test::message_type()));
  auto r = b->create_datareader(b->create_topic("T", test::message_type()));
  ASSERT_GE(d.pump_until([&]() {return w->matched_readers() == 1;}, 3s).count(), 0);
  b->close();
  auto took = d.pump_until([&]() {return w->matched_readers() == 0;}, 5s, 10ms);
  ASSERT_GE(took.count(), 0);
  EXPECT_GE(took, Duration(2s));
  EXPECT_LE(took, Duration(3100ms));
}

TEST(Participant, DeletedReaderIsUnmatchedRemotely)
{
  ManualDomain d;
  auto a = d.join();
  auto b = d.join();
  auto w = a->create_datawriter(a->create_topic("T", test::message_type()));
  auto r = b->create_datareader(b->create_topic("T", test::message_type()));
  ASSERT_GE(d.pump_until([&]() {return w->matched_readers() == 1;}, 3s).count(), 0);
  r.reset();
  auto took = d.pump_until([&]() {return w->matched_readers() == 0;}, 5s, 10ms);
  ASSERT_GE(took.count(), 0);
}

TEST(Participant, TransientLocalLateJoinerGetsNewestOnly)
{
  // KEEP_LAST(1): two writes of one instance before any reader exists leave
  // only sequence 2 for the late joiner.
  ManualDomain d;
  auto a = d.join();
  auto b = d.join();
  const qos::DurabilityQos tl{qos::DurabilityKind::kTransientLocal};
  auto w = a->create_datawriter(a->create_topic("T", test::message_type()),
      test::writer_qos({tl, test::kReliable}));
  w->write(test::message(1, 10));
  w->write(test::message(1, 20));
  auto r = b->create_datareader(b->create_topic("T", test::message_type()),
      test::reader_qos({tl, test::kReliable, test::kKeepAll}));
  ASSERT_GE(d.pump_until([&]() {return r->available() > 0;}, 5s).count(), 0);
  d.pump(1ms, 200);
  auto got = r->take();
  ASSERT_EQ(got.size(), 1u);
  EXPECT_EQ(got[0].info.sequence, 2u);
  EXPECT_EQ(numbers(got), (std::vector<std::uint64_t>{20}));
}

TEST(Participant, WriteErrors)
{
  ManualDomain d;
  auto p = d.join();
  auto t = p->create_topic("T", test::message_type());
  auto w = p->create_datawriter(t);
  idl::Sample wrong = test::message(1, 2);
  wrong.values.pop_back();
  EXPECT_EQ(error_code([&]() {w->write(wrong);}), Errc::kTypeMismatch);
  EXPECT_EQ(error_code([&]() {w->write(test::message(1, 2, std::string(70000, 'x')));}),
    Errc::kSampleTooLarge);
  EXPECT_NO_THROW(w->write(test::message(1, 2, std::string(60000, 'x'))));
}

TEST(Participant, KeepAllWriterRefusesWhenUnacknowledged)
{
  ManualDomain d;
  auto a = d.join();
  auto b = d.join();
  auto w = a->create_datawriter(a->create_topic("T", test::message_type()),
      test::writer_qos({test::kReliable, test::kKeepAll, qos::ResourceLimitsQos{2, -1, -1}}));
  auto r = b->create_datareader(b->create_topic("T", test::message_type()),
      test::reader_qos({test::kReliable, test::kKeepAll}));
  ASSERT_GE(d.pump_until([&]() {return w->matched_readers() == 1;}, 3s).count(), 0);
  w->write(test::message(1, 1));
  w->write(test::message(1, 2));
  // Manual mode cannot block; the refusal is immediate.
  EXPECT_EQ(error_code([&]() {w->write(test::message(1, 3));}), Errc::kResourceLimits);
  ASSERT_GE(d.pump_until([&]() {return w->stats().protocol.acknacks > 0 &&
    w->wait_for_acknowledgments(0s);}, 1s).count(), 0);
  EXPECT_NO_THROW(w->write(test::message(1, 3)));
}

TEST(Participant, ReliableUnderLossDeliversAllInOrder)
{
  ManualDomain d({0.2, 0.05, 4, 99});
  auto a = d.join();
  auto b = d.join();
  auto w = a->create_datawriter(a->create_topic("T", test::message_type()),
      test::writer_qos({test::kReliable, test::kKeepAll}));
  auto r = b->create_datareader(b->create_topic("T", test::message_type()),
      test::reader_qos({test::kReliable, test::kKeepAll}));
  ASSERT_GE(d.pump_until([&]() {return w->matched_readers() == 1 && r->matched_writers() == 1;},
    10s).count(), 0);
  const std::uint64_t n = 2000;
  for (std::uint64_t i = 0; i < n; ++i) {
    w->write(test::message(1, i));
    d.pump();
  }
  ASSERT_GE(d.pump_until([&]() {return r->available() == n;}, 60s).count(), 0);
  auto got = r->take();
  ASSERT_EQ(got.size(), n);
  for (std::uint64_t i = 0; i < n; ++i) {
    ASSERT_EQ(got[i].info.sequence, i + 1);
  }
  EXPECT_GT(w->stats().protocol.retransmits, 0u);
  EXPECT_EQ(r->stats().protocol.skipped, 0u);
}

TEST(Participant, ExclusiveOwnershipAcrossParticipants)
{
  ManualDomain d;
  auto a = d.join();
  auto b = d.join();
  auto c = d.join();
  const qos::OwnershipQos excl{qos::OwnershipKind::kExclusive};
  auto weak = a->create_datawriter(a->create_topic("T", test::message_type()),
      test::writer_qos({excl, qos::OwnershipStrengthQos{5}}));
  auto strong = b->create_datawriter(b->create_topic("T", test::message_type()),
      test::writer_qos({excl, qos::OwnershipStrengthQos{9}}));
  auto r = c->create_datareader(c->create_topic("T", test::message_type()),
      test::reader_qos({excl, test::kKeepAll}));
  ASSERT_GE(d.pump_until([&]() {return r->matched_writers() == 2;}, 3s).count(), 0);
  for (std::uint64_t i = 0; i < 10; ++i) {
    weak->write(test::message(1, 100 + i));
    strong->write(test::message(1, 200 + i));
    d.pump();
  }
  auto got = r->take();
  // The weak writer owns the instance only until the strong one is heard.
  for (std::size_t i = 1; i < got.size(); ++i) {
    EXPECT_EQ(got[i].info.writer_guid, strong->guid());
  }
  EXPECT_GE(got.size(), 10u);
  EXPECT_GT(r->stats().cache.not_owner, 0u);
}

TEST(Participant, ThreadedUdpLoopback)
{
  ParticipantConfig ca;
  ca.multicast = false;
  ca.port = 17480;
  ca.announce_period = 100ms;
  ParticipantConfig cb = ca;
  cb.port = 17481;
  ca.peers = {rtps::parse_locator("127.0.0.1:17481")};
  cb.peers = {rtps::parse_locator("127.0.0.1:17480")};
  auto a = DomainParticipant::create(0, ca);
  auto b = DomainParticipant::create(0, cb);
  auto w = a->create_datawriter(a->create_topic("T", test::message_type()),
      test::writer_qos({test::kReliable, test::kKeepAll}));
  auto r = b->create_datareader(b->create_topic("T", test::message_type()),
      test::reader_qos({test::kReliable, test::kKeepAll}));
  std::atomic<int> notified{0};
  r->set_listener([&notified]() {++notified;});
  ASSERT_TRUE(w->wait_for_matched(1, 5s));
  ASSERT_TRUE(r->wait_for_matched(1, 5s));
  for (std::uint64_t i = 0; i < 200; ++i) {
    w->write(test::message(static_cast<std::int32_t>(i % 3), i, "payload"));
  }
  ASSERT_TRUE(w->wait_for_acknowledgments(5s));
  EXPECT_EQ(r->available(), 200u);
  EXPECT_GT(notified.load(), 0);
  auto got = r->take(1000);
  EXPECT_EQ(got.size(), 200u);
  EXPECT_EQ(std::get<std::string>(got[0].data.values[2]), "payload");
  EXPECT_GT(a->stats().datagrams_sent, 200u);
  EXPECT_EQ(b->stats().decode_errors, 0u);
}
