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

#ifndef MINIDDS__BENCH__RUNNER_HPP_
#define MINIDDS__BENCH__RUNNER_HPP_

#include <chrono>
#include <cstdint>
#include <vector>

#include "minidds/bench/report.hpp"
#include "minidds/bench/trace.hpp"
#include "minidds/dcps/participant.hpp"
#include "minidds/idl/types.hpp"
#include "minidds/qos/profile_file.hpp"

namespace minidds::bench
{

/// Sequence number and send time travel inside every sample.
inline constexpr std::size_t kHeaderSize = 12;
inline constexpr std::size_t kMaxBenchPayload = 60000;

inline constexpr const char * kPingTopic = "bench.ping";
inline constexpr const char * kEchoTopic = "bench.echo";

/// `struct BenchSample { unsigned long seq; long long t_send_ns; string fill; };`
const idl::TypeDescriptor & bench_type();
/// A sample whose application payload (header plus fill) is `payload_size`.
idl::Sample bench_sample(std::uint32_t seq, std::int64_t t_send_ns, std::size_t payload_size);

/// Raises sizes below the header to kHeaderSize. Throws
/// Error(kInvalidArgument) for 0 or sizes above kMaxBenchPayload.
std::size_t effective_payload(std::size_t requested);

enum class Role : std::uint8_t {kPing, kEcho};

struct LatencyOptions
{
  Role role = Role::kPing;
  std::size_t payload = kHeaderSize;
  double rate_hz = 100;
  std::uint64_t count = 1000;
  qos::QosFile qos;
  std::int32_t domain = 0;
  dcps::ParticipantConfig participant;
  /// Discovery and the first round trip must complete within this.
  Duration match_timeout = std::chrono::seconds(10);
  /// Ping: how long to wait for outstanding echoes after the last send.
  Duration drain_timeout = std::chrono::seconds(2);
  /// Echo: exit after this long without a sample.
  Duration idle_timeout = std::chrono::seconds(5);
};

struct LatencyResult
{
  /// Ping: one record per echoed sequence, sorted by sequence.
  std::vector<TraceRecord> trace;
  std::uint64_t sent = 0;
  /// Ping: echoes received. Echo: samples reflected.
  std::uint64_t received = 0;
  std::uint64_t lost = 0;
  /// From participant creation until both local endpoints matched.
  Duration match_time{0};
  std::size_t payload_size = 0;
};

/// Ping publishes `count` samples on bench.ping at `rate_hz` and records
/// the echoes from bench.echo; echo reflects every bench.ping sample until
/// `count` were reflected or it goes idle. Throws Error(kInvalidArgument)
/// for bad options and Error(kNoMatchWithinTimeout), carrying any QoS
/// incompatibility report, when the peer never matches.
LatencyResult run_latency(const LatencyOptions & options);

/// Ping and echo in one process over an in-process network.
LatencyResult run_latency_selftest(LatencyOptions options);

struct ThroughputOptions
{
  std::vector<std::size_t> sizes{10, 100, 1000, 5000};
  Duration duration = std::chrono::seconds(1);
  qos::QosFile qos;
  std::int32_t domain = 0;
  /// Applied to both participants. Without a network they use UDP on the
  /// loopback interface with multicast disabled.
  dcps::ParticipantConfig participant;
  Duration match_timeout = std::chrono::seconds(10);
};

/// A publisher and a subscriber participant in this process. For every
/// size the publisher writes as fast as it can for `duration` and the
/// subscriber counts what arrives.
std::vector<ThroughputRow> run_throughput(const ThroughputOptions & options);

}  // namespace minidds::bench

#endif  // MINIDDS__BENCH__RUNNER_HPP_
