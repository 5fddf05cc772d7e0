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

#include "minidds/bench/runner.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <thread>

#include "minidds/idl/parser.hpp"
#include "minidds/log.hpp"

namespace minidds::bench
{

namespace
{

using SteadyClock = std::chrono::steady_clock;
using namespace std::chrono_literals;

std::int64_t steady_ns()
{
  return std::chrono::duration_cast<std::chrono::nanoseconds>(
    SteadyClock::now().time_since_epoch()).count();
}

struct Header
{
  std::uint32_t seq;
  std::int64_t t_send_ns;
  std::size_t payload_size;
};

Header header_of(const idl::Sample & s)
{
  return {std::get<std::uint32_t>(s.values.at(0)), std::get<std::int64_t>(s.values.at(1)),
    kHeaderSize + std::get<std::string>(s.values.at(2)).size()};
}

std::string incompatibility(const std::vector<dcps::IncompatibleMatch> & found)
{
  std::string out;
  for (const auto & m : found) {
    out += "\n  " + m.report;
  }
  return out;
}

[[noreturn]] void no_match(const std::string & what, const std::string & reports,
  Duration timeout)
{
  throw Error(Errc::kNoMatchWithinTimeout, what + " within " +
          std::to_string(std::chrono::duration_cast<std::chrono::milliseconds>(timeout).count()) +
          " ms" +
          (reports.empty() ? std::string() : ":" + reports));
}

template<typename Pred>
bool wait_until(Pred pred, Duration timeout, Duration step = 2ms)
{
  const auto deadline = SteadyClock::now() + timeout;
  while (!pred()) {
    if (SteadyClock::now() >= deadline) {
      return false;
    }
    std::this_thread::sleep_for(step);
  }
  return true;
}

/// Runs `fn` once, from run() or at scope exit, so that listeners holding
/// their reader are cleared on error paths too.
class Cleanup
{
public:
  explicit Cleanup(std::function<void()> fn) : fn_(std::move(fn)) {}
  ~Cleanup() {run();}
  Cleanup(const Cleanup &) = delete;
  Cleanup & operator=(const Cleanup &) = delete;

  void run()
  {
    if (fn_) {
      auto fn = std::move(fn_);
      fn_ = nullptr;
      fn();
    }
  }

private:
  std::function<void()> fn_;
};

void check_latency_options(const LatencyOptions & o)
{
  if (!(o.rate_hz > 0) || !std::isfinite(o.rate_hz)) {
    throw Error(Errc::kInvalidArgument, "rate must be a positive number of samples per second");
  }
  if (o.count == 0 || o.count > UINT32_MAX) {
    throw Error(Errc::kInvalidArgument, "count must be in [1, 4294967295]");
  }
}

// Every sample must reach the trace, so readers keep all samples unless
// the QoS file says otherwise.
qos::QosProfile reader_qos(const qos::QosFile & file)
{
  auto profile = file.profile_for(qos::EntityKind::kDataReader);
  if (!profile.contains(qos::QosPolicyId::kHistory)) {
    profile.put(qos::HistoryQos{qos::HistoryKind::kKeepAll, 1});
  }
  return profile;
}

struct Endpoints
{
  std::shared_ptr<dcps::DomainParticipant> participant;
  std::shared_ptr<dcps::DataWriter> writer;
  std::shared_ptr<dcps::DataReader> reader;
};

Endpoints open(const LatencyOptions & o, const char * out_topic, const char * in_topic)
{
  Endpoints e;
  e.participant = dcps::DomainParticipant::create(o.domain, o.participant);
  const auto topic_qos = o.qos.profile_for(qos::EntityKind::kTopic);
  auto out = e.participant->create_topic(out_topic, bench_type(), topic_qos);
  auto in = e.participant->create_topic(in_topic, bench_type(), topic_qos);
  e.writer = e.participant->create_datawriter(out,
      o.qos.profile_for(qos::EntityKind::kDataWriter));
  e.reader = e.participant->create_datareader(in, reader_qos(o.qos));
  return e;
}

bool try_write(dcps::DataWriter & writer, const idl::Sample & sample)
{
  try {
    writer.write(sample);
    return true;
  } catch (const Error & e) {
    if (e.code() != Errc::kResourceLimits) {
      throw;
    }
    return false;
  }
}

LatencyResult run_ping(const LatencyOptions & o)
{
  const auto started = SteadyClock::now();
  auto e = open(o, kPingTopic, kEchoTopic);
  LatencyResult result;
  result.payload_size = effective_payload(o.payload);

  std::mutex mutex;
  std::map<std::uint64_t, TraceRecord> echoed;
  std::atomic<bool> probe_seen{false};
  auto reader = e.reader;
  e.reader->set_listener([&, reader]() {
      const auto now = steady_ns();
      auto samples = reader->take();
      std::lock_guard<std::mutex> lock(mutex);
      for (const auto & s : samples) {
        const auto h = header_of(s.data);
        if (h.seq == 0) {
          probe_seen = true;
        } else if (h.seq <= o.count) {
          echoed.try_emplace(h.seq, TraceRecord{h.seq, h.t_send_ns, now,
              static_cast<std::uint32_t>(h.payload_size)});
        }
      }
    });
  Cleanup stop([&e]() {
      e.reader->set_listener(nullptr);
      e.participant->close();
    });

  const bool matched = wait_until([&]() {
        return e.writer->matched_readers() > 0 && e.reader->matched_writers() > 0;
      }, o.match_timeout);
  if (!matched) {
    no_match("no echo endpoint matched on domain " + std::to_string(o.domain),
      incompatibility(e.writer->incompatible()) + incompatibility(e.reader->incompatible()),
      o.match_timeout);
  }
  result.match_time = SteadyClock::now() - started;

  // The echo side may not have matched us yet; probe until a reply arrives.
  const bool ready = wait_until([&]() {
        if (!probe_seen) {
          try_write(*e.writer, bench_sample(0, steady_ns(), result.payload_size));
        }
        return probe_seen.load();
      }, o.match_timeout, 20ms);
  if (!ready) {
    no_match("echo never answered on domain " + std::to_string(o.domain),
      incompatibility(e.writer->incompatible()) + incompatibility(e.reader->incompatible()),
      o.match_timeout);
  }

  const auto period = std::chrono::duration_cast<SteadyClock::duration>(
    std::chrono::duration<double>(1.0 / o.rate_hz));
  const auto t0 = SteadyClock::now();
  for (std::uint64_t seq = 1; seq <= o.count; ++seq) {
    std::this_thread::sleep_until(t0 + period * static_cast<std::int64_t>(seq - 1));
    if (try_write(*e.writer, bench_sample(static_cast<std::uint32_t>(seq), steady_ns(),
        result.payload_size)))
    {
      ++result.sent;
    }
  }
  wait_until([&]() {
      std::lock_guard<std::mutex> lock(mutex);
      return echoed.size() >= result.sent;
    }, o.drain_timeout);

  stop.run();
  std::lock_guard<std::mutex> lock(mutex);
  for (const auto & [seq, r] : echoed) {
    result.trace.push_back(r);
  }
  result.received = result.trace.size();
  result.lost = o.count - result.received;
  return result;
}

LatencyResult run_echo(const LatencyOptions & o)
{
  const auto started = SteadyClock::now();
  auto e = open(o, kEchoTopic, kPingTopic);
  LatencyResult result;
  result.payload_size = effective_payload(o.payload);

  const bool matched = wait_until([&]() {
        return e.writer->matched_readers() > 0 && e.reader->matched_writers() > 0;
      }, o.match_timeout);
  if (!matched) {
    no_match("no ping endpoint matched on domain " + std::to_string(o.domain),
      incompatibility(e.writer->incompatible()) + incompatibility(e.reader->incompatible()),
      o.match_timeout);
  }
  result.match_time = SteadyClock::now() - started;

  auto last_activity = SteadyClock::now();
  while (result.received < o.count && SteadyClock::now() - last_activity < o.idle_timeout) {
    if (!e.reader->wait_for_data(50ms)) {
      continue;
    }
    last_activity = SteadyClock::now();
    for (const auto & s : e.reader->take()) {
      if (try_write(*e.writer, s.data) && header_of(s.data).seq != 0) {
        ++result.received;
      }
    }
  }
  result.sent = result.received;
  // Let reliable writers finish repairs before the ping side stops.
  e.writer->wait_for_acknowledgments(std::chrono::seconds(1));
  e.participant->close();
  return result;
}

}  // namespace

const idl::TypeDescriptor & bench_type()
{
  static const auto type = idl::parse_idl(
    "struct BenchSample { unsigned long seq; long long t_send_ns; string fill; };").front();
  return type;
}

idl::Sample bench_sample(std::uint32_t seq, std::int64_t t_send_ns, std::size_t payload_size)
{
  idl::Sample s;
  s.type_name = bench_type().name;
  s.values = {seq, t_send_ns, std::string(payload_size - std::min(payload_size, kHeaderSize), 'x')};
  return s;
}

std::size_t effective_payload(std::size_t requested)
{
  if (requested == 0 || requested > kMaxBenchPayload) {
    throw Error(Errc::kInvalidArgument, "payload size " + std::to_string(requested) +
            " outside [1, " + std::to_string(kMaxBenchPayload) + "]");
  }
  return std::max(requested, kHeaderSize);
}

LatencyResult run_latency(const LatencyOptions & options)
{
  check_latency_options(options);
  effective_payload(options.payload);
  return options.role == Role::kPing ? run_ping(options) : run_echo(options);
}

LatencyResult run_latency_selftest(LatencyOptions options)
{
  check_latency_options(options);
  effective_payload(options.payload);
  options.participant.network = rtps::InProcessNetwork::create();
  options.participant.port.reset();
  options.participant.peers.clear();

  auto echo_options = options;
  echo_options.role = Role::kEcho;
  std::exception_ptr echo_error;
  std::thread echo([&]() {
      try {
        run_echo(echo_options);
      } catch (...) {
        echo_error = std::current_exception();
      }
    });
  options.role = Role::kPing;
  LatencyResult result;
  try {
    result = run_ping(options);
  } catch (...) {
    echo.join();
    throw;
  }
  echo.join();
  if (echo_error) {
    std::rethrow_exception(echo_error);
  }
  return result;
}

std::vector<ThroughputRow> run_throughput(const ThroughputOptions & o)
{
  if (o.sizes.empty()) {
    throw Error(Errc::kInvalidArgument, "no payload sizes given");
  }
  if (o.duration <= Duration::zero()) {
    throw Error(Errc::kInvalidArgument, "duration must be positive");
  }
  for (auto size : o.sizes) {
    effective_payload(size);
  }

  auto pub_config = o.participant;
  if (!pub_config.network) {
    pub_config.multicast = false;
  }
  auto pub = dcps::DomainParticipant::create(o.domain, pub_config);
  auto sub_config = pub_config;
  sub_config.port.reset();
  sub_config.peers.push_back(pub->locator());
  auto sub = dcps::DomainParticipant::create(o.domain, sub_config);
  Cleanup close_all([&pub, &sub]() {
      pub->close();
      sub->close();
    });

  const auto topic_qos = o.qos.profile_for(qos::EntityKind::kTopic);
  std::vector<ThroughputRow> rows;
  for (std::size_t i = 0; i < o.sizes.size(); ++i) {
    ThroughputRow row;
    row.requested_size = o.sizes[i];
    row.payload_size = effective_payload(o.sizes[i]);
    const auto name = "bench.throughput." + std::to_string(i);
    auto writer = pub->create_datawriter(pub->create_topic(name, bench_type(), topic_qos),
        o.qos.profile_for(qos::EntityKind::kDataWriter));
    auto reader = sub->create_datareader(sub->create_topic(name, bench_type(), topic_qos),
        reader_qos(o.qos));
    auto received = std::make_shared<std::atomic<std::uint64_t>>(0);
    reader->set_listener([received, reader]() {
        *received += reader->take().size();
      });
    Cleanup unlisten([&reader]() {reader->set_listener(nullptr);});
    const bool matched = wait_until([&]() {
          return writer->matched_readers() > 0 && reader->matched_writers() > 0;
        }, o.match_timeout);
    if (!matched) {
      no_match("throughput endpoints did not match",
        incompatibility(writer->incompatible()) + incompatibility(reader->incompatible()),
        o.match_timeout);
    }

    const auto t0 = SteadyClock::now();
    std::uint32_t seq = 0;
    const auto fill = bench_sample(0, 0, row.payload_size);
    while (SteadyClock::now() - t0 < o.duration) {
      auto sample = fill;
      sample.values[0] = ++seq;
      sample.values[1] = steady_ns();
      if (try_write(*writer, sample)) {
        ++row.sent;
      }
    }
    row.seconds = std::chrono::duration<double>(SteadyClock::now() - t0).count();

    // Collect what is still in flight, stopping once arrivals stall.
    writer->wait_for_acknowledgments(std::chrono::seconds(1));
    std::uint64_t seen = *received;
    wait_until([&]() {
        std::this_thread::sleep_for(50ms);
        const std::uint64_t now = *received;
        const bool stalled = now == seen;
        seen = now;
        return stalled || now >= row.sent;
      }, std::chrono::seconds(1), 0ms);
    unlisten.run();
    row.received = *received;
    rows.push_back(row);
    log(LogLevel::kDebug, "throughput " + std::to_string(row.payload_size) + " B: sent " +
      std::to_string(row.sent) + ", received " + std::to_string(row.received));
  }
  close_all.run();
  return rows;
}

}  // namespace minidds::bench
