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

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "minidds/bench/report.hpp"
#include "minidds/bench/runner.hpp"
#include "minidds/bench/trace.hpp"
#include "minidds/fom/fom.hpp"
#include "minidds/idl/codec.hpp"
#include "minidds/idl/parser.hpp"
#include "minidds/log.hpp"
#include "minidds/qos/profile_file.hpp"

namespace
{

using namespace minidds;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNoMatch = 3;

std::string read_file(const std::string & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(Errc::kInvalidArgument, "cannot open " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string pad(std::string s, std::size_t width)
{
  if (s.size() < width) {
    s.append(width - s.size(), ' ');
  }
  return s;
}

int idl_check(const std::string & file)
{
  const auto types = idl::parse_idl(read_file(file));
  for (const auto & t : types) {
    std::cout << "struct " << t.name << ": " << t.fields.size() << " fields";
    bool fixed = true;
    for (const auto & f : t.fields) {
      fixed = fixed && f.kind != idl::PrimitiveKind::kString;
    }
    if (fixed) {
      std::cout << ", " << idl::serialized_size(t, idl::make_sample(t)) << " bytes encoded";
    }
    std::cout << (t.is_keyed() ? ", keyed" : ", keyless") << '\n';
    for (const auto & f : t.fields) {
      std::cout << "  " << pad(std::string(idl::idl_name(f.kind)), 20) << f.name <<
      (f.is_key ? "  (key)" : "") << '\n';
    }
  }
  return kExitOk;
}

int fom_map(const std::string & file, const std::string & types_file)
{
  const auto model = fom::parse_fom(read_file(file));
  for (const auto & w : model.warnings) {
    std::cerr << file << ": warning: " << w << '\n';
  }
  fom::TypeMap types;
  if (!types_file.empty()) {
    types = fom::parse_type_map(read_file(types_file));
  }
  const auto topics = fom::map_to_topics(model, types);
  std::size_t width = 6;
  for (const auto & t : topics) {
    width = std::max(width, t.topic_name.size() + 2);
  }
  std::cout << pad("topic", width) << pad("type", 12) << pad("reliability", 14) <<
    "destination_order\n";
  for (const auto & t : topics) {
    const auto reliable = t.qos.get<qos::ReliabilityQos>().kind == qos::ReliabilityKind::kReliable;
    const auto by_source = t.qos.get<qos::DestinationOrderQos>().kind ==
      qos::DestinationOrderKind::kBySourceTimestamp;
    std::cout << pad(t.topic_name, width) << pad(t.type_name, 12) <<
      pad(reliable ? "RELIABLE" : "BEST_EFFORT", 14) <<
      (by_source ? "BY_SOURCE_TIMESTAMP" : "BY_RECEPTION_TIMESTAMP") << '\n';
    if (auto errors = qos::validate_profile(t.qos); !errors.empty()) {
      throw Error(Errc::kInvalidQos, "profile for " + t.topic_name + " is invalid");
    }
  }
  std::cout << topics.size() << " topics from " << model.name << '\n';
  return kExitOk;
}

qos::QosFile qos_file(const std::string & path)
{
  return path.empty() ? qos::QosFile{} : qos::load_qos_file(path);
}

std::vector<rtps::Locator> peers(const std::string & list)
{
  std::vector<rtps::Locator> out;
  std::string_view rest = list;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const auto item = rest.substr(0, comma);
    if (!item.empty()) {
      out.push_back(rtps::parse_locator(item));
    }
    if (comma == std::string_view::npos) {
      break;
    }
    rest.remove_prefix(comma + 1);
  }
  return out;
}

struct LatencyArgs
{
  std::string role;
  std::size_t payload = bench::kHeaderSize;
  double rate = 100;
  std::uint64_t count = 1000;
  std::string qos;
  std::int32_t domain = 0;
  std::string peers;
  int port = 0;
  std::string csv;
  std::string reference;
  double timeout = 10;
  bool selftest = false;
};

int bench_latency(const LatencyArgs & a)
{
  if (!a.reference.empty() && a.reference != "table1") {
    throw Error(Errc::kInvalidArgument, "latency reference must be table1");
  }
  if (!a.selftest && a.role.empty()) {
    throw Error(Errc::kInvalidArgument, "--role is required unless --selftest is given");
  }
  if (!(a.timeout > 0)) {
    throw Error(Errc::kInvalidArgument, "--timeout must be positive");
  }
  bench::LatencyOptions o;
  o.role = a.role == "echo" ? bench::Role::kEcho : bench::Role::kPing;
  o.payload = a.payload;
  o.rate_hz = a.rate;
  o.count = a.count;
  o.qos = qos_file(a.qos);
  o.domain = a.domain;
  o.participant.peers = peers(a.peers);
  if (a.port != 0) {
    o.participant.port = static_cast<std::uint16_t>(a.port);
  }
  o.match_timeout = std::chrono::duration_cast<Duration>(std::chrono::duration<double>(a.timeout));

  const auto payload = bench::effective_payload(a.payload);
  if (payload != a.payload) {
    std::cout << "payload " << a.payload << " B padded to " << payload <<
      " B (sequence and timestamp header)\n";
  }
  const auto r = a.selftest ? bench::run_latency_selftest(o) : bench::run_latency(o);
  std::cout << "matched in " <<
    std::chrono::duration_cast<std::chrono::milliseconds>(r.match_time).count() << " ms\n";
  if (o.role == bench::Role::kEcho && !a.selftest) {
    std::cout << "reflected " << r.received << " samples\n";
    return kExitOk;
  }
  std::cout << "sent " << r.sent << ", received " << r.received << ", lost " << r.lost << '\n';
  if (!a.csv.empty()) {
    bench::write_csv(a.csv, r.trace);
    std::cout << "trace written to " << a.csv << '\n';
  }
  std::cout << "latency = round trip / 2 on one monotonic clock\n";
  const auto summary = bench::summarize(r.trace, r.lost);
  std::cout << (a.reference.empty() ? bench::format_summary(summary) :
  bench::format_summary_with_reference(summary));
  return kExitOk;
}

struct ThroughputArgs
{
  std::vector<std::size_t> sizes{10, 100, 1000, 5000};
  double duration = 1;
  std::string qos;
  std::int32_t domain = 0;
  std::string reference;
  double timeout = 10;
};

int bench_throughput(const ThroughputArgs & a)
{
  if (!a.reference.empty() && a.reference != "table2") {
    throw Error(Errc::kInvalidArgument, "throughput reference must be table2");
  }
  if (!(a.duration > 0) || !(a.timeout > 0)) {
    throw Error(Errc::kInvalidArgument, "--duration and --timeout must be positive");
  }
  bench::ThroughputOptions o;
  o.sizes = a.sizes;
  o.duration = std::chrono::duration_cast<Duration>(std::chrono::duration<double>(a.duration));
  o.qos = qos_file(a.qos);
  o.domain = a.domain;
  o.match_timeout = std::chrono::duration_cast<Duration>(std::chrono::duration<double>(a.timeout));
  const auto rows = bench::run_throughput(o);
  std::cout << bench::format_throughput(rows, !a.reference.empty());
  return kExitOk;
}

int exit_code(Errc code)
{
  switch (code) {
    case Errc::kNoMatchWithinTimeout:
      return kExitNoMatch;
    case Errc::kInvalidArgument:
    case Errc::kInvalidQos:
    case Errc::kImmutablePolicy:
    case Errc::kNotApplicable:
    case Errc::kPreconditionNotMet:
    case Errc::kParse:
    case Errc::kFom:
      return kExitConfig;
    default:
      return kExitFailure;
  }
}

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"minidds publish/subscribe middleware tools"};
  app.require_subcommand(1);

  auto * idl = app.add_subcommand("idl", "IDL utilities")->require_subcommand(1);
  std::string idl_file;
  auto * check = idl->add_subcommand("check", "Parse an IDL file and print its types");
  check->add_option("file", idl_file, "IDL file")->required();

  auto * fom = app.add_subcommand("fom", "HLA object model bridge")->require_subcommand(1);
  std::string fom_file;
  std::string types_file;
  auto * map = fom->add_subcommand("map", "Map an object model to topics");
  map->add_option("file", fom_file, "Object model XML")->required();
  map->add_option("--types", types_file, "Sidecar of `topic_name = idl_type_name` lines");

  auto * bench = app.add_subcommand("bench", "Benchmarks")->require_subcommand(1);
  LatencyArgs la;
  auto * latency = bench->add_subcommand("latency", "Ping/echo round-trip latency and jitter");
  latency->add_option("--role", la.role, "ping or echo")->check(CLI::IsMember({"ping", "echo"}));
  latency->add_option("--payload", la.payload, "Payload bytes, 12 minimum")->capture_default_str();
  latency->add_option("--rate", la.rate, "Samples per second")->capture_default_str();
  latency->add_option("--count", la.count, "Samples to send")->capture_default_str();
  latency->add_option("--qos", la.qos, "QoS file");
  latency->add_option("--domain", la.domain, "Domain id")->capture_default_str();
  latency->add_option("--peers", la.peers, "Static discovery peers, host:port,...");
  latency->add_option("--port", la.port, "Unicast port (default 7400 + domain, next free)");
  latency->add_option("--csv", la.csv, "Write the trace to this CSV file");
  latency->add_option("--reference", la.reference, "Print published figures beside results")
  ->check(CLI::IsMember({"table1"}));
  latency->add_option("--timeout", la.timeout, "Seconds to wait for a match")
  ->capture_default_str();
  latency->add_flag("--selftest", la.selftest, "Run ping and echo in this process");

  ThroughputArgs ta;
  auto * throughput = bench->add_subcommand("throughput", "Saturated throughput per size");
  throughput->add_option("--sizes", ta.sizes, "Payload sizes in bytes")->delimiter(',')
  ->capture_default_str();
  throughput->add_option("--duration", ta.duration, "Seconds per size")->capture_default_str();
  throughput->add_option("--qos", ta.qos, "QoS file");
  throughput->add_option("--domain", ta.domain, "Domain id")->capture_default_str();
  throughput->add_option("--reference", ta.reference, "Print published figures beside results")
  ->check(CLI::IsMember({"table2"}));
  throughput->add_option("--timeout", ta.timeout, "Seconds to wait for a match")
  ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp & e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp & e) {
    return app.exit(e);
  } catch (const CLI::ParseError & e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (check->parsed()) {
      return idl_check(idl_file);
    }
    if (map->parsed()) {
      return fom_map(fom_file, types_file);
    }
    if (latency->parsed()) {
      return bench_latency(la);
    }
    if (throughput->parsed()) {
      return bench_throughput(ta);
    }
  } catch (const Error & e) {
    std::cerr << "minidds: " << to_string(e.code()) << ": " << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::exception & e) {
    std::cerr << "minidds: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}
