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

#include <benchmark/benchmark.h>

#include "minidds/bench/trace.hpp"
#include "minidds/fom/fom.hpp"
#include "minidds/idl/codec.hpp"
#include "minidds/idl/parser.hpp"
#include "minidds/qos/profile.hpp"
#include "minidds/rtps/session.hpp"
#include "minidds/rtps/wire.hpp"

namespace
{

using namespace minidds;

constexpr const char * kClimat =
  "struct Climat { unsigned long key; float climatDistVisi; float climatHeure;"
  " long climatSport; long climatHorizon; float rainDensity; float rainSize;"
  " float wiperAngle; };";

rtps::Message data_message(std::size_t payload)
{
  rtps::Data d;
  d.writer = EntityId::from_uint(0x102);
  d.sequence = 42;
  d.payload.assign(payload, 0x5A);
  return rtps::Message{{}, {d}};
}

void BM_WireEncodeData(benchmark::State & state)
{
  const auto m = data_message(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(rtps::encode(m));
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_WireEncodeData)->Arg(0)->Arg(1000)->Arg(60000);

void BM_WireDecodeData(benchmark::State & state)
{
  const auto bytes = rtps::encode(data_message(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) {
    benchmark::DoNotOptimize(rtps::decode(bytes));
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_WireDecodeData)->Arg(0)->Arg(1000)->Arg(60000);

void BM_IdlSerializeClimat(benchmark::State & state)
{
  const auto type = idl::parse_idl(kClimat).front();
  const auto sample = idl::make_sample(type);
  for (auto _ : state) {
    benchmark::DoNotOptimize(idl::serialize(type, sample));
  }
}
BENCHMARK(BM_IdlSerializeClimat);

void BM_IdlRoundTripClimat(benchmark::State & state)
{
  const auto type = idl::parse_idl(kClimat).front();
  const auto bytes = idl::serialize(type, idl::make_sample(type));
  for (auto _ : state) {
    benchmark::DoNotOptimize(idl::deserialize(type, bytes));
  }
}
BENCHMARK(BM_IdlRoundTripClimat);

void BM_CheckCompatibility(benchmark::State & state)
{
  qos::QosProfile w(qos::EntityKind::kDataWriter);
  w.put(qos::ReliabilityQos{qos::ReliabilityKind::kReliable});
  qos::QosProfile r(qos::EntityKind::kDataReader);
  r.put(qos::ReliabilityQos{qos::ReliabilityKind::kReliable});
  for (auto _ : state) {
    benchmark::DoNotOptimize(qos::check_compatibility(w, r));
  }
}
BENCHMARK(BM_CheckCompatibility);

void BM_ReliableReaderInOrder(benchmark::State & state)
{
  const Guid writer{{}, EntityId::from_uint(0x102)};
  for (auto _ : state) {
    rtps::ReliableReaderSession session(EntityId::from_uint(0x107), writer);
    for (dcps::SequenceNumber seq = 1; seq <= 1000; ++seq) {
      rtps::Data d;
      d.writer = writer.entity;
      d.sequence = seq;
      benchmark::DoNotOptimize(session.on_data(std::move(d)));
    }
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * 1000);
}
BENCHMARK(BM_ReliableReaderInOrder);

void BM_ParseFom(benchmark::State & state)
{
  std::string xml = "<objectModel name=\"m\" type=\"FOM\"><objects>";
  for (int c = 0; c < 50; ++c) {
    xml += "<objectClass name=\"C" + std::to_string(c) + "\">";
    for (int a = 0; a < 10; ++a) {
      xml += "<attribute name=\"a" + std::to_string(a) + "\" transportation=\"HLAreliable\"/>";
    }
    xml += "</objectClass>";
  }
  xml += "</objects></objectModel>";
  for (auto _ : state) {
    benchmark::DoNotOptimize(fom::map_to_topics(fom::parse_fom(xml)));
  }
}
BENCHMARK(BM_ParseFom);

void BM_Summarize(benchmark::State & state)
{
  std::vector<bench::TraceRecord> trace;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    trace.push_back({i + 1, 0, static_cast<std::int64_t>(200000 + (i * 7919) % 50000), 12});
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(bench::summarize(trace));
  }
}
BENCHMARK(BM_Summarize);

}  // namespace

BENCHMARK_MAIN();
