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

#ifndef MINIDDS__BENCH__TRACE_HPP_
#define MINIDDS__BENCH__TRACE_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "minidds/error.hpp"

namespace minidds::bench
{

/// One echoed sample. Both times come from the ping process's monotonic
/// clock, so t_recv_ns - t_send_ns is a round trip.
struct TraceRecord
{
  std::uint64_t seq = 0;
  std::int64_t t_send_ns = 0;
  std::int64_t t_recv_ns = 0;
  std::uint32_t payload_size = 0;

  /// One-way latency estimate: half the round trip.
  double latency_us() const {return static_cast<double>(t_recv_ns - t_send_ns) / 2000.0;}

  friend bool operator==(const TraceRecord &, const TraceRecord &) = default;
};

struct StatsSummary
{
  double latency_mean_us = 0;
  double latency_median_us = 0;
  /// Absent with fewer than two records.
  std::optional<double> jitter_mean_us;
  std::optional<double> jitter_median_us;
  std::uint64_t count = 0;
  std::uint64_t lost = 0;
};

/// Lower-middle element for even sizes. Throws Error(kEmptyTrace) when empty.
double lower_median(std::vector<double> values);

/// |latency_i - latency_{i-1}| in trace order.
std::vector<double> jitter_series(const std::vector<TraceRecord> & trace);

/// Throws Error(kEmptyTrace) for an empty trace.
StatsSummary summarize(const std::vector<TraceRecord> & trace, std::uint64_t lost = 0);

inline constexpr std::string_view kCsvHeader = "seq,t_send_ns,t_recv_ns,payload_size";

/// A '#' comment noting the round-trip mode, the header, then one row per
/// record.
std::string format_csv(const std::vector<TraceRecord> & trace);
/// Skips '#' lines; throws Error(kParse) naming the line on bad input.
std::vector<TraceRecord> parse_csv(std::string_view text);

void write_csv(const std::filesystem::path & path, const std::vector<TraceRecord> & trace);
std::vector<TraceRecord> read_csv(const std::filesystem::path & path);

}  // namespace minidds::bench

#endif  // MINIDDS__BENCH__TRACE_HPP_
