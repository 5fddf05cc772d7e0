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

#ifndef MINIDDS__BENCH__REPORT_HPP_
#define MINIDDS__BENCH__REPORT_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "minidds/bench/trace.hpp"

namespace minidds::bench
{

inline constexpr std::string_view kReferenceLabel =
  "reference (hardware-dependent, not a target)";

/// Published latency and jitter statistics, microseconds.
struct LatencyReference
{
  std::string_view name;
  double latency_mean_us;
  double latency_median_us;
  double jitter_mean_us;
  double jitter_median_us;
};

inline constexpr LatencyReference kTable1Hla{"HLA", 154.87, 138.93, 14.13, 9.07};
inline constexpr LatencyReference kTable1Dds{"DDS", 126.60, 106.00, 13.36, 3.49};

inline constexpr std::array<std::size_t, 4> kTable2Sizes{10, 100, 1000, 5000};

/// Published throughput per packet size, Mb/s.
struct ThroughputReference
{
  std::string_view name;
  std::array<double, 4> mbps;
};

inline constexpr ThroughputReference kTable2Hla{"HLA1516", {2, 30, 128, 350}};
inline constexpr ThroughputReference kTable2Dds{"DDS", {6, 40, 112, 800}};

/// Four lines: latency mean/median, jitter mean/median.
std::string format_summary(const StatsSummary & summary);

/// Measured statistics beside both reference columns and a
/// measured/DDS ratio.
std::string format_summary_with_reference(const StatsSummary & summary);

struct ThroughputRow
{
  std::size_t requested_size = 0;
  std::size_t payload_size = 0;
  std::uint64_t sent = 0;
  std::uint64_t received = 0;
  double seconds = 0;

  double mbps() const;
  double samples_per_second() const;
  /// 1 - received / sent; 0 when nothing was sent.
  double loss_fraction() const;
};

std::string format_throughput(const std::vector<ThroughputRow> & rows, bool reference);

/// Fixed-point with `decimals` digits.
std::string fixed(double value, int decimals = 2);

}  // namespace minidds::bench

#endif  // MINIDDS__BENCH__REPORT_HPP_
