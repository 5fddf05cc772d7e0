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

#include "minidds/bench/report.hpp"

#include <algorithm>
#include <cstdio>
#include <optional>

namespace minidds::bench
{

namespace
{

std::string pad(std::string s, std::size_t width)
{
  if (s.size() < width) {
    s.append(width - s.size(), ' ');
  }
  return s;
}

std::string cell(const std::optional<double> & v)
{
  return v ? fixed(*v) : "N/A";
}

std::string ratio(const std::optional<double> & measured, double reference)
{
  if (!measured || reference == 0) {
    return "N/A";
  }
  return fixed(*measured / reference);
}

struct Row
{
  std::string_view label;
  std::optional<double> measured;
  double hla;
  double dds;
};

std::vector<Row> rows(const StatsSummary & s)
{
  return {
    {"latency mean (us)", s.latency_mean_us, kTable1Hla.latency_mean_us,
      kTable1Dds.latency_mean_us},
    {"latency median (us)", s.latency_median_us, kTable1Hla.latency_median_us,
      kTable1Dds.latency_median_us},
    {"jitter mean (us)", s.jitter_mean_us, kTable1Hla.jitter_mean_us,
      kTable1Dds.jitter_mean_us},
    {"jitter median (us)", s.jitter_median_us, kTable1Hla.jitter_median_us,
      kTable1Dds.jitter_median_us},
  };
}

}  // namespace

std::string fixed(double value, int decimals)
{
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
  return buf;
}

std::string format_summary(const StatsSummary & summary)
{
  std::string out;
  for (const auto & r : rows(summary)) {
    out += pad(std::string(r.label), 22) + cell(r.measured) + '\n';
  }
  return out;
}

std::string format_summary_with_reference(const StatsSummary & summary)
{
  std::string out = std::string(kReferenceLabel) + ": table1, HLA and DDS columns\n";
  out += pad("", 22) + pad("measured", 12) + pad(std::string(kTable1Hla.name), 10) +
    pad(std::string(kTable1Dds.name), 10) + "ratio (measured/DDS)\n";
  for (const auto & r : rows(summary)) {
    out += pad(std::string(r.label), 22) + pad(cell(r.measured), 12) + pad(fixed(r.hla), 10) +
      pad(fixed(r.dds), 10) + ratio(r.measured, r.dds) + '\n';
  }
  return out;
}

double ThroughputRow::mbps() const
{
  if (seconds <= 0) {
    return 0;
  }
  return static_cast<double>(received) * static_cast<double>(payload_size) * 8.0 / seconds / 1e6;
}

double ThroughputRow::samples_per_second() const
{
  return seconds <= 0 ? 0 : static_cast<double>(received) / seconds;
}

double ThroughputRow::loss_fraction() const
{
  if (sent == 0) {
    return 0;
  }
  return 1.0 - static_cast<double>(std::min(received, sent)) / static_cast<double>(sent);
}

std::string format_throughput(const std::vector<ThroughputRow> & rows, bool reference)
{
  std::string out;
  if (reference) {
    out += std::string(kReferenceLabel) + ": table2, " + std::string(kTable2Hla.name) +
      " and " + std::string(kTable2Dds.name) + " rows (Mb/s)\n";
  }
  out += pad("size (B)", 10) + pad("payload", 9) + pad("Mb/s", 10) + pad("samples/s", 12) +
    pad("loss", 8);
  if (reference) {
    out += pad(std::string(kTable2Hla.name), 9) + pad(std::string(kTable2Dds.name), 6) +
      "ratio (measured/DDS)";
  }
  out += '\n';
  bool padded = false;
  for (const auto & r : rows) {
    padded = padded || r.payload_size != r.requested_size;
    out += pad(std::to_string(r.requested_size), 10) + pad(std::to_string(r.payload_size), 9) +
      pad(fixed(r.mbps()), 10) + pad(fixed(r.samples_per_second(), 0), 12) +
      pad(fixed(r.loss_fraction(), 4), 8);
    if (reference) {
      const auto it = std::find(kTable2Sizes.begin(), kTable2Sizes.end(), r.requested_size);
      if (it == kTable2Sizes.end()) {
        out += pad("-", 9) + pad("-", 6) + "-";
      } else {
        const auto i = static_cast<std::size_t>(it - kTable2Sizes.begin());
        out += pad(fixed(kTable2Hla.mbps[i], 0), 9) + pad(fixed(kTable2Dds.mbps[i], 0), 6) +
          fixed(r.mbps() / kTable2Dds.mbps[i]);
      }
    }
    out += '\n';
  }
  if (padded) {
    out += "payloads below 12 B are padded to the 12 B sequence and timestamp header\n";
  }
  return out;
}

}  // namespace minidds::bench
