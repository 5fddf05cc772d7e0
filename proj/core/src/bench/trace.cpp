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

#include "minidds/bench/trace.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

namespace minidds::bench
{

namespace
{

double mean(const std::vector<double> & v)
{
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

template<typename T>
T field(std::string_view text, int line)
{
  T value{};
  const auto * end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw Error(Errc::kParse, "trace line " + std::to_string(line) + ": bad number '" +
            std::string(text) + "'");
  }
  return value;
}

}  // namespace

double lower_median(std::vector<double> values)
{
  if (values.empty()) {
    throw Error(Errc::kEmptyTrace, "median of an empty series");
  }
  const auto mid = values.begin() + static_cast<std::ptrdiff_t>((values.size() - 1) / 2);
  std::nth_element(values.begin(), mid, values.end());
  return *mid;
}

std::vector<double> jitter_series(const std::vector<TraceRecord> & trace)
{
  std::vector<double> out;
  for (std::size_t i = 1; i < trace.size(); ++i) {
    out.push_back(std::fabs(trace[i].latency_us() - trace[i - 1].latency_us()));
  }
  return out;
}

StatsSummary summarize(const std::vector<TraceRecord> & trace, std::uint64_t lost)
{
  if (trace.empty()) {
    throw Error(Errc::kEmptyTrace, "no trace records");
  }
  std::vector<double> latency;
  latency.reserve(trace.size());
  for (const auto & r : trace) {
    latency.push_back(r.latency_us());
  }
  StatsSummary s;
  s.count = trace.size();
  s.lost = lost;
  s.latency_mean_us = mean(latency);
  s.latency_median_us = lower_median(latency);
  auto jitter = jitter_series(trace);
  if (!jitter.empty()) {
    s.jitter_mean_us = mean(jitter);
    s.jitter_median_us = lower_median(jitter);
  }
  return s;
}

std::string format_csv(const std::vector<TraceRecord> & trace)
{
  std::string out = "# latency = (t_recv_ns - t_send_ns) / 2, round trip on one clock\n";
  out += kCsvHeader;
  out += '\n';
  for (const auto & r : trace) {
    out += std::to_string(r.seq) + ',' + std::to_string(r.t_send_ns) + ',' +
      std::to_string(r.t_recv_ns) + ',' + std::to_string(r.payload_size) + '\n';
  }
  return out;
}

std::vector<TraceRecord> parse_csv(std::string_view text)
{
  std::vector<TraceRecord> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty() || line.front() == '#') {
      continue;
    }
    if (!header) {
      if (line != kCsvHeader) {
        throw Error(Errc::kParse, "trace line " + std::to_string(number) + ": expected header '" +
                std::string(kCsvHeader) + "'");
      }
      header = true;
      continue;
    }
    std::vector<std::string_view> cols;
    std::string_view rest = line;
    for (;;) {
      const auto comma = rest.find(',');
      cols.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) {
        break;
      }
      rest.remove_prefix(comma + 1);
    }
    if (cols.size() != 4) {
      throw Error(Errc::kParse, "trace line " + std::to_string(number) + ": expected 4 columns");
    }
    TraceRecord r;
    r.seq = field<std::uint64_t>(cols[0], number);
    r.t_send_ns = field<std::int64_t>(cols[1], number);
    r.t_recv_ns = field<std::int64_t>(cols[2], number);
    r.payload_size = field<std::uint32_t>(cols[3], number);
    out.push_back(r);
  }
  if (!header) {
    throw Error(Errc::kParse, "trace has no header");
  }
  return out;
}

void write_csv(const std::filesystem::path & path, const std::vector<TraceRecord> & trace)
{
  std::ofstream out(path, std::ios::binary);
  out << format_csv(trace);
  if (!out) {
    throw Error(Errc::kInvalidArgument, "cannot write " + path.string());
  }
}

std::vector<TraceRecord> read_csv(const std::filesystem::path & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(Errc::kInvalidArgument, "cannot open " + path.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_csv(ss.str());
}

}  // namespace minidds::bench
