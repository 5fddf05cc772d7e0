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

#ifndef MINIDDS__TIME_HPP_
#define MINIDDS__TIME_HPP_

#include <atomic>
#include <chrono>
#include <cstdint>
#include <string>

namespace minidds
{

/// Durations and timestamps are nanosecond counts. Timestamps are measured
/// from the epoch of the clock that produced them.
using Duration = std::chrono::nanoseconds;
using Timestamp = std::chrono::nanoseconds;

inline constexpr Duration kInfinite = Duration::max();

constexpr bool is_infinite(Duration d) noexcept {return d == kInfinite;}

/// Saturating add so that `t + kInfinite` stays infinite.
constexpr Timestamp saturating_add(Timestamp t, Duration d) noexcept
{
  if (d == kInfinite || t > Timestamp::max() - d) {
    return Timestamp::max();
  }
  return t + d;
}

std::string to_string(Duration d);

/// Time source used by participants and protocol sessions.
///
/// `monotonic_now` drives arrival, deadline and timer arithmetic;
/// `wall_now` stamps source timestamps.
class Clock
{
public:
  virtual ~Clock() = default;
  virtual Timestamp monotonic_now() const = 0;
  virtual Timestamp wall_now() const = 0;
};

class SystemClock final : public Clock
{
public:
  Timestamp monotonic_now() const override;
  Timestamp wall_now() const override;
};

/// Virtual clock for deterministic tests. Both time bases read the same
/// manually advanced counter.
class ManualClock final : public Clock
{
public:
  explicit ManualClock(Timestamp start = Timestamp{0}) : now_(start.count()) {}

  Timestamp monotonic_now() const override {return Timestamp{now_.load()};}
  Timestamp wall_now() const override {return Timestamp{now_.load()};}

  void set(Timestamp t) {now_.store(t.count());}
  void advance(Duration d) {now_.fetch_add(d.count());}

private:
  std::atomic<std::int64_t> now_;
};

}  // namespace minidds

#endif  // MINIDDS__TIME_HPP_
