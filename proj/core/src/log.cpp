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

#include "minidds/log.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <mutex>
#include <string_view>

namespace minidds
{

namespace
{

LogLevel initial_level()
{
  const char * env = std::getenv("MINIDDS_LOG");
  if (env == nullptr) {
    return LogLevel::kWarning;
  }
  std::string_view v(env);
  if (v == "debug") {return LogLevel::kDebug;}
  if (v == "info") {return LogLevel::kInfo;}
  if (v == "error") {return LogLevel::kError;}
  if (v == "off") {return LogLevel::kOff;}
  return LogLevel::kWarning;
}

std::atomic<LogLevel> & level_ref()
{
  static std::atomic<LogLevel> level{initial_level()};
  return level;
}

const char * tag(LogLevel level)
{
  switch (level) {
    case LogLevel::kDebug: return "debug";
    case LogLevel::kInfo: return "info";
    case LogLevel::kWarning: return "warning";
    case LogLevel::kError: return "error";
    case LogLevel::kOff: break;
  }
  return "";
}

}  // namespace

void set_log_level(LogLevel level) {level_ref().store(level);}

LogLevel log_level() {return level_ref().load();}

void log(LogLevel level, const std::string & message)
{
  if (level < log_level() || level == LogLevel::kOff) {
    return;
  }
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  std::fprintf(stderr, "[minidds %s] %s\n", tag(level), message.c_str());
}

}  // namespace minidds
