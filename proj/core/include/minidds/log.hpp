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

#ifndef MINIDDS__LOG_HPP_
#define MINIDDS__LOG_HPP_

#include <string>

namespace minidds
{

enum class LogLevel {kDebug, kInfo, kWarning, kError, kOff};

/// Messages below the level are discarded. Defaults to kWarning, or the
/// value of MINIDDS_LOG (debug|info|warning|error|off) when set.
void set_log_level(LogLevel level);
LogLevel log_level();

/// Writes one line to stderr.
void log(LogLevel level, const std::string & message);

}  // namespace minidds

#endif  // MINIDDS__LOG_HPP_
