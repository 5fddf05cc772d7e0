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

#ifndef MINIDDS__QOS__PROFILE_FILE_HPP_
#define MINIDDS__QOS__PROFILE_FILE_HPP_

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "minidds/error.hpp"
#include "minidds/qos/profile.hpp"

namespace minidds::qos
{

/// Line-oriented QoS file:
///
///   # comment
///   reliability.kind = RELIABLE
///   deadline.period_ns = 10000000
///   partition.names = a,b
///
/// Each key names `<policy>.<field>`; fields omitted for a policy keep their
/// default. Unknown keys and malformed values are errors.
struct QosFile
{
  std::map<QosPolicyId, QosValue> policies;

  /// Profile for `kind` holding only the applicable policies of the file.
  QosProfile profile_for(EntityKind kind) const;

  friend bool operator==(const QosFile &, const QosFile &) = default;
};

class QosFileError : public Error
{
public:
  QosFileError(int line, const std::string & what)
  : Error(Errc::kInvalidQos, "line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const noexcept {return line_;}

private:
  int line_;
};

QosFile parse_qos_file(std::string_view text);
QosFile load_qos_file(const std::filesystem::path & path);

/// Canonical text form; parse_qos_file(format_qos_file(f)) == f.
std::string format_qos_file(const QosFile & file);

}  // namespace minidds::qos

#endif  // MINIDDS__QOS__PROFILE_FILE_HPP_
