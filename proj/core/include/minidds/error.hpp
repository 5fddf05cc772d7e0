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

#ifndef MINIDDS__ERROR_HPP_
#define MINIDDS__ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace minidds
{

enum class Errc
{
  kInvalidArgument,
  kPreconditionNotMet,
  kImmutablePolicy,
  kNotApplicable,
  kInvalidQos,
  kInconsistentTopic,
  kTypeMismatch,
  kResourceLimits,
  kTransportUnavailable,
  kSampleTooLarge,
  kNoMatchWithinTimeout,
  kParse,
  kDecode,
  kWire,
  kFom,
  kEmptyTrace,
};

std::string_view to_string(Errc code);

/// Base class of every error raised by minidds. The code identifies the
/// failure class so callers can dispatch without string matching.
class Error : public std::runtime_error
{
public:
  Error(Errc code, const std::string & what)
  : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept {return code_;}

private:
  Errc code_;
};

}  // namespace minidds

#endif  // MINIDDS__ERROR_HPP_
