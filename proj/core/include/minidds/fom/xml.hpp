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

#ifndef MINIDDS__FOM__XML_HPP_
#define MINIDDS__FOM__XML_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "minidds/error.hpp"

namespace minidds::fom
{

/// Malformed or invalid object model input, located by 1-based line.
class FomError : public Error
{
public:
  FomError(int line, const std::string & reason)
  : Error(Errc::kFom, "line " + std::to_string(line) + ": " + reason), line_(line),
    reason_(reason) {}

  int line() const noexcept {return line_;}
  const std::string & reason() const noexcept {return reason_;}

private:
  int line_;
  std::string reason_;
};

struct XmlAttribute
{
  std::string name;
  std::string value;
  int line = 0;
};

struct XmlElement
{
  std::string name;
  int line = 0;
  std::vector<XmlAttribute> attributes;
  std::vector<XmlElement> children;
  /// Concatenated character data directly inside the element.
  std::string text;

  const XmlAttribute * attribute(std::string_view attribute_name) const;
};

struct XmlDocument
{
  XmlElement root;
  std::vector<std::string> warnings;
};

/// Minimal XML reader: elements, attributes, character data, comments,
/// CDATA, processing instructions and the five predefined entities plus
/// numeric references. A DOCTYPE is skipped with a warning. Namespaces are
/// not interpreted. Throws FomError.
XmlDocument parse_xml(std::string_view text);

}  // namespace minidds::fom

#endif  // MINIDDS__FOM__XML_HPP_
