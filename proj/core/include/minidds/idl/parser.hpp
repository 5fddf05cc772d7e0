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

#ifndef MINIDDS__IDL__PARSER_HPP_
#define MINIDDS__IDL__PARSER_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "minidds/error.hpp"
#include "minidds/idl/types.hpp"

namespace minidds::idl
{

class ParseError : public Error
{
public:
  ParseError(int line, int column, const std::string & message)
  : Error(Errc::kParse, std::to_string(line) + ":" + std::to_string(column) + ": " + message),
    line_(line), column_(column), message_(message) {}

  int line() const noexcept {return line_;}
  int column() const noexcept {return column_;}
  const std::string & message() const noexcept {return message_;}

private:
  int line_;
  int column_;
  std::string message_;
};

/// Parses flat struct declarations:
///
///   struct Climat {
///       unsigned long key;
///       float climatDistVisi;   //@key
///   };
///
/// A field is a key when it carries a trailing `//@key` comment on the same
/// line, or when no field of the struct carries one and the field is named
/// `key`. Throws ParseError on the first offending token.
std::vector<TypeDescriptor> parse_idl(std::string_view source);

/// Canonical IDL text that parses back to `types`.
std::string print_idl(const std::vector<TypeDescriptor> & types);
std::string print_idl(const TypeDescriptor & type);

}  // namespace minidds::idl

#endif  // MINIDDS__IDL__PARSER_HPP_
