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

#include "minidds/fom/xml.hpp"

#include <cctype>
#include <cstdint>

namespace minidds::fom
{

const XmlAttribute * XmlElement::attribute(std::string_view attribute_name) const
{
  for (const auto & a : attributes) {
    if (a.name == attribute_name) {
      return &a;
    }
  }
  return nullptr;
}

namespace
{

bool is_name_start(char c)
{
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == ':' ||
         static_cast<unsigned char>(c) >= 0x80;
}

bool is_name_char(char c)
{
  return is_name_start(c) || std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '.';
}

void append_utf8(std::string & out, std::uint32_t cp)
{
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

class Reader
{
public:
  explicit Reader(std::string_view text) : text_(text) {}

  XmlDocument document()
  {
    XmlDocument doc;
    skip_bom();
    bool have_root = false;
    for (;;) {
      skip_space();
      if (at_end()) {
        break;
      }
      if (starts_with("<?")) {
        skip_past("?>", "unterminated processing instruction");
      } else if (starts_with("<!--")) {
        skip_comment();
      } else if (starts_with("<!DOCTYPE")) {
        doc.warnings.push_back("line " + std::to_string(line_) + ": DOCTYPE ignored");
        skip_doctype();
      } else if (peek() == '<') {
        if (have_root) {
          fail("content after the root element");
        }
        doc.root = element();
        have_root = true;
      } else {
        fail("character data outside the root element");
      }
    }
    if (!have_root) {
      fail("no root element");
    }
    return doc;
  }

private:
  [[noreturn]] void fail(const std::string & reason) const {throw FomError(line_, reason);}

  bool at_end() const {return pos_ >= text_.size();}
  char peek() const {return at_end() ? '\0' : text_[pos_];}
  bool starts_with(std::string_view s) const {return text_.substr(pos_).starts_with(s);}

  char advance()
  {
    const char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
    }
    return c;
  }

  void advance(std::size_t n)
  {
    for (std::size_t i = 0; i < n; ++i) {
      advance();
    }
  }

  void skip_bom()
  {
    if (starts_with("\xEF\xBB\xBF")) {
      pos_ += 3;
    }
  }

  void skip_space()
  {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) {
      advance();
    }
  }

  void skip_past(std::string_view terminator, const char * error)
  {
    while (!at_end() && !starts_with(terminator)) {
      advance();
    }
    if (at_end()) {
      fail(error);
    }
    advance(terminator.size());
  }

  void skip_comment()
  {
    advance(4);
    skip_past("-->", "unterminated comment");
  }

  void skip_doctype()
  {
    // Internal subsets may contain '>' inside brackets.
    int depth = 0;
    while (!at_end()) {
      const char c = advance();
      if (c == '[') {
        ++depth;
      } else if (c == ']') {
        --depth;
      } else if (c == '>' && depth <= 0) {
        return;
      }
    }
    fail("unterminated DOCTYPE");
  }

  std::string name()
  {
    if (!is_name_start(peek())) {
      fail(at_end() ? "unexpected end of input" :
        std::string("expected a name, found '") + peek() + "'");
    }
    const auto start = pos_;
    while (!at_end() && is_name_char(peek())) {
      advance();
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  void entity(std::string & out)
  {
    const int line = line_;
    advance();  // '&'
    const auto end = text_.find(';', pos_);
    if (end == std::string_view::npos || end - pos_ > 10) {
      throw FomError(line, "unterminated entity reference");
    }
    const auto ref = text_.substr(pos_, end - pos_);
    advance(ref.size() + 1);
    if (ref == "lt") {
      out += '<';
    } else if (ref == "gt") {
      out += '>';
    } else if (ref == "amp") {
      out += '&';
    } else if (ref == "quot") {
      out += '"';
    } else if (ref == "apos") {
      out += '\'';
    } else if (ref.size() > 1 && ref[0] == '#') {
      const bool hex = ref[1] == 'x';
      const auto digits = ref.substr(hex ? 2 : 1);
      std::uint32_t cp = 0;
      if (digits.empty()) {
        throw FomError(line, "empty character reference");
      }
      for (char c : digits) {
        int v = std::isdigit(static_cast<unsigned char>(c)) ? c - '0' :
          hex && std::isxdigit(static_cast<unsigned char>(c)) ?
          std::tolower(static_cast<unsigned char>(c)) - 'a' + 10 : -1;
        if (v < 0 || cp > 0x10FFFF) {
          throw FomError(line, "invalid character reference &" + std::string(ref) + ";");
        }
        cp = cp * (hex ? 16 : 10) + static_cast<std::uint32_t>(v);
      }
      if (cp == 0 || cp > 0x10FFFF) {
        throw FomError(line, "invalid character reference &" + std::string(ref) + ";");
      }
      append_utf8(out, cp);
    } else {
      throw FomError(line, "unknown entity &" + std::string(ref) + ";");
    }
  }

  XmlAttribute attribute()
  {
    XmlAttribute a;
    a.line = line_;
    a.name = name();
    skip_space();
    if (peek() != '=') {
      fail("expected '=' after attribute " + a.name);
    }
    advance();
    skip_space();
    const char quote = peek();
    if (quote != '"' && quote != '\'') {
      fail("attribute " + a.name + " value must be quoted");
    }
    advance();
    while (!at_end() && peek() != quote) {
      if (peek() == '<') {
        fail("'<' in attribute value");
      }
      if (peek() == '&') {
        entity(a.value);
      } else {
        a.value += advance();
      }
    }
    if (at_end()) {
      fail("unterminated attribute value");
    }
    advance();
    return a;
  }

  XmlElement element()
  {
    XmlElement e;
    e.line = line_;
    advance();  // '<'
    e.name = name();
    for (;;) {
      const bool spaced = !at_end() && std::isspace(static_cast<unsigned char>(peek()));
      skip_space();
      if (starts_with("/>")) {
        advance(2);
        return e;
      }
      if (peek() == '>') {
        advance();
        break;
      }
      if (at_end()) {
        fail("unterminated start tag <" + e.name + ">");
      }
      if (!spaced) {
        fail("expected whitespace before attribute in <" + e.name + ">");
      }
      auto a = attribute();
      if (e.attribute(a.name)) {
        throw FomError(a.line, "duplicate attribute " + a.name + " in <" + e.name + ">");
      }
      e.attributes.push_back(std::move(a));
    }
    content(e);
    return e;
  }

  void content(XmlElement & e)
  {
    for (;;) {
      if (at_end()) {
        throw FomError(e.line, "element <" + e.name + "> is not closed");
      }
      if (starts_with("</")) {
        advance(2);
        const auto closing = name();
        if (closing != e.name) {
          fail("</" + closing + "> does not close <" + e.name + "> from line " +
            std::to_string(e.line));
        }
        skip_space();
        if (peek() != '>') {
          fail("expected '>' in end tag");
        }
        advance();
        return;
      }
      if (starts_with("<!--")) {
        skip_comment();
      } else if (starts_with("<![CDATA[")) {
        advance(9);
        while (!at_end() && !starts_with("]]>")) {
          e.text += advance();
        }
        if (at_end()) {
          fail("unterminated CDATA section");
        }
        advance(3);
      } else if (starts_with("<?")) {
        skip_past("?>", "unterminated processing instruction");
      } else if (peek() == '<') {
        e.children.push_back(element());
      } else if (peek() == '&') {
        entity(e.text);
      } else {
        e.text += advance();
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
};

}  // namespace

XmlDocument parse_xml(std::string_view text)
{
  return Reader(text).document();
}

}  // namespace minidds::fom
