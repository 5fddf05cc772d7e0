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

#include "minidds/idl/parser.hpp"

#include <array>
#include <set>
#include <sstream>

namespace minidds::idl
{

namespace
{

enum class Tok {kIdent, kLBrace, kRBrace, kSemicolon, kKeyAnnotation, kEnd};

struct Token
{
  Tok kind;
  std::string text;
  int line;
  int column;
};

constexpr std::array<std::string_view, 9> kReserved = {
  "struct", "boolean", "octet", "short", "unsigned", "long", "float", "double", "string",
};

bool is_reserved(std::string_view word)
{
  for (auto r : kReserved) {
    if (r == word) {
      return true;
    }
  }
  return false;
}

class Lexer
{
public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run()
  {
    std::vector<Token> out;
    while (true) {
      skip_space();
      if (pos_ >= src_.size()) {
        out.push_back({Tok::kEnd, "", line_, col_});
        return out;
      }
      const int line = line_;
      const int col = col_;
      char c = src_[pos_];
      if (c == '/' && peek(1) == '/') {
        auto end = src_.find('\n', pos_);
        auto text = src_.substr(pos_ + 2, end == std::string_view::npos ? end : end - pos_ - 2);
        advance(text.size() + 2);
        if (trim(text) == "@key") {
          out.push_back({Tok::kKeyAnnotation, "//@key", line, col});
        }
        continue;
      }
      if (c == '{') {
        out.push_back({Tok::kLBrace, "{", line, col});
        advance(1);
      } else if (c == '}') {
        out.push_back({Tok::kRBrace, "}", line, col});
        advance(1);
      } else if (c == ';') {
        out.push_back({Tok::kSemicolon, ";", line, col});
        advance(1);
      } else if (is_ident_start(c)) {
        std::size_t n = 1;
        while (pos_ + n < src_.size() && is_ident_char(src_[pos_ + n])) {
          ++n;
        }
        out.push_back({Tok::kIdent, std::string(src_.substr(pos_, n)), line, col});
        advance(n);
      } else {
        throw ParseError(line, col, std::string("unexpected character '") + c + "'");
      }
    }
  }

private:
  static std::string_view trim(std::string_view s)
  {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
      return {};
    }
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
  }
  static bool is_ident_start(char c)
  {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  }
  static bool is_ident_char(char c) {return is_ident_start(c) || (c >= '0' && c <= '9');}

  char peek(std::size_t ahead) const
  {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  void advance(std::size_t n)
  {
    for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i, ++pos_) {
      if (src_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
    }
  }

  void skip_space()
  {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance(1);
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser
{
public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  std::vector<TypeDescriptor> run()
  {
    std::vector<TypeDescriptor> types;
    std::set<std::string> names;
    while (cur().kind != Tok::kEnd) {
      if (cur().kind == Tok::kKeyAnnotation) {
        fail(cur(), "//@key must follow a field declaration on the same line");
      }
      const Token & kw = expect(Tok::kIdent, "expected 'struct'");
      if (kw.text != "struct") {
        fail(kw, "expected 'struct', got '" + kw.text + "'");
      }
      const Token & name = expect_name("type name");
      if (!names.insert(name.text).second) {
        fail(name, "duplicate type '" + name.text + "'");
      }
      expect(Tok::kLBrace, "expected '{'");
      types.push_back(parse_body(name.text));
    }
    return types;
  }

private:
  TypeDescriptor parse_body(const std::string & type_name)
  {
    TypeDescriptor type{type_name, {}};
    bool any_annotation = false;
    std::set<std::string> seen;
    while (cur().kind != Tok::kRBrace) {
      if (cur().kind == Tok::kEnd) {
        fail(cur(), "unexpected end of input inside struct '" + type_name + "'");
      }
      if (cur().kind == Tok::kKeyAnnotation) {
        fail(cur(), "//@key must follow a field declaration on the same line");
      }
      FieldDescriptor field;
      field.kind = parse_kind();
      const Token & name = expect_name("field name");
      if (!seen.insert(name.text).second) {
        fail(name, "duplicate field '" + name.text + "'");
      }
      field.name = name.text;
      const Token & semi = expect(Tok::kSemicolon, "expected ';'");
      if (cur().kind == Tok::kKeyAnnotation && cur().line == semi.line) {
        field.is_key = true;
        any_annotation = true;
        ++pos_;
      }
      type.fields.push_back(std::move(field));
    }
    const Token & rbrace = cur();
    if (type.fields.empty()) {
      fail(rbrace, "struct '" + type_name + "' must declare at least one field");
    }
    ++pos_;
    expect(Tok::kSemicolon, "expected ';' after '}'");
    if (!any_annotation) {
      for (auto & f : type.fields) {
        f.is_key = f.name == "key";
      }
    }
    return type;
  }

  PrimitiveKind parse_kind()
  {
    const Token & first = expect(Tok::kIdent, "expected a field type");
    const std::string & w = first.text;
    if (w == "boolean") {return PrimitiveKind::kBoolean;}
    if (w == "octet") {return PrimitiveKind::kOctet;}
    if (w == "short") {return PrimitiveKind::kShort;}
    if (w == "float") {return PrimitiveKind::kFloat;}
    if (w == "double") {return PrimitiveKind::kDouble;}
    if (w == "string") {return PrimitiveKind::kString;}
    if (w == "long") {
      return accept_word("long") ? PrimitiveKind::kLongLong : PrimitiveKind::kLong;
    }
    if (w == "unsigned") {
      if (accept_word("short")) {
        return PrimitiveKind::kUnsignedShort;
      }
      if (accept_word("long")) {
        return accept_word("long") ? PrimitiveKind::kUnsignedLongLong :
               PrimitiveKind::kUnsignedLong;
      }
      fail(cur(), "expected 'short' or 'long' after 'unsigned'");
    }
    fail(first, "unknown type '" + w + "'");
  }

  bool accept_word(std::string_view word)
  {
    if (cur().kind == Tok::kIdent && cur().text == word) {
      ++pos_;
      return true;
    }
    return false;
  }

  const Token & expect_name(const char * what)
  {
    const Token & t = expect(Tok::kIdent, std::string("expected ") + what);
    if (is_reserved(t.text)) {
      fail(t, "reserved word '" + t.text + "' used as " + what);
    }
    return t;
  }

  const Token & expect(Tok kind, const std::string & message)
  {
    const Token & t = cur();
    if (t.kind != kind) {
      fail(t, message + (t.kind == Tok::kEnd ? ", got end of input" : ", got '" + t.text + "'"));
    }
    ++pos_;
    return t;
  }

  [[noreturn]] void fail(const Token & t, const std::string & message)
  {
    throw ParseError(t.line, t.column, message);
  }

  const Token & cur() const {return toks_[pos_];}

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<TypeDescriptor> parse_idl(std::string_view source)
{
  return Parser(Lexer(source).run()).run();
}

std::string print_idl(const TypeDescriptor & type)
{
  // Annotations are omitted when the name fallback reproduces the keys.
  std::size_t key_count = 0;
  bool only_key_named_key = true;
  for (const auto & f : type.fields) {
    if (f.is_key) {
      ++key_count;
      only_key_named_key = only_key_named_key && f.name == "key";
    }
  }
  const bool annotate = key_count > 0 && !(key_count == 1 && only_key_named_key);

  std::ostringstream os;
  os << "struct " << type.name << " {\n";
  for (const auto & f : type.fields) {
    os << "    " << idl_name(f.kind) << ' ' << f.name << ';';
    if (annotate && f.is_key) {
      os << " //@key";
    }
    os << '\n';
  }
  os << "};\n";
  return os.str();
}

std::string print_idl(const std::vector<TypeDescriptor> & types)
{
  std::string out;
  for (std::size_t i = 0; i < types.size(); ++i) {
    if (i) {
      out += '\n';
    }
    out += print_idl(types[i]);
  }
  return out;
}

}  // namespace minidds::idl
