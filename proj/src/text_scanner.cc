/*
 * Copyright 2026 The fairverify Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "text_scanner.h"

#include <cctype>
#include <charconv>
#include <cmath>

#include "fairverify/error.h"

namespace fairverify::internal {

namespace {

bool IsIdentStart(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool IsIdentChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}
bool IsDigit(char c) { return c >= '0' && c <= '9'; }

}  // namespace

void Scanner::Bump() {
  if (Cur() == '\n') {
    ++line_;
    column_ = 1;
  } else {
    ++column_;
  }
  ++pos_;
}

Token Scanner::Next(NewlineMode mode) {
  for (;;) {
    char c = Cur();
    if (c == '#') {
      while (Cur() != '\0' && Cur() != '\n') Bump();
      continue;
    }
    if (c == '\n' && mode == kSkipNewlines) {
      Bump();
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      Bump();
      continue;
    }
    break;
  }

  Token tok;
  tok.line = line_;
  tok.column = column_;
  const std::size_t start = pos_;
  const char c = Cur();

  if (c == '\0') {
    tok.kind = TokenKind::kEnd;
    tok.text = "<end of input>";
    return tok;
  }

  if (IsDigit(c) || (c == '.' && IsDigit(At(1)))) {
    while (IsDigit(Cur())) Bump();
    if (Cur() == '.') {
      Bump();
      while (IsDigit(Cur())) Bump();
    }
    if (Cur() == 'e' || Cur() == 'E') {
      Bump();
      if (Cur() == '+' || Cur() == '-') Bump();
      if (!IsDigit(Cur())) {
        throw ParseError("malformed number exponent", tok.line, tok.column);
      }
      while (IsDigit(Cur())) Bump();
    }
    if (IsIdentChar(Cur())) {
      throw ParseError("malformed number", tok.line, tok.column);
    }
    tok.kind = TokenKind::kNumber;
    tok.text = std::string(text_.substr(start, pos_ - start));
    const char* first = tok.text.data();
    const char* last = first + tok.text.size();
    auto [ptr, ec] = std::from_chars(first, last, tok.number);
    if (ec != std::errc() || ptr != last || !std::isfinite(tok.number)) {
      throw ParseError("number out of range: " + tok.text, tok.line,
                       tok.column);
    }
    return tok;
  }

  if (IsIdentStart(c)) {
    while (IsIdentChar(Cur())) Bump();
    tok.kind = TokenKind::kIdent;
    tok.text = std::string(text_.substr(start, pos_ - start));
    return tok;
  }

  auto two = [&](char second, TokenKind double_kind, TokenKind single_kind) {
    Bump();
    if (Cur() == second) {
      Bump();
      tok.kind = double_kind;
    } else {
      tok.kind = single_kind;
    }
  };

  switch (c) {
    case '\n': Bump(); tok.kind = TokenKind::kNewline; break;
    case '(': Bump(); tok.kind = TokenKind::kLParen; break;
    case ')': Bump(); tok.kind = TokenKind::kRParen; break;
    case '{': Bump(); tok.kind = TokenKind::kLBrace; break;
    case '}': Bump(); tok.kind = TokenKind::kRBrace; break;
    case ',': Bump(); tok.kind = TokenKind::kComma; break;
    case ';': Bump(); tok.kind = TokenKind::kSemicolon; break;
    case '+': Bump(); tok.kind = TokenKind::kPlus; break;
    case '-': Bump(); tok.kind = TokenKind::kMinus; break;
    case '*': Bump(); tok.kind = TokenKind::kStar; break;
    case '/': Bump(); tok.kind = TokenKind::kSlash; break;
    case '~': Bump(); tok.kind = TokenKind::kTilde; break;
    case '?': Bump(); tok.kind = TokenKind::kQuestion; break;
    case ':': Bump(); tok.kind = TokenKind::kColon; break;
    case '>': two('=', TokenKind::kGe, TokenKind::kGt); break;
    case '<': two('=', TokenKind::kLe, TokenKind::kLt); break;
    case '=': two('=', TokenKind::kEq, TokenKind::kAssign); break;
    case '!': two('=', TokenKind::kNe, TokenKind::kBang); break;
    case '&': two('&', TokenKind::kAndAnd, TokenKind::kUnknown); break;
    case '|': two('|', TokenKind::kOrOr, TokenKind::kUnknown); break;
    default:
      // Consume one UTF-8 code point so diagnostics show whole characters.
      Bump();
      while ((static_cast<unsigned char>(Cur()) & 0xC0) == 0x80) Bump();
      tok.kind = TokenKind::kUnknown;
      break;
  }
  tok.text = std::string(text_.substr(start, pos_ - start));
  return tok;
}

}  // namespace fairverify::internal
