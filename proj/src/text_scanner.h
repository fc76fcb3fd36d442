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

// Tokenizer shared by the specification and population-model languages.

#ifndef FAIRVERIFY_SRC_TEXT_SCANNER_H_
#define FAIRVERIFY_SRC_TEXT_SCANNER_H_

#include <string>
#include <string_view>

namespace fairverify::internal {

enum class TokenKind {
  kNumber,
  kIdent,
  kLParen,
  kRParen,
  kLBrace,
  kRBrace,
  kComma,
  kSemicolon,
  kNewline,
  kPlus,
  kMinus,
  kStar,
  kSlash,
  kGe,
  kGt,
  kLe,
  kLt,
  kEq,
  kNe,
  kAssign,
  kBang,
  kAndAnd,
  kOrOr,
  kTilde,
  kQuestion,
  kColon,
  kUnknown,
  kEnd,
};

struct Token {
  TokenKind kind = TokenKind::kEnd;
  std::string text;
  double number = 0.0;
  int line = 1;
  int column = 1;
};

class Scanner {
 public:
  enum NewlineMode { kSkipNewlines, kKeepNewlines };

  explicit Scanner(std::string_view text) : text_(text) {}

  // Malformed numbers raise ParseError; characters outside the token set
  // come back as kUnknown so each language can decide how to report them.
  Token Next(NewlineMode mode);

 private:
  char Cur() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  char At(std::size_t offset) const {
    return pos_ + offset < text_.size() ? text_[pos_ + offset] : '\0';
  }
  void Bump();

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

}  // namespace fairverify::internal

#endif  // FAIRVERIFY_SRC_TEXT_SCANNER_H_
