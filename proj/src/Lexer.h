//===- Lexer.h - Token stream for the textual format -----------*- C++ -*-===//
//
// Part of the Sidekick project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#ifndef SIDEKICK_LEXER_H
#define SIDEKICK_LEXER_H

#include "sidekick/Support.h"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace sidekick {

enum class TokenKind {
  Eof,
  Error, // message in Token::str, location at the offending character
  BareIdent,
  PercentIdent, // text excludes the sigil
  CaretIdent,   // text excludes the sigil
  AtIdent,      // text excludes the sigil
  String,       // decoded value in Token::str
  Integer,      // magnitude/negative
  Float,        // floatValue (sign already applied)
  LParen,
  RParen,
  LBrace,
  RBrace,
  LBracket,
  RBracket,
  Less,
  Greater,
  Colon,
  Comma,
  Equal,
  Arrow,
  Hash,
  Bang,
};

struct Token {
  TokenKind kind = TokenKind::Eof;
  std::string_view text;
  unsigned line = 1;   // 1-based, token start
  unsigned column = 1; // 1-based, token start
  std::string str;     // decoded string literal, or error message
  uint64_t magnitude = 0;
  bool negative = false;
  double floatValue = 0.0;
};

/// One-token-lookahead lexer. `//` comments and whitespace are skipped
/// between tokens. The parser switches to raw scanning via captureBalanced()
/// for opaque dialect-attribute bodies, so the body is never tokenized.
class Lexer {
public:
  explicit Lexer(std::string_view buffer) : buffer(buffer) {}

  const Token &peek();
  Token consume();

  /// Raw scan for an opaque `<...>` body. Must be called directly after
  /// consuming the opening '<' with no intervening peek. Consumes up to and
  /// including the matching '>' and returns the verbatim text in between.
  /// Nested (), [], {}, <> must balance; string literals are skipped opaquely.
  /// On failure the diagnostic points at the offending character.
  FailureOr<std::string> captureBalanced();

private:
  bool atEnd() const { return pos >= buffer.size(); }
  char current() const { return atEnd() ? '\0' : buffer[pos]; }
  char lookaheadChar() const {
    return pos + 1 < buffer.size() ? buffer[pos + 1] : '\0';
  }
  void advance() {
    if (buffer[pos] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
    ++pos;
  }
  void skipTrivia();
  Token lexToken();
  Token lexNumber();
  Token lexString();
  Token errorToken(unsigned l, unsigned c, std::string message) const {
    Token t;
    t.kind = TokenKind::Error;
    t.line = l;
    t.column = c;
    t.str = std::move(message);
    return t;
  }

  std::string_view buffer;
  size_t pos = 0;
  unsigned line = 1;
  unsigned column = 1;
  std::optional<Token> cached;
};

} // namespace sidekick

#endif // SIDEKICK_LEXER_H
