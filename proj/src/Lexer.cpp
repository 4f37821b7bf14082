//===- Lexer.cpp - Token stream for the textual format ---------------------===//
//
// Part of the Sidekick project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "Lexer.h"

#include <cassert>
#include <cctype>
#include <charconv>

using namespace sidekick;

static bool isIdentStart(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

static bool isIdentBody(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$' ||
         c == '.';
}

static bool isDigit(char c) {
  return std::isdigit(static_cast<unsigned char>(c));
}

const Token &Lexer::peek() {
  if (!cached)
    cached = lexToken();
  return *cached;
}

Token Lexer::consume() {
  Token t = peek();
  if (t.kind != TokenKind::Eof && t.kind != TokenKind::Error)
    cached.reset();
  return t;
}

void Lexer::skipTrivia() {
  while (!atEnd()) {
    char c = current();
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance();
      continue;
    }
    if (c == '/' && lookaheadChar() == '/') {
      while (!atEnd() && current() != '\n')
        advance();
      continue;
    }
    break;
  }
}

Token Lexer::lexToken() {
  skipTrivia();
  unsigned l = line, c = column;
  size_t start = pos;
  auto simple = [&](TokenKind kind) {
    advance();
    Token t;
    t.kind = kind;
    t.text = buffer.substr(start, pos - start);
    t.line = l;
    t.column = c;
    return t;
  };

  if (atEnd()) {
    Token t;
    t.kind = TokenKind::Eof;
    t.line = l;
    t.column = c;
    return t;
  }

  char ch = current();
  if (isIdentStart(ch)) {
    advance();
    while (!atEnd() && isIdentBody(current()))
      advance();
    Token t;
    t.kind = TokenKind::BareIdent;
    t.text = buffer.substr(start, pos - start);
    t.line = l;
    t.column = c;
    return t;
  }

  if (ch == '%' || ch == '^' || ch == '@') {
    advance();
    size_t nameStart = pos;
    while (!atEnd() && isIdentBody(current()))
      advance();
    if (pos == nameStart)
      return errorToken(l, c,
                        std::string("expected identifier after '") + ch + "'");
    Token t;
    t.kind = ch == '%'   ? TokenKind::PercentIdent
             : ch == '^' ? TokenKind::CaretIdent
                         : TokenKind::AtIdent;
    t.text = buffer.substr(nameStart, pos - nameStart);
    t.line = l;
    t.column = c;
    return t;
  }

  if (ch == '"')
    return lexString();
  if (isDigit(ch))
    return lexNumber();

  switch (ch) {
  case '(':
    return simple(TokenKind::LParen);
  case ')':
    return simple(TokenKind::RParen);
  case '{':
    return simple(TokenKind::LBrace);
  case '}':
    return simple(TokenKind::RBrace);
  case '[':
    return simple(TokenKind::LBracket);
  case ']':
    return simple(TokenKind::RBracket);
  case '<':
    return simple(TokenKind::Less);
  case '>':
    return simple(TokenKind::Greater);
  case ':':
    return simple(TokenKind::Colon);
  case ',':
    return simple(TokenKind::Comma);
  case '=':
    return simple(TokenKind::Equal);
  case '#':
    return simple(TokenKind::Hash);
  case '!':
    return simple(TokenKind::Bang);
  case '-':
    if (lookaheadChar() == '>') {
      advance();
      advance();
      Token t;
      t.kind = TokenKind::Arrow;
      t.text = buffer.substr(start, 2);
      t.line = l;
      t.column = c;
      return t;
    }
    if (isDigit(lookaheadChar()))
      return lexNumber();
    return errorToken(l, c, "unexpected character '-'");
  default:
    return errorToken(l, c, std::string("unexpected character '") + ch + "'");
  }
}

Token Lexer::lexNumber() {
  unsigned l = line, c = column;
  size_t start = pos;
  bool negative = current() == '-';
  if (negative)
    advance();

  uint64_t magnitude = 0;
  while (!atEnd() && isDigit(current())) {
    unsigned digit = unsigned(current() - '0');
    if (magnitude > (UINT64_MAX - digit) / 10)
      return errorToken(l, c, "integer literal too large");
    magnitude = magnitude * 10 + digit;
    advance();
  }

  bool isFloat = false;
  if (current() == '.' && isDigit(lookaheadChar())) {
    isFloat = true;
    advance();
    while (!atEnd() && isDigit(current()))
      advance();
  } else if (current() == '.') {
    return errorToken(line, column, "expected digit after decimal point");
  }

  if (isFloat && (current() == 'e' || current() == 'E')) {
    advance();
    if (current() == '+' || current() == '-')
      advance();
    if (!isDigit(current()))
      return errorToken(line, column, "expected digits in float exponent");
    while (!atEnd() && isDigit(current()))
      advance();
  }

  Token t;
  t.text = buffer.substr(start, pos - start);
  t.line = l;
  t.column = c;
  if (!isFloat) {
    t.kind = TokenKind::Integer;
    t.magnitude = magnitude;
    t.negative = negative;
    return t;
  }

  t.kind = TokenKind::Float;
  auto result = std::from_chars(t.text.data(), t.text.data() + t.text.size(),
                                t.floatValue);
  if (result.ec != std::errc())
    return errorToken(l, c, "float literal out of range");
  return t;
}

Token Lexer::lexString() {
  unsigned l = line, c = column;
  size_t start = pos;
  advance(); // opening quote
  std::string decoded;
  while (true) {
    if (atEnd() || current() == '\n')
      return errorToken(l, c, "unterminated string literal");
    char ch = current();
    if (ch == '"') {
      advance();
      Token t;
      t.kind = TokenKind::String;
      t.text = buffer.substr(start, pos - start);
      t.line = l;
      t.column = c;
      t.str = std::move(decoded);
      return t;
    }
    if (ch == '\\') {
      unsigned el = line, ec = column;
      advance();
      if (atEnd())
        return errorToken(l, c, "unterminated string literal");
      switch (current()) {
      case 'n':
        decoded += '\n';
        break;
      case 't':
        decoded += '\t';
        break;
      case 'r':
        decoded += '\r';
        break;
      case '"':
        decoded += '"';
        break;
      case '\\':
        decoded += '\\';
        break;
      default:
        return errorToken(el, ec, "unknown escape sequence in string literal");
      }
      advance();
      continue;
    }
    decoded += ch;
    advance();
  }
}

FailureOr<std::string> Lexer::captureBalanced() {
  assert(!cached && "raw capture requires no lookahead token");
  std::string body;
  std::vector<char> openers;

  auto errorAt = [&](unsigned l, unsigned c, std::string message) {
    Diagnostic d;
    d.message = std::move(message);
    d.location = {{l, c}};
    return FailureOr<std::string>(std::move(d));
  };

  while (true) {
    if (atEnd())
      return errorAt(line, column, "unterminated attribute body");
    char ch = current();
    if (ch == '"') {
      unsigned sl = line, sc = column;
      body += ch;
      advance();
      while (true) {
        if (atEnd())
          return errorAt(sl, sc, "unterminated string in attribute body");
        char sch = current();
        body += sch;
        advance();
        if (sch == '\\') {
          if (atEnd())
            return errorAt(sl, sc, "unterminated string in attribute body");
          body += current();
          advance();
          continue;
        }
        if (sch == '"')
          break;
      }
      continue;
    }
    if (ch == '<' || ch == '(' || ch == '[' || ch == '{') {
      openers.push_back(ch);
      body += ch;
      advance();
      continue;
    }
    if (ch == '>' || ch == ')' || ch == ']' || ch == '}') {
      if (openers.empty()) {
        if (ch == '>') {
          advance();
          return body;
        }
        return errorAt(line, column,
                       std::string("unbalanced '") + ch +
                           "' in attribute body");
      }
      char open = openers.back();
      bool matches = (open == '<' && ch == '>') || (open == '(' && ch == ')') ||
                     (open == '[' && ch == ']') || (open == '{' && ch == '}');
      if (!matches)
        return errorAt(line, column,
                       std::string("unbalanced '") + ch +
                           "' in attribute body");
      openers.pop_back();
      body += ch;
      advance();
      continue;
    }
    body += ch;
    advance();
  }
}
