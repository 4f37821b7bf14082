//===- Parser.cpp - Textual format parsing ----------------------------------===//
//
// Part of the Sidekick project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//
//
// Recursive-descent parser over the Lexer token stream. Values resolve
// against prior definitions in the innermost isolated scope (regions of
// isolated operations open a fresh scope; other regions share their parent's).
// Block labels live in per-region tables and are patched into successor slots
// when the region closes, which is what permits forward branches. The first
// error aborts the parse.
//
//===----------------------------------------------------------------------===//

#include "sidekick/Parser.h"

#include "Lexer.h"
#include "sidekick/Printer.h"

#include <cassert>
#include <charconv>
#include <cmath>
#include <map>
#include <optional>

using namespace sidekick;

namespace {

class Parser {
public:
  Parser(std::string_view source, const Context &ctx, ParseOptions opts)
      : lexer(source), ctx(ctx), opts(opts) {}

  FailureOr<OwningOp> parseModuleTop();
  FailureOr<Attribute> parseSingleAttribute();

private:
  Lexer lexer;
  const Context &ctx;
  ParseOptions opts;
  std::optional<Diagnostic> firstError;

  // One table per isolated scope; lookups never cross into outer tables.
  using ValueTable = std::map<std::string, Value *, std::less<>>;
  std::vector<ValueTable> valueScopes{ValueTable{}};

  struct PendingSuccessor {
    Operation *op;
    unsigned index;
    std::string label;
    unsigned line, column;
  };
  struct RegionScope {
    std::map<std::string, Block *, std::less<>> labels;
    std::vector<PendingSuccessor> pending;
  };
  std::vector<RegionScope> regionScopes;

  //===-- Token plumbing --------------------------------------------------===//

  const Token &peek() { return lexer.peek(); }
  bool at(TokenKind k) { return peek().kind == k; }
  Token consume() { return lexer.consume(); }
  bool consumeIf(TokenKind k) {
    if (at(k)) {
      consume();
      return true;
    }
    return false;
  }

  void errorAtLoc(unsigned line, unsigned column, std::string message) {
    if (firstError)
      return;
    Diagnostic d;
    d.message = std::move(message);
    d.location = {{line, column}};
    firstError = std::move(d);
  }
  void errorAt(const Token &t, std::string message) {
    errorAtLoc(t.line, t.column, std::move(message));
  }

  /// Surfaces a lexical error pending on the stream. Returns true if one was.
  bool bailOnLexError() {
    if (peek().kind != TokenKind::Error)
      return false;
    errorAtLoc(peek().line, peek().column, peek().str);
    return true;
  }

  bool expect(TokenKind k, const char *what) {
    if (bailOnLexError())
      return false;
    if (at(k)) {
      consume();
      return true;
    }
    errorAt(peek(), std::string("expected ") + what);
    return false;
  }

  //===-- Values and labels -----------------------------------------------===//

  Value *lookupValue(std::string_view name) {
    auto &table = valueScopes.back();
    auto it = table.find(name);
    return it == table.end() ? nullptr : it->second;
  }

  bool registerValue(const Token &nameTok, Value *value) {
    auto [it, inserted] =
        valueScopes.back().emplace(std::string(nameTok.text), value);
    (void)it;
    if (!inserted) {
      errorAt(nameTok,
              "redefinition of value '%" + std::string(nameTok.text) + "'");
      return false;
    }
    return true;
  }

  //===-- Grammar ----------------------------------------------------------===//

  OwningOp parseOperation();
  bool parseRegionInto(Region &region, bool isolated);
  bool parseBlockOpsInto(Block &block);
  bool parseAttrEntries(const char *what,
                        const std::function<bool(const Token &, std::string,
                                                 Attribute)> &emit);
  bool parseOpAttrDict(AttributeMap &attrs);
  Attribute parseAttributeValue();
  Attribute parseNumberAttr();
  Attribute parseDialectAttr(bool isType);
  Attribute parseType();
  Attribute parseFunctionType();
  bool parseFunctionResults(std::vector<Attribute> &results);
  Attribute checkedFloat(double value, Attribute type, const Token &at);
};

} // namespace

//===----------------------------------------------------------------------===//
// Attributes and types
//===----------------------------------------------------------------------===//

Attribute Parser::checkedFloat(double value, Attribute type,
                               const Token &tok) {
  unsigned width = type.asFloatType()->width;
  double rounded = roundToFloatWidth(value, width);
  if (!std::isfinite(rounded)) {
    errorAt(tok, "float literal out of range for the type");
    return {};
  }
  return Attribute::floating(value, type);
}

Attribute Parser::parseNumberAttr() {
  Token tok = consume(); // Integer or Float
  Attribute type;
  if (consumeIf(TokenKind::Colon)) {
    type = parseType();
    if (!type)
      return {};
  }

  if (tok.kind == TokenKind::Integer) {
    uint64_t raw = tok.negative ? 0 - tok.magnitude : tok.magnitude;
    int64_t value = static_cast<int64_t>(raw);
    if (!type)
      type = Attribute::integerType(64);
    if (type.isIntegerOrIndexType())
      return Attribute::integer(value, type);
    if (type.asFloatType()) {
      double d = tok.negative ? -double(tok.magnitude) : double(tok.magnitude);
      return checkedFloat(d, type, tok);
    }
    errorAt(tok, "literal type must be an integer, index, or float type");
    return {};
  }

  if (!type)
    type = Attribute::floatType(64);
  if (type.asFloatType())
    return checkedFloat(tok.floatValue, type, tok);
  if (type.isIntegerOrIndexType()) {
    errorAt(tok, "float literal requires a float type");
    return {};
  }
  errorAt(tok, "literal type must be an integer, index, or float type");
  return {};
}

Attribute Parser::parseDialectAttr(bool isType) {
  consume(); // '#' or '!'
  if (bailOnLexError())
    return {};
  if (!at(TokenKind::BareIdent)) {
    errorAt(peek(), "expected 'dialect.mnemonic' name");
    return {};
  }
  Token nameTok = consume();
  std::string full(nameTok.text);
  size_t dot = full.find('.');
  if (dot == std::string::npos || dot == 0 || dot + 1 == full.size()) {
    errorAt(nameTok, "dialect attribute name must be 'dialect.mnemonic'");
    return {};
  }
  std::string dialect = full.substr(0, dot);
  std::string mnemonic = full.substr(dot + 1);

  if (ctx.lookupAttribute(dialect, mnemonic)) {
    std::vector<Attribute> params;
    if (consumeIf(TokenKind::Less)) {
      if (!at(TokenKind::Greater)) {
        do {
          Attribute p = parseAttributeValue();
          if (!p)
            return {};
          params.push_back(std::move(p));
        } while (consumeIf(TokenKind::Comma));
      }
      if (!expect(TokenKind::Greater, "'>' to end parameter list"))
        return {};
    }
    return Attribute::parametrized(dialect, mnemonic, std::move(params),
                                   isType);
  }

  std::string body;
  if (at(TokenKind::Less)) {
    consume();
    FailureOr<std::string> captured = lexer.captureBalanced();
    if (captured.failed()) {
      if (!firstError)
        firstError = captured.diagnostic();
      return {};
    }
    body = std::move(*captured);
  }
  return Attribute::opaque(dialect, mnemonic, std::move(body), isType);
}

Attribute Parser::parseType() {
  if (bailOnLexError())
    return {};
  switch (peek().kind) {
  case TokenKind::BareIdent: {
    Token tok = consume();
    std::string_view s = tok.text;
    if (s == "index")
      return Attribute::indexType();
    if (s == "f16")
      return Attribute::floatType(16);
    if (s == "f32")
      return Attribute::floatType(32);
    if (s == "f64")
      return Attribute::floatType(64);
    if (s.size() >= 2 && s[0] == 'i' &&
        s.find_first_not_of("0123456789", 1) == std::string_view::npos) {
      unsigned width = 0;
      auto result = std::from_chars(s.data() + 1, s.data() + s.size(), width);
      if (result.ec != std::errc() || width < 1 || width > 64) {
        errorAt(tok, "integer type width must be between 1 and 64");
        return {};
      }
      return Attribute::integerType(width);
    }
    errorAt(tok, "unknown type '" + std::string(s) + "'");
    return {};
  }
  case TokenKind::Bang:
    return parseDialectAttr(/*isType=*/true);
  case TokenKind::LParen:
    return parseFunctionType();
  default:
    errorAt(peek(), "expected type");
    return {};
  }
}

Attribute Parser::parseFunctionType() {
  if (!expect(TokenKind::LParen, "'(' to begin function type"))
    return {};
  std::vector<Attribute> inputs;
  if (!at(TokenKind::RParen)) {
    do {
      Attribute t = parseType();
      if (!t)
        return {};
      inputs.push_back(std::move(t));
    } while (consumeIf(TokenKind::Comma));
  }
  if (!expect(TokenKind::RParen, "')' in function type") ||
      !expect(TokenKind::Arrow, "'->' in function type"))
    return {};
  std::vector<Attribute> results;
  if (!parseFunctionResults(results))
    return {};
  return Attribute::functionType(std::move(inputs), std::move(results));
}

bool Parser::parseFunctionResults(std::vector<Attribute> &results) {
  if (bailOnLexError())
    return false;
  if (at(TokenKind::LParen)) {
    consume();
    std::vector<Attribute> list;
    if (!at(TokenKind::RParen)) {
      do {
        Attribute t = parseType();
        if (!t)
          return false;
        list.push_back(std::move(t));
      } while (consumeIf(TokenKind::Comma));
    }
    if (!expect(TokenKind::RParen, "')' in function type results"))
      return false;
    if (consumeIf(TokenKind::Arrow)) {
      // The parenthesized list was the input side of a function-typed result.
      std::vector<Attribute> inner;
      if (!parseFunctionResults(inner))
        return false;
      results.push_back(
          Attribute::functionType(std::move(list), std::move(inner)));
      return true;
    }
    results = std::move(list);
    return true;
  }
  Attribute t = parseType();
  if (!t)
    return false;
  results.push_back(std::move(t));
  return true;
}

bool Parser::parseAttrEntries(
    const char *what,
    const std::function<bool(const Token &, std::string, Attribute)> &emit) {
  if (!expect(TokenKind::LBrace, "'{'"))
    return false;
  if (!at(TokenKind::RBrace)) {
    do {
      if (bailOnLexError())
        return false;
      Token keyTok = peek();
      std::string key;
      if (at(TokenKind::BareIdent))
        key = std::string(consume().text);
      else if (at(TokenKind::String))
        key = consume().str;
      else {
        errorAt(keyTok, std::string("expected ") + what + " name");
        return false;
      }
      if (!expect(TokenKind::Equal, "'=' after attribute name"))
        return false;
      Attribute value = parseAttributeValue();
      if (!value)
        return false;
      if (!emit(keyTok, std::move(key), std::move(value)))
        return false;
    } while (consumeIf(TokenKind::Comma));
  }
  return expect(TokenKind::RBrace, "'}' to end attribute dictionary");
}

bool Parser::parseOpAttrDict(AttributeMap &attrs) {
  return parseAttrEntries(
      "attribute", [&](const Token &keyTok, std::string key, Attribute value) {
        auto [it, inserted] = attrs.emplace(std::move(key), std::move(value));
        if (!inserted) {
          errorAt(keyTok, "duplicate attribute '" + it->first + "'");
          return false;
        }
        return true;
      });
}

Attribute Parser::parseAttributeValue() {
  if (bailOnLexError())
    return {};
  switch (peek().kind) {
  case TokenKind::Integer:
  case TokenKind::Float:
    return parseNumberAttr();
  case TokenKind::String: {
    Token t = consume();
    return Attribute::string(std::move(t.str));
  }
  case TokenKind::LBracket: {
    consume();
    std::vector<Attribute> elements;
    if (!at(TokenKind::RBracket)) {
      do {
        Attribute e = parseAttributeValue();
        if (!e)
          return {};
        elements.push_back(std::move(e));
      } while (consumeIf(TokenKind::Comma));
    }
    if (!expect(TokenKind::RBracket, "']' to end array attribute"))
      return {};
    return Attribute::array(std::move(elements));
  }
  case TokenKind::LBrace: {
    std::vector<std::pair<std::string, Attribute>> entries;
    bool ok = parseAttrEntries(
        "dictionary key",
        [&](const Token &keyTok, std::string key, Attribute value) {
          for (const auto &entry : entries) {
            if (entry.first == key) {
              errorAt(keyTok,
                      "duplicate key '" + key + "' in dictionary attribute");
              return false;
            }
          }
          entries.emplace_back(std::move(key), std::move(value));
          return true;
        });
    if (!ok)
      return {};
    return Attribute::dictionary(std::move(entries));
  }
  case TokenKind::Hash:
    return parseDialectAttr(/*isType=*/false);
  case TokenKind::Bang:
  case TokenKind::LParen:
  case TokenKind::BareIdent:
    return parseType();
  default:
    errorAt(peek(), "expected attribute value");
    return {};
  }
}

//===----------------------------------------------------------------------===//
// Operations, blocks, regions
//===----------------------------------------------------------------------===//

OwningOp Parser::parseOperation() {
  if (bailOnLexError())
    return nullptr;

  std::vector<Token> resultNames;
  if (at(TokenKind::PercentIdent)) {
    do {
      if (bailOnLexError())
        return nullptr;
      if (!at(TokenKind::PercentIdent)) {
        errorAt(peek(), "expected result name");
        return nullptr;
      }
      resultNames.push_back(consume());
    } while (consumeIf(TokenKind::Comma));
    if (!expect(TokenKind::Equal, "'=' after result list"))
      return nullptr;
  }

  if (bailOnLexError())
    return nullptr;
  if (!at(TokenKind::String)) {
    errorAt(peek(), "expected operation name string");
    return nullptr;
  }
  Token nameTok = consume();
  std::string name = nameTok.str;
  size_t dot = name.find('.');
  if (dot == std::string::npos || dot == 0 || dot + 1 == name.size()) {
    errorAt(nameTok, "operation name must have the form 'dialect.mnemonic'");
    return nullptr;
  }
  const OpDefinition *def = ctx.lookupOp(name);
  if (!def && !opts.allowUnregistered) {
    errorAt(nameTok, "unregistered operation '" + name + "'");
    return nullptr;
  }

  if (!expect(TokenKind::LParen, "'(' before operand list"))
    return nullptr;
  std::vector<Value *> operands;
  std::vector<Token> operandTokens;
  if (!at(TokenKind::RParen)) {
    do {
      if (bailOnLexError())
        return nullptr;
      if (!at(TokenKind::PercentIdent)) {
        errorAt(peek(), "expected SSA operand");
        return nullptr;
      }
      Token t = consume();
      Value *v = lookupValue(t.text);
      if (!v) {
        errorAt(t, "use of undefined value '%" + std::string(t.text) + "'");
        return nullptr;
      }
      operands.push_back(v);
      operandTokens.push_back(t);
    } while (consumeIf(TokenKind::Comma));
  }
  if (!expect(TokenKind::RParen, "')' after operand list"))
    return nullptr;

  std::vector<Token> successorLabels;
  if (consumeIf(TokenKind::LBracket)) {
    do {
      if (bailOnLexError())
        return nullptr;
      if (!at(TokenKind::CaretIdent)) {
        errorAt(peek(), "expected block label");
        return nullptr;
      }
      successorLabels.push_back(consume());
    } while (consumeIf(TokenKind::Comma));
    if (!expect(TokenKind::RBracket, "']' after successor list"))
      return nullptr;
  }

  std::vector<std::unique_ptr<Region>> regions;
  if (at(TokenKind::LParen)) {
    consume();
    bool isolated = def && def->traits.isolated;
    do {
      auto region = std::make_unique<Region>();
      if (!parseRegionInto(*region, isolated))
        return nullptr;
      regions.push_back(std::move(region));
    } while (consumeIf(TokenKind::Comma));
    if (!expect(TokenKind::RParen, "')' after region list"))
      return nullptr;
  }

  AttributeMap attrs;
  if (at(TokenKind::LBrace)) {
    if (!parseOpAttrDict(attrs))
      return nullptr;
  }

  if (!expect(TokenKind::Colon, "':' before the operation type"))
    return nullptr;
  Token sigTok = peek();
  if (!at(TokenKind::LParen)) {
    errorAt(sigTok, "expected '(' to begin the operation type");
    return nullptr;
  }
  Attribute fnType = parseFunctionType();
  if (!fnType)
    return nullptr;
  const FunctionTypeData *sig = fnType.asFunctionType();

  if (operands.size() != sig->inputs.size()) {
    errorAt(sigTok, "operation has " + std::to_string(operands.size()) +
                        " operand(s) but the type annotation lists " +
                        std::to_string(sig->inputs.size()));
    return nullptr;
  }
  for (unsigned i = 0; i < operands.size(); ++i) {
    if (operands[i]->type() != sig->inputs[i]) {
      errorAt(operandTokens[i],
              "operand " + std::to_string(i) + " has type '" +
                  printAttribute(operands[i]->type()) +
                  "' but the type annotation says '" +
                  printAttribute(sig->inputs[i]) + "'");
      return nullptr;
    }
  }
  if (resultNames.size() != sig->results.size()) {
    errorAt(sigTok, "operation defines " +
                        std::to_string(resultNames.size()) +
                        " result(s) but the type annotation lists " +
                        std::to_string(sig->results.size()));
    return nullptr;
  }

  OwningOp op = Operation::create(
      std::move(name), std::move(operands), sig->results, std::move(attrs),
      std::move(regions),
      std::vector<Block *>(successorLabels.size(), nullptr));

  if (!successorLabels.empty()) {
    if (regionScopes.empty()) {
      errorAt(successorLabels[0], "successor reference outside a region");
      return nullptr;
    }
    for (unsigned i = 0; i < successorLabels.size(); ++i) {
      const Token &t = successorLabels[i];
      regionScopes.back().pending.push_back(
          {op.get(), i, std::string(t.text), t.line, t.column});
    }
  }

  for (unsigned i = 0; i < resultNames.size(); ++i) {
    if (!registerValue(resultNames[i], &op->result(i)))
      return nullptr;
  }
  return op;
}

bool Parser::parseBlockOpsInto(Block &block) {
  while (!at(TokenKind::RBrace) && !at(TokenKind::CaretIdent) &&
         !at(TokenKind::Eof)) {
    OwningOp op = parseOperation();
    if (!op)
      return false;
    Status s = insertAtBack(block, op);
    assert(s.succeeded() && "fresh op must be insertable");
    (void)s;
  }
  return !bailOnLexError();
}

bool Parser::parseRegionInto(Region &region, bool isolated) {
  if (!expect(TokenKind::LBrace, "'{' to begin region"))
    return false;
  if (isolated)
    valueScopes.emplace_back();
  regionScopes.emplace_back();

  bool ok = [&] {
    if (!at(TokenKind::RBrace) && !at(TokenKind::CaretIdent)) {
      // Unlabeled entry block.
      Block &entry = region.emplaceBlock();
      if (!parseBlockOpsInto(entry))
        return false;
    }
    while (at(TokenKind::CaretIdent)) {
      Token labelTok = consume();
      Block &block = region.emplaceBlock();
      auto [it, inserted] = regionScopes.back().labels.emplace(
          std::string(labelTok.text), &block);
      (void)it;
      if (!inserted) {
        errorAt(labelTok, "redefinition of block label '^" +
                              std::string(labelTok.text) + "'");
        return false;
      }
      if (consumeIf(TokenKind::LParen)) {
        if (!at(TokenKind::RParen)) {
          do {
            if (bailOnLexError())
              return false;
            if (!at(TokenKind::PercentIdent)) {
              errorAt(peek(), "expected block argument name");
              return false;
            }
            Token argTok = consume();
            if (!expect(TokenKind::Colon, "':' after block argument name"))
              return false;
            Attribute type = parseType();
            if (!type)
              return false;
            BlockArgument &arg = block.addArgument(std::move(type));
            if (!registerValue(argTok, &arg))
              return false;
          } while (consumeIf(TokenKind::Comma));
        }
        if (!expect(TokenKind::RParen, "')' after block argument list"))
          return false;
      }
      if (!expect(TokenKind::Colon, "':' after block label"))
        return false;
      if (!parseBlockOpsInto(block))
        return false;
    }
    if (!expect(TokenKind::RBrace, "'}' to end region"))
      return false;

    for (const PendingSuccessor &p : regionScopes.back().pending) {
      auto it = regionScopes.back().labels.find(p.label);
      if (it == regionScopes.back().labels.end()) {
        errorAtLoc(p.line, p.column, "undefined block label '^" + p.label + "'");
        return false;
      }
      p.op->setSuccessor(p.index, *it->second);
    }
    return true;
  }();

  regionScopes.pop_back();
  if (isolated)
    valueScopes.pop_back();
  return ok;
}

//===----------------------------------------------------------------------===//
// Entry points
//===----------------------------------------------------------------------===//

FailureOr<OwningOp> Parser::parseModuleTop() {
  std::vector<OwningOp> topLevel;
  while (!at(TokenKind::Eof)) {
    OwningOp op = parseOperation();
    if (!op) {
      assert(firstError && "parse failure must set a diagnostic");
      return *firstError;
    }
    topLevel.push_back(std::move(op));
  }
  if (bailOnLexError())
    return *firstError;

  if (topLevel.size() == 1 && topLevel[0]->name() == "builtin.module")
    return std::move(topLevel[0]);

  auto region = std::make_unique<Region>();
  Block &body = region->emplaceBlock();
  for (OwningOp &op : topLevel) {
    Status s = insertAtBack(body, op);
    assert(s.succeeded());
    (void)s;
  }
  std::vector<std::unique_ptr<Region>> regions;
  regions.push_back(std::move(region));
  return Operation::create("builtin.module", {}, {}, {}, std::move(regions),
                           {});
}

FailureOr<Attribute> Parser::parseSingleAttribute() {
  Attribute attr = parseAttributeValue();
  if (!attr) {
    assert(firstError);
    return *firstError;
  }
  if (bailOnLexError())
    return *firstError;
  if (!at(TokenKind::Eof)) {
    errorAt(peek(), "unexpected input after attribute");
    return *firstError;
  }
  return attr;
}

FailureOr<OwningOp> sidekick::parseModule(std::string_view source,
                                          const Context &ctx,
                                          ParseOptions opts) {
  return Parser(source, ctx, opts).parseModuleTop();
}

FailureOr<Attribute> sidekick::parseAttribute(std::string_view source,
                                              const Context &ctx) {
  return Parser(source, ctx, ParseOptions{.allowUnregistered = true})
      .parseSingleAttribute();
}
