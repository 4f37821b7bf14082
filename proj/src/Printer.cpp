//===- Printer.cpp - Canonical textual output --------------------------------===//
//
// Part of the Sidekick project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "sidekick/Printer.h"

#include <cassert>
#include <cctype>
#include <charconv>
#include <unordered_map>

using namespace sidekick;

//===----------------------------------------------------------------------===//
// Attribute formatting
//===----------------------------------------------------------------------===//

static void printAttr(std::string &out, const Attribute &attr);

static void printEscapedString(std::string &out, std::string_view text) {
  out += '"';
  for (char c : text) {
    switch (c) {
    case '"':
      out += "\\\"";
      break;
    case '\\':
      out += "\\\\";
      break;
    case '\n':
      out += "\\n";
      break;
    case '\t':
      out += "\\t";
      break;
    case '\r':
      out += "\\r";
      break;
    default:
      out += c;
    }
  }
  out += '"';
}

/// Shortest decimal form that round-trips the exact double, massaged so the
/// lexer reads it back as a float (a '.' is always present).
static std::string formatFloat(double value) {
  char buf[64];
  auto result = std::to_chars(buf, buf + sizeof(buf), value);
  assert(result.ec == std::errc());
  std::string s(buf, result.ptr);
  if (s.find('.') == std::string::npos) {
    size_t e = s.find('e');
    if (e == std::string::npos)
      s += ".0";
    else
      s.insert(e, ".0");
  }
  return s;
}

static bool isBareKey(std::string_view key) {
  if (key.empty())
    return false;
  char first = key.front();
  if (!std::isalpha(static_cast<unsigned char>(first)) && first != '_')
    return false;
  for (char c : key) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '$' &&
        c != '.')
      return false;
  }
  return true;
}

static void printKey(std::string &out, std::string_view key) {
  if (isBareKey(key))
    out += key;
  else
    printEscapedString(out, key);
}

static void printSignature(std::string &out,
                           const std::vector<Attribute> &inputs,
                           const std::vector<Attribute> &results) {
  out += '(';
  for (size_t i = 0; i < inputs.size(); ++i) {
    if (i)
      out += ", ";
    printAttr(out, inputs[i]);
  }
  out += ") -> ";
  if (results.size() == 1 && !results[0].asFunctionType()) {
    printAttr(out, results[0]);
    return;
  }
  out += '(';
  for (size_t i = 0; i < results.size(); ++i) {
    if (i)
      out += ", ";
    printAttr(out, results[i]);
  }
  out += ')';
}

static void printAttr(std::string &out, const Attribute &attr) {
  assert(attr && "cannot print a null attribute");
  switch (attr.kind()) {
  case AttrKind::IntegerType:
    out += 'i';
    out += std::to_string(attr.asIntegerType()->width);
    return;
  case AttrKind::IndexType:
    out += "index";
    return;
  case AttrKind::FloatType:
    out += 'f';
    out += std::to_string(attr.asFloatType()->width);
    return;
  case AttrKind::FunctionType: {
    const auto *fn = attr.asFunctionType();
    printSignature(out, fn->inputs, fn->results);
    return;
  }
  case AttrKind::IntegerAttr: {
    const auto *ia = attr.asInteger();
    out += std::to_string(ia->value);
    const auto *ty = ia->type.asIntegerType();
    if (!ty || ty->width != 64) {
      out += " : ";
      printAttr(out, ia->type);
    }
    return;
  }
  case AttrKind::FloatAttr: {
    const auto *fa = attr.asFloat();
    out += formatFloat(fa->value);
    if (fa->type.asFloatType()->width != 64) {
      out += " : ";
      printAttr(out, fa->type);
    }
    return;
  }
  case AttrKind::StringAttr:
    printEscapedString(out, attr.asString()->value);
    return;
  case AttrKind::ArrayAttr: {
    out += '[';
    const auto &elements = attr.asArray()->elements;
    for (size_t i = 0; i < elements.size(); ++i) {
      if (i)
        out += ", ";
      printAttr(out, elements[i]);
    }
    out += ']';
    return;
  }
  case AttrKind::DictionaryAttr: {
    out += '{';
    const auto &entries = attr.asDictionary()->entries;
    for (size_t i = 0; i < entries.size(); ++i) {
      if (i)
        out += ", ";
      printKey(out, entries[i].first);
      out += " = ";
      printAttr(out, entries[i].second);
    }
    out += '}';
    return;
  }
  case AttrKind::ParametrizedAttr: {
    const auto *p = attr.asParametrized();
    out += p->isType ? '!' : '#';
    out += p->dialect;
    out += '.';
    out += p->mnemonic;
    if (!p->parameters.empty()) {
      out += '<';
      for (size_t i = 0; i < p->parameters.size(); ++i) {
        if (i)
          out += ", ";
        printAttr(out, p->parameters[i]);
      }
      out += '>';
    }
    return;
  }
  case AttrKind::OpaqueAttr: {
    const auto *o = attr.asOpaque();
    out += o->isType ? '!' : '#';
    out += o->dialect;
    out += '.';
    out += o->mnemonic;
    if (!o->body.empty()) {
      out += '<';
      out += o->body;
      out += '>';
    }
    return;
  }
  }
  assert(false && "unhandled attribute kind");
}

std::string sidekick::printAttribute(const Attribute &attr) {
  std::string out;
  printAttr(out, attr);
  return out;
}

//===----------------------------------------------------------------------===//
// Module printing
//===----------------------------------------------------------------------===//

namespace {

class ModulePrinter {
public:
  explicit ModulePrinter(const Context &ctx) : ctx(ctx) {}

  std::string print(const Operation &root) {
    counters.push_back(0);
    printOp(root, 0);
    return std::move(out);
  }

private:
  const Context &ctx;
  std::string out;
  std::vector<unsigned> counters;
  std::unordered_map<const Value *, std::string> valueNames;
  std::unordered_map<const Block *, std::string> blockNames;

  const std::string &nameOf(const Value &value) {
    auto it = valueNames.find(&value);
    if (it != valueNames.end())
      return it->second;
    std::string name = "%" + std::to_string(counters.back()++);
    return valueNames.emplace(&value, std::move(name)).first->second;
  }

  void printOp(const Operation &op, unsigned indent) {
    out.append(indent, ' ');
    if (op.numResults() > 0) {
      for (unsigned i = 0; i < op.numResults(); ++i) {
        if (i)
          out += ", ";
        out += nameOf(op.result(i));
      }
      out += " = ";
    }
    printEscapedString(out, op.name());

    out += '(';
    for (unsigned i = 0; i < op.numOperands(); ++i) {
      if (i)
        out += ", ";
      out += nameOf(op.operand(i));
    }
    out += ')';

    if (op.numSuccessors() > 0) {
      out += '[';
      for (unsigned i = 0; i < op.numSuccessors(); ++i) {
        if (i)
          out += ", ";
        const Block *target = op.successor(i);
        auto it = target ? blockNames.find(target) : blockNames.end();
        out += it != blockNames.end() ? it->second : std::string("^unknown");
      }
      out += ']';
    }

    if (op.numRegions() > 0) {
      const OpDefinition *def = ctx.lookupOp(op.name());
      bool isolated = def && def->traits.isolated;
      out += " (";
      for (unsigned r = 0; r < op.numRegions(); ++r) {
        if (r)
          out += ", ";
        if (isolated)
          counters.push_back(0);
        printRegion(op.region(r), indent);
        if (isolated)
          counters.pop_back();
      }
      out += ')';
    }

    if (!op.attributes().empty()) {
      out += " {";
      bool first = true;
      for (const auto &[key, value] : op.attributes()) {
        if (!first)
          out += ", ";
        first = false;
        printKey(out, key);
        out += " = ";
        printAttr(out, value);
      }
      out += '}';
    }

    out += " : (";
    for (unsigned i = 0; i < op.numOperands(); ++i) {
      if (i)
        out += ", ";
      printAttr(out, op.operand(i).type());
    }
    out += ") -> ";
    if (op.numResults() == 1 && !op.result(0).type().asFunctionType()) {
      printAttr(out, op.result(0).type());
    } else {
      out += '(';
      for (unsigned i = 0; i < op.numResults(); ++i) {
        if (i)
          out += ", ";
        printAttr(out, op.result(i).type());
      }
      out += ')';
    }
    out += '\n';
  }

  void printRegion(const Region &region, unsigned indent) {
    if (region.numBlocks() == 0) {
      out += "{}";
      return;
    }
    out += "{\n";
    for (unsigned b = 0; b < region.numBlocks(); ++b)
      blockNames[&region.block(b)] = "^bb" + std::to_string(b);
    for (unsigned b = 0; b < region.numBlocks(); ++b) {
      const Block &block = region.block(b);
      bool printLabel = b != 0 || block.numArguments() > 0 ||
                        region.numBlocks() > 1 || block.empty();
      if (printLabel) {
        out.append(indent, ' ');
        out += blockNames[&block];
        if (block.numArguments() > 0) {
          out += '(';
          for (unsigned a = 0; a < block.numArguments(); ++a) {
            if (a)
              out += ", ";
            out += nameOf(block.argument(a));
            out += ": ";
            printAttr(out, block.argument(a).type());
          }
          out += ')';
        }
        out += ":\n";
      }
      for (const OwningOp &child : block.operations())
        printOp(*child, indent + 2);
    }
    out.append(indent, ' ');
    out += '}';
  }
};

} // namespace

std::string sidekick::printModule(const Operation &root, const Context &ctx) {
  return ModulePrinter(ctx).print(root);
}
