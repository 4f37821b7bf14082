//===- Dialect.h - Operation definitions and the context ------*- C++ -*-===//
//
// Part of the Sidekick project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#ifndef SIDEKICK_DIALECT_H
#define SIDEKICK_DIALECT_H

#include "sidekick/Constraint.h"
#include "sidekick/Support.h"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace sidekick {

struct TraitSet {
  bool terminator = false;
  bool pure = false;
  bool isolated = false;

  bool operator==(const TraitSet &) const = default;
};

/// Declarative shape of one operation. Constraint lists pin exact arities;
/// an absent list leaves the count and the slot types unconstrained (used by
/// operations whose arity depends on context, e.g. return-like terminators).
struct OpDefinition {
  std::string name; // "dialect.mnemonic"
  std::optional<std::vector<ConstraintExpr>> operandConstraints;
  std::optional<std::vector<ConstraintExpr>> resultConstraints;
  std::map<std::string, ConstraintExpr> attributeConstraints;
  unsigned regionCount = 0;
  unsigned successorCount = 0;
  TraitSet traits;

  std::string_view mnemonic() const {
    return std::string_view(name).substr(name.find('.') + 1);
  }

  bool operator==(const OpDefinition &) const = default;
};

/// Declarative shape of one dialect attribute or type.
struct AttributeDefinition {
  std::string mnemonic;
  bool isType = false;
  std::vector<ConstraintExpr> parameterConstraints;

  bool operator==(const AttributeDefinition &) const = default;
};

struct DialectDefinition {
  std::string name;
  std::vector<OpDefinition> operations;
  std::vector<AttributeDefinition> attributes;

  bool operator==(const DialectDefinition &) const = default;
};

/// Registry of dialects plus verification policy. Registered definitions are
/// immutable once accepted; lookups hand out stable pointers.
class Context {
public:
  /// Validates and registers `dialect`. Errors: empty/duplicate dialect name,
  /// member op names not prefixed with the dialect name, or duplicate
  /// mnemonics within the dialect's operations or within its attributes.
  /// Operations and attributes are separate namespaces and may share a
  /// mnemonic (the textual forms `"d.m"(...)` and `!d.m` never collide).
  Status registerDialect(DialectDefinition dialect);

  const DialectDefinition *lookupDialect(std::string_view name) const;
  /// Looks up an operation by full "dialect.mnemonic" name.
  const OpDefinition *lookupOp(std::string_view fullName) const;
  const AttributeDefinition *lookupAttribute(std::string_view dialect,
                                             std::string_view mnemonic) const;

  /// Dialect names in registration order.
  const std::vector<std::string> &dialectNames() const { return order; }

  /// When false, operations without a registered definition are verification
  /// errors.
  bool allowUnregistered = false;

private:
  std::map<std::string, DialectDefinition, std::less<>> dialects;
  std::vector<std::string> order;
  // Keys view into the stored definitions (stable once registered).
  std::unordered_map<std::string_view, const OpDefinition *> opIndex;
  std::unordered_map<std::string, const AttributeDefinition *> attrIndex;
};

} // namespace sidekick

#endif // SIDEKICK_DIALECT_H
