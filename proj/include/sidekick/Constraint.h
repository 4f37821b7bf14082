//===- Constraint.h - Attribute constraint expressions --------*- C++ -*-===//
//
// Part of the Sidekick project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#ifndef SIDEKICK_CONSTRAINT_H
#define SIDEKICK_CONSTRAINT_H

#include "sidekick/Attribute.h"

#include <cassert>
#include <optional>
#include <string>
#include <vector>

namespace sidekick {

/// A predicate over attributes. Var nodes bind-once against a shared
/// environment, which is how equality between separately-checked slots
/// (operands, results, attribute entries) is expressed.
class ConstraintExpr {
public:
  enum class Kind { Is, Any, AnyOf, AllOf, Parametric, Var };

  static ConstraintExpr is(Attribute expected);
  static ConstraintExpr any();
  static ConstraintExpr anyOf(std::vector<ConstraintExpr> branches);
  static ConstraintExpr allOf(std::vector<ConstraintExpr> elements);
  static ConstraintExpr parametric(std::string base,
                                   std::vector<ConstraintExpr> params);
  static ConstraintExpr var(unsigned id);

  Kind kind() const { return exprKind; }
  const Attribute &expected() const { return expectedAttr; }
  const std::vector<ConstraintExpr> &children() const { return childExprs; }
  const std::string &base() const { return baseName; }
  unsigned varId() const { return variableId; }

  bool operator==(const ConstraintExpr &other) const;
  bool operator!=(const ConstraintExpr &other) const {
    return !(*this == other);
  }

  /// Largest Var id mentioned anywhere in this expression, if any.
  std::optional<unsigned> maxVarId() const;

private:
  ConstraintExpr() = default;

  Kind exprKind = Kind::Any;
  Attribute expectedAttr;                  // Is
  std::vector<ConstraintExpr> childExprs;  // AnyOf / AllOf / Parametric
  std::string baseName;                    // Parametric
  unsigned variableId = 0;                 // Var
};

/// Bind-once variable store for one verification of one operation or
/// attribute instance. Failed evaluation branches roll their bindings back
/// via the trail, so a false result never leaves bindings behind.
class BindingEnv {
public:
  bool isBound(unsigned id) const {
    return id < slots.size() && slots[id].has_value();
  }
  const Attribute &binding(unsigned id) const { return *slots[id]; }

  void bind(unsigned id, Attribute value) {
    if (id >= slots.size())
      slots.resize(id + 1);
    assert(!slots[id] && "variable already bound");
    slots[id] = std::move(value);
    trail.push_back(id);
  }

  size_t mark() const { return trail.size(); }
  void rollbackTo(size_t mark) {
    while (trail.size() > mark) {
      slots[trail.back()].reset();
      trail.pop_back();
    }
  }

private:
  std::vector<std::optional<Attribute>> slots;
  std::vector<unsigned> trail;
};

/// Evaluates `expr` against `attr`. AnyOf commits the bindings of its first
/// successful branch; any failed evaluation (at every nesting level) rolls
/// back the bindings it introduced.
bool evalConstraint(const ConstraintExpr &expr, const Attribute &attr,
                    BindingEnv &env);

} // namespace sidekick

#endif // SIDEKICK_CONSTRAINT_H
