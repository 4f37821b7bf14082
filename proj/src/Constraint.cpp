//===- Constraint.cpp - Constraint evaluation ------------------------------===//
//
// Part of the Sidekick project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "sidekick/Constraint.h"

#include <algorithm>

using namespace sidekick;

ConstraintExpr ConstraintExpr::is(Attribute expected) {
  assert(expected && "Is requires an attribute");
  ConstraintExpr e;
  e.exprKind = Kind::Is;
  e.expectedAttr = std::move(expected);
  return e;
}

ConstraintExpr ConstraintExpr::any() {
  ConstraintExpr e;
  e.exprKind = Kind::Any;
  return e;
}

ConstraintExpr ConstraintExpr::anyOf(std::vector<ConstraintExpr> branches) {
  assert(!branches.empty() && "AnyOf requires at least one branch");
  ConstraintExpr e;
  e.exprKind = Kind::AnyOf;
  e.childExprs = std::move(branches);
  return e;
}

ConstraintExpr ConstraintExpr::allOf(std::vector<ConstraintExpr> elements) {
  assert(!elements.empty() && "AllOf requires at least one element");
  ConstraintExpr e;
  e.exprKind = Kind::AllOf;
  e.childExprs = std::move(elements);
  return e;
}

ConstraintExpr ConstraintExpr::parametric(std::string base,
                                          std::vector<ConstraintExpr> params) {
  assert(base.find('.') != std::string::npos &&
         "parametric base must be dialect.mnemonic");
  ConstraintExpr e;
  e.exprKind = Kind::Parametric;
  e.baseName = std::move(base);
  e.childExprs = std::move(params);
  return e;
}

ConstraintExpr ConstraintExpr::var(unsigned id) {
  ConstraintExpr e;
  e.exprKind = Kind::Var;
  e.variableId = id;
  return e;
}

bool ConstraintExpr::operator==(const ConstraintExpr &other) const {
  if (exprKind != other.exprKind)
    return false;
  switch (exprKind) {
  case Kind::Is:
    return expectedAttr == other.expectedAttr;
  case Kind::Any:
    return true;
  case Kind::AnyOf:
  case Kind::AllOf:
    return childExprs == other.childExprs;
  case Kind::Parametric:
    return baseName == other.baseName && childExprs == other.childExprs;
  case Kind::Var:
    return variableId == other.variableId;
  }
  return false;
}

std::optional<unsigned> ConstraintExpr::maxVarId() const {
  std::optional<unsigned> result;
  if (exprKind == Kind::Var)
    result = variableId;
  for (const ConstraintExpr &c : childExprs)
    if (auto sub = c.maxVarId())
      result = result ? std::max(*result, *sub) : *sub;
  return result;
}

bool sidekick::evalConstraint(const ConstraintExpr &expr, const Attribute &attr,
                              BindingEnv &env) {
  assert(attr && "cannot evaluate a constraint against a null attribute");
  size_t mark = env.mark();
  bool ok = false;
  switch (expr.kind()) {
  case ConstraintExpr::Kind::Is:
    ok = attr == expr.expected();
    break;
  case ConstraintExpr::Kind::Any:
    ok = true;
    break;
  case ConstraintExpr::Kind::AnyOf:
    // Left to right; the first success commits its bindings.
    for (const ConstraintExpr &branch : expr.children()) {
      if (evalConstraint(branch, attr, env)) {
        ok = true;
        break;
      }
    }
    break;
  case ConstraintExpr::Kind::AllOf:
    ok = true;
    for (const ConstraintExpr &element : expr.children()) {
      if (!evalConstraint(element, attr, env)) {
        ok = false;
        break;
      }
    }
    break;
  case ConstraintExpr::Kind::Parametric: {
    AttrBaseView view = attr.baseView();
    if (!view.valid || view.base != expr.base() ||
        view.parameters.size() != expr.children().size())
      break;
    ok = true;
    for (size_t i = 0; i < view.parameters.size(); ++i) {
      if (!evalConstraint(expr.children()[i], view.parameters[i], env)) {
        ok = false;
        break;
      }
    }
    break;
  }
  case ConstraintExpr::Kind::Var:
    if (env.isBound(expr.varId())) {
      ok = env.binding(expr.varId()) == attr;
    } else {
      env.bind(expr.varId(), attr);
      ok = true;
    }
    break;
  }
  if (!ok)
    env.rollbackTo(mark);
  return ok;
}
