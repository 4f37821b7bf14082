//===- BuiltinDialects.cpp - Native dialect definitions --------------------===//
//
// Part of the Sidekick project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//
//
// The definitions below are written in the same shape the IRDL loader
// produces: wherever several slots share an equality variable, the first
// slot (in operand, result, attribute evaluation order) carries the
// underlying constraint conjoined with the Var, and later slots carry the
// bare Var. That keeps export -> load an exact structural round trip.
//
//===----------------------------------------------------------------------===//

#include "sidekick/BuiltinDialects.h"

using namespace sidekick;

Attribute sidekick::makeIntegerAttr(int64_t value, unsigned width) {
  return Attribute::integer(value, Attribute::integerType(width));
}

Attribute sidekick::makeIndexAttr(int64_t value) {
  return Attribute::integer(value, Attribute::indexType());
}

namespace {

ConstraintExpr anyIntegerOrIndexType() {
  return ConstraintExpr::anyOf(
      {ConstraintExpr::parametric("builtin.integer_type", {}),
       ConstraintExpr::is(Attribute::indexType())});
}

ConstraintExpr isI1() { return ConstraintExpr::is(Attribute::integerType(1)); }

OpDefinition moduleOp() {
  OpDefinition def;
  def.name = "builtin.module";
  def.operandConstraints.emplace();
  def.resultConstraints.emplace();
  def.regionCount = 1;
  def.traits.isolated = true;
  return def;
}

OpDefinition funcOp() {
  OpDefinition def;
  def.name = "func.func";
  def.operandConstraints.emplace();
  def.resultConstraints.emplace();
  def.attributeConstraints.emplace(
      "function_type", ConstraintExpr::parametric("builtin.function_type", {}));
  def.attributeConstraints.emplace(
      "sym_name", ConstraintExpr::parametric("builtin.string_attr", {}));
  def.regionCount = 1;
  def.traits.isolated = true;
  return def;
}

OpDefinition funcReturnOp() {
  OpDefinition def;
  def.name = "func.return";
  // Operand arity and types depend on the enclosing function; the verifier
  // checks them against its function_type.
  def.resultConstraints.emplace();
  def.traits.terminator = true;
  return def;
}

OpDefinition arithConstantOp() {
  OpDefinition def;
  def.name = "arith.constant";
  def.operandConstraints.emplace();
  def.resultConstraints.emplace();
  def.resultConstraints->push_back(ConstraintExpr::var(0));
  // The literal's type must equal the result type, shared through var 0.
  def.attributeConstraints.emplace(
      "value",
      ConstraintExpr::anyOf(
          {ConstraintExpr::parametric("builtin.integer_attr",
                                      {ConstraintExpr::var(0)}),
           ConstraintExpr::parametric("builtin.float_attr",
                                      {ConstraintExpr::var(0)})}));
  def.traits.pure = true;
  return def;
}

OpDefinition arithAddiOp() {
  OpDefinition def;
  def.name = "arith.addi";
  def.operandConstraints.emplace();
  def.operandConstraints->push_back(ConstraintExpr::allOf(
      {anyIntegerOrIndexType(), ConstraintExpr::var(0)}));
  def.operandConstraints->push_back(ConstraintExpr::var(0));
  def.resultConstraints.emplace();
  def.resultConstraints->push_back(ConstraintExpr::var(0));
  def.traits.pure = true;
  return def;
}

OpDefinition scfIfOp() {
  OpDefinition def;
  def.name = "scf.if";
  def.operandConstraints.emplace();
  def.operandConstraints->push_back(isI1());
  // Result count is free; then/else regions are checked for shape only.
  def.regionCount = 2;
  return def;
}

OpDefinition scfForOp() {
  OpDefinition def;
  def.name = "scf.for";
  def.operandConstraints.emplace();
  for (int i = 0; i < 3; ++i)
    def.operandConstraints->push_back(
        ConstraintExpr::is(Attribute::indexType()));
  def.resultConstraints.emplace();
  def.regionCount = 1;
  return def;
}

OpDefinition scfYieldOp() {
  OpDefinition def;
  def.name = "scf.yield";
  def.resultConstraints.emplace();
  def.traits.terminator = true;
  return def;
}

OpDefinition cfBrOp() {
  OpDefinition def;
  def.name = "cf.br";
  def.operandConstraints.emplace();
  def.resultConstraints.emplace();
  def.successorCount = 1;
  def.traits.terminator = true;
  return def;
}

OpDefinition cfCondBrOp() {
  OpDefinition def;
  def.name = "cf.cond_br";
  def.operandConstraints.emplace();
  def.operandConstraints->push_back(isI1());
  def.resultConstraints.emplace();
  def.successorCount = 2;
  def.traits.terminator = true;
  return def;
}

} // namespace

Status sidekick::registerBuiltinCoreDialect(Context &ctx) {
  DialectDefinition d;
  d.name = "builtin";
  d.operations.push_back(moduleOp());
  return ctx.registerDialect(std::move(d));
}

Status sidekick::registerFuncDialect(Context &ctx) {
  DialectDefinition d;
  d.name = "func";
  d.operations.push_back(funcOp());
  d.operations.push_back(funcReturnOp());
  return ctx.registerDialect(std::move(d));
}

Status sidekick::registerArithDialect(Context &ctx) {
  DialectDefinition d;
  d.name = "arith";
  d.operations.push_back(arithConstantOp());
  d.operations.push_back(arithAddiOp());
  return ctx.registerDialect(std::move(d));
}

Status sidekick::registerScfDialect(Context &ctx) {
  DialectDefinition d;
  d.name = "scf";
  d.operations.push_back(scfIfOp());
  d.operations.push_back(scfForOp());
  d.operations.push_back(scfYieldOp());
  return ctx.registerDialect(std::move(d));
}

Status sidekick::registerCfDialect(Context &ctx) {
  DialectDefinition d;
  d.name = "cf";
  d.operations.push_back(cfBrOp());
  d.operations.push_back(cfCondBrOp());
  return ctx.registerDialect(std::move(d));
}

Status sidekick::registerBuiltinDialects(Context &ctx) {
  if (Status s = registerBuiltinCoreDialect(ctx); s.failed())
    return s;
  if (Status s = registerFuncDialect(ctx); s.failed())
    return s;
  if (Status s = registerArithDialect(ctx); s.failed())
    return s;
  if (Status s = registerScfDialect(ctx); s.failed())
    return s;
  return registerCfDialect(ctx);
}
