//===- IRDL.h - Dialect definitions as IR programs -------------*- C++ -*-===//
//
// Part of the Sidekick project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//
//
// The irdl dialect expresses dialect definitions as ordinary IR: each SSA
// value stands for an attribute constraint, and sharing a value between
// constraint slots expresses equality between the attributes it matches.
// This header registers the dialect itself and converts between irdl modules
// and in-memory DialectDefinitions in both directions.
//
//===----------------------------------------------------------------------===//

#ifndef SIDEKICK_IRDL_H
#define SIDEKICK_IRDL_H

#include "sidekick/Dialect.h"
#include "sidekick/IR.h"
#include "sidekick/Support.h"

#include <vector>

namespace sidekick {

/// Registers the irdl dialect: irdl.dialect with one irdl.type /
/// irdl.attribute / irdl.operation region per member, constraint operations
/// (irdl.is, irdl.any, irdl.any_of, irdl.all_of, irdl.parametric) producing
/// `!irdl.attribute` values, and clause operations (irdl.parameters,
/// irdl.operands, irdl.results, irdl.attributes) consuming them.
Status registerIRDLDialect(Context &ctx);

/// Builds and registers one DialectDefinition per irdl.dialect operation in
/// `module`, folding each member's SSA constraint graph into ConstraintExpr
/// trees (a multiply-used value becomes a shared Var id). Expects IR that
/// already verifies under the irdl dialect. Returns the registered
/// definitions in order. On failure, dialects registered before the failing
/// one remain registered.
FailureOr<std::vector<const DialectDefinition *>>
loadDialectsFromIRDL(const Operation &module, Context &ctx);

/// Emits `dialect` as a builtin.module holding one irdl.dialect operation.
/// Shared Var ids become multiply-used SSA values; clauses whose constraint
/// list is absent are omitted, and region/successor counts and traits ride
/// along as attributes on the member operation. The output parses, verifies,
/// and loads back to a definition that verifies instances identically.
OwningOp exportDialectToIRDL(const DialectDefinition &dialect);

} // namespace sidekick

#endif // SIDEKICK_IRDL_H
