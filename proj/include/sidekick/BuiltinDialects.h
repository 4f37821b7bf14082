//===- BuiltinDialects.h - Natively registered dialects --------*- C++ -*-===//
//
// Part of the Sidekick project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#ifndef SIDEKICK_BUILTINDIALECTS_H
#define SIDEKICK_BUILTINDIALECTS_H

#include "sidekick/Attribute.h"
#include "sidekick/Dialect.h"

namespace sidekick {

/// Registers builtin, func, arith, scf, and cf. Fails if any of them is
/// already present.
Status registerBuiltinDialects(Context &ctx);

// Individual registration, for contexts that need a subset (e.g. comparing a
// natively defined dialect against one reloaded from its exported form).
Status registerBuiltinCoreDialect(Context &ctx); // builtin.module
Status registerFuncDialect(Context &ctx);        // func.func, func.return
Status registerArithDialect(Context &ctx);       // arith.constant, arith.addi
Status registerScfDialect(Context &ctx);         // scf.if, scf.for, scf.yield
Status registerCfDialect(Context &ctx);          // cf.br, cf.cond_br

/// IntegerAttr over iW with the value canonicalized into the width's
/// two's-complement range.
Attribute makeIntegerAttr(int64_t value, unsigned width);

/// IntegerAttr over index (64-bit storage).
Attribute makeIndexAttr(int64_t value);

} // namespace sidekick

#endif // SIDEKICK_BUILTINDIALECTS_H
