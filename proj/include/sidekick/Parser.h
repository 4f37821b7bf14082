//===- Parser.h - Textual format parsing ------------------------*- C++ -*-===//
//
// Part of the Sidekick project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#ifndef SIDEKICK_PARSER_H
#define SIDEKICK_PARSER_H

#include "sidekick/Dialect.h"
#include "sidekick/IR.h"
#include "sidekick/Support.h"

#include <string_view>

namespace sidekick {

struct ParseOptions {
  /// When false, an operation name without a registered definition is a parse
  /// error.
  bool allowUnregistered = false;
};

/// Parses a module in the generic operation format. Top-level input that is
/// not a single `builtin.module` operation is wrapped in an implicit one. SSA
/// uses resolve against prior definitions in the enclosing isolated scope;
/// block labels may be referenced before they are defined and are resolved at
/// the end of their region. The returned diagnostic of a failed parse carries
/// a 1-based line/column. The Context is consulted for registered attribute
/// definitions (parameter bodies parse recursively; unregistered bodies are
/// captured verbatim) and, per `opts`, registered operations.
FailureOr<OwningOp> parseModule(std::string_view source, const Context &ctx,
                                ParseOptions opts = {});

/// Parses a single attribute (or type) covering the entire input.
FailureOr<Attribute> parseAttribute(std::string_view source,
                                    const Context &ctx);

} // namespace sidekick

#endif // SIDEKICK_PARSER_H
