//===- Printer.h - Canonical textual output --------------------*- C++ -*-===//
//
// Part of the Sidekick project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#ifndef SIDEKICK_PRINTER_H
#define SIDEKICK_PRINTER_H

#include "sidekick/Dialect.h"
#include "sidekick/IR.h"

#include <string>

namespace sidekick {

/// Prints `root` in the canonical generic form, ending with a newline. Values
/// are numbered %0, %1, ... in definition preorder, restarting inside each
/// region of an operation whose registered definition is isolated (which is
/// why the Context is needed); blocks are labeled ^bb0, ^bb1, ... per region.
/// Attribute maps print with keys in sorted order; nesting indents by two
/// spaces per region depth. The output of a parsed module reparses to a
/// structurally equal module under the same Context.
std::string printModule(const Operation &root, const Context &ctx);

/// Prints one attribute in canonical form (no trailing newline).
std::string printAttribute(const Attribute &attr);

} // namespace sidekick

#endif // SIDEKICK_PRINTER_H
