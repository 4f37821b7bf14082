//===- Verifier.h - IR verification ----------------------------*- C++ -*-===//
//
// Part of the Sidekick project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#ifndef SIDEKICK_VERIFIER_H
#define SIDEKICK_VERIFIER_H

#include "sidekick/Dialect.h"
#include "sidekick/IR.h"
#include "sidekick/Support.h"

#include <vector>

namespace sidekick {

/// Checks the tree rooted at `root` and returns every problem found (empty
/// means valid). Covers structural invariants (terminator placement,
/// successor scoping, dominance including isolation boundaries), registered
/// definition conformance (arities, constraints, required attributes), checks
/// specific to individual builtin operations, and attribute instances against
/// registered attribute definitions. Never mutates the IR.
std::vector<Diagnostic> verify(const Operation &root, const Context &ctx);

} // namespace sidekick

#endif // SIDEKICK_VERIFIER_H
