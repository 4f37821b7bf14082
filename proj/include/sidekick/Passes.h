//===- Passes.h - Bundled passes and the pipeline runner --------*- C++ -*-===//
//
// Part of the Sidekick project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#ifndef SIDEKICK_PASSES_H
#define SIDEKICK_PASSES_H

#include "sidekick/Dialect.h"
#include "sidekick/Rewrite.h"
#include "sidekick/Support.h"

#include <string>
#include <vector>

namespace sidekick {

/// Greedily folds constant integer additions ("constant-fold"). The sweep
/// cap is 10x the initial operation count.
RewriteResult runConstantFolding(Operation &root);

/// Erases operations whose definition carries the pure trait and whose
/// results are all unused, iterating to a fixpoint ("dce"). Terminators and
/// unregistered operations are never erased.
RewriteResult runDeadCodeElimination(Operation &root, const Context &ctx);

enum class PipelineStatus {
  Success,
  UnknownPass,
  VerificationFailed,
};

struct PipelineResult {
  PipelineStatus status = PipelineStatus::Success;
  /// Aggregate over the executed passes: changed is their disjunction,
  /// converged their conjunction, iterations their sum.
  RewriteResult rewrite{false, true, 0};
  /// Failure details; empty on success.
  std::vector<Diagnostic> diagnostics;
};

/// Runs the named passes ("constant-fold", "dce") in order, verifying the IR
/// between passes. Unknown names are rejected before anything runs.
PipelineResult runPassPipeline(Operation &root,
                               const std::vector<std::string> &passes,
                               const Context &ctx);

} // namespace sidekick

#endif // SIDEKICK_PASSES_H
