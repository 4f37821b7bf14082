//===- Passes.cpp - Bundled passes and the pipeline runner ----------------===//
//
// Part of the Sidekick project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "sidekick/Passes.h"

#include "sidekick/Verifier.h"

#include <algorithm>
#include <cassert>
#include <utility>

using namespace sidekick;

RewriteResult sidekick::runConstantFolding(Operation &root) {
  std::vector<Pattern> patterns;
  patterns.push_back(patternFoldAddi());
  size_t cap = std::max<size_t>(1, 10 * countOps(root));
  return applyPatternsGreedily(root, patterns, cap);
}

RewriteResult sidekick::runDeadCodeElimination(Operation &root,
                                               const Context &ctx) {
  RewriteResult result;
  result.converged = true;
  for (;;) {
    ++result.iterations;
    std::vector<Operation *> candidates;
    root.walk([&](Operation &op) {
      if (&op == &root)
        return;
      const OpDefinition *def = ctx.lookupOp(op.name());
      if (!def || !def->traits.pure || def->traits.terminator)
        return;
      for (const std::unique_ptr<OpResult> &res : op.results())
        if (res->hasUses())
          return;
      candidates.push_back(&op);
    });

    // Erase users before definers: in the common defs-before-uses layout,
    // reverse preorder lets a whole dead chain go in one round.
    size_t erasedCount = 0;
    for (auto it = candidates.rbegin(); it != candidates.rend(); ++it) {
      Operation &op = **it;
      bool unused = true;
      for (const std::unique_ptr<OpResult> &res : op.results())
        if (res->hasUses())
          unused = false;
      if (!unused)
        continue;
      Status status = eraseOperation(op);
      assert(status.succeeded() && "erasing an unused operation");
      (void)status;
      ++erasedCount;
    }
    if (erasedCount == 0)
      break;
    result.changed = true;
  }
  return result;
}

PipelineResult sidekick::runPassPipeline(Operation &root,
                                         const std::vector<std::string> &passes,
                                         const Context &ctx) {
  PipelineResult result;
  for (const std::string &name : passes) {
    if (name != "constant-fold" && name != "dce") {
      result.status = PipelineStatus::UnknownPass;
      Diagnostic diag;
      diag.message = "unknown pass '" + name + "'";
      result.diagnostics.push_back(std::move(diag));
      return result;
    }
  }

  for (size_t i = 0; i < passes.size(); ++i) {
    RewriteResult passResult = passes[i] == "constant-fold"
                                   ? runConstantFolding(root)
                                   : runDeadCodeElimination(root, ctx);
    result.rewrite.changed |= passResult.changed;
    result.rewrite.converged &= passResult.converged;
    result.rewrite.iterations += passResult.iterations;

    if (i + 1 < passes.size()) {
      std::vector<Diagnostic> errors = verify(root, ctx);
      if (!errors.empty()) {
        result.status = PipelineStatus::VerificationFailed;
        result.diagnostics = std::move(errors);
        return result;
      }
    }
  }
  return result;
}
