//===- Rewrite.h - Pattern abstraction and greedy driver --------*- C++ -*-===//
//
// Part of the Sidekick project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#ifndef SIDEKICK_REWRITE_H
#define SIDEKICK_REWRITE_H

#include "sidekick/IR.h"
#include "sidekick/Support.h"

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace sidekick {

class Rewriter;

/// One rewrite rule. `matchAndRewrite` returns true after changing the IR
/// through the rewriter, and false — leaving the IR untouched — otherwise.
struct Pattern {
  std::string name;
  std::function<bool(Operation &, Rewriter &)> matchAndRewrite;
};

struct RewriteResult {
  bool changed = false;
  /// True when a final full sweep applied no pattern (rather than stopping
  /// at the iteration cap).
  bool converged = false;
  /// Number of sweeps performed.
  size_t iterations = 0;
};

/// Mutation handle passed to patterns. Routing all changes through it keeps
/// the driver's worklist in sync: inserted operations and the users of
/// replaced values are re-enqueued, erased operations are dropped.
class Rewriter {
public:
  /// Inserts a detached operation and returns it.
  Operation &insertBefore(Operation &anchor, OwningOp op);
  Operation &insertAfter(Operation &anchor, OwningOp op);
  Operation &insertAtEnd(Block &block, OwningOp op);

  /// Rewrites every use of `from` (which must differ from `to`) and
  /// re-enqueues the affected user operations. Returns the number of uses
  /// rewritten.
  size_t replaceAllUses(Value &from, Value &to);

  /// Erases an attached operation whose results are all unused.
  Status erase(Operation &op);

private:
  explicit Rewriter(class RewriteWorklist &worklist) : worklist(worklist) {}

  RewriteWorklist &worklist;

  friend RewriteResult applyPatternsGreedily(Operation &,
                                             const std::vector<Pattern> &,
                                             size_t);
};

/// Greedy worklist driver. Each sweep seeds the worklist with every operation
/// under `root` in preorder and drains it LIFO, trying the patterns in list
/// order and keeping the first that applies. Sweeps repeat until one applies
/// no pattern (converged) or `maxIterations` sweeps have run. `maxIterations`
/// must be at least 1.
RewriteResult applyPatternsGreedily(Operation &root,
                                    const std::vector<Pattern> &patterns,
                                    size_t maxIterations);

/// Folds arith.addi over two arith.constant integer operands of equal type
/// into one arith.constant holding the two's-complement sum, erasing the
/// addi and any operand constant left without uses.
Pattern patternFoldAddi();

} // namespace sidekick

#endif // SIDEKICK_REWRITE_H
