//===- Rewrite.cpp - Pattern abstraction and greedy driver ----------------===//
//
// Part of the Sidekick project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "sidekick/Rewrite.h"

#include "sidekick/Attribute.h"

#include <cassert>
#include <unordered_set>
#include <utility>

using namespace sidekick;

namespace sidekick {

/// LIFO stack with a liveness set. Pushing an already-enqueued operation
/// re-enqueues it at the top; its older stack entries become stale and are
/// skipped on pop. Removal just clears liveness, so stale pointers are never
/// dereferenced.
class RewriteWorklist {
public:
  void push(Operation *op) {
    stack.push_back(op);
    live.insert(op);
  }

  void remove(Operation *op) { live.erase(op); }

  Operation *pop() {
    while (!stack.empty()) {
      Operation *op = stack.back();
      stack.pop_back();
      if (live.erase(op) != 0)
        return op;
    }
    return nullptr;
  }

private:
  std::vector<Operation *> stack;
  std::unordered_set<Operation *> live;
};

} // namespace sidekick

//===----------------------------------------------------------------------===//
// Rewriter
//===----------------------------------------------------------------------===//

Operation &Rewriter::insertBefore(Operation &anchor, OwningOp op) {
  Operation &inserted = *op;
  Status status = sidekick::insertBefore(anchor, op);
  assert(status.succeeded() && "inserting a detached operation");
  (void)status;
  worklist.push(&inserted);
  return inserted;
}

Operation &Rewriter::insertAfter(Operation &anchor, OwningOp op) {
  Operation &inserted = *op;
  Status status = sidekick::insertAfter(anchor, op);
  assert(status.succeeded() && "inserting a detached operation");
  (void)status;
  worklist.push(&inserted);
  return inserted;
}

Operation &Rewriter::insertAtEnd(Block &block, OwningOp op) {
  Operation &inserted = *op;
  Status status = insertAtBack(block, op);
  assert(status.succeeded() && "inserting a detached operation");
  (void)status;
  worklist.push(&inserted);
  return inserted;
}

size_t Rewriter::replaceAllUses(Value &from, Value &to) {
  for (const Use &use : from.uses())
    worklist.push(use.user);
  return from.replaceAllUsesWith(to);
}

Status Rewriter::erase(Operation &op) {
  std::vector<Operation *> erased;
  op.walk([&](Operation &nested) { erased.push_back(&nested); });
  Status status = eraseOperation(op);
  if (status.failed())
    return status;
  for (Operation *pointer : erased)
    worklist.remove(pointer);
  return status;
}

//===----------------------------------------------------------------------===//
// Greedy driver
//===----------------------------------------------------------------------===//

RewriteResult sidekick::applyPatternsGreedily(
    Operation &root, const std::vector<Pattern> &patterns,
    size_t maxIterations) {
  assert(maxIterations >= 1 && "the driver needs at least one sweep");

  RewriteResult result;
  RewriteWorklist worklist;
  Rewriter rewriter(worklist);
  while (result.iterations < maxIterations) {
    ++result.iterations;
    root.walk([&](Operation &op) { worklist.push(&op); });
    size_t applied = 0;
    while (Operation *op = worklist.pop()) {
      for (const Pattern &pattern : patterns) {
        // A successful pattern may have erased `op`; leave it immediately.
        if (pattern.matchAndRewrite(*op, rewriter)) {
          ++applied;
          break;
        }
      }
    }
    if (applied == 0) {
      result.converged = true;
      break;
    }
    result.changed = true;
  }
  return result;
}

//===----------------------------------------------------------------------===//
// Constant folding pattern
//===----------------------------------------------------------------------===//

static const IntegerAttrData *constantIntOperand(Value &value) {
  if (value.valueKind() != Value::Kind::OpResult)
    return nullptr;
  Operation &def = static_cast<OpResult &>(value).owner();
  if (def.name() != "arith.constant")
    return nullptr;
  Attribute attr = def.attribute("value");
  return attr ? attr.asInteger() : nullptr;
}

static bool allResultsUnused(const Operation &op) {
  for (const std::unique_ptr<OpResult> &result : op.results())
    if (result->hasUses())
      return false;
  return true;
}

Pattern sidekick::patternFoldAddi() {
  Pattern pattern;
  pattern.name = "fold-addi";
  pattern.matchAndRewrite = [](Operation &op, Rewriter &rewriter) {
    if (op.name() != "arith.addi" || op.numOperands() != 2 ||
        op.numResults() != 1)
      return false;
    const IntegerAttrData *lhs = constantIntOperand(op.operand(0));
    const IntegerAttrData *rhs = constantIntOperand(op.operand(1));
    if (!lhs || !rhs || lhs->type != rhs->type ||
        op.result(0).type() != lhs->type)
      return false;

    // Two's-complement wraparound; Attribute::integer canonicalizes the raw
    // sum into the type's width.
    int64_t sum = int64_t(uint64_t(lhs->value) + uint64_t(rhs->value));
    AttributeMap attrs;
    attrs.emplace("value", Attribute::integer(sum, lhs->type));
    Operation &folded = rewriter.insertBefore(
        op, Operation::create("arith.constant", {}, {op.result(0).type()},
                              std::move(attrs)));

    Operation *lhsDef = &static_cast<OpResult &>(op.operand(0)).owner();
    Operation *rhsDef = &static_cast<OpResult &>(op.operand(1)).owner();
    rewriter.replaceAllUses(op.result(0), folded.result(0));
    Status status = rewriter.erase(op);
    assert(status.succeeded() && "the folded addi has no uses left");
    (void)status;

    if (allResultsUnused(*lhsDef))
      (void)rewriter.erase(*lhsDef);
    if (rhsDef != lhsDef && allResultsUnused(*rhsDef))
      (void)rewriter.erase(*rhsDef);
    return true;
  };
  return pattern;
}
