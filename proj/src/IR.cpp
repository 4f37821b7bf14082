//===- IR.cpp - IR object model and mutations -----------------------------===//
//
// Part of the Sidekick project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "sidekick/IR.h"

#include <algorithm>
#include <unordered_map>

using namespace sidekick;

//===----------------------------------------------------------------------===//
// Value
//===----------------------------------------------------------------------===//

size_t Value::replaceAllUsesWith(Value &replacement) {
  assert(&replacement != this && "cannot replace a value with itself");
  size_t count = useList.size();
  for (Use use : useList) {
    use.user->operandList[use.operandIndex] = &replacement;
    replacement.useList.push_back(use);
  }
  useList.clear();
  return count;
}

//===----------------------------------------------------------------------===//
// Operation
//===----------------------------------------------------------------------===//

Operation::Operation(std::string name, AttributeMap attributes)
    : opName(std::move(name)), attrs(std::move(attributes)) {}

OwningOp Operation::create(std::string name, std::vector<Value *> operands,
                           std::vector<Attribute> resultTypes,
                           AttributeMap attributes,
                           std::vector<std::unique_ptr<Region>> regions,
                           std::vector<Block *> successors) {
  size_t dot = name.find('.');
  assert(dot != std::string::npos && dot > 0 && dot + 1 < name.size() &&
         "operation name must be of the form dialect.mnemonic");
  (void)dot;

  OwningOp op(new Operation(std::move(name), std::move(attributes)));
  op->operandList.reserve(operands.size());
  for (unsigned i = 0; i < operands.size(); ++i) {
    Value *v = operands[i];
    assert(v && "null operand");
    op->operandList.push_back(v);
    v->useList.push_back(Use{op.get(), i});
  }
  op->resultList.reserve(resultTypes.size());
  for (unsigned i = 0; i < resultTypes.size(); ++i) {
    Attribute ty = std::move(resultTypes[i]);
    assert(ty && ty.isType() && "result types must be types");
    op->resultList.emplace_back(new OpResult(op.get(), i, std::move(ty)));
  }
  op->regionList = std::move(regions);
  for (auto &r : op->regionList) {
    assert(r && "null region");
    assert(!r->parent && "region already owned by another operation");
    r->parent = op.get();
  }
  op->successorList = std::move(successors);
  return op;
}

Operation::~Operation() {
  dropAllReferences();
#ifndef NDEBUG
  for (auto &r : resultList)
    assert(!r->hasUses() && "destroying an operation whose result has uses");
#endif
}

void Operation::setOperand(unsigned i, Value &value) {
  assert(i < operandList.size());
  Value *old = operandList[i];
  if (old == &value)
    return;
  auto &uses = old->useList;
  uses.erase(std::find(uses.begin(), uses.end(), Use{this, i}));
  operandList[i] = &value;
  value.useList.push_back(Use{this, i});
}

void Operation::dropAllReferences() {
  for (unsigned i = 0; i < operandList.size(); ++i) {
    auto &uses = operandList[i]->useList;
    auto it = std::find(uses.begin(), uses.end(), Use{this, i});
    if (it != uses.end())
      uses.erase(it);
  }
  operandList.clear();
  for (auto &r : regionList)
    r->dropAllReferences();
}

Operation *Operation::parentOp() const {
  return parent ? parent->parentOp() : nullptr;
}

unsigned Operation::indexInBlock() const {
  assert(parent && "detached operation has no block index");
  unsigned i = 0;
  for (const OwningOp &op : parent->ops) {
    if (op.get() == this)
      return i;
    ++i;
  }
  assert(false && "operation not found in its parent block");
  return 0;
}

void Operation::walk(const std::function<void(Operation &)> &fn) {
  fn(*this);
  for (auto &r : regionList)
    for (auto &b : r->blocks())
      for (auto &op : b->operations())
        op->walk(fn);
}

void Operation::walk(const std::function<void(const Operation &)> &fn) const {
  fn(*this);
  for (const auto &r : regionList)
    for (const auto &b : r->blocks())
      for (const auto &op : b->operations())
        static_cast<const Operation &>(*op).walk(fn);
}

//===----------------------------------------------------------------------===//
// Block
//===----------------------------------------------------------------------===//

Block::~Block() = default; // references were dropped by the owning region

Operation *Block::parentOp() const {
  return parent ? parent->parentOp() : nullptr;
}

BlockArgument &Block::addArgument(Attribute type) {
  assert(type && type.isType() && "block argument type must be a type");
  argumentList.emplace_back(
      new BlockArgument(this, unsigned(argumentList.size()), std::move(type)));
  return *argumentList.back();
}

//===----------------------------------------------------------------------===//
// Region
//===----------------------------------------------------------------------===//

Region::~Region() {
  // Sever every def-use link first so blocks may be destroyed in any order
  // even with cross-block or cross-region uses.
  dropAllReferences();
}

Block &Region::emplaceBlock() {
  blockList.emplace_back(new Block());
  blockList.back()->parent = this;
  return *blockList.back();
}

unsigned Region::blockIndex(const Block &block) const {
  for (unsigned i = 0; i < blockList.size(); ++i)
    if (blockList[i].get() == &block)
      return i;
  assert(false && "block not in region");
  return 0;
}

void Region::dropAllReferences() {
  for (auto &b : blockList)
    for (auto &op : b->ops)
      op->dropAllReferences();
}

//===----------------------------------------------------------------------===//
// Insertion and erasure
//===----------------------------------------------------------------------===//

namespace {

Status checkInsertable(const OwningOp &op) {
  if (!op)
    return Status::error("cannot insert a null operation");
  if (op->isAttached())
    return Status::error("operation '" + op->name() + "' is already attached");
  return Status::success();
}

} // namespace

Status sidekick::insertAtFront(Block &block, OwningOp &op) {
  if (Status s = checkInsertable(op); s.failed())
    return s;
  if (!block.parentRegion())
    return Status::error("anchor block is detached");
  Operation *raw = op.get();
  auto it = block.ops.insert(block.ops.begin(), std::move(op));
  raw->parent = &block;
  raw->positionInParent = it;
  return Status::success();
}

Status sidekick::insertAtBack(Block &block, OwningOp &op) {
  if (Status s = checkInsertable(op); s.failed())
    return s;
  if (!block.parentRegion())
    return Status::error("anchor block is detached");
  Operation *raw = op.get();
  auto it = block.ops.insert(block.ops.end(), std::move(op));
  raw->parent = &block;
  raw->positionInParent = it;
  return Status::success();
}

Status sidekick::insertBefore(Operation &anchor, OwningOp &op) {
  if (Status s = checkInsertable(op); s.failed())
    return s;
  if (!anchor.isAttached())
    return Status::error("anchor operation '" + anchor.name() +
                         "' is detached");
  Block &block = *anchor.parentBlock();
  Operation *raw = op.get();
  auto it = block.ops.insert(anchor.positionInParent, std::move(op));
  raw->parent = &block;
  raw->positionInParent = it;
  return Status::success();
}

Status sidekick::insertAfter(Operation &anchor, OwningOp &op) {
  if (Status s = checkInsertable(op); s.failed())
    return s;
  if (!anchor.isAttached())
    return Status::error("anchor operation '" + anchor.name() +
                         "' is detached");
  Block &block = *anchor.parentBlock();
  Operation *raw = op.get();
  auto it = block.ops.insert(std::next(anchor.positionInParent), std::move(op));
  raw->parent = &block;
  raw->positionInParent = it;
  return Status::success();
}

Status sidekick::eraseOperation(Operation &op) {
  if (!op.isAttached())
    return Status::error("cannot erase detached operation '" + op.name() + "'");
  for (unsigned i = 0; i < op.numResults(); ++i) {
    const OpResult &res = op.result(i);
    if (res.hasUses()) {
      const Use &use = res.uses().front();
      return Status::error("cannot erase '" + op.name() + "': result " +
                           std::to_string(i) + " has " +
                           std::to_string(res.uses().size()) +
                           " use(s), first user '" + use.user->name() + "'");
    }
  }
  op.dropAllReferences();
  Block &block = *op.parentBlock();
  block.ops.erase(op.positionInParent); // destroys the operation
  return Status::success();
}

//===----------------------------------------------------------------------===//
// Structural equality
//===----------------------------------------------------------------------===//

namespace {

struct Matcher {
  std::unordered_map<const Value *, const Value *> valueMap;
  std::unordered_map<const Block *, const Block *> blockMap;

  // Phase 1: shapes, names, attributes, types; registers the bijections.
  bool matchShape(const Operation &a, const Operation &b) {
    if (a.name() != b.name() || a.numOperands() != b.numOperands() ||
        a.numResults() != b.numResults() ||
        a.numRegions() != b.numRegions() ||
        a.numSuccessors() != b.numSuccessors() ||
        a.attributes() != b.attributes())
      return false;
    for (unsigned i = 0; i < a.numResults(); ++i) {
      if (a.result(i).type() != b.result(i).type())
        return false;
      valueMap.emplace(&a.result(i), &b.result(i));
    }
    for (unsigned i = 0; i < a.numRegions(); ++i)
      if (!matchShape(a.region(i), b.region(i)))
        return false;
    return true;
  }

  bool matchShape(const Region &a, const Region &b) {
    if (a.blocks().size() != b.blocks().size())
      return false;
    for (size_t i = 0; i < a.blocks().size(); ++i) {
      const Block &ba = *a.blocks()[i], &bb = *b.blocks()[i];
      blockMap.emplace(&ba, &bb);
      if (ba.numArguments() != bb.numArguments() ||
          ba.operations().size() != bb.operations().size())
        return false;
      for (unsigned j = 0; j < ba.numArguments(); ++j) {
        if (ba.argument(j).type() != bb.argument(j).type())
          return false;
        valueMap.emplace(&ba.argument(j), &bb.argument(j));
      }
      auto ita = ba.operations().begin();
      auto itb = bb.operations().begin();
      for (; ita != ba.operations().end(); ++ita, ++itb)
        if (!matchShape(**ita, **itb))
          return false;
    }
    return true;
  }

  // Phase 2: operand and successor links must respect the bijections.
  bool matchLinks(const Operation &a, const Operation &b) {
    for (unsigned i = 0; i < a.numOperands(); ++i) {
      const Value *va = &a.operand(i), *vb = &b.operand(i);
      auto it = valueMap.find(va);
      // Values defined outside the compared roots correspond only to
      // themselves.
      if (it == valueMap.end() ? va != vb : it->second != vb)
        return false;
    }
    for (unsigned i = 0; i < a.numSuccessors(); ++i) {
      const Block *sa = a.successor(i), *sb = b.successor(i);
      if (!sa || !sb) {
        if (sa != sb)
          return false;
        continue;
      }
      auto it = blockMap.find(sa);
      if (it == blockMap.end() ? sa != sb : it->second != sb)
        return false;
    }
    for (unsigned i = 0; i < a.numRegions(); ++i) {
      const Region &ra = a.region(i), &rb = b.region(i);
      for (size_t j = 0; j < ra.blocks().size(); ++j) {
        auto ita = ra.blocks()[j]->operations().begin();
        auto itb = rb.blocks()[j]->operations().begin();
        for (; ita != ra.blocks()[j]->operations().end(); ++ita, ++itb)
          if (!matchLinks(**ita, **itb))
            return false;
      }
    }
    return true;
  }
};

} // namespace

bool sidekick::structuralEquals(const Operation &a, const Operation &b) {
  if (&a == &b)
    return true;
  Matcher m;
  return m.matchShape(a, b) && m.matchLinks(a, b);
}

size_t sidekick::countOps(const Operation &op) {
  size_t n = 0;
  op.walk([&](const Operation &) { ++n; });
  return n;
}
