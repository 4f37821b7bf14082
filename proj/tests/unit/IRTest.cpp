//===- IRTest.cpp - IR object model and def-use invariants -----------------===//
//
// Part of the Sidekick project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "TestHelpers.h"
#include "sidekick/IR.h"

#include "doctest.h"

#include <algorithm>
#include <random>
#include <string>
#include <vector>

using namespace sidekick;
using namespace sidekick::test;

namespace {

std::vector<std::string> walkNames(const Operation &root) {
  std::vector<std::string> names;
  root.walk([&](const Operation &op) { names.push_back(op.name()); });
  return names;
}

/// Recomputes def-use consistency from scratch: every operand slot appears
/// exactly once in its value's use list, and every recorded use points back at
/// a slot holding that value.
void checkUseListsConsistent(Operation &root) {
  std::vector<Value *> values;
  size_t operandSlots = 0;
  root.walk([&](Operation &op) {
    operandSlots += op.numOperands();
    for (const auto &result : op.results())
      values.push_back(result.get());
    for (unsigned r = 0; r < op.numRegions(); ++r)
      for (const auto &block : op.region(r).blocks())
        for (const auto &arg : block->arguments())
          values.push_back(arg.get());
  });

  size_t recordedUses = 0;
  for (Value *value : values) {
    recordedUses += value->uses().size();
    for (const Use &use : value->uses()) {
      REQUIRE(use.operandIndex < use.user->numOperands());
      CHECK(&use.user->operand(use.operandIndex) == value);
    }
  }
  CHECK(recordedUses == operandSlots);

  root.walk([&](Operation &op) {
    for (unsigned i = 0; i < op.numOperands(); ++i) {
      Use expected{&op, i};
      const std::vector<Use> &uses = op.operand(i).uses();
      CHECK(std::count(uses.begin(), uses.end(), expected) == 1);
    }
  });
}

} // namespace

TEST_CASE("operation creation wires results and operands") {
  OwningOp module = makeModule();
  Block &body = entryBlock(*module);
  Operation &c = append(body, makeConstant(5, 32));

  CHECK(c.name() == "arith.constant");
  CHECK(c.dialectName() == "arith");
  CHECK(c.numResults() == 1);
  CHECK(&c.result(0).owner() == &c);
  CHECK(c.result(0).index() == 0);
  CHECK(c.result(0).valueKind() == Value::Kind::OpResult);
  CHECK(c.result(0).type() == Attribute::integerType(32));
  CHECK(c.attribute("value") == Attribute::integer(5, Attribute::integerType(32)));
  CHECK(!c.attribute("missing"));

  Operation &add =
      append(body, makeAddi(c.result(0), c.result(0), Attribute::integerType(32)));
  CHECK(add.numOperands() == 2);
  CHECK(&add.operand(0) == &c.result(0));
  CHECK(&add.operand(1) == &c.result(0));
  REQUIRE(c.result(0).uses().size() == 2);
  CHECK(c.result(0).uses()[0] == Use{&add, 0});
  CHECK(c.result(0).uses()[1] == Use{&add, 1});

  BlockArgument &arg = body.addArgument(Attribute::integerType(32));
  CHECK(&arg.owner() == &body);
  CHECK(arg.index() == 0);
  CHECK(arg.valueKind() == Value::Kind::BlockArgument);
}

TEST_CASE("insertion anchors and ordering") {
  OwningOp module = makeModule();
  Block &body = entryBlock(*module);
  Operation &b = append(body, makeConstant(2, 32));
  CHECK(b.isAttached());
  CHECK(b.parentBlock() == &body);
  CHECK(b.parentOp() == module.get());
  CHECK(body.parentOp() == module.get());
  CHECK(module->region(0).blockIndex(body) == 0);
  CHECK(module->parentBlock() == nullptr);
  CHECK(module->parentOp() == nullptr);

  OwningOp aOwned = makeConstant(1, 32);
  Operation &a = *aOwned;
  REQUIRE(insertAtFront(body, aOwned).succeeded());
  CHECK(aOwned == nullptr);

  OwningOp dOwned = makeConstant(4, 32);
  Operation &d = *dOwned;
  REQUIRE(insertAtBack(body, dOwned).succeeded());
  OwningOp cOwned = makeConstant(3, 32);
  Operation &c = *cOwned;
  REQUIRE(insertBefore(d, cOwned).succeeded());
  OwningOp eOwned = makeConstant(5, 32);
  Operation &e = *eOwned;
  REQUIRE(insertAfter(d, eOwned).succeeded());

  CHECK(body.size() == 5);
  CHECK(a.indexInBlock() == 0);
  CHECK(b.indexInBlock() == 1);
  CHECK(c.indexInBlock() == 2);
  CHECK(d.indexInBlock() == 3);
  CHECK(e.indexInBlock() == 4);
  CHECK(&body.front() == &a);
  CHECK(&body.back() == &e);

  // A detached anchor is rejected and ownership stays with the caller.
  OwningOp detachedAnchor = makeConstant(9, 32);
  OwningOp toInsert = makeConstant(10, 32);
  CHECK(insertBefore(*detachedAnchor, toInsert).failed());
  CHECK(toInsert != nullptr);
  CHECK(insertAfter(*detachedAnchor, toInsert).failed());
  CHECK(toInsert != nullptr);
}

TEST_CASE("walk visits parents before children in block order") {
  OwningOp module = makeModule();
  Block &body = entryBlock(*module);
  Operation &cond = append(body, makeConstant(1, 1));

  std::vector<std::unique_ptr<Region>> regions;
  regions.push_back(std::make_unique<Region>());
  regions.push_back(std::make_unique<Region>());
  OwningOp ifOwned = Operation::create("scf.if", {&cond.result(0)}, {}, {},
                                       std::move(regions));
  Block &thenBlock = ifOwned->region(0).emplaceBlock();
  Block &elseBlock = ifOwned->region(1).emplaceBlock();
  append(thenBlock, Operation::create("scf.yield"));
  append(elseBlock, Operation::create("scf.yield"));
  Operation &ifOp = append(body, std::move(ifOwned));

  CHECK(walkNames(ifOp) ==
        std::vector<std::string>{"scf.if", "scf.yield", "scf.yield"});
  CHECK(walkNames(*module) ==
        std::vector<std::string>{"builtin.module", "arith.constant", "scf.if",
                                 "scf.yield", "scf.yield"});
  CHECK(countOps(*module) == 5);
  CHECK(countOps(ifOp) == 3);

  OwningOp flat = makeModule();
  for (int i = 0; i < 17; ++i)
    append(entryBlock(*flat), makeConstant(i, 32));
  CHECK(countOps(*flat) == 18);
  CHECK(walkNames(*flat).size() == 18);
}

TEST_CASE("setOperand and replaceAllUsesWith maintain use lists") {
  OwningOp module = makeModule();
  Block &body = entryBlock(*module);
  Operation &a = append(body, makeConstant(1, 32));
  Operation &b = append(body, makeConstant(2, 32));
  Operation &add =
      append(body, makeAddi(a.result(0), a.result(0), Attribute::integerType(32)));
  Operation &add2 =
      append(body, makeAddi(a.result(0), b.result(0), Attribute::integerType(32)));

  add.setOperand(1, b.result(0));
  CHECK(&add.operand(1) == &b.result(0));
  CHECK(a.result(0).uses().size() == 2);
  CHECK(b.result(0).uses().size() == 2);
  checkUseListsConsistent(*module);

  size_t rewritten = a.result(0).replaceAllUsesWith(b.result(0));
  CHECK(rewritten == 2);
  CHECK(!a.result(0).hasUses());
  CHECK(b.result(0).uses().size() == 4);
  CHECK(&add.operand(0) == &b.result(0));
  CHECK(&add2.operand(0) == &b.result(0));
  checkUseListsConsistent(*module);

  size_t none = a.result(0).replaceAllUsesWith(b.result(0));
  CHECK(none == 0);
}

TEST_CASE("erase rejects operations with remaining uses") {
  OwningOp module = makeModule();
  Block &body = entryBlock(*module);
  Operation &a = append(body, makeConstant(1, 32));
  Operation &b = append(body, makeConstant(2, 32));
  Operation &add =
      append(body, makeAddi(a.result(0), b.result(0), Attribute::integerType(32)));

  Status blocked = eraseOperation(a);
  CHECK(blocked.failed());
  CHECK(body.size() == 3);
  CHECK(a.isAttached());
  checkUseListsConsistent(*module);

  REQUIRE(eraseOperation(add).succeeded());
  CHECK(body.size() == 2);
  CHECK(!a.result(0).hasUses());
  CHECK(!b.result(0).hasUses());
  REQUIRE(eraseOperation(a).succeeded());
  REQUIRE(eraseOperation(b).succeeded());
  CHECK(body.empty());
  checkUseListsConsistent(*module);
}

TEST_CASE("erasing a region-holding op releases nested uses") {
  OwningOp module = makeModule();
  Block &body = entryBlock(*module);
  Operation &cond = append(body, makeConstant(1, 1));
  std::vector<std::unique_ptr<Region>> regions;
  regions.push_back(std::make_unique<Region>());
  regions.push_back(std::make_unique<Region>());
  OwningOp ifOwned = Operation::create("scf.if", {&cond.result(0)}, {}, {},
                                       std::move(regions));
  ifOwned->region(0).emplaceBlock();
  ifOwned->region(1).emplaceBlock();
  append(ifOwned->region(0).block(0), Operation::create("scf.yield"));
  append(ifOwned->region(1).block(0), Operation::create("scf.yield"));
  Operation &ifOp = append(body, std::move(ifOwned));

  CHECK(cond.result(0).uses().size() == 1);
  REQUIRE(eraseOperation(ifOp).succeeded());
  CHECK(!cond.result(0).hasUses());
  CHECK(body.size() == 1);
}

TEST_CASE("structural equality is shape and content based") {
  auto build = [](int64_t firstValue) {
    OwningOp module = makeModule();
    Block &body = entryBlock(*module);
    Operation &a = append(body, makeConstant(firstValue, 32));
    Operation &b = append(body, makeConstant(2, 32));
    append(body,
           makeAddi(a.result(0), b.result(0), Attribute::integerType(32)));
    return module;
  };

  OwningOp m1 = build(1);
  OwningOp m2 = build(1);
  CHECK(structuralEquals(*m1, *m2));
  CHECK(structuralEquals(*m1, *m1));

  OwningOp differentAttr = build(3);
  CHECK(!structuralEquals(*m1, *differentAttr));

  // Same ops, different wiring: swap the add's operands.
  OwningOp crossed = build(1);
  Operation &add = entryBlock(*crossed).back();
  Value &lhs = add.operand(0);
  Value &rhs = add.operand(1);
  add.setOperand(0, rhs);
  add.setOperand(1, lhs);
  CHECK(!structuralEquals(*m1, *crossed));

  OwningOp extraOp = build(1);
  append(entryBlock(*extraOp), makeConstant(9, 32));
  CHECK(!structuralEquals(*m1, *extraOp));

  OwningOp extraBlock = build(1);
  extraBlock->region(0).emplaceBlock();
  CHECK(!structuralEquals(*m1, *extraBlock));

  OwningOp renamed = makeModule();
  CHECK(!structuralEquals(*m1, *renamed));
  OwningOp differentName = build(1);
  CHECK(!structuralEquals(entryBlock(*m1).front(),
                          entryBlock(*differentName).back()));
}

TEST_CASE("insert then erase restores the original structure") {
  auto build = [] {
    OwningOp module = makeModule();
    Block &body = entryBlock(*module);
    Operation &a = append(body, makeConstant(1, 32));
    append(body, makeAddi(a.result(0), a.result(0), Attribute::integerType(32)));
    return module;
  };
  OwningOp reference = build();
  OwningOp mutated = build();

  OwningOp extra = makeConstant(42, 8);
  Operation &extraRef = *extra;
  REQUIRE(insertBefore(entryBlock(*mutated).back(), extra).succeeded());
  CHECK(!structuralEquals(*reference, *mutated));
  REQUIRE(eraseOperation(extraRef).succeeded());
  CHECK(structuralEquals(*reference, *mutated));
}

TEST_CASE("randomized mutations keep def-use chains consistent") {
  for (unsigned seed : {1u, 7u, 42u, 1234u, 99999u}) {
    std::mt19937 rng(seed);
    OwningOp module = makeModule();
    Block &body = entryBlock(*module);
    body.addArgument(Attribute::integerType(32));

    auto randomValue = [&]() -> Value & {
      std::vector<Value *> values;
      values.push_back(&body.argument(0));
      for (const OwningOp &op : body.operations())
        for (const auto &result : op->results())
          values.push_back(result.get());
      return *values[rng() % values.size()];
    };
    auto randomOp = [&]() -> Operation * {
      if (body.empty())
        return nullptr;
      size_t target = rng() % body.size();
      for (const OwningOp &op : body.operations())
        if (target-- == 0)
          return op.get();
      return nullptr;
    };

    for (int step = 0; step < 200; ++step) {
      switch (rng() % 6) {
      case 0: { // Append a constant.
        append(body, makeConstant(int64_t(rng() % 1000), 32));
        break;
      }
      case 1: { // Insert an add at a random position.
        Value &lhs = randomValue();
        Value &rhs = randomValue();
        OwningOp add = makeAddi(lhs, rhs, Attribute::integerType(32));
        Operation *anchor = randomOp();
        Status status = anchor ? (rng() % 2 ? insertBefore(*anchor, add)
                                            : insertAfter(*anchor, add))
                               : insertAtBack(body, add);
        REQUIRE(status.succeeded());
        break;
      }
      case 2: { // Erase succeeds exactly when no result has uses.
        Operation *op = randomOp();
        if (!op)
          break;
        bool hasUses = false;
        for (const auto &result : op->results())
          hasUses |= result->hasUses();
        size_t sizeBefore = body.size();
        Status status = eraseOperation(*op);
        CHECK(status.succeeded() == !hasUses);
        CHECK(body.size() == (status.succeeded() ? sizeBefore - 1 : sizeBefore));
        break;
      }
      case 3: { // Rewire one operand slot.
        Operation *op = randomOp();
        if (!op || op->numOperands() == 0)
          break;
        op->setOperand(rng() % op->numOperands(), randomValue());
        break;
      }
      case 4: { // Redirect all uses of one value to another.
        Value &from = randomValue();
        Value &to = randomValue();
        if (&from == &to)
          break;
        size_t expected = from.uses().size();
        CHECK(from.replaceAllUsesWith(to) == expected);
        CHECK(!from.hasUses());
        break;
      }
      case 5: { // Front insertion keeps indices coherent.
        OwningOp c = makeConstant(int64_t(rng() % 100), 32);
        REQUIRE(insertAtFront(body, c).succeeded());
        break;
      }
      }
      if (step % 20 == 0)
        checkUseListsConsistent(*module);
    }
    checkUseListsConsistent(*module);

    // Positions reported by the ops match the block order.
    unsigned index = 0;
    for (const OwningOp &op : body.operations())
      CHECK(op->indexInBlock() == index++);
  }
}
