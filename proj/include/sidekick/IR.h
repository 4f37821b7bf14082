//===- IR.h - Operations, blocks, regions, and values ---------*- C++ -*-===//
//
// Part of the Sidekick project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//
//
// The mutable IR object model. Operations own their result values and their
// regions; regions own blocks; blocks own operations and their arguments.
// Def-use chains are kept bidirectionally consistent by every mutation entry
// point. Identity is pointer identity — the structures are non-copyable and
// never move once created.
//
//===----------------------------------------------------------------------===//

#ifndef SIDEKICK_IR_H
#define SIDEKICK_IR_H

#include "sidekick/Attribute.h"
#include "sidekick/Support.h"

#include <functional>
#include <list>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace sidekick {

class Block;
class Operation;
class Region;

using AttributeMap = std::map<std::string, Attribute, std::less<>>;
using OwningOp = std::unique_ptr<Operation>;

/// One operand slot of one operation.
struct Use {
  Operation *user;
  unsigned operandIndex;

  bool operator==(const Use &o) const {
    return user == o.user && operandIndex == o.operandIndex;
  }
};

/// An SSA value: either an operation result or a block argument. Each value
/// has exactly one definition site; its use list mirrors every operand slot
/// that references it.
class Value {
public:
  enum class Kind { OpResult, BlockArgument };

  Value(const Value &) = delete;
  Value &operator=(const Value &) = delete;
  virtual ~Value() = default;

  Kind valueKind() const { return kind; }
  Attribute type() const { return valueTy; }

  const std::vector<Use> &uses() const { return useList; }
  bool hasUses() const { return !useList.empty(); }

  /// Rewrites every use of this value to use `replacement` and returns the
  /// number of uses rewritten. `replacement` must be a different value.
  size_t replaceAllUsesWith(Value &replacement);

protected:
  Value(Kind kind, Attribute type) : kind(kind), valueTy(std::move(type)) {}

private:
  Kind kind;
  Attribute valueTy;
  std::vector<Use> useList;

  friend class Operation;
};

class OpResult : public Value {
public:
  Operation &owner() const { return *ownerOp; }
  unsigned index() const { return resultIndex; }

private:
  OpResult(Operation *owner, unsigned index, Attribute type)
      : Value(Kind::OpResult, std::move(type)), ownerOp(owner),
        resultIndex(index) {}

  Operation *ownerOp;
  unsigned resultIndex;

  friend class Operation;
};

class BlockArgument : public Value {
public:
  Block &owner() const { return *ownerBlock; }
  unsigned index() const { return argIndex; }

private:
  BlockArgument(Block *owner, unsigned index, Attribute type)
      : Value(Kind::BlockArgument, std::move(type)), ownerBlock(owner),
        argIndex(index) {}

  Block *ownerBlock;
  unsigned argIndex;

  friend class Block;
};

class Region {
public:
  Region() = default;
  Region(const Region &) = delete;
  Region &operator=(const Region &) = delete;
  ~Region();

  Operation *parentOp() const { return parent; }

  Block &emplaceBlock();
  const std::vector<std::unique_ptr<Block>> &blocks() const { return blockList; }
  bool empty() const { return blockList.empty(); }
  unsigned numBlocks() const { return unsigned(blockList.size()); }
  Block &block(unsigned i) const { return *blockList[i]; }
  Block &entry() const { return *blockList.front(); }
  /// Index of `block` within this region; asserts membership.
  unsigned blockIndex(const Block &block) const;

  /// Severs all def-use links of every operation in the region (recursively)
  /// so that blocks can be destroyed in any order.
  void dropAllReferences();

private:
  Operation *parent = nullptr;
  std::vector<std::unique_ptr<Block>> blockList;

  friend class Operation;
};

class Block {
public:
  Block(const Block &) = delete;
  Block &operator=(const Block &) = delete;
  ~Block();

  Region *parentRegion() const { return parent; }
  Operation *parentOp() const;

  BlockArgument &addArgument(Attribute type);
  const std::vector<std::unique_ptr<BlockArgument>> &arguments() const {
    return argumentList;
  }
  unsigned numArguments() const { return unsigned(argumentList.size()); }
  BlockArgument &argument(unsigned i) const { return *argumentList[i]; }

  using OpList = std::list<OwningOp>;
  const OpList &operations() const { return ops; }
  bool empty() const { return ops.empty(); }
  size_t size() const { return ops.size(); }
  Operation &front() const { return *ops.front(); }
  Operation &back() const { return *ops.back(); }

private:
  Block() = default;

  Region *parent = nullptr;
  std::vector<std::unique_ptr<BlockArgument>> argumentList;
  OpList ops;

  friend class Region;
  friend class Operation;
  friend Status insertAtFront(Block &, OwningOp &);
  friend Status insertAtBack(Block &, OwningOp &);
  friend Status insertBefore(Operation &, OwningOp &);
  friend Status insertAfter(Operation &, OwningOp &);
  friend Status eraseOperation(Operation &);
};

class Operation {
public:
  Operation(const Operation &) = delete;
  Operation &operator=(const Operation &) = delete;
  ~Operation();

  /// Builds a detached operation. `name` must be of the form
  /// "dialect.mnemonic"; `resultTypes` must all be types; `regions` entries
  /// must be parentless. Ownership of the regions transfers to the operation.
  static OwningOp create(std::string name, std::vector<Value *> operands = {},
                         std::vector<Attribute> resultTypes = {},
                         AttributeMap attributes = {},
                         std::vector<std::unique_ptr<Region>> regions = {},
                         std::vector<Block *> successors = {});

  const std::string &name() const { return opName; }
  std::string_view dialectName() const {
    return std::string_view(opName).substr(0, opName.find('.'));
  }

  // -- Operands -------------------------------------------------------------
  unsigned numOperands() const { return unsigned(operandList.size()); }
  Value &operand(unsigned i) const { return *operandList[i]; }
  std::span<Value *const> operands() const { return operandList; }
  void setOperand(unsigned i, Value &value);

  // -- Results --------------------------------------------------------------
  unsigned numResults() const { return unsigned(resultList.size()); }
  OpResult &result(unsigned i) const { return *resultList[i]; }
  const std::vector<std::unique_ptr<OpResult>> &results() const {
    return resultList;
  }

  // -- Attributes -------------------------------------------------------------
  const AttributeMap &attributes() const { return attrs; }
  Attribute attribute(std::string_view name) const {
    auto it = attrs.find(name);
    return it == attrs.end() ? Attribute() : it->second;
  }

  // -- Regions ----------------------------------------------------------------
  unsigned numRegions() const { return unsigned(regionList.size()); }
  Region &region(unsigned i) const { return *regionList[i]; }

  // -- Successors ---------------------------------------------------------------
  unsigned numSuccessors() const { return unsigned(successorList.size()); }
  Block *successor(unsigned i) const { return successorList[i]; }
  void setSuccessor(unsigned i, Block &block) { successorList[i] = &block; }
  std::span<Block *const> successors() const { return successorList; }

  // -- Position -----------------------------------------------------------------
  Block *parentBlock() const { return parent; }
  Operation *parentOp() const;
  bool isAttached() const { return parent != nullptr; }
  /// Index of this operation within its block; asserts attachment.
  unsigned indexInBlock() const;

  /// Clears all operand links and, recursively, those of nested operations.
  /// After this the operation (sub)tree can be destroyed in any order.
  void dropAllReferences();

  /// Visits this operation and every nested operation, parents before
  /// children, block order within regions. The callback must not mutate the
  /// tree being walked.
  void walk(const std::function<void(Operation &)> &fn);
  void walk(const std::function<void(const Operation &)> &fn) const;

private:
  Operation(std::string name, AttributeMap attributes);

  std::string opName;
  std::vector<Value *> operandList;
  std::vector<std::unique_ptr<OpResult>> resultList;
  AttributeMap attrs;
  std::vector<std::unique_ptr<Region>> regionList;
  std::vector<Block *> successorList;

  Block *parent = nullptr;
  Block::OpList::iterator positionInParent;

  friend class Block;
  friend class Value; // replaceAllUsesWith rewrites operand slots directly
  friend Status insertAtFront(Block &, OwningOp &);
  friend Status insertAtBack(Block &, OwningOp &);
  friend Status insertBefore(Operation &, OwningOp &);
  friend Status insertAfter(Operation &, OwningOp &);
  friend Status eraseOperation(Operation &);
};

/// Insertion. On success the operation is owned by the block and `op` is
/// emptied; on failure ownership stays with the caller. Errors: `op` is
/// already attached, or the anchor is detached.
Status insertAtFront(Block &block, OwningOp &op);
Status insertAtBack(Block &block, OwningOp &op);
Status insertBefore(Operation &anchor, OwningOp &op);
Status insertAfter(Operation &anchor, OwningOp &op);

/// Detaches `op` from its block and destroys it together with its regions.
/// Fails (leaving the IR untouched) when any result still has uses.
Status eraseOperation(Operation &op);

/// Structural isomorphism: same shapes, names, attributes, and a consistent
/// bijection between values and between blocks. Values defined outside the
/// two roots must be pointer-identical to correspond.
bool structuralEquals(const Operation &a, const Operation &b);

/// Number of operations in the tree rooted at `op` (root included).
size_t countOps(const Operation &op);

} // namespace sidekick

#endif // SIDEKICK_IR_H
