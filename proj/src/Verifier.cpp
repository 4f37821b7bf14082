//===- Verifier.cpp - IR verification -------------------------------------===//
//
// Part of the Sidekick project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//
//
// Verification runs in two layers. The first layer is driven entirely by
// registered definitions: arities, constraint evaluation (operands, then
// results, then attributes in name order, sharing one binding environment per
// operation), and attribute instances. The second layer hard-codes structural
// rules for specific operations, keyed by operation name, so they apply no
// matter where the definition came from. Dominance runs last, per region,
// over an iterative dominator tree.
//
//===----------------------------------------------------------------------===//

#include "sidekick/Verifier.h"

#include "sidekick/Constraint.h"

#include <algorithm>
#include <cassert>
#include <memory>
#include <string>
#include <unordered_map>

using namespace sidekick;

namespace {

//===----------------------------------------------------------------------===//
// Dominator trees
//===----------------------------------------------------------------------===//

/// Dominator tree for one region, built with the Cooper-Harvey-Kennedy
/// iterative algorithm over reverse postorder. Blocks unreachable from the
/// entry have no dominator and dominate nothing but themselves.
class DomTree {
public:
  explicit DomTree(const Region &region) {
    unsigned numBlocks = region.numBlocks();
    for (unsigned i = 0; i < numBlocks; ++i)
      blockIndexOf[&region.block(i)] = i;

    // CFG edges come from the successor lists of the operations in each block.
    std::vector<std::vector<unsigned>> succs(numBlocks);
    std::vector<std::vector<unsigned>> preds(numBlocks);
    for (unsigned i = 0; i < numBlocks; ++i) {
      for (const OwningOp &op : region.block(i).operations()) {
        for (unsigned s = 0; s < op->numSuccessors(); ++s) {
          const Block *target = op->successor(s);
          auto it = target ? blockIndexOf.find(target) : blockIndexOf.end();
          if (it != blockIndexOf.end()) {
            succs[i].push_back(it->second);
            preds[it->second].push_back(i);
          }
        }
      }
    }

    rpoNumber.assign(numBlocks, kUnreachable);
    if (numBlocks == 0)
      return;

    // Depth-first postorder from the entry block.
    std::vector<unsigned> postorder;
    std::vector<char> visited(numBlocks, 0);
    std::vector<std::pair<unsigned, unsigned>> stack;
    stack.emplace_back(0u, 0u);
    visited[0] = 1;
    while (!stack.empty()) {
      auto &[node, edge] = stack.back();
      if (edge < succs[node].size()) {
        unsigned next = succs[node][edge++];
        if (!visited[next]) {
          visited[next] = 1;
          stack.emplace_back(next, 0u);
        }
      } else {
        postorder.push_back(node);
        stack.pop_back();
      }
    }

    unsigned numReachable = unsigned(postorder.size());
    std::vector<unsigned> rpoToBlock(numReachable);
    for (unsigned i = 0; i < numReachable; ++i) {
      unsigned rpo = numReachable - 1 - i;
      rpoNumber[postorder[i]] = rpo;
      rpoToBlock[rpo] = postorder[i];
    }

    idom.assign(numReachable, kUnreachable);
    idom[0] = 0;
    bool changed = true;
    while (changed) {
      changed = false;
      for (unsigned rpo = 1; rpo < numReachable; ++rpo) {
        unsigned newIdom = kUnreachable;
        for (unsigned predBlock : preds[rpoToBlock[rpo]]) {
          unsigned predRpo = rpoNumber[predBlock];
          if (predRpo == kUnreachable)
            continue;
          if (idom[predRpo] == kUnreachable && predRpo != 0)
            continue;
          newIdom =
              newIdom == kUnreachable ? predRpo : intersect(newIdom, predRpo);
        }
        if (newIdom != kUnreachable && idom[rpo] != newIdom) {
          idom[rpo] = newIdom;
          changed = true;
        }
      }
    }
  }

  /// Whether `a` dominates `b` (reflexively). False when either block is
  /// unreachable from the entry, unless they are the same block.
  bool dominates(const Block *a, const Block *b) const {
    auto ia = blockIndexOf.find(a);
    auto ib = blockIndexOf.find(b);
    if (ia == blockIndexOf.end() || ib == blockIndexOf.end())
      return false;
    if (ia->second == ib->second)
      return true;
    unsigned ra = rpoNumber[ia->second];
    unsigned rb = rpoNumber[ib->second];
    if (ra == kUnreachable || rb == kUnreachable)
      return false;
    while (rb > ra)
      rb = idom[rb];
    return rb == ra;
  }

private:
  static constexpr unsigned kUnreachable = ~0u;

  unsigned intersect(unsigned a, unsigned b) const {
    while (a != b) {
      while (a > b)
        a = idom[a];
      while (b > a)
        b = idom[b];
    }
    return a;
  }

  std::unordered_map<const Block *, unsigned> blockIndexOf;
  std::vector<unsigned> rpoNumber; // by block index; kUnreachable if none
  std::vector<unsigned> idom;      // by RPO number
};

//===----------------------------------------------------------------------===//
// Verifier state
//===----------------------------------------------------------------------===//

class Verifier {
public:
  Verifier(const Context &ctx) : ctx(ctx) {}

  std::vector<Diagnostic> run(const Operation &root) {
    pathSegments.push_back(root.name());
    verifyOp(root);
    pathSegments.pop_back();
    return std::move(diags);
  }

private:
  const Context &ctx;
  std::vector<Diagnostic> diags;
  std::vector<std::string> pathSegments;

  // Lazily built per-block operation order, for same-block dominance.
  std::unordered_map<const Block *,
                     std::unordered_map<const Operation *, unsigned>>
      blockOrder;
  // Lazily built per-region dominator trees.
  std::unordered_map<const Region *, std::unique_ptr<DomTree>> domTrees;

  std::string currentPath() const {
    std::string path;
    for (unsigned i = 0; i < pathSegments.size(); ++i) {
      if (i)
        path += '/';
      path += pathSegments[i];
    }
    return path;
  }

  void report(std::string message) {
    Diagnostic d;
    d.message = std::move(message);
    d.opPath = currentPath();
    diags.push_back(std::move(d));
  }

  const std::unordered_map<const Operation *, unsigned> &
  orderOf(const Block *block) {
    auto it = blockOrder.find(block);
    if (it != blockOrder.end())
      return it->second;
    auto &map = blockOrder[block];
    unsigned i = 0;
    for (const OwningOp &op : block->operations())
      map[op.get()] = i++;
    return map;
  }

  const DomTree &domTreeOf(const Region *region) {
    auto it = domTrees.find(region);
    if (it != domTrees.end())
      return *it->second;
    auto tree = std::make_unique<DomTree>(*region);
    const DomTree &ref = *tree;
    domTrees[region] = std::move(tree);
    return ref;
  }

  bool isRegisteredTerminator(const Operation &op) const {
    const OpDefinition *def = ctx.lookupOp(op.name());
    return def && def->traits.terminator;
  }

  //===--------------------------------------------------------------------===//
  // Attribute instances
  //===--------------------------------------------------------------------===//

  void verifyAttrInstance(const Attribute &attr, const std::string &where) {
    if (const auto *param = attr.asParametrized()) {
      const AttributeDefinition *def =
          ctx.lookupAttribute(param->dialect, param->mnemonic);
      std::string fullName = param->dialect + "." + param->mnemonic;
      if (!def) {
        if (!ctx.allowUnregistered)
          report("unregistered attribute '" + fullName + "' in " + where);
      } else if (def->isType != param->isType) {
        report("'" + fullName + "' is registered as " +
               (def->isType ? "a type" : "an attribute") + " but used as " +
               (param->isType ? "a type" : "an attribute") + " in " + where);
      } else if (param->parameters.size() != def->parameterConstraints.size()) {
        report("'" + fullName + "' expects " +
               std::to_string(def->parameterConstraints.size()) +
               " parameter(s) but got " +
               std::to_string(param->parameters.size()) + " in " + where);
      } else {
        BindingEnv env;
        for (unsigned i = 0; i < param->parameters.size(); ++i) {
          if (!evalConstraint(def->parameterConstraints[i],
                              param->parameters[i], env)) {
            report("constraint violation on parameter " + std::to_string(i) +
                   " of '" + fullName + "' in " + where);
            break;
          }
        }
      }
      for (const Attribute &p : param->parameters)
        verifyAttrInstance(p, where);
      return;
    }
    if (const auto *fn = attr.asFunctionType()) {
      for (const Attribute &t : fn->inputs)
        verifyAttrInstance(t, where);
      for (const Attribute &t : fn->results)
        verifyAttrInstance(t, where);
      return;
    }
    if (const auto *arr = attr.asArray()) {
      for (const Attribute &e : arr->elements)
        verifyAttrInstance(e, where);
      return;
    }
    if (const auto *dict = attr.asDictionary()) {
      for (const auto &entry : dict->entries)
        verifyAttrInstance(entry.second, where);
      return;
    }
    if (const auto *ia = attr.asInteger()) {
      verifyAttrInstance(ia->type, where);
      return;
    }
    if (const auto *fa = attr.asFloat()) {
      verifyAttrInstance(fa->type, where);
      return;
    }
    // Opaque attributes and leaf builtins need no further checking.
  }

  //===--------------------------------------------------------------------===//
  // Definition-driven checks
  //===--------------------------------------------------------------------===//

  void verifyAgainstDefinition(const Operation &op, const OpDefinition &def) {
    bool arityOk = true;
    if (def.operandConstraints &&
        op.numOperands() != def.operandConstraints->size()) {
      report("operand count mismatch: expected " +
             std::to_string(def.operandConstraints->size()) + ", got " +
             std::to_string(op.numOperands()));
      arityOk = false;
    }
    if (def.resultConstraints &&
        op.numResults() != def.resultConstraints->size()) {
      report("result count mismatch: expected " +
             std::to_string(def.resultConstraints->size()) + ", got " +
             std::to_string(op.numResults()));
      arityOk = false;
    }
    if (op.numRegions() != def.regionCount) {
      report("region count mismatch: expected " +
             std::to_string(def.regionCount) + ", got " +
             std::to_string(op.numRegions()));
      arityOk = false;
    }
    if (op.numSuccessors() != def.successorCount) {
      report("successor count mismatch: expected " +
             std::to_string(def.successorCount) + ", got " +
             std::to_string(op.numSuccessors()));
      arityOk = false;
    }

    // Missing attributes are reported even when arities are off; constraint
    // evaluation is skipped so it never runs against a malformed shape.
    bool attrsPresent = true;
    for (const auto &[name, expr] : def.attributeConstraints) {
      if (!op.attribute(name)) {
        report("missing attribute '" + name + "'");
        attrsPresent = false;
      }
    }
    if (!arityOk || !attrsPresent)
      return;

    BindingEnv env;
    if (def.operandConstraints) {
      for (unsigned i = 0; i < op.numOperands(); ++i) {
        if (!evalConstraint((*def.operandConstraints)[i],
                            op.operand(i).type(), env)) {
          report("constraint violation on operand " + std::to_string(i));
          return;
        }
      }
    }
    if (def.resultConstraints) {
      for (unsigned i = 0; i < op.numResults(); ++i) {
        if (!evalConstraint((*def.resultConstraints)[i], op.result(i).type(),
                            env)) {
          report("constraint violation on result " + std::to_string(i));
          return;
        }
      }
    }
    for (const auto &[name, expr] : def.attributeConstraints) {
      if (!evalConstraint(expr, op.attribute(name), env)) {
        report("constraint violation on attribute '" + name + "'");
        return;
      }
    }
  }

  //===--------------------------------------------------------------------===//
  // Name-keyed structural checks
  //===--------------------------------------------------------------------===//

  void verifyFuncReturn(const Operation &op) {
    const Operation *parent = op.parentOp();
    if (!parent || parent->name() != "func.func") {
      report("'func.return' must be directly inside 'func.func'");
      return;
    }
    Attribute ft = parent->attribute("function_type");
    if (!ft)
      return; // func.func's own checks report the missing attribute.
    const auto *fn = ft.asFunctionType();
    if (!fn)
      return;
    if (op.numOperands() != fn->results.size()) {
      report("operand count " + std::to_string(op.numOperands()) +
             " does not match enclosing function result count " +
             std::to_string(fn->results.size()));
      return;
    }
    for (unsigned i = 0; i < op.numOperands(); ++i) {
      if (op.operand(i).type() != fn->results[i]) {
        report("operand " + std::to_string(i) +
               " type does not match enclosing function result type");
        return;
      }
    }
  }

  void checkRegionYields(const Region &region, const char *opName) {
    for (unsigned b = 0; b < region.numBlocks(); ++b) {
      const Block &block = region.block(b);
      if (block.empty())
        continue;
      const Operation &last = block.back();
      if (isRegisteredTerminator(last) && last.name() != "scf.yield")
        report(std::string("region of '") + opName +
               "' must terminate with 'scf.yield'");
    }
  }

  void verifyScfIf(const Operation &op) {
    for (unsigned r = 0; r < op.numRegions(); ++r)
      checkRegionYields(op.region(r), "scf.if");
  }

  void verifyScfFor(const Operation &op) {
    if (op.numRegions() != 1)
      return; // Region arity mismatch already reported.
    const Region &body = op.region(0);
    if (body.numBlocks() == 0) {
      report("'scf.for' requires a non-empty body region");
      return;
    }
    const Block &entry = body.block(0);
    if (entry.numArguments() < 1 ||
        entry.argument(0).type() != Attribute::indexType()) {
      report("entry block of 'scf.for' must start with an 'index' argument");
    }
    checkRegionYields(body, "scf.for");
  }

  void verifyIrdlOp(const Operation &op) {
    std::string_view name = op.name();
    const Operation *parent = op.parentOp();
    auto parentIs = [&](std::initializer_list<std::string_view> names) {
      if (!parent)
        return false;
      for (std::string_view n : names)
        if (parent->name() == n)
          return true;
      return false;
    };

    if (name == "irdl.type" || name == "irdl.attribute" ||
        name == "irdl.operation") {
      if (!parentIs({"irdl.dialect"}))
        report("'" + std::string(name) +
               "' must be directly inside 'irdl.dialect'");
    } else if (name == "irdl.is" || name == "irdl.any" ||
               name == "irdl.any_of" || name == "irdl.all_of" ||
               name == "irdl.parametric") {
      if (!parentIs({"irdl.type", "irdl.attribute", "irdl.operation"}))
        report("'" + std::string(name) +
               "' must be nested inside an IRDL definition");
    } else if (name == "irdl.parameters") {
      if (!parentIs({"irdl.type", "irdl.attribute"}))
        report("'irdl.parameters' must be directly inside 'irdl.type' or "
               "'irdl.attribute'");
    } else if (name == "irdl.operands" || name == "irdl.results" ||
               name == "irdl.attributes") {
      if (!parentIs({"irdl.operation"}))
        report("'" + std::string(name) +
               "' must be directly inside 'irdl.operation'");
    }

    if ((name == "irdl.any_of" || name == "irdl.all_of") &&
        op.numOperands() == 0)
      report("'" + std::string(name) + "' requires at least one operand");

    if (name == "irdl.parametric") {
      if (Attribute base = op.attribute("base_type")) {
        if (const auto *s = base.asString()) {
          if (s->value.find('.') == std::string::npos ||
              s->value.front() == '.' || s->value.back() == '.')
            report("'base_type' must name an attribute as "
                   "'dialect.mnemonic'");
        }
      }
    }

    if (name == "irdl.attributes") {
      if (Attribute names = op.attribute("attr_names")) {
        if (const auto *arr = names.asArray()) {
          if (arr->elements.size() != op.numOperands()) {
            report("'attr_names' lists " +
                   std::to_string(arr->elements.size()) +
                   " name(s) but the operation has " +
                   std::to_string(op.numOperands()) + " operand(s)");
          } else {
            for (const Attribute &e : arr->elements) {
              if (!e.asString()) {
                report("'attr_names' must be an array of strings");
                break;
              }
            }
          }
        }
      }
    }

    // Everything an IRDL constraint or clause operation consumes or produces
    // is a constraint value.
    Attribute irdlAttr =
        Attribute::parametrized("irdl", "attribute", {}, /*isType=*/true);
    for (unsigned i = 0; i < op.numOperands(); ++i) {
      if (op.operand(i).type() != irdlAttr) {
        report("operand " + std::to_string(i) + " of '" + std::string(name) +
               "' must have type '!irdl.attribute'");
        break;
      }
    }
    for (unsigned i = 0; i < op.numResults(); ++i) {
      if (op.result(i).type() != irdlAttr) {
        report("result " + std::to_string(i) + " of '" + std::string(name) +
               "' must have type '!irdl.attribute'");
        break;
      }
    }
  }

  void verifyStructural(const Operation &op) {
    std::string_view name = op.name();
    if (name == "func.return")
      verifyFuncReturn(op);
    else if (name == "scf.if")
      verifyScfIf(op);
    else if (name == "scf.for")
      verifyScfFor(op);
    else if (op.dialectName() == "irdl")
      verifyIrdlOp(op);
  }

  //===--------------------------------------------------------------------===//
  // Dominance
  //===--------------------------------------------------------------------===//

  void checkOperandDominance(const Operation &op) {
    for (unsigned i = 0; i < op.numOperands(); ++i) {
      const Value &value = op.operand(i);

      const Block *defBlock = nullptr;
      const Operation *defOp = nullptr;
      if (value.valueKind() == Value::Kind::OpResult) {
        defOp = &static_cast<const OpResult &>(value).owner();
        defBlock = defOp->parentBlock();
      } else {
        defBlock = &static_cast<const BlockArgument &>(value).owner();
      }
      if (!defBlock) {
        report("operand " + std::to_string(i) +
               " refers to a detached definition");
        continue;
      }
      const Region *defRegion = defBlock->parentRegion();

      // Hoist the use up the region tree until it lives in the defining
      // region. Crossing an isolated operation on the way means the value
      // comes from outside that operation's isolation boundary.
      const Operation *use = &op;
      bool failed = false;
      while (use->parentBlock() == nullptr ||
             use->parentBlock()->parentRegion() != defRegion) {
        if (use->parentBlock() == nullptr) {
          report("operand " + std::to_string(i) +
                 " is defined outside the operation tree");
          failed = true;
          break;
        }
        const Operation *enclosing = use->parentBlock()->parentOp();
        if (!enclosing) {
          report("operand " + std::to_string(i) +
                 " is not dominated by its definition");
          failed = true;
          break;
        }
        const OpDefinition *enclosingDef = ctx.lookupOp(enclosing->name());
        if (enclosingDef && enclosingDef->traits.isolated) {
          report("operand " + std::to_string(i) +
                 " uses a value defined outside the isolated operation '" +
                 enclosing->name() + "'");
          failed = true;
          break;
        }
        use = enclosing;
      }
      if (failed)
        continue;

      const Block *useBlock = use->parentBlock();
      if (defOp == nullptr) {
        // Block arguments dominate every operation in their own block and in
        // all dominated blocks.
        if (defBlock == useBlock)
          continue;
        if (!domTreeOf(defRegion).dominates(defBlock, useBlock))
          report("operand " + std::to_string(i) +
                 " is not dominated by its definition");
        continue;
      }

      if (use == defOp) {
        report("operand " + std::to_string(i) +
               " is used inside the operation that defines it");
        continue;
      }
      if (defBlock == useBlock) {
        const auto &order = orderOf(defBlock);
        if (order.at(defOp) >= order.at(use))
          report("operand " + std::to_string(i) +
                 " is not dominated by its definition");
        continue;
      }
      if (!domTreeOf(defRegion).dominates(defBlock, useBlock))
        report("operand " + std::to_string(i) +
               " is not dominated by its definition");
    }
  }

  //===--------------------------------------------------------------------===//
  // Recursive walk
  //===--------------------------------------------------------------------===//

  void verifyOp(const Operation &op) {
    const OpDefinition *def = ctx.lookupOp(op.name());
    if (!def && !ctx.allowUnregistered)
      report("unregistered operation '" + op.name() + "'");
    if (def)
      verifyAgainstDefinition(op, *def);

    // Successors may only appear on terminators and must target sibling
    // blocks of the enclosing region.
    if (op.numSuccessors() > 0) {
      if (def && !def->traits.terminator)
        report("successors on non-terminator operation");
      const Block *parentBlock = op.parentBlock();
      const Region *region =
          parentBlock ? parentBlock->parentRegion() : nullptr;
      for (unsigned s = 0; s < op.numSuccessors(); ++s) {
        const Block *target = op.successor(s);
        if (!target) {
          report("successor " + std::to_string(s) + " is unresolved");
          continue;
        }
        if (!region || target->parentRegion() != region)
          report("successor " + std::to_string(s) +
                 " references a block outside the enclosing region");
      }
    }

    for (const auto &[name, attr] : op.attributes())
      verifyAttrInstance(attr, "attribute '" + name + "'");
    for (unsigned i = 0; i < op.numResults(); ++i)
      verifyAttrInstance(op.result(i).type(),
                         "result " + std::to_string(i) + " type");

    verifyStructural(op);
    checkOperandDominance(op);

    for (unsigned r = 0; r < op.numRegions(); ++r) {
      const Region &region = op.region(r);
      bool multiBlock = region.numBlocks() > 1;
      for (unsigned b = 0; b < region.numBlocks(); ++b) {
        const Block &block = region.block(b);
        for (unsigned a = 0; a < block.numArguments(); ++a)
          verifyAttrInstance(block.argument(a).type(),
                             "block argument " + std::to_string(a) + " type");

        if (multiBlock) {
          if (block.empty()) {
            report("block " + std::to_string(b) + " of region " +
                   std::to_string(r) +
                   " is empty but the region has multiple blocks");
          } else if (const OpDefinition *lastDef =
                         ctx.lookupOp(block.back().name());
                     lastDef && !lastDef->traits.terminator) {
            report("block " + std::to_string(b) + " of region " +
                   std::to_string(r) + " must end with a terminator");
          }
        }

        unsigned numOps = unsigned(block.size());
        unsigned childIndex = 0;
        for (const OwningOp &childPtr : block.operations()) {
          const Operation &child = *childPtr;
          pathSegments.push_back(child.name() + "#" +
                                 std::to_string(childIndex));
          if (childIndex + 1 != numOps && isRegisteredTerminator(child))
            report("terminator '" + child.name() + "' in non-final position");
          verifyOp(child);
          pathSegments.pop_back();
          ++childIndex;
        }
      }
    }
  }
};

} // namespace

std::vector<Diagnostic> sidekick::verify(const Operation &root,
                                         const Context &ctx) {
  return Verifier(ctx).run(root);
}
