//===- IRDL.cpp - Dialect definitions as IR programs ----------------------===//
//
// Part of the Sidekick project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "sidekick/IRDL.h"

#include "sidekick/Attribute.h"
#include "sidekick/Constraint.h"

#include <cassert>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

using namespace sidekick;

static Attribute irdlAttrType() {
  return Attribute::parametrized("irdl", "attribute", {}, /*isType=*/true);
}

static ConstraintExpr stringConstraint() {
  return ConstraintExpr::parametric("builtin.string_attr", {});
}

//===----------------------------------------------------------------------===//
// Dialect registration
//===----------------------------------------------------------------------===//

Status sidekick::registerIRDLDialect(Context &ctx) {
  DialectDefinition d;
  d.name = "irdl";

  // Definition containers: one symbol, one body region, no SSA interface.
  auto symbolOp = [](std::string name) {
    OpDefinition def;
    def.name = std::move(name);
    def.operandConstraints.emplace();
    def.resultConstraints.emplace();
    def.attributeConstraints.emplace("sym_name", stringConstraint());
    def.regionCount = 1;
    return def;
  };
  d.operations.push_back(symbolOp("irdl.dialect"));
  d.operations.push_back(symbolOp("irdl.type"));
  d.operations.push_back(symbolOp("irdl.attribute"));
  d.operations.push_back(symbolOp("irdl.operation"));

  // Constraint operations produce one `!irdl.attribute` value each. The
  // variadic ones leave their operand list unconstrained here; the verifier
  // enforces the per-operand value type and non-emptiness structurally.
  auto constraintOp = [](std::string name, bool takesOperands) {
    OpDefinition def;
    def.name = std::move(name);
    if (!takesOperands)
      def.operandConstraints.emplace();
    def.resultConstraints.emplace();
    def.resultConstraints->push_back(ConstraintExpr::is(irdlAttrType()));
    return def;
  };
  OpDefinition isDef = constraintOp("irdl.is", /*takesOperands=*/false);
  isDef.attributeConstraints.emplace("expected", ConstraintExpr::any());
  d.operations.push_back(std::move(isDef));
  d.operations.push_back(constraintOp("irdl.any", /*takesOperands=*/false));
  d.operations.push_back(constraintOp("irdl.any_of", /*takesOperands=*/true));
  d.operations.push_back(constraintOp("irdl.all_of", /*takesOperands=*/true));
  OpDefinition parametricDef = constraintOp("irdl.parametric", true);
  parametricDef.attributeConstraints.emplace("base_type", stringConstraint());
  d.operations.push_back(std::move(parametricDef));

  // Clause operations consume constraint values and produce nothing.
  auto clauseOp = [](std::string name) {
    OpDefinition def;
    def.name = std::move(name);
    def.resultConstraints.emplace();
    return def;
  };
  d.operations.push_back(clauseOp("irdl.parameters"));
  d.operations.push_back(clauseOp("irdl.operands"));
  d.operations.push_back(clauseOp("irdl.results"));
  OpDefinition attrsDef = clauseOp("irdl.attributes");
  attrsDef.attributeConstraints.emplace(
      "attr_names", ConstraintExpr::parametric("builtin.array_attr", {}));
  d.operations.push_back(std::move(attrsDef));

  AttributeDefinition valueType;
  valueType.mnemonic = "attribute";
  valueType.isType = true;
  d.attributes.push_back(std::move(valueType));

  return ctx.registerDialect(std::move(d));
}

//===----------------------------------------------------------------------===//
// Loading definitions from irdl IR
//===----------------------------------------------------------------------===//

namespace {

/// Folds the SSA constraint graph of one member region into ConstraintExpr
/// trees. A value reached for the second time already carries a Var id; a
/// multiply-used value gets one on first reach, wrapping its own constraint
/// as AllOf[tree..., Var id] so later references are pure equalities.
class ConstraintGraphReader {
public:
  ConstraintGraphReader(std::vector<Diagnostic> &errors, std::string where)
      : errors(errors), where(std::move(where)) {}

  std::optional<ConstraintExpr> read(const Value &value) {
    if (auto it = varIds.find(&value); it != varIds.end())
      return ConstraintExpr::var(it->second);
    if (value.uses().size() > 1) {
      unsigned id = nextVarId++;
      varIds.emplace(&value, id);
      std::optional<ConstraintExpr> raw = readDefinition(value);
      if (!raw)
        return std::nullopt;
      if (raw->kind() == ConstraintExpr::Kind::Any)
        return ConstraintExpr::var(id);
      std::vector<ConstraintExpr> children;
      if (raw->kind() == ConstraintExpr::Kind::AllOf)
        children = raw->children();
      else
        children.push_back(std::move(*raw));
      children.push_back(ConstraintExpr::var(id));
      return ConstraintExpr::allOf(std::move(children));
    }
    return readDefinition(value);
  }

private:
  std::optional<ConstraintExpr> readDefinition(const Value &value) {
    if (value.valueKind() != Value::Kind::OpResult) {
      error("a block argument cannot define a constraint");
      return std::nullopt;
    }
    const Operation &def = static_cast<const OpResult &>(value).owner();
    const std::string &name = def.name();
    if (name == "irdl.is") {
      Attribute expected = def.attribute("expected");
      if (!expected) {
        error("'irdl.is' requires an 'expected' attribute");
        return std::nullopt;
      }
      return ConstraintExpr::is(expected);
    }
    if (name == "irdl.any")
      return ConstraintExpr::any();
    if (name == "irdl.any_of" || name == "irdl.all_of") {
      if (def.numOperands() == 0) {
        error("'" + name + "' requires at least one operand");
        return std::nullopt;
      }
      std::vector<ConstraintExpr> children;
      for (unsigned i = 0, n = def.numOperands(); i < n; ++i) {
        std::optional<ConstraintExpr> child = read(def.operand(i));
        if (!child)
          return std::nullopt;
        children.push_back(std::move(*child));
      }
      return name == "irdl.any_of"
                 ? ConstraintExpr::anyOf(std::move(children))
                 : ConstraintExpr::allOf(std::move(children));
    }
    if (name == "irdl.parametric") {
      Attribute base = def.attribute("base_type");
      const StringAttrData *baseStr = base ? base.asString() : nullptr;
      if (!baseStr) {
        error("'irdl.parametric' requires a 'base_type' string attribute");
        return std::nullopt;
      }
      std::vector<ConstraintExpr> params;
      for (unsigned i = 0, n = def.numOperands(); i < n; ++i) {
        std::optional<ConstraintExpr> param = read(def.operand(i));
        if (!param)
          return std::nullopt;
        params.push_back(std::move(*param));
      }
      return ConstraintExpr::parametric(baseStr->value, std::move(params));
    }
    error("unsupported constraint operation '" + name + "'");
    return std::nullopt;
  }

  void error(std::string message) {
    Diagnostic diag;
    diag.message = std::move(message) + " in " + where;
    errors.push_back(std::move(diag));
  }

  std::vector<Diagnostic> &errors;
  std::string where;
  std::map<const Value *, unsigned> varIds;
  unsigned nextVarId = 0;
};

/// Builds one DialectDefinition from one irdl.dialect operation.
class DialectLoader {
public:
  explicit DialectLoader(std::vector<Diagnostic> &errors) : errors(errors) {}

  std::optional<DialectDefinition> load(const Operation &dialectOp) {
    DialectDefinition def;
    def.name = symbolName(dialectOp);
    if (def.name.empty()) {
      error("'irdl.dialect' requires a 'sym_name' string attribute");
      return std::nullopt;
    }
    const Block *body = singleBlock(dialectOp, "'irdl.dialect' @" + def.name);
    if (!errors.empty())
      return std::nullopt;
    if (!body)
      return def;
    for (const OwningOp &member : body->operations()) {
      if (member->name() == "irdl.type" || member->name() == "irdl.attribute")
        loadAttributeMember(*member, def);
      else if (member->name() == "irdl.operation")
        loadOperationMember(*member, def);
      else
        error("unexpected operation '" + member->name() +
              "' inside 'irdl.dialect' @" + def.name);
    }
    if (!errors.empty())
      return std::nullopt;
    return def;
  }

private:
  void loadAttributeMember(const Operation &member, DialectDefinition &def) {
    AttributeDefinition attr;
    attr.isType = member.name() == "irdl.type";
    attr.mnemonic = symbolName(member);
    if (attr.mnemonic.empty()) {
      error("'" + member.name() + "' requires a 'sym_name' string attribute");
      return;
    }
    std::string where = "'" + member.name() + "' @" + attr.mnemonic;
    const Operation *parameters = nullptr;
    if (const Block *body = singleBlock(member, where)) {
      for (const OwningOp &op : body->operations()) {
        if (op->name() == "irdl.parameters") {
          if (parameters)
            error("duplicate 'irdl.parameters' clause in " + where);
          parameters = op.get();
        } else if (!isConstraintOp(*op)) {
          error("unexpected operation '" + op->name() + "' inside " + where);
        }
      }
    }
    if (parameters) {
      ConstraintGraphReader reader(errors, where);
      for (unsigned i = 0, n = parameters->numOperands(); i < n; ++i) {
        std::optional<ConstraintExpr> expr = reader.read(parameters->operand(i));
        if (!expr)
          return;
        attr.parameterConstraints.push_back(std::move(*expr));
      }
    }
    def.attributes.push_back(std::move(attr));
  }

  void loadOperationMember(const Operation &member, DialectDefinition &def) {
    std::string mnemonic = symbolName(member);
    if (mnemonic.empty()) {
      error("'irdl.operation' requires a 'sym_name' string attribute");
      return;
    }
    std::string where = "'irdl.operation' @" + mnemonic;
    OpDefinition op;
    op.name = def.name + "." + mnemonic;
    if (!readCount(member, "region_count", where, op.regionCount) ||
        !readCount(member, "successor_count", where, op.successorCount) ||
        !readTraits(member, where, op.traits))
      return;

    const Operation *operands = nullptr;
    const Operation *results = nullptr;
    const Operation *attributes = nullptr;
    if (const Block *body = singleBlock(member, where)) {
      for (const OwningOp &child : body->operations()) {
        const Operation **slot = nullptr;
        if (child->name() == "irdl.operands")
          slot = &operands;
        else if (child->name() == "irdl.results")
          slot = &results;
        else if (child->name() == "irdl.attributes")
          slot = &attributes;
        else if (!isConstraintOp(*child))
          error("unexpected operation '" + child->name() + "' inside " + where);
        if (slot) {
          if (*slot)
            error("duplicate '" + child->name() + "' clause in " + where);
          *slot = child.get();
        }
      }
    }
    if (!errors.empty())
      return;

    ConstraintGraphReader reader(errors, where);
    auto readClause = [&](const Operation *clause,
                          std::optional<std::vector<ConstraintExpr>> &out) {
      if (!clause)
        return true;
      out.emplace();
      for (unsigned i = 0, n = clause->numOperands(); i < n; ++i) {
        std::optional<ConstraintExpr> expr = reader.read(clause->operand(i));
        if (!expr)
          return false;
        out->push_back(std::move(*expr));
      }
      return true;
    };
    if (!readClause(operands, op.operandConstraints) ||
        !readClause(results, op.resultConstraints))
      return;
    if (attributes && !readAttributesClause(*attributes, where, reader, op))
      return;
    def.operations.push_back(std::move(op));
  }

  bool readAttributesClause(const Operation &clause, const std::string &where,
                            ConstraintGraphReader &reader, OpDefinition &op) {
    Attribute namesAttr = clause.attribute("attr_names");
    const ArrayAttrData *names = namesAttr ? namesAttr.asArray() : nullptr;
    if (!names) {
      error("'irdl.attributes' requires an 'attr_names' array attribute in " +
            where);
      return false;
    }
    if (names->elements.size() != clause.numOperands()) {
      error("'attr_names' length does not match the operand count of "
            "'irdl.attributes' in " +
            where);
      return false;
    }
    for (unsigned i = 0, n = clause.numOperands(); i < n; ++i) {
      const StringAttrData *name = names->elements[i].asString();
      if (!name) {
        error("'attr_names' must contain only strings in " + where);
        return false;
      }
      std::optional<ConstraintExpr> expr = reader.read(clause.operand(i));
      if (!expr)
        return false;
      if (!op.attributeConstraints.emplace(name->value, std::move(*expr))
               .second) {
        error("duplicate attribute name '" + name->value +
              "' in 'attr_names' in " + where);
        return false;
      }
    }
    return true;
  }

  bool readCount(const Operation &member, const char *key,
                 const std::string &where, unsigned &out) {
    Attribute attr = member.attribute(key);
    if (!attr)
      return true;
    const IntegerAttrData *data = attr.asInteger();
    if (!data || data->value < 0) {
      error("'" + std::string(key) +
            "' must be a non-negative integer attribute in " + where);
      return false;
    }
    out = unsigned(data->value);
    return true;
  }

  bool readTraits(const Operation &member, const std::string &where,
                  TraitSet &out) {
    Attribute attr = member.attribute("traits");
    if (!attr)
      return true;
    const DictionaryAttrData *dict = attr.asDictionary();
    if (!dict) {
      error("'traits' must be a dictionary attribute in " + where);
      return false;
    }
    for (const auto &[key, value] : dict->entries) {
      if (key == "terminator")
        out.terminator = true;
      else if (key == "pure")
        out.pure = true;
      else if (key == "isolated")
        out.isolated = true;
      else {
        error("unknown trait '" + key + "' in " + where);
        return false;
      }
    }
    return true;
  }

  static bool isConstraintOp(const Operation &op) {
    const std::string &n = op.name();
    return n == "irdl.is" || n == "irdl.any" || n == "irdl.any_of" ||
           n == "irdl.all_of" || n == "irdl.parametric";
  }

  /// Returns the member's single block, or null for an empty region. Reports
  /// malformed shapes (region count, extra blocks) and returns null.
  const Block *singleBlock(const Operation &op, const std::string &where) {
    if (op.numRegions() != 1) {
      error("expected exactly one region on " + where);
      return nullptr;
    }
    const Region &region = op.region(0);
    if (region.empty())
      return nullptr;
    if (region.numBlocks() != 1) {
      error("the body of " + where + " must be a single block");
      return nullptr;
    }
    return &region.block(0);
  }

  static std::string symbolName(const Operation &op) {
    Attribute attr = op.attribute("sym_name");
    const StringAttrData *str = attr ? attr.asString() : nullptr;
    return str ? str->value : std::string();
  }

  void error(std::string message) {
    Diagnostic diag;
    diag.message = std::move(message);
    errors.push_back(std::move(diag));
  }

  std::vector<Diagnostic> &errors;
};

} // namespace

FailureOr<std::vector<const DialectDefinition *>>
sidekick::loadDialectsFromIRDL(const Operation &module, Context &ctx) {
  std::vector<const Operation *> dialectOps;
  module.walk([&](const Operation &op) {
    if (op.name() == "irdl.dialect")
      dialectOps.push_back(&op);
  });

  std::vector<const DialectDefinition *> loaded;
  for (const Operation *dialectOp : dialectOps) {
    std::vector<Diagnostic> errors;
    DialectLoader loader(errors);
    std::optional<DialectDefinition> def = loader.load(*dialectOp);
    if (!def) {
      assert(!errors.empty() && "failed load must explain itself");
      return errors;
    }
    std::string name = def->name;
    if (Status status = ctx.registerDialect(std::move(*def)); status.failed())
      return status.diagnostic();
    loaded.push_back(ctx.lookupDialect(name));
  }
  return loaded;
}

//===----------------------------------------------------------------------===//
// Exporting definitions to irdl IR
//===----------------------------------------------------------------------===//

namespace {

/// Emits ConstraintExpr trees as constraint operations appended to one member
/// block. Var ids are memoized so a shared id becomes one multiply-used value.
class ConstraintEmitter {
public:
  explicit ConstraintEmitter(Block &block) : block(block) {}

  Value *emit(const ConstraintExpr &expr) {
    switch (expr.kind()) {
    case ConstraintExpr::Kind::Var: {
      if (Value *known = lookupVar(expr.varId()))
        return known;
      Value *value = createOp("irdl.any", {}, {});
      varValues.emplace(expr.varId(), value);
      return value;
    }
    case ConstraintExpr::Kind::Is: {
      AttributeMap attrs;
      attrs.emplace("expected", expr.expected());
      return createOp("irdl.is", {}, std::move(attrs));
    }
    case ConstraintExpr::Kind::Any:
      return createOp("irdl.any", {}, {});
    case ConstraintExpr::Kind::AnyOf:
      return createOp("irdl.any_of", emitAll(expr.children()), {});
    case ConstraintExpr::Kind::AllOf: {
      const std::vector<ConstraintExpr> &children = expr.children();
      // AllOf[c..., Var id] with a fresh id introduces the shared value whose
      // own constraint is c...; emit that constraint and bind the id to its
      // value instead of materializing a separate irdl.any.
      if (children.size() >= 2 &&
          children.back().kind() == ConstraintExpr::Kind::Var &&
          !lookupVar(children.back().varId())) {
        unsigned id = children.back().varId();
        Value *value;
        if (children.size() == 2) {
          value = emit(children.front());
        } else {
          std::vector<Value *> rest;
          for (size_t i = 0; i + 1 < children.size(); ++i)
            rest.push_back(emit(children[i]));
          value = createOp("irdl.all_of", std::move(rest), {});
        }
        varValues.emplace(id, value);
        return value;
      }
      return createOp("irdl.all_of", emitAll(children), {});
    }
    case ConstraintExpr::Kind::Parametric: {
      std::vector<Value *> params = emitAll(expr.children());
      AttributeMap attrs;
      attrs.emplace("base_type", Attribute::string(expr.base()));
      return createOp("irdl.parametric", std::move(params), std::move(attrs));
    }
    }
    assert(false && "unhandled constraint kind");
    return nullptr;
  }

  void emitClause(std::string name, std::vector<Value *> operands,
                  AttributeMap attrs = {}) {
    OwningOp op = Operation::create(std::move(name), std::move(operands), {},
                                    std::move(attrs));
    Status status = insertAtBack(block, op);
    assert(status.succeeded() && "appending a detached operation");
    (void)status;
  }

private:
  Value *lookupVar(unsigned id) const {
    auto it = varValues.find(id);
    return it == varValues.end() ? nullptr : it->second;
  }

  std::vector<Value *> emitAll(const std::vector<ConstraintExpr> &exprs) {
    std::vector<Value *> values;
    values.reserve(exprs.size());
    for (const ConstraintExpr &expr : exprs)
      values.push_back(emit(expr));
    return values;
  }

  Value *createOp(std::string name, std::vector<Value *> operands,
                  AttributeMap attrs) {
    OwningOp op = Operation::create(std::move(name), std::move(operands),
                                    {irdlAttrType()}, std::move(attrs));
    Operation &ref = *op;
    Status status = insertAtBack(block, op);
    assert(status.succeeded() && "appending a detached operation");
    (void)status;
    return &ref.result(0);
  }

  Block &block;
  std::map<unsigned, Value *> varValues;
};

OwningOp createMemberOp(std::string name, AttributeMap attrs) {
  std::vector<std::unique_ptr<Region>> regions;
  regions.push_back(std::make_unique<Region>());
  return Operation::create(std::move(name), {}, {}, std::move(attrs),
                           std::move(regions));
}

void appendOp(Block &block, OwningOp op) {
  Status status = insertAtBack(block, op);
  assert(status.succeeded() && "appending a detached operation");
  (void)status;
}

void exportAttributeMember(const AttributeDefinition &attr, Block &out) {
  AttributeMap attrs;
  attrs.emplace("sym_name", Attribute::string(attr.mnemonic));
  OwningOp member =
      createMemberOp(attr.isType ? "irdl.type" : "irdl.attribute",
                     std::move(attrs));
  if (!attr.parameterConstraints.empty()) {
    ConstraintEmitter emitter(member->region(0).emplaceBlock());
    std::vector<Value *> params;
    for (const ConstraintExpr &expr : attr.parameterConstraints)
      params.push_back(emitter.emit(expr));
    emitter.emitClause("irdl.parameters", std::move(params));
  }
  appendOp(out, std::move(member));
}

void exportOperationMember(const OpDefinition &op, Block &out) {
  Attribute one = Attribute::integer(1, Attribute::integerType(64));
  AttributeMap attrs;
  attrs.emplace("sym_name", Attribute::string(std::string(op.mnemonic())));
  if (op.regionCount != 0)
    attrs.emplace("region_count",
                  Attribute::integer(int64_t(op.regionCount),
                                     Attribute::integerType(64)));
  if (op.successorCount != 0)
    attrs.emplace("successor_count",
                  Attribute::integer(int64_t(op.successorCount),
                                     Attribute::integerType(64)));
  if (op.traits.terminator || op.traits.pure || op.traits.isolated) {
    std::vector<std::pair<std::string, Attribute>> entries;
    if (op.traits.terminator)
      entries.emplace_back("terminator", one);
    if (op.traits.pure)
      entries.emplace_back("pure", one);
    if (op.traits.isolated)
      entries.emplace_back("isolated", one);
    attrs.emplace("traits", Attribute::dictionary(std::move(entries)));
  }

  OwningOp member = createMemberOp("irdl.operation", std::move(attrs));
  if (op.operandConstraints || op.resultConstraints ||
      !op.attributeConstraints.empty()) {
    ConstraintEmitter emitter(member->region(0).emplaceBlock());
    auto emitClause = [&](const char *name,
                          const std::optional<std::vector<ConstraintExpr>>
                              &constraints) {
      if (!constraints)
        return;
      std::vector<Value *> values;
      values.reserve(constraints->size());
      for (const ConstraintExpr &expr : *constraints)
        values.push_back(emitter.emit(expr));
      emitter.emitClause(name, std::move(values));
    };
    emitClause("irdl.operands", op.operandConstraints);
    emitClause("irdl.results", op.resultConstraints);
    if (!op.attributeConstraints.empty()) {
      std::vector<Value *> values;
      std::vector<Attribute> names;
      for (const auto &[name, expr] : op.attributeConstraints) {
        names.push_back(Attribute::string(name));
        values.push_back(emitter.emit(expr));
      }
      AttributeMap clauseAttrs;
      clauseAttrs.emplace("attr_names", Attribute::array(std::move(names)));
      emitter.emitClause("irdl.attributes", std::move(values),
                         std::move(clauseAttrs));
    }
  }
  appendOp(out, std::move(member));
}

} // namespace

OwningOp sidekick::exportDialectToIRDL(const DialectDefinition &dialect) {
  AttributeMap attrs;
  attrs.emplace("sym_name", Attribute::string(dialect.name));
  OwningOp dialectOp = createMemberOp("irdl.dialect", std::move(attrs));
  if (!dialect.attributes.empty() || !dialect.operations.empty()) {
    Block &body = dialectOp->region(0).emplaceBlock();
    for (const AttributeDefinition &attr : dialect.attributes)
      exportAttributeMember(attr, body);
    for (const OpDefinition &op : dialect.operations)
      exportOperationMember(op, body);
  }

  std::vector<std::unique_ptr<Region>> moduleRegions;
  moduleRegions.push_back(std::make_unique<Region>());
  OwningOp module =
      Operation::create("builtin.module", {}, {}, {}, std::move(moduleRegions));
  appendOp(module->region(0).emplaceBlock(), std::move(dialectOp));
  return module;
}
