//===- Dialect.cpp - Dialect registry --------------------------------------===//
//
// Part of the Sidekick project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "sidekick/Dialect.h"

#include <set>

using namespace sidekick;

Status Context::registerDialect(DialectDefinition dialect) {
  if (dialect.name.empty())
    return Status::error("dialect name must not be empty");
  if (dialects.count(dialect.name))
    return Status::error("dialect '" + dialect.name + "' is already registered");

  std::string prefix = dialect.name + ".";
  std::set<std::string_view> opNames;
  for (const OpDefinition &op : dialect.operations) {
    if (op.name.compare(0, prefix.size(), prefix) != 0 ||
        op.name.size() <= prefix.size())
      return Status::error("operation '" + op.name +
                           "' is not prefixed with dialect '" + dialect.name +
                           "'");
    if (!opNames.insert(op.mnemonic()).second)
      return Status::error("duplicate operation '" +
                           std::string(op.mnemonic()) + "' in dialect '" +
                           dialect.name + "'");
  }
  std::set<std::string_view> attrNames;
  for (const AttributeDefinition &attr : dialect.attributes) {
    if (attr.mnemonic.empty())
      return Status::error("attribute mnemonic must not be empty");
    if (!attrNames.insert(attr.mnemonic).second)
      return Status::error("duplicate attribute '" + attr.mnemonic +
                           "' in dialect '" + dialect.name + "'");
  }

  auto [it, inserted] = dialects.emplace(dialect.name, std::move(dialect));
  assert(inserted);
  order.push_back(it->first);

  const DialectDefinition &stored = it->second;
  for (const OpDefinition &op : stored.operations)
    opIndex.emplace(op.name, &op);
  for (const AttributeDefinition &attr : stored.attributes)
    attrIndex.emplace(stored.name + "." + attr.mnemonic, &attr);
  return Status::success();
}

const DialectDefinition *Context::lookupDialect(std::string_view name) const {
  auto it = dialects.find(name);
  return it == dialects.end() ? nullptr : &it->second;
}

const OpDefinition *Context::lookupOp(std::string_view fullName) const {
  auto it = opIndex.find(fullName);
  return it == opIndex.end() ? nullptr : it->second;
}

const AttributeDefinition *
Context::lookupAttribute(std::string_view dialect,
                         std::string_view mnemonic) const {
  std::string key;
  key.reserve(dialect.size() + mnemonic.size() + 1);
  key.append(dialect).push_back('.');
  key.append(mnemonic);
  auto it = attrIndex.find(key);
  return it == attrIndex.end() ? nullptr : it->second;
}
