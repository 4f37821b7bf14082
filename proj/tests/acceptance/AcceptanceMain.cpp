//===- AcceptanceMain.cpp - End-to-end acceptance gate ---------------------===//
//
// Part of the Sidekick project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//
//
// Runs the release checklist: reference listings, corpus roundtrips, the
// IRDL export/reload differential, constraint truth tables, a randomized
// folding oracle, CLI diagnostics for malformed programs, a scale smoke
// test, and the CLI self-pipe fixpoint. One PASS/FAIL line per criterion;
// the process exits 0 only when every criterion holds.
//
//===----------------------------------------------------------------------===//

#include "sidekick/BuiltinDialects.h"
#include "sidekick/Constraint.h"
#include "sidekick/IRDL.h"
#include "sidekick/Parser.h"
#include "sidekick/Passes.h"
#include "sidekick/Printer.h"
#include "sidekick/Verifier.h"

#include "../unit/TestHelpers.h"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <utility>
#include <vector>

using namespace sidekick;
using sidekick::test::append;
using sidekick::test::entryBlock;
using sidekick::test::makeConstant;
using sidekick::test::makeFunc;
using sidekick::test::makeModule;
using sidekick::test::oneRegion;

namespace fs = std::filesystem;

//===----------------------------------------------------------------------===//
// Reference listings
//===----------------------------------------------------------------------===//

namespace {

const char kAddFunction[] = R"("builtin.module"() ({
  "func.func"() ({
  ^bb0(%0: i32, %1: i32):
    %2 = "arith.addi"(%0, %1) : (i32, i32) -> i32
    "func.return"(%2) : (i32) -> ()
  }) {function_type = (i32, i32) -> i32, sym_name = "add"} : () -> ()
}) : () -> ()
)";

const char kConstant[] = R"("builtin.module"() ({
  %0 = "arith.constant"() {value = 42 : i32} : () -> i32
}) : () -> ()
)";

const char kCondBranch[] = R"("builtin.module"() ({
  "func.func"() ({
  ^bb0(%0: i1):
    "cf.cond_br"(%0)[^bb1, ^bb2] : (i1) -> ()
  ^bb1:
    "func.return"() : () -> ()
  ^bb2:
    "func.return"() : () -> ()
  }) {function_type = (i1) -> (), sym_name = "select"} : () -> ()
}) : () -> ()
)";

const char kStructuredIf[] = R"("builtin.module"() ({
  "func.func"() ({
  ^bb0(%0: i1):
    "scf.if"(%0) ({
      "scf.yield"() : () -> ()
    }, {
      "scf.yield"() : () -> ()
    }) : (i1) -> ()
    "func.return"() : () -> ()
  }) {function_type = (i1) -> (), sym_name = "branch"} : () -> ()
}) : () -> ()
)";

const char kComplexDialect[] = R"("builtin.module"() ({
  "irdl.dialect"() ({
    "irdl.type"() ({
      %0 = "irdl.is"() {expected = f32} : () -> !irdl.attribute
      %1 = "irdl.is"() {expected = f64} : () -> !irdl.attribute
      %2 = "irdl.any_of"(%0, %1) : (!irdl.attribute, !irdl.attribute) -> !irdl.attribute
      "irdl.parameters"(%2) : (!irdl.attribute) -> ()
    }) {sym_name = "complex"} : () -> ()
  }) {sym_name = "cmath"} : () -> ()
}) : () -> ()
)";

//===----------------------------------------------------------------------===//
// Shared helpers
//===----------------------------------------------------------------------===//

Attribute i1Type() { return Attribute::integerType(1); }
Attribute i32Type() { return Attribute::integerType(32); }
Attribute f32Type() { return Attribute::floatType(32); }
Attribute f64Type() { return Attribute::floatType(64); }

Attribute complexOf(Attribute elem) {
  return Attribute::parametrized("cmath", "complex", {elem}, true);
}

/// The complex-number dialect from the reference listing, defined natively.
DialectDefinition nativeCMath() {
  DialectDefinition d;
  d.name = "cmath";
  AttributeDefinition complex;
  complex.mnemonic = "complex";
  complex.isType = true;
  complex.parameterConstraints.push_back(ConstraintExpr::anyOf(
      {ConstraintExpr::is(f32Type()), ConstraintExpr::is(f64Type())}));
  d.attributes.push_back(std::move(complex));
  return d;
}

/// Parser/verifier context matching the CLI defaults.
bool makeToolContext(Context &ctx, std::string &detail) {
  if (Status s = registerBuiltinDialects(ctx); s.failed()) {
    detail = s.diagnostic().message;
    return false;
  }
  if (Status s = registerIRDLDialect(ctx); s.failed()) {
    detail = s.diagnostic().message;
    return false;
  }
  return true;
}

ParseOptions openOptions() {
  ParseOptions opts;
  opts.allowUnregistered = true;
  return opts;
}

/// Two's-complement canonical representative of `raw` at iWidth.
int64_t canonicalAt(uint64_t raw, unsigned width) {
  if (width == 64)
    return int64_t(raw);
  unsigned shift = 64 - width;
  return int64_t(raw << shift) >> shift;
}

std::optional<std::string> readFileBytes(const fs::path &path) {
  std::ifstream file(path, std::ios::binary);
  if (!file)
    return std::nullopt;
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return std::move(buffer).str();
}

bool writeFileBytes(const fs::path &path, const std::string &text) {
  std::ofstream file(path, std::ios::binary);
  file << text;
  return bool(file);
}

fs::path tempDir() {
  static fs::path dir = [] {
    fs::path p = fs::temp_directory_path() /
                 ("sidekick-acceptance-" + std::to_string(getpid()));
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

std::vector<fs::path> corpusFiles() {
  std::vector<fs::path> files;
  if (!fs::is_directory(SIDEKICK_CORPUS_DIR))
    return files;
  for (const fs::directory_entry &entry :
       fs::directory_iterator(SIDEKICK_CORPUS_DIR))
    if (entry.is_regular_file() && entry.path().extension() == ".mlir")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  return files;
}

struct ToolResult {
  int exitCode = -1;
  std::string out;
  std::string err;
};

std::string shellQuote(const std::string &text) { return "'" + text + "'"; }

/// Runs the CLI with the given (pre-quoted) argument line.
ToolResult runTool(const std::string &argsLine) {
  fs::path outPath = tempDir() / "stdout.bin";
  fs::path errPath = tempDir() / "stderr.bin";
  std::string command = shellQuote(SIDEKICK_OPT_PATH) + " " + argsLine +
                        " > " + shellQuote(outPath.string()) + " 2> " +
                        shellQuote(errPath.string());
  int raw = std::system(command.c_str());
  ToolResult result;
  if (raw != -1 && WIFEXITED(raw))
    result.exitCode = WEXITSTATUS(raw);
  result.out = readFileBytes(outPath).value_or("");
  result.err = readFileBytes(errPath).value_or("");
  return result;
}

bool sameDiagnostics(const std::vector<Diagnostic> &lhs,
                     const std::vector<Diagnostic> &rhs) {
  if (lhs.size() != rhs.size())
    return false;
  for (size_t i = 0; i < lhs.size(); ++i)
    if (lhs[i].message != rhs[i].message || lhs[i].opPath != rhs[i].opPath)
      return false;
  return true;
}

std::string firstLine(const std::string &text) {
  size_t end = text.find('\n');
  return text.substr(0, end == std::string::npos ? text.size() : end);
}

//===----------------------------------------------------------------------===//
// Criterion 1: reference listings
//===----------------------------------------------------------------------===//

bool listingFidelity(std::string &detail) {
  auto start = std::chrono::steady_clock::now();
  Context ctx;
  if (!makeToolContext(ctx, detail))
    return false;
  if (Status s = ctx.registerDialect(nativeCMath()); s.failed()) {
    detail = s.diagnostic().message;
    return false;
  }

  int listings = 0;
  const char *moduleTexts[] = {kAddFunction, kConstant, kCondBranch,
                               kStructuredIf, kComplexDialect};
  for (const char *text : moduleTexts) {
    FailureOr<OwningOp> parsed = parseModule(text, ctx, openOptions());
    if (parsed.failed()) {
      detail = "listing does not parse: " + parsed.diagnostic().message;
      return false;
    }
    std::vector<Diagnostic> errors = verify(**parsed, ctx);
    if (!errors.empty()) {
      detail = "listing does not verify: " + errors.front().message;
      return false;
    }
    std::string printed = printModule(**parsed, ctx);
    if (printed != text) {
      detail = "listing print differs near: " + firstLine(printed);
      return false;
    }
    FailureOr<OwningOp> reparsed = parseModule(printed, ctx, openOptions());
    if (reparsed.failed() || !structuralEquals(**parsed, **reparsed)) {
      detail = "listing roundtrip is not structurally equal";
      return false;
    }
    ++listings;
  }

  struct AttrListing {
    const char *text;
    Attribute expected;
  };
  const AttrListing attrListings[] = {
      {"[2 : i32, 5 : i32]",
       Attribute::array({makeIntegerAttr(2, 32), makeIntegerAttr(5, 32)})},
      {"!cmath.complex<f32>", complexOf(f32Type())},
  };
  for (const AttrListing &listing : attrListings) {
    FailureOr<Attribute> parsed = parseAttribute(listing.text, ctx);
    if (parsed.failed()) {
      detail = "attribute listing does not parse: " +
               parsed.diagnostic().message;
      return false;
    }
    if (*parsed != listing.expected) {
      detail = std::string("attribute listing value mismatch for ") +
               listing.text;
      return false;
    }
    if (printAttribute(*parsed) != listing.text) {
      detail = std::string("attribute listing print differs for ") +
               listing.text;
      return false;
    }
    ++listings;
  }

  double seconds = std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  std::ostringstream os;
  os << listings << " listings in " << seconds << " s";
  detail = os.str();
  return seconds < 1.0;
}

//===----------------------------------------------------------------------===//
// Criterion 2: corpus roundtrip
//===----------------------------------------------------------------------===//

bool corpusRoundTrip(std::string &detail) {
  auto start = std::chrono::steady_clock::now();
  Context ctx;
  if (!makeToolContext(ctx, detail))
    return false;

  std::vector<fs::path> files = corpusFiles();
  if (files.size() < 50) {
    detail = "corpus holds only " + std::to_string(files.size()) + " files";
    return false;
  }

  for (const fs::path &file : files) {
    std::optional<std::string> bytes = readFileBytes(file);
    if (!bytes) {
      detail = "cannot read " + file.filename().string();
      return false;
    }
    FailureOr<OwningOp> parsed = parseModule(*bytes, ctx, openOptions());
    if (parsed.failed()) {
      detail = file.filename().string() + " does not parse: " +
               parsed.diagnostic().message;
      return false;
    }
    std::vector<Diagnostic> errors = verify(**parsed, ctx);
    if (!errors.empty()) {
      detail = file.filename().string() + " does not verify: " +
               errors.front().message;
      return false;
    }
    std::string printed = printModule(**parsed, ctx);
    if (printed != *bytes) {
      detail = file.filename().string() + " is not print-canonical";
      return false;
    }
    FailureOr<OwningOp> reparsed = parseModule(printed, ctx, openOptions());
    if (reparsed.failed() || !structuralEquals(**parsed, **reparsed)) {
      detail = file.filename().string() + " reparse differs structurally";
      return false;
    }
  }

  double seconds = std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  std::ostringstream os;
  os << files.size() << " files in " << seconds << " s";
  detail = os.str();
  return seconds < 5.0;
}

//===----------------------------------------------------------------------===//
// Criterion 3: IRDL export/reload differential
//===----------------------------------------------------------------------===//

Attribute randomScalarType(std::mt19937 &rng) {
  switch (rng() % 7) {
  case 0:
    return Attribute::integerType(1);
  case 1:
    return Attribute::integerType(8);
  case 2:
    return Attribute::integerType(32);
  case 3:
    return Attribute::integerType(64);
  case 4:
    return Attribute::indexType();
  case 5:
    return Attribute::floatType(32);
  default:
    return Attribute::floatType(64);
  }
}

/// arith.constant producing `type`, with a matching value attribute.
OwningOp constantOf(Attribute type, std::mt19937 &rng) {
  AttributeMap attrs;
  if (type.asFloatType())
    attrs.emplace("value", Attribute::floating(double(rng() % 16) + 0.5, type));
  else
    attrs.emplace("value", Attribute::integer(int64_t(rng() % 100), type));
  return Operation::create("arith.constant", {}, {type}, std::move(attrs));
}

std::unique_ptr<Region> yieldRegion() {
  auto region = std::make_unique<Region>();
  Block &block = region->emplaceBlock();
  append(block, Operation::create("scf.yield", {}, {}));
  return region;
}

/// Builds one random instance; kinds cycle so every dialect is covered.
OwningOp buildDifferentialInstance(unsigned kind, std::mt19937 &rng) {
  OwningOp module = makeModule();
  Block &top = entryBlock(*module);
  Attribute i32 = i32Type();

  switch (kind % 13) {
  case 0: { // arith.addi, well-formed at a random integer width
    unsigned width = (rng() % 2) ? 32 : 64;
    Operation &lhs = append(top, makeConstant(int64_t(rng() % 50), width));
    Operation &rhs = append(top, makeConstant(int64_t(rng() % 50), width));
    append(top, test::makeAddi(lhs.result(0), rhs.result(0),
                               Attribute::integerType(width)));
    break;
  }
  case 1: { // arith.addi over random (possibly disagreeing) types
    Attribute t1 = randomScalarType(rng);
    Attribute t2 = randomScalarType(rng);
    Attribute t3 = randomScalarType(rng);
    Operation &lhs = append(top, constantOf(t1, rng));
    Operation &rhs = append(top, constantOf(t2, rng));
    append(top, test::makeAddi(lhs.result(0), rhs.result(0), t3));
    break;
  }
  case 2: { // arith.addi with the wrong operand count
    Operation &lhs = append(top, makeConstant(1, 32));
    std::vector<Value *> operands;
    unsigned count = (rng() % 2) ? 1 : 3;
    for (unsigned i = 0; i < count; ++i)
      operands.push_back(&lhs.result(0));
    append(top, Operation::create("arith.addi", operands, {i32}));
    break;
  }
  case 3: { // arith.constant with value/result types crossed
    Attribute valueType = randomScalarType(rng);
    Attribute resultType = randomScalarType(rng);
    Attribute value = valueType.asFloatType()
                          ? Attribute::floating(2.5, valueType)
                          : Attribute::integer(7, valueType);
    AttributeMap attrs;
    attrs.emplace("value", value);
    append(top,
           Operation::create("arith.constant", {}, {resultType},
                             std::move(attrs)));
    break;
  }
  case 4: { // func.func with a matching return
    Attribute t = randomScalarType(rng);
    OwningOp func = makeFunc("f", {t}, {t});
    Block &body = entryBlock(*func);
    append(body, Operation::create("func.return", {&body.argument(0)}, {}));
    append(top, std::move(func));
    break;
  }
  case 5: { // func.return arity against the function type
    Attribute t = randomScalarType(rng);
    OwningOp func = makeFunc("f", {t}, {t});
    Block &body = entryBlock(*func);
    std::vector<Value *> operands;
    if (rng() % 2) {
      operands.push_back(&body.argument(0));
      operands.push_back(&body.argument(0));
    }
    append(body, Operation::create("func.return", operands, {}));
    append(top, std::move(func));
    break;
  }
  case 6: { // scf.if shape variations
    unsigned variant = rng() % 3;
    Attribute condType = variant == 1 ? i32 : i1Type();
    OwningOp func = makeFunc("f", {condType}, {});
    Block &body = entryBlock(*func);
    std::vector<std::unique_ptr<Region>> regions;
    regions.push_back(yieldRegion());
    if (variant != 2)
      regions.push_back(yieldRegion());
    append(body, Operation::create("scf.if", {&body.argument(0)}, {}, {},
                                   std::move(regions)));
    append(body, Operation::create("func.return", {}, {}));
    append(top, std::move(func));
    break;
  }
  case 7: { // scf.for bounds and induction-variable typing
    unsigned variant = rng() % 3;
    Attribute boundType =
        variant == 1 ? i32 : Attribute::indexType();
    Operation &bound = append(top, constantOf(boundType, rng));
    auto region = std::make_unique<Region>();
    Block &loop = region->emplaceBlock();
    loop.addArgument(variant == 2 ? i32 : Attribute::indexType());
    append(loop, Operation::create("scf.yield", {}, {}));
    std::vector<std::unique_ptr<Region>> regions;
    regions.push_back(std::move(region));
    append(top, Operation::create(
                    "scf.for",
                    {&bound.result(0), &bound.result(0), &bound.result(0)},
                    {}, {}, std::move(regions)));
    break;
  }
  case 8: { // cf.cond_br condition typing and successor arity
    unsigned variant = rng() % 3;
    Attribute condType = variant == 1 ? i32 : i1Type();
    OwningOp func = makeFunc("f", {condType}, {});
    Block &body = entryBlock(*func);
    Region &region = func->region(0);
    Block &left = region.emplaceBlock();
    Block &right = region.emplaceBlock();
    std::vector<Block *> successors = {&left, &right};
    if (variant == 2)
      successors.pop_back();
    append(body, Operation::create("cf.cond_br", {&body.argument(0)}, {}, {},
                                   {}, successors));
    append(left, Operation::create("func.return", {}, {}));
    append(right, Operation::create("func.return", {}, {}));
    append(top, std::move(func));
    break;
  }
  case 9: { // !cmath.complex<...> in type positions
    Attribute elems[] = {f32Type(), f64Type(), i32, Attribute::indexType(),
                         complexOf(f32Type())};
    Attribute t = complexOf(elems[rng() % 5]);
    OwningOp func = makeFunc("f", {t}, {t});
    Block &body = entryBlock(*func);
    append(body, Operation::create("func.return", {&body.argument(0)}, {}));
    append(top, std::move(func));
    break;
  }
  case 10: { // cmath attribute misuse: arity, unknown member, kind
    unsigned variant = rng() % 3;
    Attribute carried;
    if (variant == 0)
      carried = Attribute::parametrized("cmath", "complex", {}, true);
    else if (variant == 1)
      carried = Attribute::parametrized("cmath", "unknown", {f32Type()}, true);
    else
      carried = complexOf(f32Type()); // type used in an attribute slot
    AttributeMap attrs;
    attrs.emplace("sym_name", Attribute::string("f"));
    attrs.emplace("function_type", Attribute::functionType({}, {}));
    attrs.emplace("carried", carried);
    OwningOp func =
        Operation::create("func.func", {}, {}, std::move(attrs), oneRegion());
    Block &body = func->region(0).emplaceBlock();
    append(body, Operation::create("func.return", {}, {}));
    append(top, std::move(func));
    break;
  }
  case 11: { // an operation no dialect defines
    append(top, Operation::create("mystery.op", {}, {}));
    break;
  }
  default: { // use before definition
    OwningOp constant = makeConstant(1, 32);
    OwningOp add =
        test::makeAddi(constant->result(0), constant->result(0), i32);
    Operation &anchor = append(top, std::move(constant));
    Status inserted = insertBefore(anchor, add);
    assert(inserted.succeeded());
    (void)inserted;
    break;
  }
  }
  return module;
}

bool irdlDifferential(std::string &detail) {
  // Native side: packaged dialects plus the natively defined cmath.
  Context native;
  if (!makeToolContext(native, detail))
    return false;
  if (Status s = native.registerDialect(nativeCMath()); s.failed()) {
    detail = s.diagnostic().message;
    return false;
  }

  // Reloaded side: only the structural core natively; everything else is
  // exported to IRDL text, reparsed, and loaded back.
  Context reloaded;
  if (Status s = registerBuiltinCoreDialect(reloaded); s.failed()) {
    detail = s.diagnostic().message;
    return false;
  }
  for (const char *name : {"func", "arith", "scf", "cf", "cmath"}) {
    const DialectDefinition *dialect = native.lookupDialect(name);
    if (!dialect) {
      detail = std::string("missing native dialect ") + name;
      return false;
    }
    OwningOp exported = exportDialectToIRDL(*dialect);
    std::string text = printModule(*exported, native);
    FailureOr<OwningOp> parsed = parseModule(text, reloaded, openOptions());
    if (parsed.failed()) {
      detail = std::string("exported ") + name + " does not parse: " +
               parsed.diagnostic().message;
      return false;
    }
    auto loaded = loadDialectsFromIRDL(**parsed, reloaded);
    if (loaded.failed()) {
      detail = std::string("exported ") + name + " does not load: " +
               loaded.diagnostic().message;
      return false;
    }
  }

  std::mt19937 rng(2024);
  const unsigned total = 520;
  unsigned valid = 0;
  unsigned invalid = 0;
  for (unsigned i = 0; i < total; ++i) {
    OwningOp instance = buildDifferentialInstance(i, rng);
    std::vector<Diagnostic> nativeDiags = verify(*instance, native);
    std::vector<Diagnostic> reloadedDiags = verify(*instance, reloaded);
    if (!sameDiagnostics(nativeDiags, reloadedDiags)) {
      std::ostringstream os;
      os << "instance " << i << " disagrees: native "
         << (nativeDiags.empty() ? std::string("accepts")
                                 : nativeDiags.front().message)
         << " vs reloaded "
         << (reloadedDiags.empty() ? std::string("accepts")
                                   : reloadedDiags.front().message);
      detail = os.str();
      return false;
    }
    if (nativeDiags.empty())
      ++valid;
    else
      ++invalid;
    if (i % 13 == 0 && !nativeDiags.empty()) {
      detail = "designed-valid addi instance rejected: " +
               nativeDiags.front().message;
      return false;
    }
  }

  std::ostringstream os;
  os << total << " instances agree (" << valid << " valid, " << invalid
     << " invalid)";
  detail = os.str();
  return true;
}

//===----------------------------------------------------------------------===//
// Criterion 4: constraint truth tables
//===----------------------------------------------------------------------===//

bool constraintTruthTable(std::string &detail) {
  Attribute attrs[] = {
      Attribute::integerType(32),
      Attribute::integerType(64),
      f32Type(),
      f64Type(),
      Attribute::indexType(),
      Attribute::string("x"),
      makeIntegerAttr(42, 32),
      complexOf(f32Type()),
  };
  ConstraintExpr exprs[] = {
      ConstraintExpr::is(Attribute::integerType(32)),
      ConstraintExpr::any(),
      ConstraintExpr::anyOf(
          {ConstraintExpr::is(f32Type()), ConstraintExpr::is(f64Type())}),
      ConstraintExpr::allOf(
          {ConstraintExpr::any(),
           ConstraintExpr::is(Attribute::integerType(64))}),
      ConstraintExpr::parametric("builtin.integer_type", {}),
      ConstraintExpr::parametric(
          "cmath.complex",
          {ConstraintExpr::anyOf({ConstraintExpr::is(f32Type()),
                                  ConstraintExpr::is(f64Type())})}),
  };
  const bool expected[6][8] = {
      {true, false, false, false, false, false, false, false},
      {true, true, true, true, true, true, true, true},
      {false, false, true, true, false, false, false, false},
      {false, true, false, false, false, false, false, false},
      {true, true, false, false, false, false, false, false},
      {false, false, false, false, false, false, false, true},
  };

  unsigned cases = 0;
  for (unsigned c = 0; c < 6; ++c) {
    for (unsigned a = 0; a < 8; ++a) {
      BindingEnv env;
      bool got = evalConstraint(exprs[c], attrs[a], env);
      if (got != expected[c][a]) {
        std::ostringstream os;
        os << "constraint " << c << " vs attribute " << a << ": got "
           << (got ? "match" : "mismatch");
        detail = os.str();
        return false;
      }
      ++cases;
    }
  }

  // Var binds on first use and enforces equality afterwards.
  {
    BindingEnv env;
    ConstraintExpr var0 = ConstraintExpr::var(0);
    if (!evalConstraint(var0, attrs[0], env) ||
        evalConstraint(var0, attrs[1], env) ||
        !evalConstraint(var0, attrs[0], env)) {
      detail = "var bind-once sequence broke";
      return false;
    }
    cases += 3;
  }
  {
    // A failed branch must roll its bindings back before the next branch.
    ConstraintExpr rebind = ConstraintExpr::anyOf(
        {ConstraintExpr::allOf({ConstraintExpr::is(Attribute::integerType(32)),
                                ConstraintExpr::var(0)}),
         ConstraintExpr::allOf({ConstraintExpr::is(Attribute::integerType(64)),
                                ConstraintExpr::var(0)})});
    BindingEnv env;
    if (!evalConstraint(rebind, Attribute::integerType(64), env) ||
        !env.isBound(0) || env.binding(0) != Attribute::integerType(64)) {
      detail = "anyOf rollback left a stale binding";
      return false;
    }
    cases += 1;
  }

  detail = std::to_string(cases) + " cases exact";
  return cases >= 40;
}

//===----------------------------------------------------------------------===//
// Criterion 5: randomized folding oracle
//===----------------------------------------------------------------------===//

bool foldingOracle(std::string &detail) {
  Context ctx;
  if (Status s = registerBuiltinDialects(ctx); s.failed()) {
    detail = s.diagnostic().message;
    return false;
  }

  std::mt19937 rng(424242);
  const unsigned widths[] = {8, 32, 64};
  const unsigned totalDags = 1000;
  size_t largestDag = 0;

  for (unsigned dag = 0; dag < totalDags; ++dag) {
    unsigned width = widths[dag % 3];
    Attribute type = Attribute::integerType(width);

    size_t numConstants = 1 + rng() % 8;
    size_t numAdds = rng() % (191 - numConstants);
    largestDag = std::max(largestDag, numConstants + numAdds);

    // Build the DAG inside a function and consume a random selection of its
    // values through func.return so DCE has live roots.
    std::vector<int64_t> oracle;
    std::vector<size_t> order(numConstants + numAdds);
    std::iota(order.begin(), order.end(), size_t{0});

    std::vector<std::pair<size_t, size_t>> addOperands;
    std::vector<int64_t> constantValues;
    std::uniform_int_distribution<int64_t> valueDist(INT64_MIN, INT64_MAX);
    for (size_t i = 0; i < numConstants; ++i) {
      int64_t value = canonicalAt(uint64_t(valueDist(rng)), width);
      constantValues.push_back(value);
      oracle.push_back(value);
    }
    for (size_t i = 0; i < numAdds; ++i) {
      size_t lhs = rng() % oracle.size();
      size_t rhs = rng() % oracle.size();
      addOperands.push_back({lhs, rhs});
      oracle.push_back(
          canonicalAt(uint64_t(oracle[lhs]) + uint64_t(oracle[rhs]), width));
    }

    std::shuffle(order.begin(), order.end(), rng);
    size_t numReturns = 1 + rng() % std::min<size_t>(4, order.size());
    order.resize(numReturns);

    std::vector<Attribute> resultTypes(numReturns, type);
    OwningOp module = makeModule();
    OwningOp func = makeFunc("dag", {}, resultTypes);
    Block &body = entryBlock(*func);
    std::vector<Value *> pool;
    for (size_t i = 0; i < numConstants; ++i)
      pool.push_back(
          &append(body, makeConstant(constantValues[i], width)).result(0));
    for (size_t i = 0; i < numAdds; ++i)
      pool.push_back(&append(body, test::makeAddi(*pool[addOperands[i].first],
                                                  *pool[addOperands[i].second],
                                                  type))
                          .result(0));
    std::vector<Value *> returned;
    for (size_t index : order)
      returned.push_back(pool[index]);
    append(body, Operation::create("func.return", returned, {}));
    append(entryBlock(*module), std::move(func));

    if (!verify(*module, ctx).empty()) {
      detail = "generated dag " + std::to_string(dag) + " does not verify";
      return false;
    }

    PipelineResult result =
        runPassPipeline(*module, {"constant-fold", "dce"}, ctx);
    if (result.status != PipelineStatus::Success || !result.rewrite.converged) {
      detail = "pipeline did not converge on dag " + std::to_string(dag);
      return false;
    }

    // Exactly one live constant per consumed result, holding the oracle value.
    if (body.size() != numReturns + 1) {
      detail = "dag " + std::to_string(dag) + " kept " +
               std::to_string(body.size() - 1) + " ops for " +
               std::to_string(numReturns) + " results";
      return false;
    }
    Operation &terminator = body.back();
    if (terminator.name() != "func.return" ||
        terminator.numOperands() != numReturns) {
      detail = "dag " + std::to_string(dag) + " lost its return";
      return false;
    }
    for (size_t i = 0; i < numReturns; ++i) {
      Value &value = terminator.operand(i);
      if (value.valueKind() != Value::Kind::OpResult) {
        detail = "dag result is not an operation result";
        return false;
      }
      Operation &def = static_cast<OpResult &>(value).owner();
      if (def.name() != "arith.constant" ||
          def.attribute("value") != makeIntegerAttr(oracle[order[i]], width)) {
        detail = "dag " + std::to_string(dag) + " result " +
                 std::to_string(i) + " does not match the oracle";
        return false;
      }
    }
    if (!verify(*module, ctx).empty()) {
      detail = "dag " + std::to_string(dag) + " broke verification";
      return false;
    }
  }

  std::ostringstream os;
  os << totalDags << " dags exact (largest " << largestDag << " ops)";
  detail = os.str();
  return true;
}

//===----------------------------------------------------------------------===//
// Criterion 6: CLI diagnostics for malformed programs
//===----------------------------------------------------------------------===//

struct NegativeCase {
  const char *name;
  const char *text;
  const char *expected;
};

const NegativeCase kNegativeCases[] = {
    {"addi-operand-arity",
     R"("builtin.module"() ({
  %0 = "arith.constant"() {value = 1 : i32} : () -> i32
  %1 = "arith.addi"(%0) : (i32) -> i32
}) : () -> ()
)",
     "operand count mismatch: expected 2, got 1"},
    {"addi-result-arity",
     R"("builtin.module"() ({
  %0 = "arith.constant"() {value = 1 : i32} : () -> i32
  "arith.addi"(%0, %0) : (i32, i32) -> ()
}) : () -> ()
)",
     "result count mismatch: expected 1, got 0"},
    {"scf-if-region-arity",
     R"("builtin.module"() ({
  %0 = "arith.constant"() {value = 1 : i1} : () -> i1
  "scf.if"(%0) ({
    "scf.yield"() : () -> ()
  }) : (i1) -> ()
}) : () -> ()
)",
     "region count mismatch: expected 2, got 1"},
    {"br-successor-arity",
     R"("builtin.module"() ({
  "func.func"() ({
    "cf.br"() : () -> ()
  }) {function_type = () -> (), sym_name = "f"} : () -> ()
}) : () -> ()
)",
     "successor count mismatch: expected 1, got 0"},
    {"addi-operand-type",
     R"("builtin.module"() ({
  %0 = "arith.constant"() {value = 1 : i32} : () -> i32
  %1 = "arith.constant"() {value = 1 : i64} : () -> i64
  %2 = "arith.addi"(%0, %1) : (i32, i64) -> i32
}) : () -> ()
)",
     "constraint violation on operand 1"},
    {"addi-result-type",
     R"("builtin.module"() ({
  %0 = "arith.constant"() {value = 1 : i32} : () -> i32
  %1 = "arith.addi"(%0, %0) : (i32, i32) -> i64
}) : () -> ()
)",
     "constraint violation on result 0"},
    {"constant-value-type",
     R"("builtin.module"() ({
  %0 = "arith.constant"() {value = 42 : i32} : () -> f32
}) : () -> ()
)",
     "constraint violation on attribute 'value'"},
    {"constant-missing-value",
     R"("builtin.module"() ({
  %0 = "arith.constant"() : () -> i32
}) : () -> ()
)",
     "missing attribute 'value'"},
    {"func-missing-name",
     R"("builtin.module"() ({
  "func.func"() ({
    "func.return"() : () -> ()
  }) {function_type = () -> ()} : () -> ()
}) : () -> ()
)",
     "missing attribute 'sym_name'"},
    {"successors-on-non-terminator",
     R"("builtin.module"() ({
  "func.func"() ({
    "cf.br"()[^bb1] : () -> ()
  ^bb1:
    %0 = "arith.constant"()[^bb1] {value = 1 : i32} : () -> i32
  }) {function_type = () -> (), sym_name = "f"} : () -> ()
}) : () -> ()
)",
     "successors on non-terminator operation"},
    {"terminator-not-last",
     R"("builtin.module"() ({
  "func.func"() ({
    "func.return"() : () -> ()
    %0 = "arith.constant"() {value = 1 : i32} : () -> i32
  }) {function_type = () -> (), sym_name = "f"} : () -> ()
}) : () -> ()
)",
     "in non-final position"},
    {"missing-terminator",
     R"("builtin.module"() ({
  "func.func"() ({
    "cf.br"()[^bb1] : () -> ()
  ^bb1:
    %0 = "arith.constant"() {value = 1 : i32} : () -> i32
  }) {function_type = () -> (), sym_name = "f"} : () -> ()
}) : () -> ()
)",
     "must end with a terminator"},
    {"empty-block",
     R"("builtin.module"() ({
  "func.func"() ({
    "func.return"() : () -> ()
  ^bb1:
  }) {function_type = () -> (), sym_name = "f"} : () -> ()
}) : () -> ()
)",
     "is empty but the region has multiple blocks"},
    {"unregistered-op",
     R"("mystery.op"() : () -> ()
)",
     "unregistered operation 'mystery.op'"},
    {"empty-anyof",
     R"("builtin.module"() ({
  "irdl.dialect"() ({
    "irdl.type"() ({
      %0 = "irdl.any_of"() : () -> !irdl.attribute
      "irdl.parameters"(%0) : (!irdl.attribute) -> ()
    }) {sym_name = "t"} : () -> ()
  }) {sym_name = "d"} : () -> ()
}) : () -> ()
)",
     "'irdl.any_of' requires at least one operand"},
    {"return-outside-func",
     R"("func.return"() : () -> ()
)",
     "'func.return' must be directly inside 'func.func'"},
    {"return-count",
     R"("builtin.module"() ({
  "func.func"() ({
    "func.return"() : () -> ()
  }) {function_type = () -> i32, sym_name = "f"} : () -> ()
}) : () -> ()
)",
     "operand count 0 does not match enclosing function result count 1"},
    {"return-type",
     R"("builtin.module"() ({
  "func.func"() ({
    %0 = "arith.constant"() {value = 1.5 : f32} : () -> f32
    "func.return"(%0) : (f32) -> ()
  }) {function_type = () -> i32, sym_name = "f"} : () -> ()
}) : () -> ()
)",
     "operand 0 type does not match enclosing function result type"},
    {"if-region-yield",
     R"("builtin.module"() ({
  %0 = "arith.constant"() {value = 1 : i1} : () -> i1
  "scf.if"(%0) ({
  ^bb0:
    "cf.br"()[^bb0] : () -> ()
  }, {
    "scf.yield"() : () -> ()
  }) : (i1) -> ()
}) : () -> ()
)",
     "region of 'scf.if' must terminate with 'scf.yield'"},
    {"for-induction-type",
     R"("builtin.module"() ({
  %0 = "arith.constant"() {value = 0 : index} : () -> index
  "scf.for"(%0, %0, %0) ({
  ^bb0(%1: i32):
    "scf.yield"() : () -> ()
  }) : (index, index, index) -> ()
}) : () -> ()
)",
     "entry block of 'scf.for' must start with an 'index' argument"},
    {"for-bound-type",
     R"("builtin.module"() ({
  %0 = "arith.constant"() {value = 0 : i32} : () -> i32
  "scf.for"(%0, %0, %0) ({
  ^bb0(%1: index):
    "scf.yield"() : () -> ()
  }) : (i32, i32, i32) -> ()
}) : () -> ()
)",
     "constraint violation on operand 0"},
    {"if-condition-type",
     R"("builtin.module"() ({
  %0 = "arith.constant"() {value = 1 : i32} : () -> i32
  "scf.if"(%0) ({
    "scf.yield"() : () -> ()
  }, {
    "scf.yield"() : () -> ()
  }) : (i32) -> ()
}) : () -> ()
)",
     "constraint violation on operand 0"},
};

bool verifierNegatives(std::string &detail) {
  const size_t total = sizeof(kNegativeCases) / sizeof(kNegativeCases[0]);
  if (total < 20) {
    detail = "only " + std::to_string(total) + " cases";
    return false;
  }
  for (const NegativeCase &negative : kNegativeCases) {
    fs::path file = tempDir() / (std::string(negative.name) + ".mlir");
    if (!writeFileBytes(file, negative.text)) {
      detail = std::string("cannot write ") + negative.name;
      return false;
    }
    ToolResult run = runTool(shellQuote(file.string()));
    if (run.exitCode != 2) {
      detail = std::string(negative.name) + " exited " +
               std::to_string(run.exitCode) + " (want 2): " +
               firstLine(run.err);
      return false;
    }
    if (run.err.find(negative.expected) == std::string::npos) {
      detail = std::string(negative.name) + " diagnostic mismatch: " +
               firstLine(run.err);
      return false;
    }
  }
  // Dialects loaded through --irdl take part in verification exactly like
  // native registrations, and the flag consumes one file per occurrence
  // without swallowing the positional input path.
  fs::path cmathDef = tempDir() / "cmath_def.mlir";
  fs::path cmathUse = tempDir() / "cmath_use.mlir";
  fs::path cmathMisuse = tempDir() / "cmath_misuse.mlir";
  const char kUseText[] = R"("builtin.module"() ({
  "func.func"() ({
  ^bb0(%0: !cmath.complex<f32>):
    "func.return"() : () -> ()
  }) {function_type = (!cmath.complex<f32>) -> (), sym_name = "use"} : () -> ()
}) : () -> ()
)";
  const char kMisuseText[] = R"("builtin.module"() ({
  "func.func"() ({
  ^bb0(%0: !cmath.complex<i32>):
    "func.return"() : () -> ()
  }) {function_type = (!cmath.complex<i32>) -> (), sym_name = "use"} : () -> ()
}) : () -> ()
)";
  if (!writeFileBytes(cmathDef, kComplexDialect) ||
      !writeFileBytes(cmathUse, kUseText) ||
      !writeFileBytes(cmathMisuse, kMisuseText)) {
    detail = "cannot write --irdl fixture files";
    return false;
  }
  std::string loadArg = "--irdl " + shellQuote(cmathDef.string()) + " ";
  ToolResult good = runTool(loadArg + shellQuote(cmathUse.string()));
  if (good.exitCode != 0 ||
      good.out.find("!cmath.complex<f32>") == std::string::npos) {
    detail = "--irdl accept case exited " + std::to_string(good.exitCode) +
             ": " + firstLine(good.err);
    return false;
  }
  ToolResult bad = runTool(loadArg + shellQuote(cmathMisuse.string()));
  if (bad.exitCode != 2 ||
      bad.err.find("constraint violation on parameter 0 of 'cmath.complex'") ==
          std::string::npos) {
    detail = "--irdl reject case exited " + std::to_string(bad.exitCode) +
             ": " + firstLine(bad.err);
    return false;
  }

  detail = std::to_string(total + 1) +
           " programs exit 2 with the expected diagnostic; --irdl-loaded "
           "dialect enforced";
  return true;
}

//===----------------------------------------------------------------------===//
// Criterion 7: scale smoke test
//===----------------------------------------------------------------------===//

bool scaleSmoke(std::string &detail) {
  auto start = std::chrono::steady_clock::now();
  Context ctx;
  if (Status s = registerBuiltinDialects(ctx); s.failed()) {
    detail = s.diagnostic().message;
    return false;
  }

  const size_t numConstants = 50000;
  const size_t numAdds = 50000;
  std::ostringstream source;
  source << "\"builtin.module\"() ({\n";
  uint32_t oracle = 0;
  for (size_t i = 0; i < numConstants; ++i)
    source << "  %" << i << " = \"arith.constant\"() {value = " << (i % 97)
           << " : i32} : () -> i32\n";
  for (size_t j = 0; j < numAdds; ++j) {
    size_t lhs = j == 0 ? 0 : numConstants + j - 1;
    size_t rhs = (j % (numConstants - 1)) + 1;
    if (j == 0)
      oracle = uint32_t(0 % 97);
    source << "  %" << (numConstants + j) << " = \"arith.addi\"(%" << lhs
           << ", %" << rhs << ") : (i32, i32) -> i32\n";
    oracle += uint32_t(rhs % 97);
  }
  source << "}) : () -> ()\n";
  std::string text = std::move(source).str();

  FailureOr<OwningOp> parsed = parseModule(text, ctx);
  if (parsed.failed()) {
    detail = "scale module does not parse: " + parsed.diagnostic().message;
    return false;
  }
  Operation &module = **parsed;
  if (countOps(module) != numConstants + numAdds + 1) {
    detail = "unexpected operation count";
    return false;
  }
  if (!verify(module, ctx).empty()) {
    detail = "scale module does not verify";
    return false;
  }
  if (printModule(module, ctx) != text) {
    detail = "scale module print is not canonical";
    return false;
  }
  RewriteResult fold = runConstantFolding(module);
  if (!fold.converged || !fold.changed) {
    detail = "folding did not converge";
    return false;
  }
  Block &body = entryBlock(module);
  if (body.size() != 1 ||
      body.front().attribute("value") !=
          makeIntegerAttr(int64_t(int32_t(oracle)), 32)) {
    detail = "folded result does not match the oracle";
    return false;
  }
  std::string folded = printModule(module, ctx);
  if (folded.empty()) {
    detail = "folded module does not print";
    return false;
  }

  double seconds = std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  std::ostringstream os;
  os << numConstants + numAdds << " ops in " << seconds << " s";
  detail = os.str();
  return seconds < 60.0;
}

//===----------------------------------------------------------------------===//
// Criterion 8: CLI self-pipe fixpoint
//===----------------------------------------------------------------------===//

bool cliFixpoint(std::string &detail) {
  std::vector<fs::path> files = corpusFiles();
  if (files.size() < 50) {
    detail = "corpus holds only " + std::to_string(files.size()) + " files";
    return false;
  }
  fs::path firstOut = tempDir() / "pipe1.mlir";
  fs::path secondOut = tempDir() / "pipe2.mlir";
  for (const fs::path &file : files) {
    ToolResult first = runTool(shellQuote(file.string()) + " -o " +
                               shellQuote(firstOut.string()));
    if (first.exitCode != 0) {
      detail = file.filename().string() + " failed: " + firstLine(first.err);
      return false;
    }
    ToolResult second = runTool(shellQuote(firstOut.string()) + " -o " +
                                shellQuote(secondOut.string()));
    if (second.exitCode != 0) {
      detail = file.filename().string() + " re-run failed: " +
               firstLine(second.err);
      return false;
    }
    if (readFileBytes(firstOut) != readFileBytes(secondOut)) {
      detail = file.filename().string() + " is not a self-pipe fixpoint";
      return false;
    }
  }
  detail = std::to_string(files.size()) + " files stable";
  return true;
}

} // namespace

//===----------------------------------------------------------------------===//
// Driver
//===----------------------------------------------------------------------===//

int main() {
  struct Criterion {
    const char *name;
    bool (*run)(std::string &);
  };
  const Criterion criteria[] = {
      {"listing-fidelity", listingFidelity},
      {"corpus-roundtrip", corpusRoundTrip},
      {"irdl-differential", irdlDifferential},
      {"constraint-truth-table", constraintTruthTable},
      {"folding-oracle", foldingOracle},
      {"verifier-negatives", verifierNegatives},
      {"scale-smoke", scaleSmoke},
      {"cli-fixpoint", cliFixpoint},
  };

  bool allPassed = true;
  for (const Criterion &criterion : criteria) {
    std::string detail;
    auto start = std::chrono::steady_clock::now();
    bool passed = criterion.run(detail);
    double seconds = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    allPassed &= passed;
    std::printf("[%s] %-24s (%.2f s)%s%s\n", passed ? "PASS" : "FAIL",
                criterion.name, seconds, detail.empty() ? "" : ": ",
                detail.c_str());
  }
  return allPassed ? 0 : 1;
}
