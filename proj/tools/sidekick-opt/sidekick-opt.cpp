//===- sidekick-opt.cpp - Textual IR driver -------------------------------===//
//
// Part of the Sidekick project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//
//
// opt-style tool: parse a module (stdin by default), verify it, optionally
// run a pass pipeline, and print it canonically. Dialects can be added from
// IRDL files, and registered dialects can be exported back out as IRDL.
//
//===----------------------------------------------------------------------===//

#include "sidekick/BuiltinDialects.h"
#include "sidekick/IRDL.h"
#include "sidekick/Parser.h"
#include "sidekick/Passes.h"
#include "sidekick/Printer.h"
#include "sidekick/Verifier.h"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace sidekick;

namespace {

constexpr int kExitSuccess = 0;
constexpr int kExitUsage = 1; // CLI misuse or parse errors
constexpr int kExitVerify = 2;
constexpr int kExitPass = 3;

std::optional<std::string> readInput(const std::string &path) {
  if (path == "-")
    return std::string(std::istreambuf_iterator<char>(std::cin),
                       std::istreambuf_iterator<char>());
  std::ifstream file(path, std::ios::binary);
  if (!file)
    return std::nullopt;
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return std::move(buffer).str();
}

void reportDiagnostics(const std::string &file,
                       const std::vector<Diagnostic> &diagnostics) {
  for (const Diagnostic &diag : diagnostics) {
    std::cerr << file;
    if (diag.location)
      std::cerr << ':' << diag.location->first << ':' << diag.location->second;
    std::cerr << ": error: " << diag.message;
    if (!diag.opPath.empty())
      std::cerr << " (at " << diag.opPath << ")";
    std::cerr << '\n';
  }
}

int writeOutput(const std::string &path, const std::string &text) {
  if (path == "-") {
    std::cout << text;
    return kExitSuccess;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    std::cerr << path << ": error: cannot open file for writing\n";
    return kExitUsage;
  }
  file << text;
  return file ? kExitSuccess : kExitUsage;
}

std::vector<std::string> splitPasses(const std::string &list) {
  std::vector<std::string> passes;
  size_t start = 0;
  while (start <= list.size()) {
    size_t comma = list.find(',', start);
    if (comma == std::string::npos)
      comma = list.size();
    if (comma > start)
      passes.push_back(list.substr(start, comma - start));
    start = comma + 1;
  }
  return passes;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"SSA IR parser, verifier, and pass driver"};
  std::string inputPath = "-";
  std::string outputPath = "-";
  std::vector<std::string> irdlFiles;
  std::string passList;
  bool allowUnregistered = false;
  bool noVerify = false;
  std::string exportDialect;

  app.add_option("input", inputPath, "Input module ('-' reads stdin)");
  app.add_option("-o,--output", outputPath, "Output file ('-' writes stdout)");
  app.add_option("--irdl", irdlFiles,
                 "IRDL dialect file to register before the input (repeatable)")
      ->type_size(1)
      ->allow_extra_args(false);
  app.add_option("-p,--passes", passList,
                 "Comma-separated pass pipeline (constant-fold, dce)");
  app.add_flag("--allow-unregistered-dialect", allowUnregistered,
               "Accept operations and attributes without a registered "
               "definition");
  app.add_flag("--no-verify", noVerify, "Skip verification");
  app.add_option("--export-irdl", exportDialect,
                 "Print the named registered dialect as an IRDL module and "
                 "exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? kExitSuccess : kExitUsage;
  }

  std::vector<std::string> passes = splitPasses(passList);
  if (!exportDialect.empty() && !passes.empty()) {
    std::cerr << "error: --export-irdl cannot be combined with passes\n";
    return kExitUsage;
  }

  Context ctx;
  ctx.allowUnregistered = allowUnregistered;
  if (Status status = registerBuiltinDialects(ctx); status.failed()) {
    std::cerr << "error: " << status.diagnostic().message << '\n';
    return kExitUsage;
  }
  if (Status status = registerIRDLDialect(ctx); status.failed()) {
    std::cerr << "error: " << status.diagnostic().message << '\n';
    return kExitUsage;
  }

  // The parser accepts unregistered names unconditionally; rejecting them is
  // the verifier's job so that --no-verify gives an uncensored view.
  ParseOptions parseOpts;
  parseOpts.allowUnregistered = true;

  for (const std::string &file : irdlFiles) {
    std::optional<std::string> text = readInput(file);
    if (!text) {
      std::cerr << file << ": error: cannot open file\n";
      return kExitUsage;
    }
    FailureOr<OwningOp> module = parseModule(*text, ctx, parseOpts);
    if (!module) {
      reportDiagnostics(file, module.diagnostics());
      return kExitUsage;
    }
    std::vector<Diagnostic> errors = verify(**module, ctx);
    if (!errors.empty()) {
      reportDiagnostics(file, errors);
      return kExitVerify;
    }
    auto loaded = loadDialectsFromIRDL(**module, ctx);
    if (!loaded) {
      reportDiagnostics(file, loaded.diagnostics());
      return kExitVerify;
    }
  }

  if (!exportDialect.empty()) {
    const DialectDefinition *dialect = ctx.lookupDialect(exportDialect);
    if (!dialect) {
      std::cerr << "error: unknown dialect '" << exportDialect << "'\n";
      return kExitUsage;
    }
    OwningOp module = exportDialectToIRDL(*dialect);
    return writeOutput(outputPath, printModule(*module, ctx));
  }

  std::optional<std::string> text = readInput(inputPath);
  if (!text) {
    std::cerr << inputPath << ": error: cannot open file\n";
    return kExitUsage;
  }
  FailureOr<OwningOp> module = parseModule(*text, ctx, parseOpts);
  if (!module) {
    reportDiagnostics(inputPath, module.diagnostics());
    return kExitUsage;
  }
  Operation &root = **module;

  if (!noVerify) {
    std::vector<Diagnostic> errors = verify(root, ctx);
    if (!errors.empty()) {
      reportDiagnostics(inputPath, errors);
      return kExitVerify;
    }
  }

  if (!passes.empty()) {
    PipelineResult result = runPassPipeline(root, passes, ctx);
    if (result.status == PipelineStatus::UnknownPass) {
      reportDiagnostics(inputPath, result.diagnostics);
      return kExitPass;
    }
    if (result.status == PipelineStatus::VerificationFailed) {
      reportDiagnostics(inputPath, result.diagnostics);
      return kExitVerify;
    }
    if (!result.rewrite.converged) {
      std::cerr << inputPath << ": error: pass pipeline did not converge\n";
      return kExitPass;
    }
    if (!noVerify) {
      std::vector<Diagnostic> errors = verify(root, ctx);
      if (!errors.empty()) {
        reportDiagnostics(inputPath, errors);
        return kExitVerify;
      }
    }
  }

  return writeOutput(outputPath, printModule(root, ctx));
}
