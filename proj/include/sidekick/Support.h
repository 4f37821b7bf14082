//===- Support.h - Diagnostics and result wrappers ------------*- C++ -*-===//
//
// Part of the Sidekick project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#ifndef SIDEKICK_SUPPORT_H
#define SIDEKICK_SUPPORT_H

#include <cassert>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace sidekick {

/// A reported problem. Parser diagnostics carry a 1-based line/column into the
/// source buffer; verifier diagnostics instead carry a path of operation names
/// from the root (there is no location metadata on operations).
struct Diagnostic {
  enum class Severity { Error };

  Severity severity = Severity::Error;
  std::string message;
  /// (line, column), both 1-based, when the diagnostic points into source text.
  std::optional<std::pair<unsigned, unsigned>> location;
  /// Operation name path such as "builtin.module/func.func#0/arith.addi#2",
  /// filled when there is no source location.
  std::string opPath;
};

/// Success-or-single-error result for mutating entry points.
class [[nodiscard]] Status {
public:
  static Status success() { return Status(); }
  static Status error(std::string message) {
    Status s;
    s.diag = Diagnostic{Diagnostic::Severity::Error, std::move(message), {}, {}};
    return s;
  }
  static Status error(Diagnostic d) {
    Status s;
    s.diag = std::move(d);
    return s;
  }

  bool failed() const { return diag.has_value(); }
  bool succeeded() const { return !failed(); }
  explicit operator bool() const { return succeeded(); }

  const Diagnostic &diagnostic() const {
    assert(failed() && "no diagnostic on success");
    return *diag;
  }

private:
  std::optional<Diagnostic> diag;
};

/// Either a value or a non-empty list of diagnostics.
template <typename T>
class [[nodiscard]] FailureOr {
public:
  FailureOr(T value) : storage(std::move(value)) {}
  FailureOr(Diagnostic d) : storage(std::vector<Diagnostic>{std::move(d)}) {}
  FailureOr(std::vector<Diagnostic> ds) : storage(std::move(ds)) {
    assert(!diagnostics().empty() && "failure requires at least one diagnostic");
  }

  bool succeeded() const { return std::holds_alternative<T>(storage); }
  bool failed() const { return !succeeded(); }
  explicit operator bool() const { return succeeded(); }

  T &operator*() {
    assert(succeeded());
    return std::get<T>(storage);
  }
  const T &operator*() const {
    assert(succeeded());
    return std::get<T>(storage);
  }
  T *operator->() { return &**this; }
  const T *operator->() const { return &**this; }

  const std::vector<Diagnostic> &diagnostics() const {
    assert(failed());
    return std::get<std::vector<Diagnostic>>(storage);
  }
  /// First diagnostic, for callers that report a single failure.
  const Diagnostic &diagnostic() const { return diagnostics().front(); }

private:
  std::variant<T, std::vector<Diagnostic>> storage;
};

inline void hashCombine(size_t &seed, size_t value) {
  seed ^= value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

} // namespace sidekick

#endif // SIDEKICK_SUPPORT_H
