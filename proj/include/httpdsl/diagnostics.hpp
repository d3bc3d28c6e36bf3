// Copyright 2026 The httpdsl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HTTPDSL_DIAGNOSTICS_HPP_
#define HTTPDSL_DIAGNOSTICS_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace httpdsl {

// A half-open region of source text. Lines and columns are 1-based; `length`
// is measured in bytes on the starting line. A zero-length span points at a
// position (e.g. "something is missing here").
struct Span {
  std::size_t line = 0;
  std::size_t column = 0;
  std::size_t length = 0;

  friend bool operator==(const Span&, const Span&) = default;
};

enum class Severity {
  kError,
  kWarning,
};

// One problem found while parsing, validating, or resolving. `source` names
// the file (or "<string>" for in-memory text); `span` points at the offending
// text within it.
struct Diagnostic {
  Severity severity = Severity::kError;
  std::string source;
  Span span;
  std::string message;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

// Renders "source:line:col: error: message" for terminal output.
std::string format_diagnostic(const Diagnostic& diagnostic);

// True if any diagnostic in `diagnostics` is an error.
bool has_error(const std::vector<Diagnostic>& diagnostics);

// Outcome of a fallible parse step: either `value` is set and `diagnostics`
// carries at most warnings, or `value` is empty and at least one diagnostic
// is an error.
template <typename T>
struct Parsed {
  std::optional<T> value;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return value.has_value(); }
};

}  // namespace httpdsl

#endif  // HTTPDSL_DIAGNOSTICS_HPP_
