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

#include "httpdsl/diagnostics.hpp"

#include <algorithm>
#include <sstream>

namespace httpdsl {

std::string format_diagnostic(const Diagnostic& diagnostic) {
  std::ostringstream out;
  out << (diagnostic.source.empty() ? "<string>" : diagnostic.source);
  if (diagnostic.span.line != 0) {
    out << ':' << diagnostic.span.line << ':' << diagnostic.span.column;
  }
  out << ": "
      << (diagnostic.severity == Severity::kError ? "error" : "warning")
      << ": " << diagnostic.message;
  return out.str();
}

bool has_error(const std::vector<Diagnostic>& diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) {
                       return d.severity == Severity::kError;
                     });
}

}  // namespace httpdsl
