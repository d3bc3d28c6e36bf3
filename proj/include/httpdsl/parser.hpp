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

#ifndef HTTPDSL_PARSER_HPP_
#define HTTPDSL_PARSER_HPP_

#include <string>
#include <vector>

#include "httpdsl/diagnostics.hpp"
#include "httpdsl/model.hpp"

namespace httpdsl {

// Parses description text into a document.
//
// Surface form, one block per message:
//
//   http {
//     name WeatherLocation
//     url server www.dataservice.accuweather.com
//         path locations/v1/cities/search
//     type GET
//     param apikey: input $apiKeyParam
//     param q: input $city
//     param language: en-US
//     header Accept: application/json
//     body {
//       contentType application/json
//       entityType TEXT
//       payload "{ }"
//     }
//     returns {
//       expect application/json
//       as payload
//     }
//     customize {
//       proxy proxy.example.com 3128
//       basicauth input $user input $pass
//       timeout 2500
//     }
//   }
//
// Keywords are lowercase; method and entity names are uppercase. `name`,
// `url`, and `type` are mandatory and single; `param` and `header` repeat;
// `body`, `returns`, and `customize` appear at most once. Clause order is
// free. Values are bare words, double-quoted strings (escapes: \" and \\),
// `input $identifier`, or `environment UPPER_NAME`; a literal value spelled
// "input" or "environment" must be quoted. `//` starts a comment where a
// token would start; comments are not kept in the document.
//
// Literal `url server` and `path` values are checked against the URL grammar
// here; variable ones are checked when the message is resolved. Semantic
// rules beyond syntax (body only on POST/PUT, variable name shapes, ...)
// live in validate_message / validate_document, which callers run after a
// successful parse.
//
// On success the returned diagnostics are empty. On failure the document is
// absent and every problem found is reported with its source span.
Parsed<RequestDocument> parse_document(const std::string& text,
                                       const std::string& source_name);

// Parses every *.http file under `directory`, recursively, visiting files in
// lexicographic path order. All diagnostics across files are merged; the
// document list is present only when every file parsed cleanly.
Parsed<std::vector<RequestDocument>> parse_directory(
    const std::string& directory);

// Renders the canonical text form of a document: two-space indentation,
// clauses in the fixed order name / url / type / param / header / body /
// returns / customize, one message per block separated by blank lines, and
// a trailing newline. Literals are written bare when they can be re-read
// unchanged and double-quoted otherwise.
//
// For any document d that passes validation, parse_document(format_document(
// d)) reproduces d exactly, and formatting is idempotent. Comments are not
// part of the document model, so formatting parsed text drops them.
std::string format_document(const RequestDocument& document);

// Canonical text of a single message block (no trailing blank line).
std::string format_message(const HttpMessage& message);

}  // namespace httpdsl

#endif  // HTTPDSL_PARSER_HPP_
