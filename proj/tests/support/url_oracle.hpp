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

#ifndef HTTPDSL_TESTS_SUPPORT_URL_ORACLE_HPP_
#define HTTPDSL_TESTS_SUPPORT_URL_ORACLE_HPP_

#include <optional>
#include <string>

namespace httpdsl::testing {

// What an independent URL parser (libcurl's URL API) thinks of a server
// string. Used only to cross-check our own grammar in tests.
struct OracleVerdict {
  bool accepted = false;
  // Set when accepted: the host as the oracle sees it (IPv6 without
  // brackets) and the explicit port, if any.
  std::string host;
  std::optional<int> port;
};

// Feeds `text` (a server part, possibly without a scheme) to libcurl's URL
// parser with scheme-less input defaulted to http, mirroring our grammar's
// default. Returns the oracle's accept/reject decision and extracted fields.
OracleVerdict oracle_check_server(const std::string& text);

}  // namespace httpdsl::testing

#endif  // HTTPDSL_TESTS_SUPPORT_URL_ORACLE_HPP_
