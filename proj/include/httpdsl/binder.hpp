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

#ifndef HTTPDSL_BINDER_HPP_
#define HTTPDSL_BINDER_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "httpdsl/model.hpp"
#include "httpdsl/url.hpp"

namespace httpdsl {

// Name/value bindings. Input bindings come from the caller (ports, CLI
// flags); environment bindings mirror process environment variables.
using BindingMap = std::map<std::string, std::string>;

// The environment variable that overrides the default request timeout for
// messages without a `timeout` customization.
inline constexpr char kTimeoutEnvVar[] = "HTTPDSL_TIMEOUT_MS";

// Variable collection walks a message in one fixed order:
//
//   url server, url path,
//   each param in author order (key, then value),
//   each header in author order (key, then value),
//   body contentType, body payload,
//   returns expect,
//   customize proxy host, proxy port, basicauth username, basicauth password
//
// and returns the names of one kind of variable, first occurrence first,
// duplicates dropped. This order defines the port order of derived blocks
// and the parameter order of generated client routines, so it must never
// change.
std::vector<std::string> collect_input_variables(const HttpMessage& message);
std::vector<std::string> collect_environment_variables(
    const HttpMessage& message);

// A message with every variable replaced by its bound text and every field
// parsed into its wire-ready form.
struct ResolvedRequest {
  struct ResolvedBody {
    std::string content_type;
    EntityKind entity = EntityKind::kText;
    std::string payload;

    friend bool operator==(const ResolvedBody&, const ResolvedBody&) =
        default;
  };

  struct ResolvedProxy {
    std::string host;
    std::uint16_t port = 0;

    friend bool operator==(const ResolvedProxy&, const ResolvedProxy&) =
        default;
  };

  struct ResolvedBasicAuth {
    std::string username;
    std::string password;

    friend bool operator==(const ResolvedBasicAuth&,
                           const ResolvedBasicAuth&) = default;
  };

  std::string message_name;
  RequestMethod method = RequestMethod::kGet;
  ServerUrl server;
  UrlPath path;
  std::vector<std::pair<std::string, std::string>> query;
  // Header keys in their canonical spelling (curated names) or as resolved.
  std::vector<std::pair<std::string, std::string>> headers;
  std::optional<ResolvedBody> body;
  std::string expected_content_type;
  ReturnForm return_form = ReturnForm::kPayloadText;
  std::optional<ResolvedProxy> proxy;
  std::optional<ResolvedBasicAuth> basic_auth;
  int timeout_ms = kDefaultTimeoutMs;

  friend bool operator==(const ResolvedRequest&, const ResolvedRequest&) =
      default;
};

struct ResolveError {
  enum class Kind {
    kMissingInput,        // an input variable has no binding
    kMissingEnvironment,  // an environment variable has no binding
    kInvalidValue,        // a resolved field failed its validity rule
  };

  Kind kind = Kind::kInvalidValue;
  // The variable name (missing kinds) or the field description (invalid).
  std::string name;
  std::string reason;

  friend bool operator==(const ResolveError&, const ResolveError&) = default;
};

struct ResolveResult {
  std::optional<ResolvedRequest> request;
  std::vector<ResolveError> errors;

  bool ok() const { return request.has_value(); }
};

// Resolves every variable in `message` against the two binding maps and
// validates the results:
//
//   - the server must parse under the URL grammar, the path likewise
//   - query parameter keys must be non-empty
//   - header keys must be HTTP tokens; header values must be single-line
//   - a body content type must be a media type (type/subtype)
//   - a body next to an explicit Content-Type header is rejected: the
//     content type must be set exactly once
//   - a basicauth customization next to an explicit Authorization header is
//     rejected for the same reason
//   - a proxy host must be a plain host (no scheme, userinfo, or port); the
//     proxy port must be 1..65535
//   - a basic-auth username must be non-empty and colon-free
//
// The effective timeout is the customization's if present, otherwise the
// HTTPDSL_TIMEOUT_MS environment binding if present (which must then be a
// positive integer), otherwise 5000 milliseconds.
//
// All problems are collected, not just the first. `request` is set exactly
// when `errors` is empty: with well-formed binding values, resolution
// succeeds if and only if every variable the message uses is bound.
ResolveResult resolve(const HttpMessage& message, const BindingMap& inputs,
                      const BindingMap& environment);

}  // namespace httpdsl

#endif  // HTTPDSL_BINDER_HPP_
