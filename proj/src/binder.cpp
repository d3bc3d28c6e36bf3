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

#include "httpdsl/binder.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <functional>
#include <set>
#include <sstream>
#include <utility>

namespace httpdsl {
namespace {

std::string ascii_lower(const std::string& text) {
  std::string out = text;
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return out;
}

// Calls `visit` for every variable slot of the message, in the one fixed
// traversal order shared by collection and resolution.
void walk_variables(const HttpMessage& message,
                    const std::function<void(const VariableRef&)>& visit) {
  const auto value = [&](const ValueOrVariable& v) {
    if (v.is_variable()) {
      visit(v.variable());
    }
  };
  const auto content_type = [&](const ContentTypeSpec& spec) {
    if (spec.is_variable()) {
      visit(std::get<VariableRef>(spec.value));
    }
  };

  value(message.url.server);
  value(message.url.path);
  for (const Parameter& param : message.query) {
    value(param.key);
    value(param.value);
  }
  for (const Header& header : message.headers) {
    if (header.key.is_variable()) {
      visit(std::get<VariableRef>(header.key.value));
    }
    value(header.value);
  }
  if (message.body.has_value()) {
    content_type(message.body->content_type);
    value(message.body->payload);
  }
  if (message.return_value.has_value()) {
    content_type(message.return_value->expected_type);
  }
  if (message.customization.has_value()) {
    if (message.customization->proxy.has_value()) {
      value(message.customization->proxy->host);
      value(message.customization->proxy->port);
    }
    if (message.customization->basic_auth.has_value()) {
      value(message.customization->basic_auth->username);
      value(message.customization->basic_auth->password);
    }
  }
}

std::vector<std::string> collect_of_kind(const HttpMessage& message,
                                         VariableRef::Kind kind) {
  std::vector<std::string> names;
  std::set<std::string> seen;
  walk_variables(message, [&](const VariableRef& ref) {
    if (ref.kind == kind && seen.insert(ref.name).second) {
      names.push_back(ref.name);
    }
  });
  return names;
}

// Resolution state: looks up variables, remembers every error.
class Resolver {
 public:
  Resolver(const BindingMap& inputs, const BindingMap& environment)
      : inputs_(inputs), environment_(environment) {}

  std::vector<ResolveError>& errors() { return errors_; }

  void invalid(const std::string& field, const std::string& reason) {
    errors_.push_back(
        ResolveError{ResolveError::Kind::kInvalidValue, field, reason});
  }

  // Returns the text of a value, reporting a missing binding. The empty
  // optional means "unresolvable"; callers skip their validity checks then.
  std::optional<std::string> text(const ValueOrVariable& value) {
    if (!value.is_variable()) {
      return value.literal();
    }
    return variable_text(value.variable());
  }

  std::optional<std::string> variable_text(const VariableRef& ref) {
    if (ref.kind == VariableRef::Kind::kInput) {
      const auto it = inputs_.find(ref.name);
      if (it == inputs_.end()) {
        report_missing(ResolveError::Kind::kMissingInput, ref.name,
                       "input variable is not bound");
        return std::nullopt;
      }
      return it->second;
    }
    const auto it = environment_.find(ref.name);
    if (it == environment_.end()) {
      report_missing(ResolveError::Kind::kMissingEnvironment, ref.name,
                     "environment variable is not set");
      return std::nullopt;
    }
    return it->second;
  }

  std::optional<std::string> content_type_text(const ContentTypeSpec& spec) {
    if (spec.is_well_known()) {
      return to_text(std::get<WellKnownMediaType>(spec.value));
    }
    if (spec.is_custom()) {
      return std::get<std::string>(spec.value);
    }
    return variable_text(std::get<VariableRef>(spec.value));
  }

 private:
  void report_missing(ResolveError::Kind kind, const std::string& name,
                      const std::string& reason) {
    // One report per missing name, even when it fills several slots.
    if (!reported_missing_.insert({kind, name}).second) {
      return;
    }
    errors_.push_back(ResolveError{kind, name, reason});
  }

  const BindingMap& inputs_;
  const BindingMap& environment_;
  std::vector<ResolveError> errors_;
  std::set<std::pair<ResolveError::Kind, std::string>> reported_missing_;
};

bool single_line(const std::string& text) {
  return text.find('\r') == std::string::npos &&
         text.find('\n') == std::string::npos;
}

std::string join_diagnostics(const std::vector<Diagnostic>& diagnostics) {
  std::ostringstream out;
  bool first = true;
  for (const Diagnostic& d : diagnostics) {
    if (!first) {
      out << "; ";
    }
    first = false;
    out << d.message;
  }
  return out.str();
}

}  // namespace

std::vector<std::string> collect_input_variables(const HttpMessage& message) {
  return collect_of_kind(message, VariableRef::Kind::kInput);
}

std::vector<std::string> collect_environment_variables(
    const HttpMessage& message) {
  return collect_of_kind(message, VariableRef::Kind::kEnvironment);
}

ResolveResult resolve(const HttpMessage& message, const BindingMap& inputs,
                      const BindingMap& environment) {
  Resolver resolver(inputs, environment);
  ResolvedRequest request;
  request.message_name = message.name;
  request.method = message.method;

  // Server and path.
  if (const auto text = resolver.text(message.url.server)) {
    const auto parsed = parse_server(*text);
    if (parsed.ok()) {
      request.server = *parsed.value;
    } else {
      resolver.invalid("url server", join_diagnostics(parsed.diagnostics));
    }
  }
  if (const auto text = resolver.text(message.url.path)) {
    const auto parsed = parse_path(*text);
    if (parsed.ok()) {
      request.path = *parsed.value;
    } else {
      resolver.invalid("url path", join_diagnostics(parsed.diagnostics));
    }
  }

  // Query parameters.
  for (const Parameter& param : message.query) {
    const auto key = resolver.text(param.key);
    const auto value = resolver.text(param.value);
    if (key.has_value() && key->empty()) {
      resolver.invalid("query parameter key", "must not be empty");
      continue;
    }
    if (key.has_value() && value.has_value()) {
      request.query.emplace_back(*key, *value);
    }
  }

  // Headers.
  for (const Header& header : message.headers) {
    std::optional<std::string> key;
    if (header.key.is_well_known()) {
      key = to_text(std::get<WellKnownHeaderKey>(header.key.value));
    } else if (header.key.is_custom()) {
      key = std::get<std::string>(header.key.value);
    } else {
      key = resolver.variable_text(std::get<VariableRef>(header.key.value));
    }
    if (key.has_value() && !is_http_token(*key)) {
      resolver.invalid("header key '" + *key + "'",
                       "not a valid header name");
      key.reset();
    }
    const auto value = resolver.text(header.value);
    if (value.has_value() && !single_line(*value)) {
      resolver.invalid("header value", "must not contain line breaks");
    }
    if (key.has_value() && value.has_value() && single_line(*value)) {
      request.headers.emplace_back(*key, *value);
    }
  }

  // Body.
  if (message.body.has_value()) {
    ResolvedRequest::ResolvedBody body;
    body.entity = message.body->entity;
    bool body_ok = true;
    if (const auto type =
            resolver.content_type_text(message.body->content_type)) {
      if (!is_media_type(*type)) {
        resolver.invalid("body contentType",
                         "'" + *type + "' is not shaped like type/subtype");
        body_ok = false;
      } else {
        body.content_type = *type;
      }
    } else {
      body_ok = false;
    }
    if (const auto payload = resolver.text(message.body->payload)) {
      body.payload = *payload;
    } else {
      body_ok = false;
    }
    if (body_ok) {
      request.body = std::move(body);
    }
  }

  // The content type of a body is set through the body clause; a separate
  // Content-Type header would make it ambiguous which one wins.
  if (message.body.has_value()) {
    for (const auto& [key, value] : request.headers) {
      if (ascii_lower(key) == "content-type") {
        resolver.invalid("Content-Type",
                         "set both as a header and by the body's "
                         "contentType; it must be set exactly once");
        break;
      }
    }
  }

  // Return value.
  const ReturnValue ret =
      message.return_value.value_or(default_return_value());
  request.return_form = ret.form;
  if (const auto type = resolver.content_type_text(ret.expected_type)) {
    if (!is_media_type(*type)) {
      resolver.invalid("returns expect",
                       "'" + *type + "' is not shaped like type/subtype");
    } else {
      request.expected_content_type = *type;
    }
  }

  // Customization.
  std::optional<int> custom_timeout;
  if (message.customization.has_value()) {
    const Customization& custom = *message.customization;
    custom_timeout = custom.timeout_ms;

    if (custom.proxy.has_value()) {
      ResolvedRequest::ResolvedProxy proxy;
      bool proxy_ok = true;
      if (const auto host = resolver.text(custom.proxy->host)) {
        const auto parsed = parse_server(*host);
        if (host->find("://") != std::string::npos || !parsed.ok() ||
            parsed.value->port.has_value() ||
            parsed.value->userinfo.has_value()) {
          resolver.invalid("proxy host",
                           "'" + *host +
                               "' must be a plain host without scheme, "
                               "userinfo, or port");
          proxy_ok = false;
        } else {
          proxy.host = *host;
        }
      } else {
        proxy_ok = false;
      }
      if (const auto port = resolver.text(custom.proxy->port)) {
        int value = 0;
        const char* begin = port->data();
        const char* end = begin + port->size();
        const auto [ptr, ec] = std::from_chars(begin, end, value);
        if (port->empty() || ec != std::errc() || ptr != end || value < 1 ||
            value > 65535) {
          resolver.invalid("proxy port",
                           "'" + *port + "' must be an integer in 1..65535");
          proxy_ok = false;
        } else {
          proxy.port = static_cast<std::uint16_t>(value);
        }
      } else {
        proxy_ok = false;
      }
      if (proxy_ok) {
        request.proxy = proxy;
      }
    }

    if (custom.basic_auth.has_value()) {
      ResolvedRequest::ResolvedBasicAuth auth;
      bool auth_ok = true;
      if (const auto user = resolver.text(custom.basic_auth->username)) {
        if (user->empty()) {
          resolver.invalid("basic-auth username", "must not be empty");
          auth_ok = false;
        } else if (user->find(':') != std::string::npos) {
          resolver.invalid("basic-auth username", "must not contain ':'");
          auth_ok = false;
        } else {
          auth.username = *user;
        }
      } else {
        auth_ok = false;
      }
      if (const auto pass = resolver.text(custom.basic_auth->password)) {
        auth.password = *pass;
      } else {
        auth_ok = false;
      }
      if (auth_ok) {
        request.basic_auth = auth;
      }

      // Same exactly-once rule as Content-Type: basicauth writes the
      // Authorization header, so an explicit one conflicts.
      for (const auto& [key, value] : request.headers) {
        if (ascii_lower(key) == "authorization") {
          resolver.invalid("Authorization",
                           "set both as a header and by the basicauth "
                           "customization; it must be set exactly once");
          break;
        }
      }
    }
  }

  // Timeout precedence: customization, then HTTPDSL_TIMEOUT_MS, then the
  // 5000 ms default.
  if (custom_timeout.has_value()) {
    if (*custom_timeout <= 0) {
      resolver.invalid("timeout", "must be positive");
    } else {
      request.timeout_ms = *custom_timeout;
    }
  } else if (const auto it = environment.find(kTimeoutEnvVar);
             it != environment.end()) {
    int value = 0;
    const char* begin = it->second.data();
    const char* end = begin + it->second.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (it->second.empty() || ec != std::errc() || ptr != end || value <= 0) {
      resolver.invalid(kTimeoutEnvVar,
                       "'" + it->second +
                           "' must be a positive integer of milliseconds");
    } else {
      request.timeout_ms = value;
    }
  } else {
    request.timeout_ms = kDefaultTimeoutMs;
  }

  ResolveResult result;
  result.errors = std::move(resolver.errors());
  if (result.errors.empty()) {
    result.request = std::move(request);
  }
  return result;
}

}  // namespace httpdsl
