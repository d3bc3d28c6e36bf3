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

#include <cctype>
#include <chrono>
#include <fstream>
#include <sstream>
#include <thread>

#include "httpdsl/transport.hpp"
#include "json.hpp"

namespace httpdsl {

namespace {

using nlohmann::json;

bool equals_ignore_case(const std::string& a, const std::string& b) {
  if (a.size() != b.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(a[i])) !=
        std::tolower(static_cast<unsigned char>(b[i]))) {
      return false;
    }
  }
  return true;
}

std::optional<TransportError::Kind> parse_error_kind(const std::string& text) {
  if (text == "timeout") {
    return TransportError::Kind::kTimeout;
  }
  if (text == "connection-failed") {
    return TransportError::Kind::kConnectionFailed;
  }
  if (text == "proxy-unreachable") {
    return TransportError::Kind::kProxyUnreachable;
  }
  return std::nullopt;
}

// Reads a response description ({status, headers, body}) from `node`.
bool parse_response(const json& node, WireResponse* out, std::string* error,
                    const std::string& where) {
  if (!node.is_object()) {
    *error = where + " must be an object";
    return false;
  }
  out->status = 200;
  if (node.contains("status")) {
    if (!node["status"].is_number_integer()) {
      *error = where + ".status must be an integer";
      return false;
    }
    out->status = node["status"].get<int>();
  }
  if (node.contains("headers")) {
    if (!node["headers"].is_object()) {
      *error = where + ".headers must be an object of strings";
      return false;
    }
    for (const auto& [key, value] : node["headers"].items()) {
      if (!value.is_string()) {
        *error = where + ".headers must be an object of strings";
        return false;
      }
      out->headers.emplace_back(key, value.get<std::string>());
    }
  }
  if (node.contains("body")) {
    if (!node["body"].is_string()) {
      *error = where + ".body must be a string";
      return false;
    }
    out->body = node["body"].get<std::string>();
  }
  return true;
}

// The request path without its query part, for rule matching.
std::string path_only(const WireRequest& request) {
  std::string out = "/";
  for (std::size_t i = 0; i < request.path.segments.size(); ++i) {
    if (i > 0) {
      out += '/';
    }
    out += request.path.segments[i];
  }
  return out;
}

}  // namespace

std::unique_ptr<ScriptedTransport> ScriptedTransport::from_file(
    const std::string& path, std::string* error) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    if (error) {
      *error = "cannot read transport script \"" + path + "\"";
    }
    return nullptr;
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return from_json_text(buffer.str(), error);
}

std::unique_ptr<ScriptedTransport> ScriptedTransport::from_json_text(
    const std::string& text, std::string* error) {
  std::string scratch;
  std::string& err = error ? *error : scratch;

  json root = json::parse(text, /*cb=*/nullptr, /*allow_exceptions=*/false);
  if (root.is_discarded() || !root.is_object()) {
    err = "transport script is not a JSON object";
    return nullptr;
  }

  std::unique_ptr<ScriptedTransport> transport(new ScriptedTransport());
  transport->default_response_.status = 404;
  transport->default_response_.body = "no rule matched";

  if (root.contains("default")) {
    transport->default_response_ = WireResponse{};
    if (!parse_response(root["default"], &transport->default_response_, &err,
                        "default")) {
      return nullptr;
    }
  }

  if (root.contains("rules")) {
    if (!root["rules"].is_array()) {
      err = "rules must be an array";
      return nullptr;
    }
    std::size_t index = 0;
    for (const json& node : root["rules"]) {
      const std::string where = "rules[" + std::to_string(index++) + "]";
      Rule rule;
      if (!parse_response(node, &rule.response, &err, where)) {
        return nullptr;
      }
      if (node.contains("method")) {
        if (!node["method"].is_string()) {
          err = where + ".method must be a string";
          return nullptr;
        }
        rule.method = node["method"].get<std::string>();
      }
      if (node.contains("path")) {
        if (!node["path"].is_string()) {
          err = where + ".path must be a string";
          return nullptr;
        }
        rule.path = node["path"].get<std::string>();
      }
      if (node.contains("path_prefix")) {
        if (!node["path_prefix"].is_string()) {
          err = where + ".path_prefix must be a string";
          return nullptr;
        }
        rule.path_prefix = node["path_prefix"].get<std::string>();
      }
      if (node.contains("delay_ms")) {
        if (!node["delay_ms"].is_number_integer() ||
            node["delay_ms"].get<int>() < 0) {
          err = where + ".delay_ms must be a non-negative integer";
          return nullptr;
        }
        rule.delay_ms = node["delay_ms"].get<int>();
      }
      if (node.contains("error")) {
        if (!node["error"].is_string()) {
          err = where + ".error must be a string";
          return nullptr;
        }
        rule.error = parse_error_kind(node["error"].get<std::string>());
        if (!rule.error) {
          err = where +
                ".error must be \"timeout\", \"connection-failed\", or "
                "\"proxy-unreachable\"";
          return nullptr;
        }
      }
      transport->rules_.push_back(std::move(rule));
    }
  }

  return transport;
}

std::variant<WireResponse, TransportError> ScriptedTransport::round_trip(
    const WireRequest& request) {
  log_.push_back(to_text(request.method) + " " + request.target());

  const std::string path = path_only(request);
  const Rule* matched = nullptr;
  for (const Rule& rule : rules_) {
    if (rule.method && !equals_ignore_case(*rule.method,
                                           to_text(request.method))) {
      continue;
    }
    if (rule.path && *rule.path != path) {
      continue;
    }
    if (rule.path_prefix &&
        path.compare(0, rule.path_prefix->size(), *rule.path_prefix) != 0) {
      continue;
    }
    matched = &rule;
    break;
  }

  if (matched == nullptr) {
    return default_response_;
  }
  if (matched->error) {
    return TransportError{*matched->error, "scripted failure"};
  }
  if (matched->delay_ms >= request.timeout_ms) {
    // The reply would land after the deadline; report the timeout without
    // actually waiting out the scripted delay.
    return TransportError{
        TransportError::Kind::kTimeout,
        "scripted delay of " + std::to_string(matched->delay_ms) +
            " ms exceeds the " + std::to_string(request.timeout_ms) +
            " ms budget"};
  }
  if (matched->delay_ms > 0) {
    std::this_thread::sleep_for(std::chrono::milliseconds(matched->delay_ms));
  }
  return matched->response;
}

}  // namespace httpdsl
