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

#ifndef HTTPDSL_TRANSPORT_HPP_
#define HTTPDSL_TRANSPORT_HPP_

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "httpdsl/executor.hpp"

namespace httpdsl {

// The default transport: drives requests over real sockets (HTTP and HTTPS).
//
// Behavior notes:
//   - the request's timeout budget bounds connect, send, and receive; an
//     exchange that exceeds it reports TransportError::Kind::kTimeout
//   - with a proxy configured, requests go through it, and a failure to
//     reach the proxy reports kProxyUnreachable
//   - URL userinfo is connection metadata only; it is never sent as
//     credentials (authorization comes from headers or basicauth)
//   - redirects are never followed and bodies are never transformed
class HttplibTransport : public Transport {
 public:
  std::variant<WireResponse, TransportError> round_trip(
      const WireRequest& request) override;
};

// A transport that replays canned responses from a JSON rule file, for
// running messages without a live server.
//
// File format:
//
//   {
//     "rules": [
//       {
//         "method": "GET",           // optional; matches any when absent
//         "path": "/users",          // optional; exact match, no query
//         "path_prefix": "/api/",    // optional; prefix match, no query
//         "status": 200,             // default 200
//         "headers": {"Location": "/next"},
//         "body": "text",
//         "delay_ms": 0,             // reply latency, simulated
//         "error": "timeout"         // or "connection-failed",
//                                    // "proxy-unreachable"; wins over the
//                                    // response fields when present
//       }
//     ],
//     "default": { "status": 404, "body": "no rule matched" }
//   }
//
// The first rule whose constraints all hold answers the request; otherwise
// the default response does (itself defaulting to plain 404). A rule whose
// delay_ms reaches the request's timeout budget reports a timeout without
// actually waiting; shorter delays really elapse.
class ScriptedTransport : public Transport {
 public:
  // Returns the transport, or nullptr with `error` set when the file cannot
  // be read or does not match the format above.
  static std::unique_ptr<ScriptedTransport> from_file(const std::string& path,
                                                      std::string* error);
  static std::unique_ptr<ScriptedTransport> from_json_text(
      const std::string& text, std::string* error);

  std::variant<WireResponse, TransportError> round_trip(
      const WireRequest& request) override;

  // Every request seen, oldest first, as "METHOD target" lines.
  const std::vector<std::string>& log() const { return log_; }

 private:
  struct Rule {
    std::optional<std::string> method;
    std::optional<std::string> path;
    std::optional<std::string> path_prefix;
    WireResponse response;
    int delay_ms = 0;
    std::optional<TransportError::Kind> error;
  };

  ScriptedTransport() = default;

  std::vector<Rule> rules_;
  WireResponse default_response_;
  std::vector<std::string> log_;
};

}  // namespace httpdsl

#endif  // HTTPDSL_TRANSPORT_HPP_
