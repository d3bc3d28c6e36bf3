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

#include <chrono>
#include <sstream>
#include <string>
#include <variant>

// CPPHTTPLIB_OPENSSL_SUPPORT comes from the build: every translation unit
// linked into one binary must agree on it, or the vendored HTTP types end up
// with two layouts.
#include "httplib.h"
#include "httpdsl/transport.hpp"

namespace httpdsl {

namespace {

// scheme://host[:port] for the httplib client, with IPv6 hosts re-bracketed
// and userinfo left out (it is never sent).
std::string connection_base(const ServerUrl& server) {
  std::ostringstream out;
  out << to_text(server.scheme) << "://";
  if (server.host.kind == UrlHost::Kind::kIpv6) {
    out << '[' << server.host.text << ']';
  } else {
    out << server.host.text;
  }
  if (server.port) {
    out << ':' << *server.port;
  }
  return out.str();
}

void set_timeouts(httplib::Client& client, int timeout_ms) {
  const time_t sec = timeout_ms / 1000;
  const time_t usec = static_cast<time_t>(timeout_ms % 1000) * 1000;
  client.set_connection_timeout(sec, usec);
  client.set_read_timeout(sec, usec);
  client.set_write_timeout(sec, usec);
}

TransportError classify_failure(httplib::Error error, bool via_proxy,
                                long long elapsed_ms, int timeout_ms) {
  const std::string detail = httplib::to_string(error);
  // Failures to even reach the other end point at the proxy when one is in
  // the way.
  const bool connect_failure = error == httplib::Error::Connection ||
                               error == httplib::Error::ConnectionTimeout ||
                               error == httplib::Error::ProxyConnection;
  if (via_proxy && connect_failure) {
    return {TransportError::Kind::kProxyUnreachable, detail};
  }
  if (error == httplib::Error::ConnectionTimeout) {
    return {TransportError::Kind::kTimeout, detail};
  }
  // Read/write failures carry no timeout marker of their own; an exchange
  // that died only once the budget was spent is reported as a timeout.
  if ((error == httplib::Error::Read || error == httplib::Error::Write) &&
      elapsed_ms >= timeout_ms) {
    return {TransportError::Kind::kTimeout,
            detail + " after " + std::to_string(elapsed_ms) + " ms"};
  }
  return {TransportError::Kind::kConnectionFailed, detail};
}

}  // namespace

std::variant<WireResponse, TransportError> HttplibTransport::round_trip(
    const WireRequest& request) {
  httplib::Client client(connection_base(request.server));
  client.set_follow_location(false);
  set_timeouts(client, request.timeout_ms);
  if (request.proxy) {
    client.set_proxy(request.proxy->host,
                     static_cast<int>(request.proxy->port));
  }

  httplib::Request wire;
  wire.method = to_text(request.method);
  wire.path = request.target();
  for (const auto& [key, value] : request.headers) {
    wire.headers.emplace(key, value);
  }
  if (request.body) {
    wire.body = *request.body;
    if (request.content_type) {
      wire.headers.emplace("Content-Type", *request.content_type);
    }
  }

  const auto started = std::chrono::steady_clock::now();
  httplib::Result result = client.send(wire);
  const auto elapsed_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(
          std::chrono::steady_clock::now() - started)
          .count();

  if (!result) {
    return classify_failure(result.error(), request.proxy.has_value(),
                            elapsed_ms, request.timeout_ms);
  }

  WireResponse response;
  response.status = result->status;
  for (const auto& [key, value] : result->headers) {
    response.headers.emplace_back(key, value);
  }
  response.body = result->body;
  return response;
}

}  // namespace httpdsl
