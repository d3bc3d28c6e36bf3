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

#include "httpdsl/executor.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "httpdsl/base64.hpp"

namespace httpdsl {

namespace {

std::optional<std::string> read_file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return std::nullopt;
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) {
    return std::nullopt;
  }
  return buffer.str();
}

bool file_readable(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return static_cast<bool>(in);
}

bool equals_ignore_case(std::string_view a, std::string_view b) {
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

// Shared by RequestPlan and WireRequest.
std::string origin_form_target(const std::string& absolute_url) {
  const std::size_t scheme_end = absolute_url.find("://");
  const std::size_t slash = absolute_url.find('/', scheme_end + 3);
  return absolute_url.substr(slash);
}

}  // namespace

// ---------------------------------------------------------------------------
// Response classification
// ---------------------------------------------------------------------------

bool status_succeeded(int status) { return status >= 200 && status <= 299; }

bool status_try_again(int status) {
  return status == 408 || status == 429 || (status >= 500 && status <= 599);
}

bool status_redirect(int status) { return status >= 300 && status <= 399; }

BranchResult classify(const ResponseObject& response) {
  return response.succeeded ? BranchResult::kSuccess : BranchResult::kFailure;
}

std::optional<std::string> find_header(
    const std::vector<std::pair<std::string, std::string>>& headers,
    std::string_view name) {
  for (const auto& [key, value] : headers) {
    if (equals_ignore_case(key, name)) {
      return value;
    }
  }
  return std::nullopt;
}

std::string sanitize_utf8(std::string_view bytes) {
  static constexpr char kReplacement[] = "\xef\xbf\xbd";  // U+FFFD
  std::string out;
  out.reserve(bytes.size());
  std::size_t i = 0;
  while (i < bytes.size()) {
    const unsigned char lead = static_cast<unsigned char>(bytes[i]);
    std::size_t length = 0;
    unsigned char lo = 0x80;
    unsigned char hi = 0xbf;
    if (lead < 0x80) {
      out.push_back(static_cast<char>(lead));
      ++i;
      continue;
    } else if (lead >= 0xc2 && lead <= 0xdf) {
      length = 2;
    } else if (lead >= 0xe0 && lead <= 0xef) {
      length = 3;
      // Reject overlong three-byte forms and surrogate code points by
      // narrowing the range of the first continuation byte.
      if (lead == 0xe0) {
        lo = 0xa0;
      } else if (lead == 0xed) {
        hi = 0x9f;
      }
    } else if (lead >= 0xf0 && lead <= 0xf4) {
      length = 4;
      // Likewise for overlong four-byte forms and values past U+10FFFF.
      if (lead == 0xf0) {
        lo = 0x90;
      } else if (lead == 0xf4) {
        hi = 0x8f;
      }
    } else {
      // 0x80..0xC1 and 0xF5..0xFF can never start a sequence.
      out.append(kReplacement);
      ++i;
      continue;
    }
    // Consume continuation bytes; the first has the narrowed range. On a
    // mismatch, the bytes consumed so far become one replacement character
    // and decoding resumes at the offending byte.
    std::size_t j = i + 1;
    bool ok = true;
    for (std::size_t k = 1; k < length; ++k, ++j) {
      if (j >= bytes.size()) {
        ok = false;
        break;
      }
      const unsigned char c = static_cast<unsigned char>(bytes[j]);
      const unsigned char min = (k == 1) ? lo : 0x80;
      const unsigned char max = (k == 1) ? hi : 0xbf;
      if (c < min || c > max) {
        ok = false;
        break;
      }
    }
    if (ok) {
      out.append(bytes.substr(i, length));
      i += length;
    } else {
      out.append(kReplacement);
      i = j;
    }
  }
  return out;
}

ResponseObject handle_response(const WireResponse& wire,
                               RequestMethod method) {
  ResponseObject response;
  response.payload = sanitize_utf8(wire.body);
  response.statuscode = wire.status;
  response.succeeded = status_succeeded(wire.status);
  response.try_again = status_try_again(wire.status);
  if (status_redirect(wire.status)) {
    response.next_uri = find_header(wire.headers, "Location");
  }
  response.request_type = method;
  return response;
}

// ---------------------------------------------------------------------------
// Plans
// ---------------------------------------------------------------------------

std::string RequestPlan::absolute_url() const {
  return render_url(server, path, query);
}

std::string WireRequest::absolute_url() const {
  return render_url(server, path, query);
}

std::string WireRequest::target() const {
  return origin_form_target(absolute_url());
}

std::string to_text(PlanError::Kind kind) {
  switch (kind) {
    case PlanError::Kind::kFileNotReadable:
      return "file not readable";
    case PlanError::Kind::kInvalidPayload:
      return "invalid payload";
  }
  return "invalid payload";
}

std::string to_text(TransportError::Kind kind) {
  switch (kind) {
    case TransportError::Kind::kTimeout:
      return "timeout";
    case TransportError::Kind::kConnectionFailed:
      return "connection failed";
    case TransportError::Kind::kProxyUnreachable:
      return "proxy unreachable";
  }
  return "connection failed";
}

PlanResult build_plan(const ResolvedRequest& request) {
  RequestPlan plan;
  plan.message_name = request.message_name;
  plan.method = request.method;
  plan.server = request.server;
  plan.path = request.path;
  plan.query = request.query;
  plan.headers = request.headers;
  plan.return_form = request.return_form;
  plan.expected_content_type = request.expected_content_type;
  plan.proxy = request.proxy;
  plan.timeout_ms = request.timeout_ms;

  if (request.basic_auth) {
    plan.headers.emplace_back(
        "Authorization",
        "Basic " + base64_encode(request.basic_auth->username + ":" +
                                 request.basic_auth->password));
  }

  if (request.body) {
    plan.content_type = request.body->content_type;
    const std::string& payload = request.body->payload;
    switch (request.body->entity) {
      case EntityKind::kText:
        plan.body = payload;
        break;
      case EntityKind::kFile: {
        std::optional<std::string> bytes = read_file_bytes(payload);
        if (!bytes) {
          return {std::nullopt,
                  PlanError{PlanError::Kind::kFileNotReadable,
                            "cannot read body file \"" + payload + "\""}};
        }
        plan.body = std::move(*bytes);
        break;
      }
      case EntityKind::kStream:
        // Diagnosed here, read again when the request is sent.
        if (!file_readable(payload)) {
          return {std::nullopt,
                  PlanError{PlanError::Kind::kFileNotReadable,
                            "cannot read body stream \"" + payload + "\""}};
        }
        plan.stream_path = payload;
        break;
      case EntityKind::kBytes: {
        std::optional<std::string> decoded = base64_decode(payload);
        if (!decoded) {
          return {std::nullopt,
                  PlanError{PlanError::Kind::kInvalidPayload,
                            "body payload is not valid base64"}};
        }
        plan.body = std::move(*decoded);
        break;
      }
    }
  }

  return {std::move(plan), std::nullopt};
}

// ---------------------------------------------------------------------------
// Execution
// ---------------------------------------------------------------------------

ExecuteResult execute(const RequestPlan& plan, Transport& transport) {
  WireRequest wire;
  wire.method = plan.method;
  wire.server = plan.server;
  wire.path = plan.path;
  wire.query = plan.query;
  wire.headers = plan.headers;
  wire.body = plan.body;
  wire.content_type = plan.content_type;
  wire.proxy = plan.proxy;
  wire.timeout_ms = plan.timeout_ms;

  if (plan.stream_path) {
    std::optional<std::string> bytes = read_file_bytes(*plan.stream_path);
    if (!bytes) {
      ExecuteResult result;
      result.plan_error =
          PlanError{PlanError::Kind::kFileNotReadable,
                    "cannot read body stream \"" + *plan.stream_path + "\""};
      return result;
    }
    wire.body = std::move(*bytes);
  }

  std::variant<WireResponse, TransportError> outcome =
      transport.round_trip(wire);
  ExecuteResult result;
  if (std::holds_alternative<TransportError>(outcome)) {
    result.transport_error = std::get<TransportError>(std::move(outcome));
    return result;
  }
  result.response =
      handle_response(std::get<WireResponse>(outcome), plan.method);
  return result;
}

ExecuteResult send_request(const ResolvedRequest& request,
                           Transport& transport) {
  PlanResult planned = build_plan(request);
  if (!planned.ok()) {
    ExecuteResult result;
    result.plan_error = std::move(planned.error);
    return result;
  }
  return execute(*planned.plan, transport);
}

}  // namespace httpdsl
