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

#ifndef HTTPDSL_EXECUTOR_HPP_
#define HTTPDSL_EXECUTOR_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "httpdsl/binder.hpp"
#include "httpdsl/model.hpp"
#include "httpdsl/url.hpp"

namespace httpdsl {

// ---------------------------------------------------------------------------
// Response model
// ---------------------------------------------------------------------------

// What the caller of a message receives once the exchange finishes. The
// derived fields follow one fixed classification of the status code:
//
//   succeeded   status in 200..299
//   try_again   status is 408, 429, or in 500..599 (the caller may retry;
//               nothing here retries automatically)
//   next_uri    the Location header value when status is in 300..399 and the
//               response carries one; redirects are reported, never followed
struct ResponseObject {
  std::string payload;  // response body decoded as UTF-8 text (see below)
  int statuscode = 0;
  bool succeeded = false;
  bool try_again = false;
  std::optional<std::string> next_uri;
  RequestMethod request_type = RequestMethod::kGet;

  friend bool operator==(const ResponseObject&, const ResponseObject&) =
      default;
};

// The two control-flow branches a finished exchange can take. Derived blocks
// route on this: kSuccess exactly when the response succeeded, kFailure for
// everything else (including responses marked try_again).
enum class BranchResult {
  kSuccess,
  kFailure,
};

BranchResult classify(const ResponseObject& response);

// Status-code predicates behind the ResponseObject fields.
bool status_succeeded(int status);
bool status_try_again(int status);
bool status_redirect(int status);

// Decodes `bytes` as UTF-8 text. Well-formed sequences pass through
// unchanged; each ill-formed sequence (truncated, overlong, surrogate, or
// out-of-range) is replaced by one U+FFFD replacement character and decoding
// resumes at the next byte. The result is always valid UTF-8.
std::string sanitize_utf8(std::string_view bytes);

// Case-insensitive header lookup; returns the first matching value.
std::optional<std::string> find_header(
    const std::vector<std::pair<std::string, std::string>>& headers,
    std::string_view name);

// ---------------------------------------------------------------------------
// Request plans
// ---------------------------------------------------------------------------

// A resolved request made wire-ready: the basic-auth customization has
// become an Authorization header, and the body payload has been materialized
// according to its entity kind (TEXT verbatim, FILE read from disk, BYTES
// base64-decoded). STREAM payloads record the file and are read when the
// request is sent.
struct RequestPlan {
  std::string message_name;
  RequestMethod method = RequestMethod::kGet;
  ServerUrl server;
  UrlPath path;
  std::vector<std::pair<std::string, std::string>> query;
  // Final wire headers: author headers in order, then the Authorization
  // header derived from a basicauth customization, if any. The body content
  // type travels separately in `content_type`.
  std::vector<std::pair<std::string, std::string>> headers;
  std::optional<std::string> body;         // materialized body bytes
  std::optional<std::string> stream_path;  // STREAM source, read at send time
  std::optional<std::string> content_type;
  ReturnForm return_form = ReturnForm::kPayloadText;
  std::string expected_content_type;
  std::optional<ResolvedRequest::ResolvedProxy> proxy;
  int timeout_ms = kDefaultTimeoutMs;

  bool has_body() const {
    return body.has_value() || stream_path.has_value();
  }
  std::string absolute_url() const;

  friend bool operator==(const RequestPlan&, const RequestPlan&) = default;
};

struct PlanError {
  enum class Kind {
    kFileNotReadable,  // FILE or STREAM payload names an unreadable file
    kInvalidPayload,   // BYTES payload is not valid base64
  };

  Kind kind = Kind::kInvalidPayload;
  std::string detail;

  friend bool operator==(const PlanError&, const PlanError&) = default;
};

struct PlanResult {
  std::optional<RequestPlan> plan;
  std::optional<PlanError> error;

  bool ok() const { return plan.has_value(); }
};

// Builds the wire-ready plan for a resolved request. FILE payloads are read
// here; STREAM payloads are checked for readability here and read again when
// the request is sent; BYTES payloads are base64-decoded here.
PlanResult build_plan(const ResolvedRequest& request);

// ---------------------------------------------------------------------------
// Transports
// ---------------------------------------------------------------------------

// One fully materialized exchange as handed to a transport: every field is
// final, including the body bytes (STREAM payloads are already read).
struct WireRequest {
  RequestMethod method = RequestMethod::kGet;
  ServerUrl server;
  UrlPath path;
  std::vector<std::pair<std::string, std::string>> query;
  std::vector<std::pair<std::string, std::string>> headers;
  std::optional<std::string> body;
  std::optional<std::string> content_type;
  std::optional<ResolvedRequest::ResolvedProxy> proxy;
  int timeout_ms = kDefaultTimeoutMs;

  // The full URL and its origin-form request target ("/path?query").
  std::string absolute_url() const;
  std::string target() const;
};

struct WireResponse {
  int status = 0;
  std::vector<std::pair<std::string, std::string>> headers;
  std::string body;
};

// Why a transport could not produce a response. Timeouts are detected
// against the request's timeout budget; connection failures through a proxy
// are reported as the proxy being unreachable.
struct TransportError {
  enum class Kind {
    kTimeout,
    kConnectionFailed,
    kProxyUnreachable,
  };

  Kind kind = Kind::kConnectionFailed;
  std::string detail;

  friend bool operator==(const TransportError&, const TransportError&) =
      default;
};

std::string to_text(TransportError::Kind kind);
std::string to_text(PlanError::Kind kind);

// The seam between request execution and the network. Implementations must
// not follow redirects, retry, or transform the response body.
class Transport {
 public:
  virtual ~Transport() = default;

  virtual std::variant<WireResponse, TransportError> round_trip(
      const WireRequest& request) = 0;
};

// ---------------------------------------------------------------------------
// Execution
// ---------------------------------------------------------------------------

// Exactly one of the three optionals is set: the response on success, the
// transport error when the exchange failed on the wire, or a plan error when
// a STREAM payload could not be read at send time (or, via send_request,
// when planning itself failed).
struct ExecuteResult {
  std::optional<ResponseObject> response;
  std::optional<TransportError> transport_error;
  std::optional<PlanError> plan_error;

  bool ok() const { return response.has_value(); }
};

// Derives the caller-visible response from a wire response: the payload is
// the body sanitized to UTF-8 text, and the classification fields follow the
// status-code rules documented on ResponseObject.
ResponseObject handle_response(const WireResponse& wire, RequestMethod method);

// Sends one planned request through `transport`: materializes a STREAM body
// if present, performs the round trip, and classifies the outcome. Exactly
// one round trip — no retries, no redirect following.
ExecuteResult execute(const RequestPlan& plan, Transport& transport);

// Convenience for callers holding a resolved request: build_plan + execute.
ExecuteResult send_request(const ResolvedRequest& request,
                           Transport& transport);

}  // namespace httpdsl

#endif  // HTTPDSL_EXECUTOR_HPP_
