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

#ifndef HTTPDSL_MODEL_HPP_
#define HTTPDSL_MODEL_HPP_

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "httpdsl/diagnostics.hpp"

namespace httpdsl {

// The four request methods the language supports.
enum class RequestMethod {
  kGet,
  kPost,
  kPut,
  kDelete,
};

std::string to_text(RequestMethod method);
std::optional<RequestMethod> parse_request_method(const std::string& text);

// A reference to a variable. Input variables (`input $name`) are supplied by
// the caller when a message is sent; environment variables (`environment
// NAME`) are read from the process environment. Input names use identifier
// syntax; environment names are uppercase words joined by single underscores.
struct VariableRef {
  enum class Kind {
    kInput,
    kEnvironment,
  };

  Kind kind = Kind::kInput;
  std::string name;
  Span span;

  friend bool operator==(const VariableRef& a, const VariableRef& b) {
    return a.kind == b.kind && a.name == b.name;
  }
};

// A field that is either literal text or a variable to be resolved later.
struct ValueOrVariable {
  std::variant<std::string, VariableRef> value;

  bool is_variable() const {
    return std::holds_alternative<VariableRef>(value);
  }
  const std::string& literal() const { return std::get<std::string>(value); }
  const VariableRef& variable() const { return std::get<VariableRef>(value); }

  static ValueOrVariable from_literal(std::string text) {
    return ValueOrVariable{std::move(text)};
  }
  static ValueOrVariable from_variable(VariableRef ref) {
    return ValueOrVariable{std::move(ref)};
  }

  friend bool operator==(const ValueOrVariable&, const ValueOrVariable&) =
      default;
};

// One `param key: value` entry of the query string, in author order.
struct Parameter {
  ValueOrVariable key;
  ValueOrVariable value;
  Span span;

  friend bool operator==(const Parameter& a, const Parameter& b) {
    return a.key == b.key && a.value == b.value;
  }
};

// Curated set of well-known request header names. Authors may also write any
// other syntactically valid header name; it is kept as a custom key.
enum class WellKnownHeaderKey {
  kAccept,
  kAcceptCharset,
  kAcceptEncoding,
  kAcceptLanguage,
  kAuthorization,
  kCacheControl,
  kConnection,
  kContentLength,
  kContentType,
  kCookie,
  kDate,
  kExpect,
  kFrom,
  kHost,
  kIfMatch,
  kIfModifiedSince,
  kIfNoneMatch,
  kIfRange,
  kIfUnmodifiedSince,
  kMaxForwards,
  kOrigin,
  kPragma,
  kProxyAuthorization,
  kRange,
  kReferer,
  kTe,
  kTransferEncoding,
  kUpgrade,
  kUserAgent,
  kVia,
};

// Number of entries in WellKnownHeaderKey.
inline constexpr int kWellKnownHeaderKeyCount = 30;

std::string to_text(WellKnownHeaderKey key);
// Case-insensitive lookup; returns nullopt for names outside the curated set.
std::optional<WellKnownHeaderKey> parse_well_known_header_key(
    const std::string& text);

// A header key: a curated well-known name, a custom literal name, or a
// variable resolved when the message is sent.
struct HeaderKey {
  std::variant<WellKnownHeaderKey, std::string, VariableRef> value;

  bool is_well_known() const {
    return std::holds_alternative<WellKnownHeaderKey>(value);
  }
  bool is_custom() const { return std::holds_alternative<std::string>(value); }
  bool is_variable() const {
    return std::holds_alternative<VariableRef>(value);
  }

  friend bool operator==(const HeaderKey&, const HeaderKey&) = default;
};

struct Header {
  HeaderKey key;
  ValueOrVariable value;
  Span span;

  friend bool operator==(const Header& a, const Header& b) {
    return a.key == b.key && a.value == b.value;
  }
};

// Well-known media types for bodies and expected response types.
enum class WellKnownMediaType {
  kTextPlain,
  kApplicationJson,
  kApplicationXml,
  kImageJpeg,
  kImagePng,
  kApplicationOctetStream,
  kMultipartFormData,
  kApplicationXWwwFormUrlencoded,
};

std::string to_text(WellKnownMediaType type);
// Case-insensitive lookup; returns nullopt for types outside the known set.
std::optional<WellKnownMediaType> parse_well_known_media_type(
    const std::string& text);

// A media type: well-known, custom literal ("type/subtype"), or variable.
struct ContentTypeSpec {
  std::variant<WellKnownMediaType, std::string, VariableRef> value;

  bool is_well_known() const {
    return std::holds_alternative<WellKnownMediaType>(value);
  }
  bool is_custom() const { return std::holds_alternative<std::string>(value); }
  bool is_variable() const {
    return std::holds_alternative<VariableRef>(value);
  }

  friend bool operator==(const ContentTypeSpec&, const ContentTypeSpec&) =
      default;
};

// How the payload field of a body is interpreted before sending:
//   kText   - the payload text is the body, verbatim
//   kFile   - the payload names a file whose contents become the body
//   kStream - the payload names a file that is streamed at send time
//   kBytes  - the payload is base64 and decodes to the raw body
enum class EntityKind {
  kText,
  kFile,
  kStream,
  kBytes,
};

std::string to_text(EntityKind kind);
std::optional<EntityKind> parse_entity_kind(const std::string& text);

struct Body {
  ContentTypeSpec content_type;
  EntityKind entity = EntityKind::kText;
  ValueOrVariable payload;
  Span span;

  friend bool operator==(const Body& a, const Body& b) {
    return a.content_type == b.content_type && a.entity == b.entity &&
           a.payload == b.payload;
  }
};

// What the caller receives back: the decoded payload text alone, or the full
// response object with status, headers-derived fields, and payload.
enum class ReturnForm {
  kFullResponse,
  kPayloadText,
};

struct ReturnValue {
  ContentTypeSpec expected_type;
  ReturnForm form = ReturnForm::kPayloadText;
  Span span;

  friend bool operator==(const ReturnValue& a, const ReturnValue& b) {
    return a.expected_type == b.expected_type && a.form == b.form;
  }
};

// The return value applied when a message has no `returns` clause.
ReturnValue default_return_value();

struct ProxySpec {
  ValueOrVariable host;
  ValueOrVariable port;

  friend bool operator==(const ProxySpec&, const ProxySpec&) = default;
};

struct BasicAuthSpec {
  ValueOrVariable username;
  ValueOrVariable password;

  friend bool operator==(const BasicAuthSpec&, const BasicAuthSpec&) = default;
};

// Per-message send options. Every field is optional; `timeout <ms>` replaces
// the default request timeout of 5000 milliseconds.
struct Customization {
  std::optional<ProxySpec> proxy;
  std::optional<BasicAuthSpec> basic_auth;
  std::optional<int> timeout_ms;
  Span span;

  friend bool operator==(const Customization& a, const Customization& b) {
    return a.proxy == b.proxy && a.basic_auth == b.basic_auth &&
           a.timeout_ms == b.timeout_ms;
  }
};

// The default timeout, in milliseconds, for messages without `timeout`.
inline constexpr int kDefaultTimeoutMs = 5000;

// A message URL split into the server part (scheme, host, port) and the path
// part. Either side may be a variable resolved when the message is sent.
struct AbstractUrl {
  ValueOrVariable server;
  ValueOrVariable path;
  Span span;

  friend bool operator==(const AbstractUrl& a, const AbstractUrl& b) {
    return a.server == b.server && a.path == b.path;
  }
};

// One `http { ... }` block: a named request description.
struct HttpMessage {
  std::string name;
  AbstractUrl url;
  RequestMethod method = RequestMethod::kGet;
  std::vector<Parameter> query;
  std::vector<Header> headers;
  std::optional<Body> body;
  std::optional<ReturnValue> return_value;
  std::optional<Customization> customization;
  Span span;
  Span name_span;

  friend bool operator==(const HttpMessage& a, const HttpMessage& b) {
    return a.name == b.name && a.url == b.url && a.method == b.method &&
           a.query == b.query && a.headers == b.headers && a.body == b.body &&
           a.return_value == b.return_value &&
           a.customization == b.customization;
  }
};

// All messages parsed from one source, in author order. `source_name` is
// provenance for diagnostics and reports; like spans, it does not take part
// in equality.
struct RequestDocument {
  std::string source_name;
  std::vector<HttpMessage> messages;

  friend bool operator==(const RequestDocument& a, const RequestDocument& b) {
    return a.messages == b.messages;
  }
};

// Shared lexical predicates.
//
// Identifiers name messages and input variables: [A-Za-z_][A-Za-z0-9_]*.
bool is_identifier(const std::string& text);
// Environment variable names: uppercase words joined by single underscores,
// [A-Z]+(_[A-Z]+)*.
bool is_environment_name(const std::string& text);
// HTTP header field names (RFC 7230 token): one or more tchar.
bool is_http_token(const std::string& text);
// Media type shaped as token "/" token.
bool is_media_type(const std::string& text);

// Semantic checks that go beyond what the grammar can express. Returns one
// diagnostic per problem found; an empty result means the message is valid.
//
// Checked here (not during parsing) so programmatically built messages get
// the same scrutiny as parsed ones:
//   - the message name uses identifier syntax
//   - variable names match their kind's syntax everywhere they appear
//   - a body is only present on POST and PUT messages
//   - literal custom header keys are HTTP tokens, literal custom media
//     types are shaped type/subtype
//   - literal query parameter keys are non-empty
//   - a customized timeout is positive
//   - proxy and basic-auth customizations have non-empty literal parts
std::vector<Diagnostic> validate_message(const HttpMessage& message,
                                         const std::string& source_name);

// validate_message for every message, plus document-wide checks: message
// names must be unique within the document.
std::vector<Diagnostic> validate_document(const RequestDocument& document);

}  // namespace httpdsl

#endif  // HTTPDSL_MODEL_HPP_
