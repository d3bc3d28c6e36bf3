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

#include "httpdsl/model.hpp"

#include <algorithm>
#include <array>
#include <cctype>
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

struct HeaderKeyName {
  WellKnownHeaderKey key;
  const char* text;
};

constexpr std::array<HeaderKeyName, kWellKnownHeaderKeyCount>
    kWellKnownHeaderNames = {{
        {WellKnownHeaderKey::kAccept, "Accept"},
        {WellKnownHeaderKey::kAcceptCharset, "Accept-Charset"},
        {WellKnownHeaderKey::kAcceptEncoding, "Accept-Encoding"},
        {WellKnownHeaderKey::kAcceptLanguage, "Accept-Language"},
        {WellKnownHeaderKey::kAuthorization, "Authorization"},
        {WellKnownHeaderKey::kCacheControl, "Cache-Control"},
        {WellKnownHeaderKey::kConnection, "Connection"},
        {WellKnownHeaderKey::kContentLength, "Content-Length"},
        {WellKnownHeaderKey::kContentType, "Content-Type"},
        {WellKnownHeaderKey::kCookie, "Cookie"},
        {WellKnownHeaderKey::kDate, "Date"},
        {WellKnownHeaderKey::kExpect, "Expect"},
        {WellKnownHeaderKey::kFrom, "From"},
        {WellKnownHeaderKey::kHost, "Host"},
        {WellKnownHeaderKey::kIfMatch, "If-Match"},
        {WellKnownHeaderKey::kIfModifiedSince, "If-Modified-Since"},
        {WellKnownHeaderKey::kIfNoneMatch, "If-None-Match"},
        {WellKnownHeaderKey::kIfRange, "If-Range"},
        {WellKnownHeaderKey::kIfUnmodifiedSince, "If-Unmodified-Since"},
        {WellKnownHeaderKey::kMaxForwards, "Max-Forwards"},
        {WellKnownHeaderKey::kOrigin, "Origin"},
        {WellKnownHeaderKey::kPragma, "Pragma"},
        {WellKnownHeaderKey::kProxyAuthorization, "Proxy-Authorization"},
        {WellKnownHeaderKey::kRange, "Range"},
        {WellKnownHeaderKey::kReferer, "Referer"},
        {WellKnownHeaderKey::kTe, "TE"},
        {WellKnownHeaderKey::kTransferEncoding, "Transfer-Encoding"},
        {WellKnownHeaderKey::kUpgrade, "Upgrade"},
        {WellKnownHeaderKey::kUserAgent, "User-Agent"},
        {WellKnownHeaderKey::kVia, "Via"},
    }};

struct MediaTypeName {
  WellKnownMediaType type;
  const char* text;
};

constexpr std::array<MediaTypeName, 8> kWellKnownMediaTypeNames = {{
    {WellKnownMediaType::kTextPlain, "text/plain"},
    {WellKnownMediaType::kApplicationJson, "application/json"},
    {WellKnownMediaType::kApplicationXml, "application/xml"},
    {WellKnownMediaType::kImageJpeg, "image/jpeg"},
    {WellKnownMediaType::kImagePng, "image/png"},
    {WellKnownMediaType::kApplicationOctetStream, "application/octet-stream"},
    {WellKnownMediaType::kMultipartFormData, "multipart/form-data"},
    {WellKnownMediaType::kApplicationXWwwFormUrlencoded,
     "application/x-www-form-urlencoded"},
}};

bool is_tchar(unsigned char c) {
  if (std::isalnum(c) != 0) {
    return true;
  }
  static constexpr char kExtra[] = "!#$%&'*+-.^_`|~";
  for (const char* p = kExtra; *p != '\0'; ++p) {
    if (static_cast<unsigned char>(*p) == c) {
      return true;
    }
  }
  return false;
}

Diagnostic make_error(const std::string& source, Span span,
                      std::string message) {
  return Diagnostic{Severity::kError, source, span, std::move(message)};
}

// Appends a diagnostic for `ref` if its name does not match the syntax of its
// kind. `what` names the location for the message text.
void check_variable(const VariableRef& ref, const std::string& what,
                    const std::string& source,
                    std::vector<Diagnostic>* out) {
  if (ref.kind == VariableRef::Kind::kInput) {
    if (!is_identifier(ref.name)) {
      out->push_back(make_error(
          source, ref.span,
          "input variable name '" + ref.name + "' in " + what +
              " must match [A-Za-z_][A-Za-z0-9_]*"));
    }
  } else {
    if (!is_environment_name(ref.name)) {
      out->push_back(make_error(
          source, ref.span,
          "environment variable name '" + ref.name + "' in " + what +
              " must match [A-Z]+(_[A-Z]+)*"));
    }
  }
}

void check_value(const ValueOrVariable& value, const std::string& what,
                 Span fallback_span, const std::string& source,
                 std::vector<Diagnostic>* out) {
  if (value.is_variable()) {
    VariableRef ref = value.variable();
    if (ref.span == Span{}) {
      ref.span = fallback_span;
    }
    check_variable(ref, what, source, out);
  }
}

}  // namespace

std::string to_text(RequestMethod method) {
  switch (method) {
    case RequestMethod::kGet:
      return "GET";
    case RequestMethod::kPost:
      return "POST";
    case RequestMethod::kPut:
      return "PUT";
    case RequestMethod::kDelete:
      return "DELETE";
  }
  return "GET";
}

std::optional<RequestMethod> parse_request_method(const std::string& text) {
  if (text == "GET") {
    return RequestMethod::kGet;
  }
  if (text == "POST") {
    return RequestMethod::kPost;
  }
  if (text == "PUT") {
    return RequestMethod::kPut;
  }
  if (text == "DELETE") {
    return RequestMethod::kDelete;
  }
  return std::nullopt;
}

std::string to_text(WellKnownHeaderKey key) {
  for (const HeaderKeyName& entry : kWellKnownHeaderNames) {
    if (entry.key == key) {
      return entry.text;
    }
  }
  return "";
}

std::optional<WellKnownHeaderKey> parse_well_known_header_key(
    const std::string& text) {
  const std::string lowered = ascii_lower(text);
  for (const HeaderKeyName& entry : kWellKnownHeaderNames) {
    if (ascii_lower(entry.text) == lowered) {
      return entry.key;
    }
  }
  return std::nullopt;
}

std::string to_text(WellKnownMediaType type) {
  for (const MediaTypeName& entry : kWellKnownMediaTypeNames) {
    if (entry.type == type) {
      return entry.text;
    }
  }
  return "";
}

std::optional<WellKnownMediaType> parse_well_known_media_type(
    const std::string& text) {
  const std::string lowered = ascii_lower(text);
  for (const MediaTypeName& entry : kWellKnownMediaTypeNames) {
    if (entry.text == lowered) {
      return entry.type;
    }
  }
  return std::nullopt;
}

std::string to_text(EntityKind kind) {
  switch (kind) {
    case EntityKind::kText:
      return "TEXT";
    case EntityKind::kFile:
      return "FILE";
    case EntityKind::kStream:
      return "STREAM";
    case EntityKind::kBytes:
      return "BYTES";
  }
  return "TEXT";
}

std::optional<EntityKind> parse_entity_kind(const std::string& text) {
  if (text == "TEXT") {
    return EntityKind::kText;
  }
  if (text == "FILE") {
    return EntityKind::kFile;
  }
  if (text == "STREAM") {
    return EntityKind::kStream;
  }
  if (text == "BYTES") {
    return EntityKind::kBytes;
  }
  return std::nullopt;
}

ReturnValue default_return_value() {
  ReturnValue value;
  value.expected_type =
      ContentTypeSpec{WellKnownMediaType::kTextPlain};
  value.form = ReturnForm::kPayloadText;
  return value;
}

bool is_identifier(const std::string& text) {
  if (text.empty()) {
    return false;
  }
  const unsigned char first = static_cast<unsigned char>(text[0]);
  if (std::isalpha(first) == 0 && first != '_') {
    return false;
  }
  for (std::size_t i = 1; i < text.size(); ++i) {
    const unsigned char c = static_cast<unsigned char>(text[i]);
    if (std::isalnum(c) == 0 && c != '_') {
      return false;
    }
  }
  return true;
}

bool is_environment_name(const std::string& text) {
  if (text.empty()) {
    return false;
  }
  bool expecting_word = true;
  for (const char ch : text) {
    if (ch == '_') {
      if (expecting_word) {
        return false;  // empty word before this underscore
      }
      expecting_word = true;
    } else if (ch >= 'A' && ch <= 'Z') {
      expecting_word = false;
    } else {
      return false;
    }
  }
  return !expecting_word;  // must not end on an underscore
}

bool is_http_token(const std::string& text) {
  if (text.empty()) {
    return false;
  }
  for (const char ch : text) {
    if (!is_tchar(static_cast<unsigned char>(ch))) {
      return false;
    }
  }
  return true;
}

bool is_media_type(const std::string& text) {
  const std::size_t slash = text.find('/');
  if (slash == std::string::npos) {
    return false;
  }
  return is_http_token(text.substr(0, slash)) &&
         is_http_token(text.substr(slash + 1));
}

std::vector<Diagnostic> validate_message(const HttpMessage& message,
                                         const std::string& source_name) {
  std::vector<Diagnostic> out;

  if (!is_identifier(message.name)) {
    out.push_back(make_error(source_name, message.name_span,
                             "message name '" + message.name +
                                 "' must match [A-Za-z_][A-Za-z0-9_]*"));
  }

  check_value(message.url.server, "url server", message.url.span, source_name,
              &out);
  check_value(message.url.path, "url path", message.url.span, source_name,
              &out);

  for (const Parameter& param : message.query) {
    check_value(param.key, "a query parameter key", param.span, source_name,
                &out);
    check_value(param.value, "a query parameter value", param.span,
                source_name, &out);
    if (!param.key.is_variable() && param.key.literal().empty()) {
      out.push_back(make_error(source_name, param.span,
                               "query parameter key must not be empty"));
    }
  }

  for (const Header& header : message.headers) {
    if (header.key.is_variable()) {
      VariableRef ref = std::get<VariableRef>(header.key.value);
      if (ref.span == Span{}) {
        ref.span = header.span;
      }
      check_variable(ref, "a header key", source_name, &out);
    } else if (header.key.is_custom()) {
      const std::string& name = std::get<std::string>(header.key.value);
      if (!is_http_token(name)) {
        out.push_back(make_error(
            source_name, header.span,
            "header key '" + name + "' is not a valid header name"));
      }
    }
    check_value(header.value, "a header value", header.span, source_name,
                &out);
  }

  if (message.body.has_value()) {
    const Body& body = *message.body;
    if (message.method != RequestMethod::kPost &&
        message.method != RequestMethod::kPut) {
      out.push_back(make_error(
          source_name, body.span,
          "body not allowed for " + to_text(message.method) +
              "; only POST and PUT messages carry a body"));
    }
    if (body.content_type.is_custom()) {
      const std::string& text = std::get<std::string>(body.content_type.value);
      if (!is_media_type(text)) {
        out.push_back(make_error(
            source_name, body.span,
            "content type '" + text + "' is not shaped like type/subtype"));
      }
    } else if (body.content_type.is_variable()) {
      VariableRef ref = std::get<VariableRef>(body.content_type.value);
      if (ref.span == Span{}) {
        ref.span = body.span;
      }
      check_variable(ref, "a body content type", source_name, &out);
    }
    check_value(body.payload, "a body payload", body.span, source_name, &out);
  }

  if (message.return_value.has_value()) {
    const ReturnValue& ret = *message.return_value;
    if (ret.expected_type.is_custom()) {
      const std::string& text = std::get<std::string>(ret.expected_type.value);
      if (!is_media_type(text)) {
        out.push_back(make_error(
            source_name, ret.span,
            "expected type '" + text + "' is not shaped like type/subtype"));
      }
    } else if (ret.expected_type.is_variable()) {
      VariableRef ref = std::get<VariableRef>(ret.expected_type.value);
      if (ref.span == Span{}) {
        ref.span = ret.span;
      }
      check_variable(ref, "an expected return type", source_name, &out);
    }
  }

  if (message.customization.has_value()) {
    const Customization& custom = *message.customization;
    if (!custom.proxy.has_value() && !custom.basic_auth.has_value() &&
        !custom.timeout_ms.has_value()) {
      out.push_back(make_error(
          source_name, custom.span,
          "customize block must set at least one of proxy, basicauth, or "
          "timeout"));
    }
    if (custom.timeout_ms.has_value() && *custom.timeout_ms <= 0) {
      out.push_back(make_error(
          source_name, custom.span,
          "timeout must be a positive number of milliseconds"));
    }
    if (custom.proxy.has_value()) {
      check_value(custom.proxy->host, "a proxy host", custom.span, source_name,
                  &out);
      check_value(custom.proxy->port, "a proxy port", custom.span, source_name,
                  &out);
      if (!custom.proxy->host.is_variable() &&
          custom.proxy->host.literal().empty()) {
        out.push_back(make_error(source_name, custom.span,
                                 "proxy host must not be empty"));
      }
    }
    if (custom.basic_auth.has_value()) {
      check_value(custom.basic_auth->username, "a basic-auth username",
                  custom.span, source_name, &out);
      check_value(custom.basic_auth->password, "a basic-auth password",
                  custom.span, source_name, &out);
      if (!custom.basic_auth->username.is_variable() &&
          custom.basic_auth->username.literal().empty()) {
        out.push_back(make_error(source_name, custom.span,
                                 "basic-auth username must not be empty"));
      }
    }
  }

  return out;
}

std::vector<Diagnostic> validate_document(const RequestDocument& document) {
  std::vector<Diagnostic> out;
  std::set<std::string> seen;
  for (const HttpMessage& message : document.messages) {
    std::vector<Diagnostic> message_diags =
        validate_message(message, document.source_name);
    out.insert(out.end(), message_diags.begin(), message_diags.end());
    if (!seen.insert(message.name).second) {
      out.push_back(make_error(document.source_name, message.name_span,
                               "duplicate message name '" + message.name +
                                   "' in the same document"));
    }
  }
  return out;
}

}  // namespace httpdsl
