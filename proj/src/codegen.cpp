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

#include "httpdsl/codegen.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "httpdsl/binder.hpp"

namespace httpdsl {

namespace {

constexpr char kSourceDir[] = "src/main/cpp";
constexpr char kGeneratedBanner[] =
    "// Generated by httpdsl. Do not edit: changes are lost on regeneration;\n"
    "// change the message description and regenerate instead.\n";

// ---------------------------------------------------------------------------
// Expression rendering
// ---------------------------------------------------------------------------

// Escapes `text` into a C++ string literal. Control bytes use three-digit
// octal escapes, which cannot swallow the characters that follow them.
std::string cpp_string_literal(const std::string& text) {
  std::string out = "\"";
  for (const char ch : text) {
    const unsigned char c = static_cast<unsigned char>(ch);
    switch (ch) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\r':
        out += "\\r";
        break;
      case '\t':
        out += "\\t";
        break;
      default:
        if (c < 0x20 || c == 0x7f) {
          char buffer[8];
          std::snprintf(buffer, sizeof(buffer), "\\%03o", c);
          out += buffer;
        } else {
          out += ch;
        }
    }
  }
  out += '"';
  return out;
}

// Environment variables become locals read once at the top of sendRequest;
// the prefix keeps them clear of the input-variable parameters.
std::string env_local(const std::string& name) { return "env_" + name; }

// A value position: literal text, an input parameter, or an environment
// local.
std::string value_expr(const ValueOrVariable& value) {
  if (!value.is_variable()) {
    return cpp_string_literal(value.literal());
  }
  const VariableRef& ref = value.variable();
  return ref.kind == VariableRef::Kind::kEnvironment ? env_local(ref.name)
                                                     : ref.name;
}

std::string header_key_expr(const HeaderKey& key) {
  if (key.is_well_known()) {
    return cpp_string_literal(to_text(std::get<WellKnownHeaderKey>(key.value)));
  }
  if (key.is_custom()) {
    return cpp_string_literal(std::get<std::string>(key.value));
  }
  const VariableRef& ref = std::get<VariableRef>(key.value);
  return ref.kind == VariableRef::Kind::kEnvironment ? env_local(ref.name)
                                                     : ref.name;
}

std::string content_type_expr(const ContentTypeSpec& spec) {
  if (spec.is_well_known()) {
    return cpp_string_literal(
        to_text(std::get<WellKnownMediaType>(spec.value)));
  }
  if (spec.is_custom()) {
    return cpp_string_literal(std::get<std::string>(spec.value));
  }
  const VariableRef& ref = std::get<VariableRef>(spec.value);
  return ref.kind == VariableRef::Kind::kEnvironment ? env_local(ref.name)
                                                     : ref.name;
}

std::string upper_copy(const std::string& text) {
  std::string out = text;
  for (char& c : out) {
    c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  }
  return out;
}

std::string content_type_comment(const ContentTypeSpec& spec) {
  if (spec.is_well_known()) {
    return to_text(std::get<WellKnownMediaType>(spec.value));
  }
  if (spec.is_custom()) {
    return std::get<std::string>(spec.value);
  }
  const VariableRef& ref = std::get<VariableRef>(spec.value);
  return (ref.kind == VariableRef::Kind::kEnvironment ? "environment "
                                                      : "input $") +
         ref.name;
}

// ---------------------------------------------------------------------------
// Fixed support units
// ---------------------------------------------------------------------------

std::string render_request_type_unit() {
  std::string out = kGeneratedBanner;
  out += R"gen(#ifndef HTTPCLIENT_REQUESTTYPE_HPP
#define HTTPCLIENT_REQUESTTYPE_HPP

namespace httpclient {

// The request method an exchange was sent with.
enum class RequestType {
  GET,
  POST,
  PUT,
  DELETE,
};

inline const char* requestTypeName(RequestType type) {
  switch (type) {
    case RequestType::GET:
      return "GET";
    case RequestType::POST:
      return "POST";
    case RequestType::PUT:
      return "PUT";
    case RequestType::DELETE:
      return "DELETE";
  }
  return "GET";
}

}  // namespace httpclient

#endif  // HTTPCLIENT_REQUESTTYPE_HPP
)gen";
  return out;
}

std::string render_response_object_unit() {
  std::string out = kGeneratedBanner;
  out += R"gen(#ifndef HTTPCLIENT_RESPONSEOBJECT_HPP
#define HTTPCLIENT_RESPONSEOBJECT_HPP

#include <optional>
#include <string>

#include "RequestType.hpp"

namespace httpclient {

// What sendRequest returns once an exchange finishes.
//
//   payload      response body decoded as UTF-8 text
//   statuscode   HTTP status code
//   succeeded    status in 200..299
//   tryAgain     status is 408, 429, or in 500..599; the caller may resend
//   nextUri      Location target when the status is a redirect (300..399);
//                redirects are reported, never followed
//   requestType  the method the request was sent with
struct ResponseObject {
  std::string payload;
  int statuscode = 0;
  bool succeeded = false;
  bool tryAgain = false;
  std::optional<std::string> nextUri;
  RequestType requestType = RequestType::GET;
};

}  // namespace httpclient

#endif  // HTTPCLIENT_RESPONSEOBJECT_HPP
)gen";
  return out;
}

std::string render_response_handler_unit() {
  std::string out = kGeneratedBanner;
  out += R"gen(#ifndef HTTPCLIENT_CUSTOMRESPONSEHANDLER_HPP
#define HTTPCLIENT_CUSTOMRESPONSEHANDLER_HPP

#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "RequestType.hpp"
#include "ResponseObject.hpp"

namespace httpclient {

// Shared engine for the generated clients: response classification plus the
// small text utilities the client units need. Classification is fixed:
// succeeded on 2xx, tryAgain on 408/429/5xx, nextUri only on a 3xx that
// carries a Location header.
class CustomResponseHandler {
 public:
  static ResponseObject handleResponse(int statuscode,
                                       const std::optional<std::string>& location,
                                       const std::string& body,
                                       RequestType requestType) {
    ResponseObject response;
    response.payload = sanitizeUtf8(body);
    response.statuscode = statuscode;
    response.succeeded = statuscode >= 200 && statuscode <= 299;
    response.tryAgain = statuscode == 408 || statuscode == 429 ||
                        (statuscode >= 500 && statuscode <= 599);
    if (statuscode >= 300 && statuscode <= 399 && location) {
      response.nextUri = *location;
    }
    response.requestType = requestType;
    return response;
  }

  // Reads a required environment variable; unset means the request cannot
  // be sent.
  static std::string requireEnv(const std::string& name) {
    const char* value = std::getenv(name.c_str());
    if (value == nullptr) {
      throw std::runtime_error("environment variable " + name + " is not set");
    }
    return std::string(value);
  }

  // scheme://host[:port] for the HTTP client: adds the default http scheme
  // when none is given and drops any userinfo (credentials travel in
  // headers, never in the URL).
  static std::string normalizeServer(const std::string& text) {
    std::string out = text;
    if (out.find("://") == std::string::npos) {
      out = "http://" + out;
    }
    const std::size_t schemeEnd = out.find("://") + 3;
    const std::size_t at = out.rfind('@');
    if (at != std::string::npos && at >= schemeEnd) {
      out = out.substr(0, schemeEnd) + out.substr(at + 1);
    }
    return out;
  }

  // "/" + the path with a single leading slash stripped, so both "a/b" and
  // "/a/b" address the same resource.
  static std::string normalizePath(const std::string& text) {
    std::string path = text;
    if (!path.empty() && path.front() == '/') {
      path.erase(0, 1);
    }
    return "/" + path;
  }

  // Appends one key=value pair, percent-encoding both sides.
  static void appendQuery(std::string& query, const std::string& key,
                          const std::string& value) {
    if (!query.empty()) {
      query += '&';
    }
    query += urlEncode(key) + "=" + urlEncode(value);
  }

  // Percent-encodes everything outside ALPHA / DIGIT / "-" / "." / "_" /
  // "~", with uppercase hex digits.
  static std::string urlEncode(const std::string& text) {
    static const char kHex[] = "0123456789ABCDEF";
    std::string out;
    out.reserve(text.size());
    for (const char ch : text) {
      const unsigned char c = static_cast<unsigned char>(ch);
      const bool plain = (ch >= 'A' && ch <= 'Z') || (ch >= 'a' && ch <= 'z') ||
                         (ch >= '0' && ch <= '9') || ch == '-' || ch == '.' ||
                         ch == '_' || ch == '~';
      if (plain) {
        out += ch;
      } else {
        out += '%';
        out += kHex[c >> 4];
        out += kHex[c & 0xF];
      }
    }
    return out;
  }

  static std::string basicAuthValue(const std::string& username,
                                    const std::string& password) {
    return "Basic " + base64Encode(username + ":" + password);
  }

  static std::string base64Encode(const std::string& bytes) {
    static const char kAlphabet[] =
        "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
    std::string out;
    out.reserve(((bytes.size() + 2) / 3) * 4);
    std::size_t i = 0;
    while (i + 3 <= bytes.size()) {
      const unsigned n = (static_cast<unsigned char>(bytes[i]) << 16) |
                         (static_cast<unsigned char>(bytes[i + 1]) << 8) |
                         static_cast<unsigned char>(bytes[i + 2]);
      out += kAlphabet[(n >> 18) & 0x3f];
      out += kAlphabet[(n >> 12) & 0x3f];
      out += kAlphabet[(n >> 6) & 0x3f];
      out += kAlphabet[n & 0x3f];
      i += 3;
    }
    const std::size_t rest = bytes.size() - i;
    if (rest == 1) {
      const unsigned n = static_cast<unsigned char>(bytes[i]) << 16;
      out += kAlphabet[(n >> 18) & 0x3f];
      out += kAlphabet[(n >> 12) & 0x3f];
      out += "==";
    } else if (rest == 2) {
      const unsigned n = (static_cast<unsigned char>(bytes[i]) << 16) |
                         (static_cast<unsigned char>(bytes[i + 1]) << 8);
      out += kAlphabet[(n >> 18) & 0x3f];
      out += kAlphabet[(n >> 12) & 0x3f];
      out += kAlphabet[(n >> 6) & 0x3f];
      out += '=';
    }
    return out;
  }

  // Strict base64: alphabet characters only, length a multiple of four,
  // correct padding. Anything else refuses the payload.
  static std::string base64Decode(const std::string& text) {
    if (text.size() % 4 != 0) {
      throw std::runtime_error("payload is not valid base64");
    }
    static const char kAlphabet[] =
        "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
    int reverse[256];
    for (int i = 0; i < 256; ++i) {
      reverse[i] = -1;
    }
    for (int i = 0; i < 64; ++i) {
      reverse[static_cast<unsigned char>(kAlphabet[i])] = i;
    }
    std::string out;
    out.reserve((text.size() / 4) * 3);
    for (std::size_t i = 0; i < text.size(); i += 4) {
      int values[4];
      int pad = 0;
      for (int j = 0; j < 4; ++j) {
        const char c = text[i + j];
        if (c == '=') {
          if (i + 4 != text.size() || j < 2) {
            throw std::runtime_error("payload is not valid base64");
          }
          ++pad;
          values[j] = 0;
          continue;
        }
        if (pad > 0 || reverse[static_cast<unsigned char>(c)] < 0) {
          throw std::runtime_error("payload is not valid base64");
        }
        values[j] = reverse[static_cast<unsigned char>(c)];
      }
      const unsigned n = (static_cast<unsigned>(values[0]) << 18) |
                         (static_cast<unsigned>(values[1]) << 12) |
                         (static_cast<unsigned>(values[2]) << 6) |
                         static_cast<unsigned>(values[3]);
      out += static_cast<char>((n >> 16) & 0xff);
      if (pad < 2) {
        out += static_cast<char>((n >> 8) & 0xff);
      }
      if (pad < 1) {
        out += static_cast<char>(n & 0xff);
      }
    }
    return out;
  }

  static std::string readFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw std::runtime_error("cannot read body file \"" + path + "\"");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
  }

  static int parsePort(const std::string& text) {
    int port = 0;
    for (const char c : text) {
      if (c < '0' || c > '9' || port > 65535) {
        port = -1;
        break;
      }
      port = port * 10 + (c - '0');
    }
    if (text.empty() || port < 1 || port > 65535) {
      throw std::runtime_error("invalid proxy port \"" + text + "\"");
    }
    return port;
  }

  // Decodes bytes as UTF-8; every ill-formed sequence becomes one U+FFFD
  // replacement character and decoding resumes at the offending byte.
  static std::string sanitizeUtf8(const std::string& bytes) {
    static const char kReplacement[] = "\xef\xbf\xbd";
    std::string out;
    out.reserve(bytes.size());
    std::size_t i = 0;
    while (i < bytes.size()) {
      const unsigned char lead = static_cast<unsigned char>(bytes[i]);
      std::size_t length = 0;
      unsigned char lo = 0x80;
      unsigned char hi = 0xbf;
      if (lead < 0x80) {
        out += static_cast<char>(lead);
        ++i;
        continue;
      } else if (lead >= 0xc2 && lead <= 0xdf) {
        length = 2;
      } else if (lead >= 0xe0 && lead <= 0xef) {
        length = 3;
        if (lead == 0xe0) {
          lo = 0xa0;  // rejects overlong three-byte forms
        } else if (lead == 0xed) {
          hi = 0x9f;  // rejects surrogate code points
        }
      } else if (lead >= 0xf0 && lead <= 0xf4) {
        length = 4;
        if (lead == 0xf0) {
          lo = 0x90;  // rejects overlong four-byte forms
        } else if (lead == 0xf4) {
          hi = 0x8f;  // rejects values past U+10FFFF
        }
      } else {
        out += kReplacement;
        ++i;
        continue;
      }
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
        out.append(bytes, i, length);
        i += length;
      } else {
        out += kReplacement;
        i = j;
      }
    }
    return out;
  }
};

}  // namespace httpclient

#endif  // HTTPCLIENT_CUSTOMRESPONSEHANDLER_HPP
)gen";
  return out;
}

std::string client_file_name(const HttpMessage& message) {
  return message.name + "Client.hpp";
}

std::string render_manifest(const std::vector<HttpMessage>& messages) {
  std::ostringstream out;
  out << "# Generated client project. Regeneration rewrites generated files\n"
      << "# but never deletes anything.\n"
      << "manifest-version 1\n"
      << "project httpLib\n"
      << "dialect cpp\n"
      << "standard c++17\n"
      << "dependency cpp-httplib 0.16 single-header httplib.h\n"
      << "note https needs CPPHTTPLIB_OPENSSL_SUPPORT and OpenSSL at build "
         "time\n"
      << "support " << kSourceDir << "/CustomResponseHandler.hpp\n"
      << "support " << kSourceDir << "/RequestType.hpp\n"
      << "support " << kSourceDir << "/ResponseObject.hpp\n";
  for (const HttpMessage& message : messages) {
    out << "client " << message.name << " " << kSourceDir << "/"
        << client_file_name(message) << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Client units
// ---------------------------------------------------------------------------

std::string render_client_unit_text(const HttpMessage& message) {
  const std::string class_name = message.name + "Client";
  const std::string guard =
      "HTTPCLIENT_" + upper_copy(message.name) + "CLIENT_HPP";
  const std::vector<std::string> inputs = collect_input_variables(message);
  const std::vector<std::string> environments =
      collect_environment_variables(message);
  const ReturnValue returns =
      message.return_value ? *message.return_value : default_return_value();
  const int timeout_ms =
      message.customization && message.customization->timeout_ms
          ? *message.customization->timeout_ms
          : kDefaultTimeoutMs;

  std::ostringstream out;
  out << kGeneratedBanner;
  out << "#ifndef " << guard << "\n";
  out << "#define " << guard << "\n\n";
  out << "#include <optional>\n"
         "#include <stdexcept>\n"
         "#include <string>\n\n"
         "#include \"httplib.h\"\n\n"
         "#include \"CustomResponseHandler.hpp\"\n"
         "#include \"RequestType.hpp\"\n"
         "#include \"ResponseObject.hpp\"\n\n"
         "namespace httpclient {\n\n";

  out << "// Message: " << message.name << " (" << to_text(message.method)
      << ", returns "
      << (returns.form == ReturnForm::kFullResponse ? "the full response"
                                                    : "the payload text")
      << ", expects " << content_type_comment(returns.expected_type) << ")\n";
  out << "class " << class_name << " {\n public:\n";

  // sendRequest(<input variables, in collection order>)
  out << "  static ResponseObject sendRequest(";
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (i > 0) {
      out << ",\n                                    ";
    }
    out << "const std::string& " << inputs[i];
  }
  out << ") {\n";

  for (const std::string& name : environments) {
    out << "    const std::string " << env_local(name)
        << " = CustomResponseHandler::requireEnv(" << cpp_string_literal(name)
        << ");\n";
  }
  if (!environments.empty()) {
    out << "\n";
  }

  out << "    const int timeoutMs_ = " << timeout_ms << ";\n\n";

  out << "    const std::string serverBase_ = "
         "CustomResponseHandler::normalizeServer("
      << value_expr(message.url.server) << ");\n";
  out << "    std::string target_ = CustomResponseHandler::normalizePath("
      << value_expr(message.url.path) << ");\n";
  if (!message.query.empty()) {
    out << "    std::string query_;\n";
    for (const Parameter& parameter : message.query) {
      out << "    CustomResponseHandler::appendQuery(query_, "
          << value_expr(parameter.key) << ", " << value_expr(parameter.value)
          << ");\n";
    }
    out << "    if (!query_.empty()) {\n"
           "      target_ += \"?\" + query_;\n"
           "    }\n";
  }
  out << "\n";

  out << "    httplib::Client client_(serverBase_);\n"
         "    client_.set_follow_location(false);\n"
         "    client_.set_connection_timeout(timeoutMs_ / 1000, (timeoutMs_ % "
         "1000) * 1000);\n"
         "    client_.set_read_timeout(timeoutMs_ / 1000, (timeoutMs_ % 1000) "
         "* 1000);\n"
         "    client_.set_write_timeout(timeoutMs_ / 1000, (timeoutMs_ % "
         "1000) * 1000);\n";
  if (message.customization && message.customization->proxy) {
    const ProxySpec& proxy = *message.customization->proxy;
    out << "    client_.set_proxy(" << value_expr(proxy.host)
        << ", CustomResponseHandler::parsePort(" << value_expr(proxy.port)
        << "));\n";
  }
  out << "\n";

  out << "    httplib::Request request_;\n";
  out << "    request_.method = " << cpp_string_literal(to_text(message.method))
      << ";\n";
  out << "    request_.path = target_;\n";
  for (const Header& header : message.headers) {
    out << "    request_.headers.emplace(" << header_key_expr(header.key)
        << ", " << value_expr(header.value) << ");\n";
  }
  if (message.customization && message.customization->basic_auth) {
    const BasicAuthSpec& auth = *message.customization->basic_auth;
    out << "    request_.headers.emplace(\"Authorization\", "
           "CustomResponseHandler::basicAuthValue("
        << value_expr(auth.username) << ", " << value_expr(auth.password)
        << "));\n";
  }
  if (message.body) {
    out << "    request_.headers.emplace(\"Content-Type\", "
        << content_type_expr(message.body->content_type) << ");\n";
    switch (message.body->entity) {
      case EntityKind::kText:
        out << "    request_.body = " << value_expr(message.body->payload)
            << ";  // TEXT entity: sent verbatim\n";
        break;
      case EntityKind::kFile:
        out << "    request_.body = CustomResponseHandler::readFile("
            << value_expr(message.body->payload)
            << ");  // FILE entity\n";
        break;
      case EntityKind::kStream:
        out << "    request_.body = CustomResponseHandler::readFile("
            << value_expr(message.body->payload)
            << ");  // STREAM entity: read when the request is sent\n";
        break;
      case EntityKind::kBytes:
        out << "    request_.body = CustomResponseHandler::base64Decode("
            << value_expr(message.body->payload)
            << ");  // BYTES entity: base64 payload\n";
        break;
    }
  }
  out << "\n";

  out << "    httplib::Result result_ = client_.send(request_);\n";
  out << "    if (!result_) {\n";
  out << "      throw std::runtime_error(" << cpp_string_literal(message.name)
      << " \": transport failure: \" + httplib::to_string(result_.error()));\n";
  out << "    }\n";
  out << "    std::optional<std::string> location_;\n"
         "    if (result_->has_header(\"Location\")) {\n"
         "      location_ = result_->get_header_value(\"Location\");\n"
         "    }\n";
  out << "    return CustomResponseHandler::handleResponse(result_->status, "
         "location_, result_->body, RequestType::"
      << to_text(message.method) << ");\n";
  out << "  }\n};\n\n}  // namespace httpclient\n\n#endif  // " << guard
      << "\n";
  return out.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// Public operations
// ---------------------------------------------------------------------------

RenderResult render_client_unit(const HttpMessage& message,
                                const std::string& dialect) {
  if (dialect != kCppDialect) {
    return {std::nullopt,
            CodegenError{CodegenError::Kind::kUnknownDialect,
                         "unknown dialect \"" + dialect + "\""}};
  }
  const std::vector<Diagnostic> problems =
      validate_message(message, "<codegen>");
  if (!problems.empty()) {
    return {std::nullopt,
            CodegenError{CodegenError::Kind::kInvalidMessage,
                         problems.front().message}};
  }
  return {render_client_unit_text(message), std::nullopt};
}

PlanProjectResult plan_project(const std::vector<HttpMessage>& messages,
                               const std::string& dialect) {
  if (dialect != kCppDialect) {
    return {std::nullopt,
            CodegenError{CodegenError::Kind::kUnknownDialect,
                         "unknown dialect \"" + dialect + "\""}};
  }
  std::set<std::string> names;
  for (const HttpMessage& message : messages) {
    if (!names.insert(message.name).second) {
      return {std::nullopt,
              CodegenError{CodegenError::Kind::kDuplicateMessageName,
                           "duplicate message name \"" + message.name + "\""}};
    }
    const std::vector<Diagnostic> problems =
        validate_message(message, "<codegen>");
    if (!problems.empty()) {
      return {std::nullopt,
              CodegenError{CodegenError::Kind::kInvalidMessage,
                           "message \"" + message.name +
                               "\": " + problems.front().message}};
    }
  }

  ProjectTree tree;
  const std::string src = std::string(kSourceDir) + "/";
  tree.files.push_back(
      FileSpec{"project.manifest", render_manifest(messages),
               FileSpec::WritePolicy::kAlways});
  tree.files.push_back(FileSpec{src + "CustomResponseHandler.hpp",
                                render_response_handler_unit(),
                                FileSpec::WritePolicy::kAlways});
  tree.files.push_back(FileSpec{src + "RequestType.hpp",
                                render_request_type_unit(),
                                FileSpec::WritePolicy::kAlways});
  tree.files.push_back(FileSpec{src + "ResponseObject.hpp",
                                render_response_object_unit(),
                                FileSpec::WritePolicy::kAlways});
  for (const HttpMessage& message : messages) {
    tree.files.push_back(FileSpec{src + client_file_name(message),
                                  render_client_unit_text(message),
                                  FileSpec::WritePolicy::kAlways});
  }
  return {std::move(tree), std::nullopt};
}

namespace {

// A tree-relative path is safe when it is relative, non-empty, and free of
// "." / ".." segments.
bool is_safe_relative_path(const std::string& path) {
  if (path.empty() || path.front() == '/') {
    return false;
  }
  std::istringstream in(path);
  std::string segment;
  while (std::getline(in, segment, '/')) {
    if (segment.empty() || segment == "." || segment == "..") {
      return false;
    }
  }
  return true;
}

std::optional<std::string> read_existing(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return std::nullopt;
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

EmitResult emit(const ProjectTree& tree,
                const std::filesystem::path& out_dir) {
  if (!is_safe_relative_path(tree.root)) {
    return {std::nullopt, "unsafe project root \"" + tree.root + "\""};
  }
  std::set<std::string> paths;
  for (const FileSpec& file : tree.files) {
    if (!is_safe_relative_path(file.relative_path)) {
      return {std::nullopt,
              "unsafe project path \"" + file.relative_path + "\""};
    }
    if (!paths.insert(file.relative_path).second) {
      return {std::nullopt,
              "duplicate project path \"" + file.relative_path + "\""};
    }
  }

  EmitReport report;
  const std::filesystem::path root = out_dir / tree.root;
  for (const FileSpec& file : tree.files) {
    const std::filesystem::path full = root / file.relative_path;
    const std::string reported =
        tree.root + "/" + file.relative_path;

    std::error_code ec;
    std::filesystem::create_directories(full.parent_path(), ec);
    if (ec) {
      return {std::nullopt, "cannot create directory \"" +
                                full.parent_path().string() +
                                "\": " + ec.message()};
    }

    const std::optional<std::string> existing = read_existing(full);
    if (existing.has_value()) {
      if (file.policy == FileSpec::WritePolicy::kIfAbsent) {
        report.skipped.push_back(reported);
        continue;
      }
      report.overwritten.push_back(reported);
      if (*existing == file.content) {
        continue;  // byte-identical: leave the file untouched
      }
    } else {
      report.created.push_back(reported);
    }

    std::ofstream outfile(full, std::ios::binary | std::ios::trunc);
    if (!outfile) {
      return {std::nullopt, "cannot write \"" + full.string() + "\""};
    }
    outfile.write(file.content.data(),
                  static_cast<std::streamsize>(file.content.size()));
    outfile.close();
    if (!outfile) {
      return {std::nullopt, "cannot write \"" + full.string() + "\""};
    }
  }

  // Emit never deletes. Point out client units that the tree no longer
  // plans — typically messages that were removed since the last run.
  const std::filesystem::path source_dir = root / kSourceDir;
  std::error_code ec;
  if (std::filesystem::is_directory(source_dir, ec)) {
    std::vector<std::string> stale;
    for (const auto& entry :
         std::filesystem::directory_iterator(source_dir, ec)) {
      if (!entry.is_regular_file()) {
        continue;
      }
      const std::string name = entry.path().filename().string();
      if (name.size() <= std::string("Client.hpp").size() ||
          name.rfind("Client.hpp") != name.size() - 10) {
        continue;
      }
      const std::string relative = std::string(kSourceDir) + "/" + name;
      if (paths.find(relative) == paths.end()) {
        stale.push_back(tree.root + "/" + relative);
      }
    }
    std::sort(stale.begin(), stale.end());
    for (const std::string& path : stale) {
      report.warnings.push_back("stale client unit left in place: " + path);
    }
  }

  return {std::move(report), std::nullopt};
}

}  // namespace httpdsl
