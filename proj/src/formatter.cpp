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

#include <sstream>
#include <string>

#include "httpdsl/parser.hpp"

namespace httpdsl {
namespace {

// True when `text` survives the round trip as a bare word in value
// position. Anything else is written double-quoted.
bool is_safe_bare_value(const std::string& text) {
  if (text.empty()) {
    return false;
  }
  // These would be misread as variable introductions or variables.
  if (text == "input" || text == "environment" || text[0] == '$') {
    return false;
  }
  // A leading "//" would start a comment.
  if (text.size() >= 2 && text[0] == '/' && text[1] == '/') {
    return false;
  }
  for (const char c : text) {
    const unsigned char u = static_cast<unsigned char>(c);
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '"' ||
        c == '{' || c == '}' || c == '\\' || u < 0x20) {
      return false;
    }
  }
  return true;
}

// Key position additionally ends at ':', so a literal key containing one
// must be quoted.
bool is_safe_bare_key(const std::string& text) {
  return is_safe_bare_value(text) && text.find(':') == std::string::npos;
}

std::string quoted(const std::string& text) {
  std::string out = "\"";
  for (const char c : text) {
    if (c == '"' || c == '\\') {
      out += '\\';
    }
    out += c;
  }
  out += '"';
  return out;
}

std::string render_literal(const std::string& text, bool key_position) {
  const bool safe =
      key_position ? is_safe_bare_key(text) : is_safe_bare_value(text);
  return safe ? text : quoted(text);
}

std::string render_variable(const VariableRef& ref) {
  if (ref.kind == VariableRef::Kind::kInput) {
    return "input $" + ref.name;
  }
  return "environment " + ref.name;
}

std::string render_value(const ValueOrVariable& value, bool key_position) {
  if (value.is_variable()) {
    return render_variable(value.variable());
  }
  return render_literal(value.literal(), key_position);
}

std::string render_header_key(const HeaderKey& key) {
  if (key.is_well_known()) {
    return to_text(std::get<WellKnownHeaderKey>(key.value));
  }
  if (key.is_variable()) {
    return render_variable(std::get<VariableRef>(key.value));
  }
  return render_literal(std::get<std::string>(key.value),
                        /*key_position=*/true);
}

std::string render_content_type(const ContentTypeSpec& spec) {
  if (spec.is_well_known()) {
    return to_text(std::get<WellKnownMediaType>(spec.value));
  }
  if (spec.is_variable()) {
    return render_variable(std::get<VariableRef>(spec.value));
  }
  return render_literal(std::get<std::string>(spec.value),
                        /*key_position=*/false);
}

}  // namespace

std::string format_message(const HttpMessage& message) {
  std::ostringstream out;
  out << "http {\n";
  out << "  name " << message.name << '\n';
  out << "  url server " << render_value(message.url.server, false) << '\n';
  out << "      path " << render_value(message.url.path, false) << '\n';
  out << "  type " << to_text(message.method) << '\n';
  for (const Parameter& param : message.query) {
    out << "  param " << render_value(param.key, true) << ": "
        << render_value(param.value, false) << '\n';
  }
  for (const Header& header : message.headers) {
    out << "  header " << render_header_key(header.key) << ": "
        << render_value(header.value, false) << '\n';
  }
  if (message.body.has_value()) {
    out << "  body {\n";
    out << "    contentType " << render_content_type(message.body->content_type)
        << '\n';
    out << "    entityType " << to_text(message.body->entity) << '\n';
    out << "    payload " << render_value(message.body->payload, false)
        << '\n';
    out << "  }\n";
  }
  if (message.return_value.has_value()) {
    out << "  returns {\n";
    out << "    expect "
        << render_content_type(message.return_value->expected_type) << '\n';
    out << "    as "
        << (message.return_value->form == ReturnForm::kPayloadText
                ? "payload"
                : "response")
        << '\n';
    out << "  }\n";
  }
  if (message.customization.has_value()) {
    const Customization& custom = *message.customization;
    out << "  customize {\n";
    if (custom.proxy.has_value()) {
      out << "    proxy " << render_value(custom.proxy->host, false) << ' '
          << render_value(custom.proxy->port, false) << '\n';
    }
    if (custom.basic_auth.has_value()) {
      out << "    basicauth " << render_value(custom.basic_auth->username, false)
          << ' ' << render_value(custom.basic_auth->password, false) << '\n';
    }
    if (custom.timeout_ms.has_value()) {
      out << "    timeout " << *custom.timeout_ms << '\n';
    }
    out << "  }\n";
  }
  out << "}\n";
  return out.str();
}

std::string format_document(const RequestDocument& document) {
  std::ostringstream out;
  bool first = true;
  for (const HttpMessage& message : document.messages) {
    if (!first) {
      out << '\n';
    }
    first = false;
    out << format_message(message);
  }
  return out.str();
}

}  // namespace httpdsl
