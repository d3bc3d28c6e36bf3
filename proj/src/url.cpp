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

#include "httpdsl/url.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

namespace httpdsl {
namespace {

bool is_ascii_alpha(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

bool is_ascii_digit(char c) { return c >= '0' && c <= '9'; }

bool is_ascii_alnum(char c) { return is_ascii_alpha(c) || is_ascii_digit(c); }

bool is_hex_digit(char c) {
  return is_ascii_digit(c) || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
}

// RFC 1738: safe = "$" | "-" | "_" | "." | "+"
bool is_safe_char(char c) {
  return c == '$' || c == '-' || c == '_' || c == '.' || c == '+';
}

// RFC 1738: extra = "!" | "*" | "'" | "(" | ")" | ","
bool is_extra_char(char c) {
  return c == '!' || c == '*' || c == '\'' || c == '(' || c == ')' ||
         c == ',';
}

// RFC 1738: unreserved = alpha | digit | safe | extra. An unreserved byte or
// a %XX escape forms a uchar; escapes are checked by the callers because
// they span three bytes.
bool is_unreserved_1738(char c) {
  return is_ascii_alnum(c) || is_safe_char(c) || is_extra_char(c);
}

// Characters legal inside a path segment besides escapes:
// uchar | ";" | ":" | "@" | "&" | "="
bool is_segment_char(char c) {
  return is_unreserved_1738(c) || c == ';' || c == ':' || c == '@' ||
         c == '&' || c == '=';
}

// Characters legal inside the userinfo part besides escapes:
// uchar | ";" | "?" | "&" | "=" plus the ":" separating user and password.
bool is_userinfo_char(char c) {
  return is_unreserved_1738(c) || c == ';' || c == '?' || c == '&' ||
         c == '=' || c == ':';
}

bool ascii_iequals(const std::string& a, const std::string& b) {
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

// Builds an error diagnostic pointing at `offset`..`offset+length` within the
// text being parsed (line 1, 1-based columns).
Diagnostic error_at(std::size_t offset, std::size_t length,
                    std::string message) {
  Diagnostic d;
  d.severity = Severity::kError;
  d.span = Span{1, offset + 1, length};
  d.message = std::move(message);
  return d;
}

// Validates a dotted-decimal IPv4 address: exactly four octets, each one to
// three digits with a value of 0..255.
bool is_ipv4_address(const std::string& text) {
  int octets = 0;
  std::size_t i = 0;
  while (i <= text.size()) {
    std::size_t dot = text.find('.', i);
    if (dot == std::string::npos) {
      dot = text.size();
    }
    const std::size_t len = dot - i;
    if (len == 0 || len > 3) {
      return false;
    }
    int value = 0;
    for (std::size_t j = i; j < dot; ++j) {
      if (!is_ascii_digit(text[j])) {
        return false;
      }
      value = value * 10 + (text[j] - '0');
    }
    if (value > 255) {
      return false;
    }
    ++octets;
    if (dot == text.size()) {
      break;
    }
    i = dot + 1;
  }
  return octets == 4;
}

// True when every character is a digit or a dot, i.e. the author can only
// have meant an IPv4 address, so hostname rules must not apply.
bool looks_like_ipv4(const std::string& text) {
  if (text.empty()) {
    return false;
  }
  for (const char c : text) {
    if (!is_ascii_digit(c) && c != '.') {
      return false;
    }
  }
  return true;
}

// Validates the textual form of an IPv6 address (without brackets): up to
// eight colon-separated groups of one to four hex digits, at most one "::"
// standing for one or more zero groups, and an optional trailing
// dotted-decimal IPv4 part standing for the last two groups.
bool is_ipv6_address(const std::string& text) {
  if (text.empty()) {
    return false;
  }

  const std::size_t dc = text.find("::");
  if (dc != std::string::npos && text.find("::", dc + 1) != std::string::npos) {
    return false;  // more than one "::" (":::" also lands here)
  }

  std::string left;
  std::string right;
  if (dc == std::string::npos) {
    left = text;
  } else {
    left = text.substr(0, dc);
    right = text.substr(dc + 2);
  }

  // A single leading or trailing colon that is not part of "::" is illegal.
  if (!left.empty() && (left.front() == ':' || left.back() == ':')) {
    return false;
  }
  if (!right.empty() && (right.front() == ':' || right.back() == ':')) {
    return false;
  }

  const auto split_groups = [](const std::string& part,
                               std::vector<std::string>* out) {
    if (part.empty()) {
      return true;
    }
    std::size_t start = 0;
    while (true) {
      std::size_t colon = part.find(':', start);
      if (colon == std::string::npos) {
        out->push_back(part.substr(start));
        return true;
      }
      if (colon == start) {
        return false;  // empty group
      }
      out->push_back(part.substr(start, colon - start));
      start = colon + 1;
    }
  };

  std::vector<std::string> groups;
  if (!split_groups(left, &groups)) {
    return false;
  }
  const std::size_t left_count = groups.size();
  if (!split_groups(right, &groups)) {
    return false;
  }

  int group_count = 0;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const std::string& group = groups[i];
    if (group.find('.') != std::string::npos) {
      // Embedded IPv4 must be the very last group and counts as two.
      if (i + 1 != groups.size() || !is_ipv4_address(group)) {
        return false;
      }
      // The IPv4 part must sit on the right of "::" when one is present.
      if (dc != std::string::npos && i < left_count) {
        return false;
      }
      group_count += 2;
      continue;
    }
    if (group.empty() || group.size() > 4) {
      return false;
    }
    for (const char c : group) {
      if (!is_hex_digit(c)) {
        return false;
      }
    }
    ++group_count;
  }

  if (dc == std::string::npos) {
    return group_count == 8;
  }
  // "::" stands for at least one group.
  return group_count <= 7;
}

// Validates one dotted label of a hostname (not the final one): alphanumeric
// at both ends, alphanumerics and hyphens inside.
std::optional<std::string> check_domain_label(const std::string& label) {
  if (label.empty()) {
    return "host label must not be empty";
  }
  if (!is_ascii_alnum(label.front())) {
    return "host label must start with a letter or digit";
  }
  if (!is_ascii_alnum(label.back())) {
    return "host label must end with a letter or digit";
  }
  for (const char c : label) {
    if (!is_ascii_alnum(c) && c != '-') {
      return std::string("host label contains illegal character '") + c + "'";
    }
  }
  return std::nullopt;
}

// Validates the final (top-level) label: the domain-label rules, plus it
// must start with a letter and be 2 to 63 characters long.
std::optional<std::string> check_top_label(const std::string& label) {
  if (std::optional<std::string> problem = check_domain_label(label)) {
    return problem;
  }
  if (!is_ascii_alpha(label.front())) {
    return "top-level label must start with a letter";
  }
  if (label.size() < 2 || label.size() > 63) {
    return "top-level label must be 2 to 63 characters long";
  }
  return std::nullopt;
}

}  // namespace

std::string to_text(UrlScheme scheme) {
  return scheme == UrlScheme::kHttps ? "https" : "http";
}

Parsed<ServerUrl> parse_server(const std::string& text) {
  Parsed<ServerUrl> result;
  ServerUrl url;

  if (text.empty()) {
    result.diagnostics.push_back(error_at(0, 0, "empty server URL"));
    return result;
  }

  // Scheme.
  std::size_t pos = 0;
  const std::size_t scheme_end = text.find("://");
  if (scheme_end != std::string::npos) {
    const std::string scheme = text.substr(0, scheme_end);
    if (ascii_iequals(scheme, "http")) {
      url.scheme = UrlScheme::kHttp;
    } else if (ascii_iequals(scheme, "https")) {
      url.scheme = UrlScheme::kHttps;
    } else {
      result.diagnostics.push_back(error_at(
          0, scheme_end,
          "unsupported scheme '" + scheme + "'; use http or https"));
      return result;
    }
    pos = scheme_end + 3;
  }

  // Userinfo. The host cannot contain '@', so the last '@' separates them.
  const std::size_t at = text.rfind('@');
  if (at != std::string::npos && at >= pos) {
    const std::string userinfo = text.substr(pos, at - pos);
    if (userinfo.empty()) {
      result.diagnostics.push_back(error_at(pos, 1, "empty userinfo"));
      return result;
    }
    for (std::size_t i = 0; i < userinfo.size(); ++i) {
      const char c = userinfo[i];
      if (c == '%') {
        if (i + 2 >= userinfo.size() || !is_hex_digit(userinfo[i + 1]) ||
            !is_hex_digit(userinfo[i + 2])) {
          result.diagnostics.push_back(error_at(
              pos + i, 1, "'%' in userinfo must start a %XX escape"));
          return result;
        }
        i += 2;
        continue;
      }
      if (!is_userinfo_char(c)) {
        result.diagnostics.push_back(
            error_at(pos + i, 1,
                     std::string("illegal character '") + c +
                         "' in userinfo"));
        return result;
      }
    }
    url.userinfo = userinfo;
    pos = at + 1;
  }

  // Host and port.
  std::string host_text;
  std::size_t host_pos = pos;
  std::size_t port_pos = std::string::npos;
  if (pos < text.size() && text[pos] == '[') {
    const std::size_t close = text.find(']', pos);
    if (close == std::string::npos) {
      result.diagnostics.push_back(
          error_at(pos, text.size() - pos, "unterminated IPv6 literal"));
      return result;
    }
    host_text = text.substr(pos + 1, close - pos - 1);
    host_pos = pos + 1;
    if (!is_ipv6_address(host_text)) {
      result.diagnostics.push_back(error_at(
          host_pos, host_text.size(), "invalid IPv6 address"));
      return result;
    }
    url.host = UrlHost{UrlHost::Kind::kIpv6, host_text};
    pos = close + 1;
    if (pos < text.size()) {
      if (text[pos] != ':') {
        result.diagnostics.push_back(error_at(
            pos, 1, "unexpected text after IPv6 literal; expected ':port'"));
        return result;
      }
      port_pos = pos + 1;
    }
  } else {
    const std::size_t colon = text.find(':', pos);
    const std::size_t host_end = colon == std::string::npos ? text.size()
                                                            : colon;
    host_text = text.substr(pos, host_end - pos);
    if (colon != std::string::npos) {
      port_pos = colon + 1;
    }

    if (host_text.empty()) {
      result.diagnostics.push_back(error_at(pos, 0, "missing host"));
      return result;
    }

    if (looks_like_ipv4(host_text)) {
      if (!is_ipv4_address(host_text)) {
        result.diagnostics.push_back(error_at(
            host_pos, host_text.size(),
            "invalid IPv4 address: need exactly four octets, each 0..255"));
        return result;
      }
      url.host = UrlHost{UrlHost::Kind::kIpv4, host_text};
    } else {
      // Hostname: *( label "." ) toplabel
      std::size_t start = 0;
      while (true) {
        std::size_t dot = host_text.find('.', start);
        const bool last = dot == std::string::npos;
        if (last) {
          dot = host_text.size();
        }
        const std::string label = host_text.substr(start, dot - start);
        const std::optional<std::string> problem =
            last ? check_top_label(label) : check_domain_label(label);
        if (problem.has_value()) {
          result.diagnostics.push_back(
              error_at(host_pos + start, label.size(), *problem));
          return result;
        }
        if (last) {
          break;
        }
        start = dot + 1;
      }
      url.host = UrlHost{UrlHost::Kind::kName, host_text};
    }
  }

  // Port.
  if (port_pos != std::string::npos) {
    const std::string port_text = text.substr(port_pos);
    if (port_text.empty()) {
      result.diagnostics.push_back(error_at(port_pos, 0, "empty port"));
      return result;
    }
    for (std::size_t i = 0; i < port_text.size(); ++i) {
      if (!is_ascii_digit(port_text[i])) {
        result.diagnostics.push_back(
            error_at(port_pos + i, 1,
                     std::string("illegal character '") + port_text[i] +
                         "' in port"));
        return result;
      }
    }
    // The value decides, not the spelling: leading zeros are legal digits.
    const std::size_t first_nonzero = port_text.find_first_not_of('0');
    const std::string digits = first_nonzero == std::string::npos
                                   ? std::string("0")
                                   : port_text.substr(first_nonzero);
    unsigned long value = 0;
    if (digits.size() > 5 || (value = std::stoul(digits)) < 1 ||
        value > 65535) {
      result.diagnostics.push_back(error_at(
          port_pos, port_text.size(), "port must be between 1 and 65535"));
      return result;
    }
    url.port = static_cast<std::uint16_t>(value);
  }

  result.value = std::move(url);
  return result;
}

Parsed<UrlPath> parse_path(const std::string& text) {
  Parsed<UrlPath> result;
  UrlPath path;

  std::size_t pos = 0;
  if (!text.empty() && text[0] == '/') {
    pos = 1;  // a single leading slash is tolerated and normalized away
  }

  std::string segment;
  bool saw_segment = pos < text.size();
  for (std::size_t i = pos; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == '/') {
      if (saw_segment) {
        path.segments.push_back(segment);
      }
      segment.clear();
      saw_segment = true;
      continue;
    }
    const char c = text[i];
    if (c == '%') {
      if (i + 2 >= text.size() || !is_hex_digit(text[i + 1]) ||
          !is_hex_digit(text[i + 2])) {
        result.diagnostics.push_back(
            error_at(i, 1, "'%' in path must start a %XX escape"));
        return result;
      }
      segment += text.substr(i, 3);
      i += 2;
      continue;
    }
    if (!is_segment_char(c)) {
      result.diagnostics.push_back(error_at(
          i, 1, std::string("illegal character '") + c + "' in path"));
      return result;
    }
    segment += c;
  }

  result.value = std::move(path);
  return result;
}

std::string percent_encode_query_component(const std::string& text) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  out.reserve(text.size());
  for (const char ch : text) {
    const unsigned char c = static_cast<unsigned char>(ch);
    if (is_ascii_alnum(ch) || ch == '-' || ch == '.' || ch == '_' ||
        ch == '~') {
      out += ch;
    } else {
      out += '%';
      out += kHex[c >> 4];
      out += kHex[c & 0xF];
    }
  }
  return out;
}

std::string render_server(const ServerUrl& server) {
  std::ostringstream out;
  out << to_text(server.scheme) << "://";
  if (server.userinfo.has_value()) {
    out << *server.userinfo << '@';
  }
  if (server.host.kind == UrlHost::Kind::kIpv6) {
    out << '[' << server.host.text << ']';
  } else {
    out << server.host.text;
  }
  if (server.port.has_value()) {
    out << ':' << *server.port;
  }
  return out.str();
}

std::string render_url(
    const ServerUrl& server, const UrlPath& path,
    const std::vector<std::pair<std::string, std::string>>& query) {
  std::ostringstream out;
  out << render_server(server);
  out << '/';
  for (std::size_t i = 0; i < path.segments.size(); ++i) {
    if (i > 0) {
      out << '/';
    }
    out << path.segments[i];
  }
  if (!query.empty()) {
    out << '?';
    for (std::size_t i = 0; i < query.size(); ++i) {
      if (i > 0) {
        out << '&';
      }
      out << percent_encode_query_component(query[i].first) << '='
          << percent_encode_query_component(query[i].second);
    }
  }
  return out.str();
}

}  // namespace httpdsl
