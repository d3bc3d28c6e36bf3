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

#ifndef HTTPDSL_URL_HPP_
#define HTTPDSL_URL_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "httpdsl/diagnostics.hpp"

namespace httpdsl {

enum class UrlScheme {
  kHttp,
  kHttps,
};

std::string to_text(UrlScheme scheme);

// The host of a server URL. `text` holds the host exactly as written, except
// that IPv6 hosts are stored without their surrounding brackets.
struct UrlHost {
  enum class Kind {
    kName,  // dotted labels ending in a top-level label
    kIpv4,  // four dotted decimal octets
    kIpv6,  // bracketed IPv6 literal
  };

  Kind kind = Kind::kName;
  std::string text;

  friend bool operator==(const UrlHost&, const UrlHost&) = default;
};

// A parsed server part: scheme://userinfo@host:port with everything but the
// host optional. The scheme defaults to HTTP when the text does not carry
// one. Ports outside 1..65535 are rejected at parse time.
struct ServerUrl {
  UrlScheme scheme = UrlScheme::kHttp;
  std::optional<std::string> userinfo;
  UrlHost host;
  std::optional<std::uint16_t> port;

  friend bool operator==(const ServerUrl&, const ServerUrl&) = default;
};

// A parsed path: slash-separated segments, with any single leading slash
// already stripped. Segments may be empty ("a//b" keeps its empty middle
// segment), and an empty path has no segments.
struct UrlPath {
  std::vector<std::string> segments;

  friend bool operator==(const UrlPath&, const UrlPath&) = default;
};

// Parses the server part of a message URL.
//
// Grammar (derived from the URL syntax of RFC 1738 section 5, hosts and
// ports):
//
//   server    = [ scheme "://" ] [ userinfo "@" ] host [ ":" port ]
//   scheme    = "http" | "https"                   ; matched case-insensitively
//   userinfo  = 1*uchar-with-:;?&=                 ; kept verbatim
//   host      = ipv6-literal | ipv4 | hostname
//   ipv6      = "[" standard IPv6 textual form "]"
//   ipv4      = decimal-octet 3("." decimal-octet) ; each octet 0..255
//   hostname  = *( label "." ) toplabel
//   label     = alphanum [ *( alphanum | "-" ) alphanum ]
//   toplabel  = alpha [ *( alphanum | "-" ) alphanum ] ; length 2..63
//   port      = 1*digit                            ; value 1..65535
//
// Two deliberate deviations from a plain RFC 1738 reading: the final label
// must be 2 to 63 characters long (one-character top-level domains are
// rejected), and bracketed IPv6 literals are accepted as hosts.
Parsed<ServerUrl> parse_server(const std::string& text);

// Parses the path part of a message URL. A single leading slash is allowed
// and stripped. Each segment character must be legal in an HTTP path:
// alphanumerics, "$-_.+!*'(),", the segment extras ";:@&=", or a "%XX"
// escape with two hex digits.
Parsed<UrlPath> parse_path(const std::string& text);

// Percent-encodes `text` for use as a query key or value: bytes outside the
// unreserved set (ALPHA / DIGIT / "-" / "." / "_" / "~") become %XX with
// uppercase hex digits. A space becomes "%20".
std::string percent_encode_query_component(const std::string& text);

// Renders just the server part: scheme://[userinfo@]host[:port], with IPv6
// hosts re-bracketed. parse_server(render_server(s)) == s for every valid
// ServerUrl.
std::string render_server(const ServerUrl& server);

// Renders a complete request URL:
//
//   scheme://[userinfo@]host[:port]/path[?key=value&...]
//
// The host keeps its stored text (IPv6 hosts regain their brackets), the
// port appears only when one was given, path segments are joined with "/"
// after the single separator slash, and query pairs are percent-encoded and
// joined in order. No query means no "?".
std::string render_url(const ServerUrl& server, const UrlPath& path,
                       const std::vector<std::pair<std::string, std::string>>&
                           query);

}  // namespace httpdsl

#endif  // HTTPDSL_URL_HPP_
