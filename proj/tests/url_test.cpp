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

#include <gtest/gtest.h>

#include <random>
#include <string>
#include <vector>

#include "support/url_oracle.hpp"

namespace httpdsl {
namespace {

TEST(ParseServer, AcceptsPlainHostname) {
  const auto result = parse_server("www.dataservice.accuweather.com");
  ASSERT_TRUE(result.ok()) << result.diagnostics.size();
  EXPECT_EQ(result.value->scheme, UrlScheme::kHttp);
  EXPECT_EQ(result.value->host.kind, UrlHost::Kind::kName);
  EXPECT_EQ(result.value->host.text, "www.dataservice.accuweather.com");
  EXPECT_FALSE(result.value->port.has_value());
  EXPECT_FALSE(result.value->userinfo.has_value());
}

TEST(ParseServer, AcceptsSchemes) {
  EXPECT_EQ(parse_server("http://example.com").value->scheme,
            UrlScheme::kHttp);
  EXPECT_EQ(parse_server("https://example.com").value->scheme,
            UrlScheme::kHttps);
  EXPECT_EQ(parse_server("HTTPS://example.com").value->scheme,
            UrlScheme::kHttps);
  EXPECT_FALSE(parse_server("ftp://example.com").ok());
  EXPECT_FALSE(parse_server("http://").ok());
}

TEST(ParseServer, ParsesAllParts) {
  const auto result = parse_server("https://bob:pw@sub.example.com:8443");
  ASSERT_TRUE(result.ok());
  EXPECT_EQ(result.value->scheme, UrlScheme::kHttps);
  ASSERT_TRUE(result.value->userinfo.has_value());
  EXPECT_EQ(*result.value->userinfo, "bob:pw");
  EXPECT_EQ(result.value->host.text, "sub.example.com");
  ASSERT_TRUE(result.value->port.has_value());
  EXPECT_EQ(*result.value->port, 8443);
}

TEST(ParseServer, SingleLabelHostIsItsOwnTopLabel) {
  EXPECT_TRUE(parse_server("localhost").ok());
  EXPECT_TRUE(parse_server("localhost:8080").ok());
  // A single-character host fails the top-label length rule.
  EXPECT_FALSE(parse_server("a").ok());
}

TEST(ParseServer, TopLabelLengthBounds) {
  const std::string label63(63, 'a');
  const std::string label64(64, 'a');
  EXPECT_FALSE(parse_server("x.y").ok());          // length 1
  EXPECT_TRUE(parse_server("x.ab").ok());          // length 2
  EXPECT_TRUE(parse_server("x." + label63).ok());  // length 63
  EXPECT_FALSE(parse_server("x." + label64).ok()); // length 64
}

TEST(ParseServer, TopLabelMustStartWithLetter) {
  EXPECT_FALSE(parse_server("example.1com").ok());
  EXPECT_FALSE(parse_server("example.123").ok());
  EXPECT_TRUE(parse_server("example.c1m").ok());
}

TEST(ParseServer, HostLabelRules) {
  EXPECT_TRUE(parse_server("my-host.example.com").ok());
  EXPECT_TRUE(parse_server("0digit.example.com").ok());
  EXPECT_FALSE(parse_server("-host.example.com").ok());
  EXPECT_FALSE(parse_server("host-.example.com").ok());
  EXPECT_FALSE(parse_server("ex_ample.com").ok());
  EXPECT_FALSE(parse_server("exa mple.com").ok());
  EXPECT_FALSE(parse_server("a..com").ok());
  EXPECT_FALSE(parse_server("example.com.").ok());
  EXPECT_FALSE(parse_server("h\xc3\xa9llo.com").ok());
  EXPECT_FALSE(parse_server("example.com/path").ok());
}

TEST(ParseServer, Ipv4Addresses) {
  EXPECT_TRUE(parse_server("1.2.3.4").ok());
  EXPECT_TRUE(parse_server("255.255.255.255").ok());
  EXPECT_TRUE(parse_server("0.0.0.0").ok());
  EXPECT_TRUE(parse_server("01.02.003.004").ok());  // leading zeros are digits
  EXPECT_FALSE(parse_server("256.1.1.1").ok());
  EXPECT_FALSE(parse_server("1.2.3").ok());
  EXPECT_FALSE(parse_server("1.2.3.4.5").ok());
  EXPECT_FALSE(parse_server("1..2.3").ok());
  EXPECT_FALSE(parse_server("1234.1.1.1").ok());

  const auto result = parse_server("192.168.0.1:8080");
  ASSERT_TRUE(result.ok());
  EXPECT_EQ(result.value->host.kind, UrlHost::Kind::kIpv4);
  EXPECT_EQ(result.value->host.text, "192.168.0.1");
  EXPECT_EQ(*result.value->port, 8080);
}

TEST(ParseServer, Ipv6Addresses) {
  EXPECT_TRUE(parse_server("[::1]").ok());
  EXPECT_TRUE(parse_server("[::]").ok());
  EXPECT_TRUE(parse_server("[2001:db8::1]").ok());
  EXPECT_TRUE(parse_server("[1:2:3:4:5:6:7:8]").ok());
  EXPECT_TRUE(parse_server("[1:2:3:4:5:6:7::]").ok());
  EXPECT_TRUE(parse_server("[::ffff:192.168.0.1]").ok());
  EXPECT_TRUE(parse_server("[1:2:3:4:5:6:192.168.0.1]").ok());
  EXPECT_TRUE(parse_server("[::1]:8080").ok());
  EXPECT_TRUE(parse_server("https://[2001:db8::1]:8443").ok());

  EXPECT_FALSE(parse_server("[1:2:3:4:5:6:7:8:9]").ok());
  EXPECT_FALSE(parse_server("[1::2::3]").ok());
  EXPECT_FALSE(parse_server("[:::1]").ok());
  EXPECT_FALSE(parse_server("[12345::]").ok());
  EXPECT_FALSE(parse_server("[gggg::1]").ok());
  EXPECT_FALSE(parse_server("[192.168.0.1::]").ok());
  EXPECT_FALSE(parse_server("[1:2:3:4:5:6:7]").ok());  // seven groups, no ::
  EXPECT_FALSE(parse_server("[::1").ok());             // unterminated
  EXPECT_FALSE(parse_server("[::1]x").ok());
  EXPECT_FALSE(parse_server("[]").ok());

  const auto result = parse_server("[2001:db8::1]:443");
  ASSERT_TRUE(result.ok());
  EXPECT_EQ(result.value->host.kind, UrlHost::Kind::kIpv6);
  EXPECT_EQ(result.value->host.text, "2001:db8::1");  // brackets stripped
  EXPECT_EQ(*result.value->port, 443);
}

TEST(ParseServer, Userinfo) {
  EXPECT_TRUE(parse_server("user@example.com").ok());
  EXPECT_TRUE(parse_server("user:pw@example.com").ok());
  EXPECT_TRUE(parse_server("us%40er@example.com").ok());
  EXPECT_FALSE(parse_server("@example.com").ok());
  EXPECT_FALSE(parse_server("u ser@example.com").ok());
  EXPECT_FALSE(parse_server("us%zzer@example.com").ok());
}

TEST(ParseServer, Ports) {
  EXPECT_TRUE(parse_server("example.com:1").ok());
  EXPECT_TRUE(parse_server("example.com:65535").ok());
  EXPECT_FALSE(parse_server("example.com:0").ok());
  EXPECT_FALSE(parse_server("example.com:65536").ok());
  EXPECT_FALSE(parse_server("example.com:").ok());
  EXPECT_FALSE(parse_server("example.com:8a").ok());
  EXPECT_FALSE(parse_server("example.com:123456789").ok());
}

TEST(ParseServer, ErrorsCarrySpans) {
  const auto result = parse_server("example.com:abc");
  ASSERT_FALSE(result.ok());
  ASSERT_EQ(result.diagnostics.size(), 1u);
  EXPECT_EQ(result.diagnostics[0].severity, Severity::kError);
  // The offending character is the 'a' right after the colon.
  EXPECT_EQ(result.diagnostics[0].span.column, 13u);
}

TEST(ParsePath, SplitsSegments) {
  const auto result = parse_path("locations/v1/cities/search");
  ASSERT_TRUE(result.ok());
  EXPECT_EQ(result.value->segments,
            (std::vector<std::string>{"locations", "v1", "cities", "search"}));
}

TEST(ParsePath, LeadingSlashIsStripped) {
  EXPECT_EQ(parse_path("/a/b").value->segments,
            (std::vector<std::string>{"a", "b"}));
}

TEST(ParsePath, EmptySegmentsAreKept) {
  EXPECT_EQ(parse_path("a//b").value->segments,
            (std::vector<std::string>{"a", "", "b"}));
  EXPECT_EQ(parse_path("a/").value->segments,
            (std::vector<std::string>{"a", ""}));
}

TEST(ParsePath, EmptyPathHasNoSegments) {
  EXPECT_TRUE(parse_path("").value->segments.empty());
  EXPECT_TRUE(parse_path("/").value->segments.empty());
}

TEST(ParsePath, SegmentCharacterSet) {
  EXPECT_TRUE(parse_path("a;b:c@d&e=f").ok());
  EXPECT_TRUE(parse_path("$-_.+!*'(),").ok());
  EXPECT_TRUE(parse_path("a%20b").ok());
  EXPECT_FALSE(parse_path("a b").ok());
  EXPECT_FALSE(parse_path("a#b").ok());
  EXPECT_FALSE(parse_path("a?k=v").ok());
  EXPECT_FALSE(parse_path("a%2").ok());
  EXPECT_FALSE(parse_path("a%zzb").ok());
}

TEST(PercentEncode, EncodesReservedBytes) {
  EXPECT_EQ(percent_encode_query_component("a b&c"), "a%20b%26c");
  EXPECT_EQ(percent_encode_query_component("AZaz09-._~"), "AZaz09-._~");
  EXPECT_EQ(percent_encode_query_component("k=v"), "k%3Dv");
  EXPECT_EQ(percent_encode_query_component("\xe2\x82\xac"), "%E2%82%AC");
  EXPECT_EQ(percent_encode_query_component(""), "");
}

TEST(RenderUrl, FullForm) {
  ServerUrl server;
  server.scheme = UrlScheme::kHttps;
  server.userinfo = "bob:pw";
  server.host = UrlHost{UrlHost::Kind::kName, "example.com"};
  server.port = 8443;
  UrlPath path{{"a", "b"}};
  EXPECT_EQ(render_url(server, path, {{"k", "v w"}, {"x", "1"}}),
            "https://bob:pw@example.com:8443/a/b?k=v%20w&x=1");
}

TEST(RenderUrl, MinimalForm) {
  ServerUrl server;
  server.host = UrlHost{UrlHost::Kind::kName, "example.com"};
  EXPECT_EQ(render_url(server, UrlPath{}, {}), "http://example.com/");
}

TEST(RenderUrl, Ipv6HostRegainsBrackets) {
  ServerUrl server;
  server.host = UrlHost{UrlHost::Kind::kIpv6, "2001:db8::1"};
  server.port = 80;
  EXPECT_EQ(render_url(server, UrlPath{{"x"}}, {}), "http://[2001:db8::1]:80/x");
}

TEST(RenderUrl, AuthorPortIsKeptVerbatim) {
  // No default-port elision: an explicit :80 or :443 stays.
  ServerUrl server;
  server.host = UrlHost{UrlHost::Kind::kName, "example.com"};
  server.port = 80;
  EXPECT_EQ(render_server(server), "http://example.com:80");
}

// Deterministic generator of valid ServerUrl values for the round-trip
// property.
class ServerUrlGenerator {
 public:
  explicit ServerUrlGenerator(unsigned seed) : rng_(seed) {}

  ServerUrl next() {
    ServerUrl url;
    url.scheme = pick(2) == 0 ? UrlScheme::kHttp : UrlScheme::kHttps;
    if (pick(4) == 0) {
      url.userinfo = pick(2) == 0 ? "user" : "user:pw";
    }
    switch (pick(3)) {
      case 0: {
        std::string host;
        const int labels = 1 + pick(3);
        for (int i = 0; i < labels; ++i) {
          host += label(2 + pick(8));
          host += '.';
        }
        host += top_label(2 + pick(10));
        url.host = UrlHost{UrlHost::Kind::kName, host};
        break;
      }
      case 1: {
        std::string host = std::to_string(pick(256));
        for (int i = 0; i < 3; ++i) {
          host += '.' + std::to_string(pick(256));
        }
        url.host = UrlHost{UrlHost::Kind::kIpv4, host};
        break;
      }
      default: {
        std::string host = "2001:db8";
        const int groups = pick(4);
        for (int i = 0; i < groups; ++i) {
          host += ':' + hex_group();
        }
        host += "::" + hex_group();
        url.host = UrlHost{UrlHost::Kind::kIpv6, host};
        break;
      }
    }
    if (pick(2) == 0) {
      url.port = static_cast<std::uint16_t>(1 + pick(65535));
    }
    return url;
  }

 private:
  int pick(int bound) {
    return static_cast<int>(rng_() % static_cast<unsigned>(bound));
  }

  std::string label(int length) {
    static constexpr char kAlnum[] =
        "abcdefghijklmnopqrstuvwxyz0123456789";
    std::string out;
    out += kAlnum[pick(36)];
    for (int i = 1; i + 1 < length; ++i) {
      out += pick(6) == 0 ? '-' : kAlnum[pick(36)];
    }
    if (length > 1) {
      out += kAlnum[pick(36)];
    }
    return out;
  }

  std::string top_label(int length) {
    static constexpr char kAlpha[] = "abcdefghijklmnopqrstuvwxyz";
    std::string out;
    out += kAlpha[pick(26)];
    std::string rest = label(length);
    out += rest.substr(1);
    return out;
  }

  std::string hex_group() {
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    const int len = 1 + pick(4);
    for (int i = 0; i < len; ++i) {
      out += kHex[pick(16)];
    }
    return out;
  }

  std::mt19937 rng_;
};

TEST(RenderUrl, ServerRoundTripsThroughParse) {
  ServerUrlGenerator gen(20260817);
  for (int i = 0; i < 500; ++i) {
    const ServerUrl original = gen.next();
    const std::string text = render_server(original);
    const auto reparsed = parse_server(text);
    ASSERT_TRUE(reparsed.ok()) << "failed to reparse: " << text;
    EXPECT_EQ(*reparsed.value, original) << "round-trip changed: " << text;
  }
}

TEST(UrlOracle, AgreesOnEasyCases) {
  // Smoke test for the oracle helper itself; the full corpus comparison
  // lives in the acceptance suite.
  EXPECT_TRUE(testing::oracle_check_server("example.com").accepted);
  EXPECT_TRUE(testing::oracle_check_server("http://example.com:8080").accepted);
  EXPECT_FALSE(testing::oracle_check_server("exa mple.com").accepted);

  const auto verdict = testing::oracle_check_server("[2001:db8::1]:443");
  ASSERT_TRUE(verdict.accepted);
  EXPECT_EQ(verdict.host, "2001:db8::1");
  ASSERT_TRUE(verdict.port.has_value());
  EXPECT_EQ(*verdict.port, 443);
}

}  // namespace
}  // namespace httpdsl
