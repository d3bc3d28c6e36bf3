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

#include "httpdsl/parser.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "httpdsl/model.hpp"
#include "support/builders.hpp"
#include "support/random_docs.hpp"

namespace httpdsl {
namespace {

using testing::env;
using testing::input;
using testing::lit;
using testing::minimal_message;

Parsed<RequestDocument> parse(const std::string& text) {
  return parse_document(text, "test.http");
}

std::string first_error(const Parsed<RequestDocument>& result) {
  for (const Diagnostic& d : result.diagnostics) {
    if (d.severity == Severity::kError) {
      return d.message;
    }
  }
  return "";
}

bool any_error_contains(const Parsed<RequestDocument>& result,
                        const std::string& needle) {
  for (const Diagnostic& d : result.diagnostics) {
    if (d.message.find(needle) != std::string::npos) {
      return true;
    }
  }
  return false;
}

TEST(ParseDocument, MinimalGet) {
  const auto result = parse(
      "http {\n"
      "  name Minimal\n"
      "  url server localhost:8080\n"
      "      path ping\n"
      "  type GET\n"
      "}\n");
  ASSERT_TRUE(result.ok()) << first_error(result);
  ASSERT_EQ(result.value->messages.size(), 1u);
  const HttpMessage& message = result.value->messages[0];
  EXPECT_EQ(message.name, "Minimal");
  EXPECT_EQ(message.url.server, lit("localhost:8080"));
  EXPECT_EQ(message.url.path, lit("ping"));
  EXPECT_EQ(message.method, RequestMethod::kGet);
  EXPECT_TRUE(message.query.empty());
  EXPECT_TRUE(message.headers.empty());
  EXPECT_FALSE(message.body.has_value());
  EXPECT_FALSE(message.return_value.has_value());
  EXPECT_FALSE(message.customization.has_value());
}

TEST(ParseDocument, LocationSearchMessage) {
  // The canonical first example: three query parameters, two of them input
  // variables, one literal.
  const auto result = parse(
      "http {\n"
      "  name WeatherLocation\n"
      "  url server www.dataservice.accuweather.com\n"
      "      path locations/v1/cities/search\n"
      "  type GET\n"
      "  param apikey: input $apiKeyParam\n"
      "  param q: input $city\n"
      "  param language: en-US\n"
      "}\n");
  ASSERT_TRUE(result.ok()) << first_error(result);

  HttpMessage expected;
  expected.name = "WeatherLocation";
  expected.url.server = lit("www.dataservice.accuweather.com");
  expected.url.path = lit("locations/v1/cities/search");
  expected.method = RequestMethod::kGet;
  expected.query = {
      Parameter{lit("apikey"), input("apiKeyParam"), {}},
      Parameter{lit("q"), input("city"), {}},
      Parameter{lit("language"), lit("en-US"), {}},
  };

  ASSERT_EQ(result.value->messages.size(), 1u);
  EXPECT_EQ(result.value->messages[0], expected);
}

TEST(ParseDocument, AllClauses) {
  const auto result = parse(
      "http {\n"
      "  name Everything\n"
      "  url server environment API_SERVER\n"
      "      path input $path\n"
      "  type POST\n"
      "  param q: \"two words\"\n"
      "  header Accept: application/json\n"
      "  header X-Trace: input $trace\n"
      "  header input $dynKey: environment DYN_VALUE\n"
      "  body {\n"
      "    contentType application/json\n"
      "    entityType TEXT\n"
      "    payload \"{ \\\"a\\\": 1 }\"\n"
      "  }\n"
      "  returns {\n"
      "    expect application/json\n"
      "    as response\n"
      "  }\n"
      "  customize {\n"
      "    proxy proxy.example.com 3128\n"
      "    basicauth input $user input $pass\n"
      "    timeout 2500\n"
      "  }\n"
      "}\n");
  ASSERT_TRUE(result.ok()) << first_error(result);
  const HttpMessage& m = result.value->messages[0];

  EXPECT_EQ(m.url.server, env("API_SERVER"));
  EXPECT_EQ(m.url.path, input("path"));
  EXPECT_EQ(m.method, RequestMethod::kPost);
  ASSERT_EQ(m.query.size(), 1u);
  EXPECT_EQ(m.query[0].value, lit("two words"));

  ASSERT_EQ(m.headers.size(), 3u);
  EXPECT_EQ(m.headers[0].key,
            HeaderKey{WellKnownHeaderKey::kAccept});
  EXPECT_EQ(m.headers[1].key, HeaderKey{std::string("X-Trace")});
  EXPECT_EQ(m.headers[2].key,
            (HeaderKey{VariableRef{VariableRef::Kind::kInput, "dynKey", {}}}));
  EXPECT_EQ(m.headers[2].value, env("DYN_VALUE"));

  ASSERT_TRUE(m.body.has_value());
  EXPECT_EQ(m.body->content_type,
            ContentTypeSpec{WellKnownMediaType::kApplicationJson});
  EXPECT_EQ(m.body->entity, EntityKind::kText);
  EXPECT_EQ(m.body->payload, lit("{ \"a\": 1 }"));

  ASSERT_TRUE(m.return_value.has_value());
  EXPECT_EQ(m.return_value->form, ReturnForm::kFullResponse);

  ASSERT_TRUE(m.customization.has_value());
  ASSERT_TRUE(m.customization->proxy.has_value());
  EXPECT_EQ(m.customization->proxy->host, lit("proxy.example.com"));
  EXPECT_EQ(m.customization->proxy->port, lit("3128"));
  ASSERT_TRUE(m.customization->basic_auth.has_value());
  EXPECT_EQ(m.customization->basic_auth->username, input("user"));
  EXPECT_EQ(m.customization->timeout_ms, 2500);
}

TEST(ParseDocument, CommentsAndWhitespaceAreFree) {
  const auto result = parse(
      "// a leading comment\n"
      "http { // message starts\n"
      "  name   Spaced // trailing\n"
      "\n"
      "  url server localhost // comment\n"
      "      path a//b\n"
      "  type GET\n"
      "}\n"
      "// trailing comment");
  ASSERT_TRUE(result.ok()) << first_error(result);
  // "a//b" is one word: comments only start where a token would.
  EXPECT_EQ(result.value->messages[0].url.path, lit("a//b"));
}

TEST(ParseDocument, QuotedKeywordStaysLiteral) {
  const auto result = parse(
      "http {\n"
      "  name M\n"
      "  url server localhost\n"
      "      path p\n"
      "  type GET\n"
      "  param mode: \"input\"\n"
      "}\n");
  ASSERT_TRUE(result.ok()) << first_error(result);
  EXPECT_EQ(result.value->messages[0].query[0].value, lit("input"));
}

TEST(ParseDocument, CaseInsensitiveWellKnownHeader) {
  const auto result = parse(
      "http {\n"
      "  name M\n"
      "  url server localhost\n"
      "      path p\n"
      "  type GET\n"
      "  header accept: text/plain\n"
      "}\n");
  ASSERT_TRUE(result.ok()) << first_error(result);
  EXPECT_EQ(result.value->messages[0].headers[0].key,
            HeaderKey{WellKnownHeaderKey::kAccept});
}

TEST(ParseDocument, MultipleMessages) {
  const auto result = parse(
      "http { name A url server localhost path a type GET }\n"
      "http { name B url server localhost path b type DELETE }\n");
  ASSERT_TRUE(result.ok()) << first_error(result);
  ASSERT_EQ(result.value->messages.size(), 2u);
  EXPECT_EQ(result.value->messages[0].name, "A");
  EXPECT_EQ(result.value->messages[1].name, "B");
}

TEST(ParseDocument, EmptyInputIsAnEmptyDocument) {
  const auto result = parse("");
  ASSERT_TRUE(result.ok());
  EXPECT_TRUE(result.value->messages.empty());
}

TEST(ParseErrors, MissingMandatoryClauses) {
  const auto result = parse("http { name OnlyName }");
  ASSERT_FALSE(result.ok());
  EXPECT_EQ(result.diagnostics.size(), 2u);  // missing url, missing type
}

TEST(ParseErrors, DuplicateClause) {
  const auto result = parse(
      "http { name A name B url server localhost path p type GET }");
  ASSERT_FALSE(result.ok());
  EXPECT_NE(first_error(result).find("duplicate 'name'"), std::string::npos);
}

TEST(ParseErrors, UnknownMethod) {
  const auto result = parse(
      "http { name A url server localhost path p type PATCH }");
  ASSERT_FALSE(result.ok());
  EXPECT_NE(first_error(result).find("unknown request type 'PATCH'"),
            std::string::npos);
}

TEST(ParseErrors, QuotedNameRejected) {
  const auto result = parse(
      "http { name \"A\" url server localhost path p type GET }");
  ASSERT_FALSE(result.ok());
  EXPECT_NE(first_error(result).find("bare identifier"), std::string::npos);
}

TEST(ParseErrors, BadInputVariable) {
  const auto result = parse(
      "http { name A url server localhost path p type GET param k: input "
      "$1x }");
  ASSERT_FALSE(result.ok());
  EXPECT_NE(first_error(result).find("input variable"), std::string::npos);
}

TEST(ParseErrors, BadEnvironmentVariable) {
  const auto result = parse(
      "http { name A url server environment api_server path p type GET }");
  ASSERT_FALSE(result.ok());
  EXPECT_NE(first_error(result).find("[A-Z]+(_[A-Z]+)*"), std::string::npos);
}

TEST(ParseErrors, LiteralServerIsCheckedAgainstUrlGrammar) {
  const auto result = parse(
      "http {\n"
      "  name A\n"
      "  url server 256.1.1.1\n"
      "      path p\n"
      "  type GET\n"
      "}\n");
  ASSERT_FALSE(result.ok());
  ASSERT_EQ(result.diagnostics.size(), 1u);
  EXPECT_NE(result.diagnostics[0].message.find("IPv4"), std::string::npos);
  // Span is remapped into file coordinates: line 3, pointing at the host.
  EXPECT_EQ(result.diagnostics[0].span.line, 3u);
  EXPECT_EQ(result.diagnostics[0].span.column, 14u);
  EXPECT_EQ(result.diagnostics[0].source, "test.http");
}

TEST(ParseErrors, LiteralPathIsCheckedAgainstUrlGrammar) {
  const auto result = parse(
      "http { name A url server localhost path \"a b\" type GET }");
  ASSERT_FALSE(result.ok());
  EXPECT_NE(first_error(result).find("illegal character"), std::string::npos);
}

TEST(ParseErrors, UnterminatedString) {
  const auto result = parse(
      "http { name A url server localhost path p type GET param k: \"oops }");
  ASSERT_FALSE(result.ok());
  EXPECT_NE(first_error(result).find("unterminated string"),
            std::string::npos);
}

TEST(ParseErrors, UnsupportedEscape) {
  const auto result = parse(
      "http { name A url server localhost path p type GET param k: \"a\\n\" "
      "}");
  ASSERT_FALSE(result.ok());
  EXPECT_NE(first_error(result).find("unsupported escape"), std::string::npos);
}

TEST(ParseErrors, MissingColon) {
  const auto result = parse(
      "http { name A url server localhost path p type GET param k v }");
  ASSERT_FALSE(result.ok());
  EXPECT_NE(first_error(result).find("expected ':'"), std::string::npos);
}

TEST(ParseErrors, BodyFieldValidation) {
  const auto missing = parse(
      "http { name A url server localhost path p type POST body { "
      "contentType text/plain } }");
  ASSERT_FALSE(missing.ok());
  EXPECT_EQ(missing.diagnostics.size(), 2u);  // no entityType, no payload

  const auto bad_entity = parse(
      "http { name A url server localhost path p type POST body { "
      "contentType text/plain entityType BLOB payload x } }");
  ASSERT_FALSE(bad_entity.ok());
  EXPECT_NE(first_error(bad_entity).find("unknown entity type 'BLOB'"),
            std::string::npos);
}

TEST(ParseErrors, ReturnsFieldValidation) {
  const auto result = parse(
      "http { name A url server localhost path p type GET returns { expect "
      "text/plain as neither } }");
  ASSERT_FALSE(result.ok());
  EXPECT_NE(first_error(result).find("unknown return form 'neither'"),
            std::string::npos);
}

TEST(ParseErrors, EmptyCustomize) {
  const auto result = parse(
      "http { name A url server localhost path p type GET customize { } }");
  ASSERT_FALSE(result.ok());
  EXPECT_NE(first_error(result).find("at least one"), std::string::npos);
}

TEST(ParseErrors, BadTimeout) {
  const auto result = parse(
      "http { name A url server localhost path p type GET customize { "
      "timeout soon } }");
  ASSERT_FALSE(result.ok());
  EXPECT_NE(first_error(result).find("timeout must be an integer"),
            std::string::npos);
}

TEST(ParseErrors, UnexpectedEndOfFile) {
  const auto result = parse("http { name A url server localhost path p");
  ASSERT_FALSE(result.ok());
  EXPECT_TRUE(any_error_contains(result, "unexpected end of file"));
}

TEST(ParseErrors, RecoveryContinuesAfterUnknownClause) {
  const auto result = parse(
      "http {\n"
      "  name A\n"
      "  bogus thing\n"
      "  url server localhost\n"
      "      path p\n"
      "  type GET\n"
      "  alsobad\n"
      "}\n");
  ASSERT_FALSE(result.ok());
  // Both unknown clauses are reported; the known clauses in between were
  // still consumed (no cascading "missing url" errors).
  EXPECT_EQ(result.diagnostics.size(), 2u);
  EXPECT_NE(result.diagnostics[0].message.find("unknown clause 'bogus'"),
            std::string::npos);
  EXPECT_NE(result.diagnostics[1].message.find("unknown clause 'alsobad'"),
            std::string::npos);
}

TEST(ParseErrors, TopLevelGarbage) {
  const auto result = parse("hello http { name A url server localhost path "
                            "p type GET }");
  ASSERT_FALSE(result.ok());
  EXPECT_NE(first_error(result).find("expected 'http' at top level"),
            std::string::npos);
}

TEST(FormatDocument, CanonicalGolden) {
  HttpMessage message;
  message.name = "Everything";
  message.url.server = env("API_SERVER");
  message.url.path = input("path");
  message.method = RequestMethod::kPut;
  message.query = {
      Parameter{lit("q"), lit("two words"), {}},
      Parameter{input("k"), lit("en-US"), {}},
  };
  message.headers = {
      Header{HeaderKey{WellKnownHeaderKey::kAccept}, lit("application/json"),
             {}},
      Header{HeaderKey{std::string("X-Trace")}, input("trace"), {}},
  };
  message.body = Body{ContentTypeSpec{WellKnownMediaType::kApplicationJson},
                      EntityKind::kText, lit("{ \"a\": 1 }"), {}};
  message.return_value =
      ReturnValue{ContentTypeSpec{WellKnownMediaType::kTextPlain},
                  ReturnForm::kPayloadText, {}};
  Customization custom;
  custom.proxy = ProxySpec{lit("proxy.example.com"), lit("3128")};
  custom.basic_auth = BasicAuthSpec{input("user"), input("pass")};
  custom.timeout_ms = 2500;
  message.customization = custom;

  RequestDocument document;
  document.source_name = "golden.http";
  document.messages = {message};

  const std::string expected =
      "http {\n"
      "  name Everything\n"
      "  url server environment API_SERVER\n"
      "      path input $path\n"
      "  type PUT\n"
      "  param q: \"two words\"\n"
      "  param input $k: en-US\n"
      "  header Accept: application/json\n"
      "  header X-Trace: input $trace\n"
      "  body {\n"
      "    contentType application/json\n"
      "    entityType TEXT\n"
      "    payload \"{ \\\"a\\\": 1 }\"\n"
      "  }\n"
      "  returns {\n"
      "    expect text/plain\n"
      "    as payload\n"
      "  }\n"
      "  customize {\n"
      "    proxy proxy.example.com 3128\n"
      "    basicauth input $user input $pass\n"
      "    timeout 2500\n"
      "  }\n"
      "}\n";
  EXPECT_EQ(format_document(document), expected);

  // And the canonical text parses back to the same document.
  const auto reparsed = parse_document(expected, "golden.http");
  ASSERT_TRUE(reparsed.ok()) << first_error(reparsed);
  EXPECT_EQ(*reparsed.value, document);
}

TEST(FormatDocument, QuotesOnlyWhenNeeded) {
  HttpMessage message = minimal_message();
  message.query = {
      Parameter{lit("plain"), lit("bare-word_ok,;=&"), {}},
      Parameter{lit("has:colon"), lit("a:b"), {}},   // key quoted, value bare
      Parameter{lit("kw"), lit("input"), {}},        // keyword quoted
      Parameter{lit("dollar"), lit("$x"), {}},       // "$" quoted
      Parameter{lit("slashes"), lit("//x"), {}},     // comment-like quoted
      Parameter{lit("empty"), lit(""), {}},
  };
  RequestDocument document;
  document.messages = {message};

  const std::string text = format_document(document);
  EXPECT_NE(text.find("param plain: bare-word_ok,;=&\n"), std::string::npos);
  EXPECT_NE(text.find("param \"has:colon\": a:b\n"), std::string::npos);
  EXPECT_NE(text.find("param kw: \"input\"\n"), std::string::npos);
  EXPECT_NE(text.find("param dollar: \"$x\"\n"), std::string::npos);
  EXPECT_NE(text.find("param slashes: \"//x\"\n"), std::string::npos);
  EXPECT_NE(text.find("param empty: \"\"\n"), std::string::npos);

  const auto reparsed = parse_document(text, "q.http");
  ASSERT_TRUE(reparsed.ok()) << first_error(reparsed);
  EXPECT_EQ(*reparsed.value, document);
}

TEST(FormatDocument, MessagesSeparatedByBlankLine) {
  RequestDocument document;
  document.messages = {minimal_message("A"), minimal_message("B")};
  const std::string text = format_document(document);
  EXPECT_NE(text.find("}\n\nhttp {\n"), std::string::npos);
  EXPECT_TRUE(text.ends_with("}\n"));
}

TEST(FormatDocument, RandomDocumentsRoundTrip) {
  testing::DocumentGenerator gen(7);
  for (int i = 0; i < 200; ++i) {
    const RequestDocument original = gen.next_document();
    ASSERT_TRUE(validate_document(original).empty()) << "iteration " << i;
    const std::string text = format_document(original);
    auto reparsed = parse_document(text, "<generated>");
    ASSERT_TRUE(reparsed.ok())
        << "iteration " << i << ": " << first_error(reparsed) << "\n"
        << text;
    ASSERT_EQ(*reparsed.value, original) << "iteration " << i << "\n" << text;
    // Formatting is idempotent.
    ASSERT_EQ(format_document(*reparsed.value), text) << "iteration " << i;
  }
}

class ParseDirectoryTest : public ::testing::Test {
 protected:
  void SetUp() override {
    root_ = std::filesystem::path(::testing::TempDir()) /
            ("httpdsl_parse_dir_" + std::to_string(::getpid()));
    std::filesystem::remove_all(root_);
    std::filesystem::create_directories(root_ / "nested");
  }

  void TearDown() override { std::filesystem::remove_all(root_); }

  void write(const std::filesystem::path& rel, const std::string& text) {
    std::ofstream out(root_ / rel);
    out << text;
  }

  std::filesystem::path root_;
};

TEST_F(ParseDirectoryTest, WalksRecursivelyInLexicographicOrder) {
  write("b.http", "http { name B url server localhost path b type GET }");
  write("nested/a.http",
        "http { name A url server localhost path a type GET }");
  write("ignored.txt", "not parsed at all");

  const auto result = parse_directory(root_.string());
  ASSERT_TRUE(result.ok());
  ASSERT_EQ(result.value->size(), 2u);
  // "<root>/b.http" sorts after "<root>/nested/a.http"? No: 'b' < 'n', so
  // b.http comes first by full path.
  EXPECT_EQ((*result.value)[0].messages[0].name, "B");
  EXPECT_EQ((*result.value)[1].messages[0].name, "A");
}

TEST_F(ParseDirectoryTest, MergesDiagnosticsAcrossFiles) {
  write("good.http", "http { name G url server localhost path g type GET }");
  write("bad.http", "http { name X }");

  const auto result = parse_directory(root_.string());
  EXPECT_FALSE(result.ok());
  ASSERT_FALSE(result.diagnostics.empty());
  EXPECT_NE(result.diagnostics[0].source.find("bad.http"), std::string::npos);
}

TEST_F(ParseDirectoryTest, RejectsMissingDirectory) {
  const auto result = parse_directory((root_ / "nope").string());
  EXPECT_FALSE(result.ok());
}

}  // namespace
}  // namespace httpdsl
