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

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <utility>

#include "httpdsl/url.hpp"

namespace httpdsl {
namespace {

struct Token {
  enum class Kind {
    kWord,    // bare word
    kQuoted,  // double-quoted string, text already unescaped
    kPunct,   // one of { } :
    kEof,
  };

  Kind kind = Kind::kEof;
  std::string text;
  Span span;

  bool is_word(const char* expected) const {
    return kind == Kind::kWord && text == expected;
  }
  bool is_punct(char c) const {
    return kind == Kind::kPunct && text.size() == 1 && text[0] == c;
  }
};

// Hand-rolled scanner. Two modes differ in one point only: in key mode a
// bare word stops before ':' (so `param apikey: v` splits after "apikey"),
// while in value mode ':' is an ordinary word character (so
// `localhost:8080` stays one token).
class Scanner {
 public:
  enum class Mode {
    kValue,
    kKey,
  };

  struct State {
    std::size_t pos;
    std::size_t line;
    std::size_t column;
  };

  explicit Scanner(const std::string& text) : text_(text) {}

  State save() const { return State{pos_, line_, column_}; }
  void restore(const State& state) {
    pos_ = state.pos;
    line_ = state.line;
    column_ = state.column;
  }

  Token next(Mode mode) {
    skip_trivia();
    Token token;
    token.span = Span{line_, column_, 0};
    if (pos_ >= text_.size()) {
      token.kind = Token::Kind::kEof;
      return token;
    }

    const char c = text_[pos_];
    if (c == '{' || c == '}' || (c == ':' && mode == Mode::kKey)) {
      token.kind = Token::Kind::kPunct;
      token.text = std::string(1, c);
      token.span.length = 1;
      advance();
      return token;
    }

    if (c == '"') {
      return scan_quoted();
    }

    token.kind = Token::Kind::kWord;
    while (pos_ < text_.size()) {
      const char w = text_[pos_];
      if (w == ' ' || w == '\t' || w == '\r' || w == '\n' || w == '{' ||
          w == '}' || w == '"') {
        break;
      }
      if (w == ':' && mode == Mode::kKey) {
        break;
      }
      token.text += w;
      advance();
    }
    token.span.length = pos_col_distance(token.span);
    if (token.text.empty()) {
      // Can only happen on a stray ':' in value mode at token start; treat
      // it as a one-character word so the caller reports it sensibly.
      token.text = std::string(1, text_[pos_]);
      advance();
      token.span.length = 1;
    }
    return token;
  }

  // True if the next token (in value mode) would be EOF.
  bool at_eof() {
    const State state = save();
    const bool eof = next(Mode::kValue).kind == Token::Kind::kEof;
    restore(state);
    return eof;
  }

  // The scanner's own lexical errors (bad escapes, unterminated strings).
  std::vector<Diagnostic>& errors() { return errors_; }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  std::size_t pos_col_distance(const Span& start) const {
    // Tokens never span lines, so length is a column difference.
    return column_ - start.column;
  }

  void skip_trivia() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
        continue;
      }
      // A comment runs to end of line, but only when it starts where a
      // token would: "a//b" inside a word stays a word.
      if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
        while (pos_ < text_.size() && text_[pos_] != '\n') {
          advance();
        }
        continue;
      }
      break;
    }
  }

  Token scan_quoted() {
    Token token;
    token.kind = Token::Kind::kQuoted;
    token.span = Span{line_, column_, 0};
    advance();  // opening quote
    while (true) {
      if (pos_ >= text_.size() || text_[pos_] == '\n') {
        errors_.push_back(Diagnostic{Severity::kError, "", token.span,
                                     "unterminated string"});
        break;
      }
      const char c = text_[pos_];
      if (c == '"') {
        advance();
        break;
      }
      if (c == '\\') {
        advance();
        if (pos_ >= text_.size() ||
            (text_[pos_] != '"' && text_[pos_] != '\\')) {
          errors_.push_back(Diagnostic{
              Severity::kError, "", Span{line_, column_, 1},
              "unsupported escape in string; only \\\" and \\\\ exist"});
          if (pos_ >= text_.size()) {
            break;
          }
        }
        token.text += text_[pos_];
        advance();
        continue;
      }
      token.text += c;
      advance();
    }
    token.span.length = pos_col_distance(token.span);
    return token;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
  std::vector<Diagnostic> errors_;
};

bool is_clause_keyword(const std::string& word) {
  return word == "name" || word == "url" || word == "type" ||
         word == "param" || word == "header" || word == "body" ||
         word == "returns" || word == "customize";
}

class Parser {
 public:
  Parser(const std::string& text, std::string source_name)
      : scanner_(text), source_(std::move(source_name)) {}

  Parsed<RequestDocument> run() {
    RequestDocument document;
    document.source_name = source_;

    while (true) {
      const Token token = scanner_.next(Scanner::Mode::kValue);
      if (token.kind == Token::Kind::kEof) {
        break;
      }
      if (token.is_word("http")) {
        parse_message(token, &document);
        continue;
      }
      error(token.span, "expected 'http' at top level, found '" + token.text +
                            "'");
    }

    // Fold in lexical errors from the scanner.
    for (Diagnostic d : scanner_.errors()) {
      d.source = source_;
      diagnostics_.push_back(std::move(d));
    }
    std::stable_sort(diagnostics_.begin(), diagnostics_.end(),
              [](const Diagnostic& a, const Diagnostic& b) {
                return std::pair(a.span.line, a.span.column) <
                       std::pair(b.span.line, b.span.column);
              });

    Parsed<RequestDocument> result;
    result.diagnostics = std::move(diagnostics_);
    if (!has_error(result.diagnostics)) {
      result.value = std::move(document);
    }
    return result;
  }

 private:
  void error(Span span, std::string message) {
    diagnostics_.push_back(
        Diagnostic{Severity::kError, source_, span, std::move(message)});
  }

  Token next_value() { return scanner_.next(Scanner::Mode::kValue); }
  Token next_key() { return scanner_.next(Scanner::Mode::kKey); }

  bool expect_open_brace(const char* what) {
    const Token token = next_value();
    if (token.is_punct('{')) {
      return true;
    }
    error(token.span, std::string("expected '{' after ") + what);
    return false;
  }

  // Consumes the ':' between a key and its value.
  void expect_colon(const char* what) {
    const Token token = next_key();
    if (!token.is_punct(':')) {
      error(token.span,
            std::string("expected ':' after ") + what + ", found '" +
                token.text + "'");
    }
  }

  // Reads one value: a variable reference or a literal. Returns the value
  // and stores the terminal token (for span bookkeeping) in `out_token`.
  ValueOrVariable parse_value(Scanner::Mode mode, Token* out_token,
                              const char* what) {
    const Token token = scanner_.next(mode);
    *out_token = token;
    if (token.kind == Token::Kind::kQuoted) {
      return ValueOrVariable::from_literal(token.text);
    }
    if (token.kind != Token::Kind::kWord) {
      error(token.span, std::string("expected a value for ") + what);
      return ValueOrVariable::from_literal("");
    }
    if (token.text == "input") {
      const Token name = scanner_.next(mode);
      *out_token = name;
      if (name.kind != Token::Kind::kWord || name.text.size() < 2 ||
          name.text[0] != '$' || !is_identifier(name.text.substr(1))) {
        error(name.span,
              "input variable must be written as $name with identifier "
              "syntax");
        return ValueOrVariable::from_literal("");
      }
      return ValueOrVariable::from_variable(VariableRef{
          VariableRef::Kind::kInput, name.text.substr(1), name.span});
    }
    if (token.text == "environment") {
      const Token name = scanner_.next(mode);
      *out_token = name;
      if (name.kind != Token::Kind::kWord ||
          !is_environment_name(name.text)) {
        error(name.span,
              "environment variable name must match [A-Z]+(_[A-Z]+)*");
        return ValueOrVariable::from_literal("");
      }
      return ValueOrVariable::from_variable(VariableRef{
          VariableRef::Kind::kEnvironment, name.text, name.span});
    }
    return ValueOrVariable::from_literal(token.text);
  }

  ContentTypeSpec parse_content_type(Scanner::Mode mode, const char* what) {
    Token token;
    const ValueOrVariable value = parse_value(mode, &token, what);
    if (value.is_variable()) {
      return ContentTypeSpec{value.variable()};
    }
    if (const auto known = parse_well_known_media_type(value.literal())) {
      return ContentTypeSpec{*known};
    }
    return ContentTypeSpec{value.literal()};
  }

  // Validates a literal server/path value against the URL grammar and maps
  // the diagnostics into this file's coordinates. For quoted literals with
  // escapes the column can drift by the number of escape characters; spans
  // still point into the right token.
  void check_literal_url(const Token& token, const std::string& text,
                         bool server) {
    const auto remap = [&](std::vector<Diagnostic> diags) {
      for (Diagnostic& d : diags) {
        const std::size_t offset = d.span.column - 1;
        d.source = source_;
        d.span.line = token.span.line;
        d.span.column =
            token.span.column + offset +
            (token.kind == Token::Kind::kQuoted ? 1 : 0);
        diagnostics_.push_back(std::move(d));
      }
    };
    if (server) {
      remap(parse_server(text).diagnostics);
    } else {
      remap(parse_path(text).diagnostics);
    }
  }

  // Skips tokens until the next clause keyword or the message's closing
  // brace, stepping over nested blocks. Used to recover after an error so
  // one typo does not cascade.
  void skip_to_clause_boundary() {
    while (true) {
      const Scanner::State state = scanner_.save();
      const Token token = next_value();
      if (token.kind == Token::Kind::kEof) {
        return;
      }
      if (token.is_punct('}') ||
          (token.kind == Token::Kind::kWord && is_clause_keyword(token.text))) {
        scanner_.restore(state);
        return;
      }
      if (token.is_punct('{')) {
        int depth = 1;
        while (depth > 0) {
          const Token inner = next_value();
          if (inner.kind == Token::Kind::kEof) {
            return;
          }
          if (inner.is_punct('{')) {
            ++depth;
          } else if (inner.is_punct('}')) {
            --depth;
          }
        }
      }
    }
  }

  void parse_message(const Token& http_token, RequestDocument* document) {
    HttpMessage message;
    message.span = http_token.span;

    if (!expect_open_brace("'http'")) {
      return;
    }

    bool seen_name = false;
    bool seen_url = false;
    bool seen_type = false;

    while (true) {
      const Token token = next_value();
      if (token.is_punct('}')) {
        break;
      }
      if (token.kind == Token::Kind::kEof) {
        error(token.span, "unexpected end of file inside a message block");
        break;
      }
      if (token.kind != Token::Kind::kWord) {
        error(token.span, "expected a clause, found '" + token.text + "'");
        skip_to_clause_boundary();
        continue;
      }

      if (token.text == "name") {
        const Token name = next_value();
        if (seen_name) {
          error(token.span, "duplicate 'name' clause");
          continue;
        }
        seen_name = true;
        if (name.kind != Token::Kind::kWord || !is_identifier(name.text)) {
          error(name.span,
                "message name must be a bare identifier "
                "([A-Za-z_][A-Za-z0-9_]*)");
          skip_to_clause_boundary();
          continue;
        }
        message.name = name.text;
        message.name_span = name.span;
        continue;
      }

      if (token.text == "url") {
        if (seen_url) {
          error(token.span, "duplicate 'url' clause");
        }
        seen_url = true;
        message.url.span = token.span;

        const Token server_kw = next_value();
        if (!server_kw.is_word("server")) {
          error(server_kw.span, "expected 'server' after 'url'");
          skip_to_clause_boundary();
          continue;
        }
        Token server_token;
        message.url.server = parse_value(Scanner::Mode::kValue, &server_token,
                                         "'url server'");
        if (!message.url.server.is_variable()) {
          check_literal_url(server_token, message.url.server.literal(),
                            /*server=*/true);
        }

        const Scanner::State before_path = scanner_.save();
        const Token path_kw = next_value();
        if (!path_kw.is_word("path")) {
          error(path_kw.span, "expected 'path' after the server part");
          scanner_.restore(before_path);
          continue;
        }
        Token path_token;
        message.url.path =
            parse_value(Scanner::Mode::kValue, &path_token, "'path'");
        if (!message.url.path.is_variable()) {
          check_literal_url(path_token, message.url.path.literal(),
                            /*server=*/false);
        }
        continue;
      }

      if (token.text == "type") {
        const Token method = next_value();
        if (seen_type) {
          error(token.span, "duplicate 'type' clause");
        }
        seen_type = true;
        if (method.kind == Token::Kind::kWord) {
          if (const auto parsed = parse_request_method(method.text)) {
            message.method = *parsed;
            continue;
          }
        }
        error(method.span, "unknown request type '" + method.text +
                               "'; expected GET, POST, PUT, or DELETE");
        continue;
      }

      if (token.text == "param") {
        Parameter param;
        param.span = token.span;
        Token key_token;
        param.key =
            parse_value(Scanner::Mode::kKey, &key_token, "a parameter key");
        expect_colon("the parameter key");
        Token value_token;
        param.value = parse_value(Scanner::Mode::kValue, &value_token,
                                  "the parameter value");
        message.query.push_back(std::move(param));
        continue;
      }

      if (token.text == "header") {
        Header header;
        header.span = token.span;
        Token key_token;
        const ValueOrVariable key =
            parse_value(Scanner::Mode::kKey, &key_token, "a header key");
        if (key.is_variable()) {
          header.key = HeaderKey{key.variable()};
        } else if (const auto known =
                       parse_well_known_header_key(key.literal())) {
          header.key = HeaderKey{*known};
        } else {
          header.key = HeaderKey{key.literal()};
        }
        expect_colon("the header key");
        Token value_token;
        header.value = parse_value(Scanner::Mode::kValue, &value_token,
                                   "the header value");
        message.headers.push_back(std::move(header));
        continue;
      }

      if (token.text == "body") {
        if (message.body.has_value()) {
          error(token.span, "duplicate 'body' clause");
        }
        parse_body(token, &message);
        continue;
      }

      if (token.text == "returns") {
        if (message.return_value.has_value()) {
          error(token.span, "duplicate 'returns' clause");
        }
        parse_returns(token, &message);
        continue;
      }

      if (token.text == "customize") {
        if (message.customization.has_value()) {
          error(token.span, "duplicate 'customize' clause");
        }
        parse_customize(token, &message);
        continue;
      }

      error(token.span, "unknown clause '" + token.text + "' in message");
      skip_to_clause_boundary();
    }

    if (!seen_name) {
      error(message.span, "message is missing its 'name' clause");
    }
    if (!seen_url) {
      error(message.span, "message is missing its 'url' clause");
    }
    if (!seen_type) {
      error(message.span, "message is missing its 'type' clause");
    }

    document->messages.push_back(std::move(message));
  }

  void parse_body(const Token& body_token, HttpMessage* message) {
    Body body;
    body.span = body_token.span;
    if (!expect_open_brace("'body'")) {
      return;
    }

    bool seen_content_type = false;
    bool seen_entity = false;
    bool seen_payload = false;

    while (true) {
      const Token token = next_value();
      if (token.is_punct('}')) {
        break;
      }
      if (token.kind == Token::Kind::kEof) {
        error(token.span, "unexpected end of file inside a body block");
        break;
      }
      if (token.is_word("contentType")) {
        if (seen_content_type) {
          error(token.span, "duplicate 'contentType' field");
        }
        seen_content_type = true;
        body.content_type =
            parse_content_type(Scanner::Mode::kValue, "'contentType'");
        continue;
      }
      if (token.is_word("entityType")) {
        if (seen_entity) {
          error(token.span, "duplicate 'entityType' field");
        }
        seen_entity = true;
        const Token kind = next_value();
        if (kind.kind == Token::Kind::kWord) {
          if (const auto parsed = parse_entity_kind(kind.text)) {
            body.entity = *parsed;
            continue;
          }
        }
        error(kind.span, "unknown entity type '" + kind.text +
                             "'; expected TEXT, FILE, STREAM, or BYTES");
        continue;
      }
      if (token.is_word("payload")) {
        if (seen_payload) {
          error(token.span, "duplicate 'payload' field");
        }
        seen_payload = true;
        Token value_token;
        body.payload = parse_value(Scanner::Mode::kValue, &value_token,
                                   "'payload'");
        continue;
      }
      error(token.span,
            "unknown body field '" + token.text +
                "'; expected contentType, entityType, or payload");
      skip_to_clause_boundary();
      break;
    }

    if (!seen_content_type) {
      error(body.span, "body is missing its 'contentType' field");
    }
    if (!seen_entity) {
      error(body.span, "body is missing its 'entityType' field");
    }
    if (!seen_payload) {
      error(body.span, "body is missing its 'payload' field");
    }
    message->body = std::move(body);
  }

  void parse_returns(const Token& returns_token, HttpMessage* message) {
    ReturnValue ret;
    ret.span = returns_token.span;
    if (!expect_open_brace("'returns'")) {
      return;
    }

    bool seen_expect = false;
    bool seen_as = false;

    while (true) {
      const Token token = next_value();
      if (token.is_punct('}')) {
        break;
      }
      if (token.kind == Token::Kind::kEof) {
        error(token.span, "unexpected end of file inside a returns block");
        break;
      }
      if (token.is_word("expect")) {
        if (seen_expect) {
          error(token.span, "duplicate 'expect' field");
        }
        seen_expect = true;
        ret.expected_type =
            parse_content_type(Scanner::Mode::kValue, "'expect'");
        continue;
      }
      if (token.is_word("as")) {
        if (seen_as) {
          error(token.span, "duplicate 'as' field");
        }
        seen_as = true;
        const Token form = next_value();
        if (form.is_word("payload")) {
          ret.form = ReturnForm::kPayloadText;
        } else if (form.is_word("response")) {
          ret.form = ReturnForm::kFullResponse;
        } else {
          error(form.span, "unknown return form '" + form.text +
                               "'; expected payload or response");
        }
        continue;
      }
      error(token.span, "unknown returns field '" + token.text +
                            "'; expected expect or as");
      skip_to_clause_boundary();
      break;
    }

    if (!seen_expect) {
      error(ret.span, "returns block is missing its 'expect' field");
    }
    if (!seen_as) {
      error(ret.span, "returns block is missing its 'as' field");
    }
    message->return_value = std::move(ret);
  }

  void parse_customize(const Token& customize_token, HttpMessage* message) {
    Customization custom;
    custom.span = customize_token.span;
    if (!expect_open_brace("'customize'")) {
      return;
    }

    bool any = false;
    while (true) {
      const Token token = next_value();
      if (token.is_punct('}')) {
        break;
      }
      if (token.kind == Token::Kind::kEof) {
        error(token.span, "unexpected end of file inside a customize block");
        break;
      }
      if (token.is_word("proxy")) {
        if (custom.proxy.has_value()) {
          error(token.span, "duplicate 'proxy' option");
        }
        any = true;
        ProxySpec proxy;
        Token host_token;
        proxy.host = parse_value(Scanner::Mode::kValue, &host_token,
                                 "the proxy host");
        Token port_token;
        proxy.port = parse_value(Scanner::Mode::kValue, &port_token,
                                 "the proxy port");
        custom.proxy = std::move(proxy);
        continue;
      }
      if (token.is_word("basicauth")) {
        if (custom.basic_auth.has_value()) {
          error(token.span, "duplicate 'basicauth' option");
        }
        any = true;
        BasicAuthSpec auth;
        Token user_token;
        auth.username = parse_value(Scanner::Mode::kValue, &user_token,
                                    "the basic-auth username");
        Token pass_token;
        auth.password = parse_value(Scanner::Mode::kValue, &pass_token,
                                    "the basic-auth password");
        custom.basic_auth = std::move(auth);
        continue;
      }
      if (token.is_word("timeout")) {
        if (custom.timeout_ms.has_value()) {
          error(token.span, "duplicate 'timeout' option");
        }
        any = true;
        const Token value = next_value();
        int parsed = 0;
        const char* begin = value.text.data();
        const char* end = begin + value.text.size();
        const auto [ptr, ec] = std::from_chars(begin, end, parsed);
        if (value.kind != Token::Kind::kWord || ec != std::errc() ||
            ptr != end) {
          error(value.span,
                "timeout must be an integer number of milliseconds");
          continue;
        }
        custom.timeout_ms = parsed;
        continue;
      }
      error(token.span,
            "unknown customize option '" + token.text +
                "'; expected proxy, basicauth, or timeout");
      skip_to_clause_boundary();
      break;
    }

    if (!any) {
      error(custom.span,
            "customize block must set at least one of proxy, basicauth, or "
            "timeout");
    }
    message->customization = std::move(custom);
  }

  Scanner scanner_;
  std::string source_;
  std::vector<Diagnostic> diagnostics_;
};

}  // namespace

Parsed<RequestDocument> parse_document(const std::string& text,
                                       const std::string& source_name) {
  Parser parser(text, source_name);
  return parser.run();
}

Parsed<std::vector<RequestDocument>> parse_directory(
    const std::string& directory) {
  namespace fs = std::filesystem;
  Parsed<std::vector<RequestDocument>> result;

  std::error_code ec;
  if (!fs::is_directory(directory, ec)) {
    result.diagnostics.push_back(Diagnostic{
        Severity::kError, directory, Span{},
        "not a directory"});
    return result;
  }

  // Gather paths first and sort them so the document order is stable no
  // matter how the filesystem enumerates entries.
  std::vector<fs::path> paths;
  for (fs::recursive_directory_iterator it(directory, ec), end;
       it != end && !ec; it.increment(ec)) {
    if (it->is_regular_file() && it->path().extension() == ".http") {
      paths.push_back(it->path());
    }
  }
  if (ec) {
    result.diagnostics.push_back(Diagnostic{
        Severity::kError, directory, Span{},
        "failed to walk directory: " + ec.message()});
    return result;
  }
  std::sort(paths.begin(), paths.end(),
            [](const fs::path& a, const fs::path& b) {
              return a.generic_string() < b.generic_string();
            });

  std::vector<RequestDocument> documents;
  for (const fs::path& path : paths) {
    std::ifstream file(path, std::ios::binary);
    if (!file) {
      result.diagnostics.push_back(Diagnostic{
          Severity::kError, path.generic_string(), Span{},
          "failed to open file"});
      continue;
    }
    std::ostringstream text;
    text << file.rdbuf();
    Parsed<RequestDocument> parsed =
        parse_document(text.str(), path.generic_string());
    result.diagnostics.insert(result.diagnostics.end(),
                              parsed.diagnostics.begin(),
                              parsed.diagnostics.end());
    if (parsed.ok()) {
      documents.push_back(std::move(*parsed.value));
    }
  }

  if (!has_error(result.diagnostics)) {
    result.value = std::move(documents);
  }
  return result;
}

}  // namespace httpdsl
