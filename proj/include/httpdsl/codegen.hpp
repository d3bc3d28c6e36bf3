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

#ifndef HTTPDSL_CODEGEN_HPP_
#define HTTPDSL_CODEGEN_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "httpdsl/model.hpp"

namespace httpdsl {

// The built-in code generation dialect: header-only C++17 clients on top of
// the cpp-httplib single header. Additional dialects can be added behind the
// same identifier-based selection.
inline constexpr char kCppDialect[] = "cpp";

// One file of a planned project.
struct FileSpec {
  // Overwrite policy at emit time. Engine and client units are regenerated
  // on every emit (kAlways); user-editable stubs would use kIfAbsent (the
  // default tree has none).
  enum class WritePolicy {
    kAlways,
    kIfAbsent,
  };

  std::string relative_path;  // POSIX separators, relative to the tree root
  std::string content;        // UTF-8 text with LF line endings
  WritePolicy policy = WritePolicy::kAlways;

  friend bool operator==(const FileSpec&, const FileSpec&) = default;
};

// A planned client project: a root directory name and the files underneath
// it. Relative paths are unique and never escape the root.
struct ProjectTree {
  std::string root = "httpLib";
  std::vector<FileSpec> files;

  friend bool operator==(const ProjectTree&, const ProjectTree&) = default;
};

struct CodegenError {
  enum class Kind {
    kDuplicateMessageName,
    kUnknownDialect,
    kInvalidMessage,
  };

  Kind kind = Kind::kInvalidMessage;
  std::string detail;

  friend bool operator==(const CodegenError&, const CodegenError&) = default;
};

struct PlanProjectResult {
  std::optional<ProjectTree> tree;
  std::optional<CodegenError> error;

  bool ok() const { return tree.has_value(); }
};

struct RenderResult {
  std::optional<std::string> text;
  std::optional<CodegenError> error;

  bool ok() const { return text.has_value(); }
};

// Plans the full project for `messages`:
//
//   httpLib/
//     project.manifest                    build manifest (plain text lines)
//     src/main/cpp/
//       CustomResponseHandler.hpp         shared engine + response handling
//       RequestType.hpp                   request-method enumeration
//       ResponseObject.hpp                response record
//       <Name>Client.hpp                  one per message, in input order
//
// Planning is pure and deterministic: the same messages and dialect always
// produce byte-identical content. Message names must be unique and every
// message must pass validate_message.
PlanProjectResult plan_project(const std::vector<HttpMessage>& messages,
                               const std::string& dialect = kCppDialect);

// Renders one client unit: a class <Name>Client with a single static entry
// routine
//
//   static ResponseObject sendRequest(<input variables, in collection order>)
//
// that reads each referenced environment variable from the process
// environment, builds the URL, query, headers, and body the message
// describes, applies timeout/proxy/basic-auth customizations (emitting the
// timeout literal 5000 when uncustomized), performs exactly one exchange —
// no retries, no redirect following — and delegates response classification
// to the shared CustomResponseHandler. Transport failures throw.
RenderResult render_client_unit(const HttpMessage& message,
                                const std::string& dialect = kCppDialect);

// What emit did, path by path (paths are relative to the output directory,
// so they start with the tree root). The three lists are disjoint and cover
// every file of the tree:
//
//   created      did not exist before
//   skipped      existed and the policy was kIfAbsent
//   overwritten  existed and the policy was kAlways (the write is elided
//                when the bytes already match, but it is still reported
//                here)
//
// Emit never deletes: files in the output that the tree does not know —
// for example client units of since-deleted messages — are left untouched;
// stale-looking client units are called out in `warnings`.
struct EmitReport {
  std::vector<std::string> created;
  std::vector<std::string> skipped;
  std::vector<std::string> overwritten;
  std::vector<std::string> warnings;
};

struct EmitResult {
  std::optional<EmitReport> report;
  std::optional<std::string> io_error;

  bool ok() const { return report.has_value(); }
};

// Writes `tree` under `out_dir` per the policies above. Fails with io_error
// (possibly after partial writes) when a path is unsafe, a directory cannot
// be created, or a file cannot be written.
EmitResult emit(const ProjectTree& tree, const std::filesystem::path& out_dir);

}  // namespace httpdsl

#endif  // HTTPDSL_CODEGEN_HPP_
