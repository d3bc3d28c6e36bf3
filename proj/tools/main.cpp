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
//
// httpdsl — command-line front end.
//
//   httpdsl validate <file>...              check descriptions, print problems
//   httpdsl run <file> <message> [...]      send one message, print the result
//   httpdsl generate <file>... --out <dir>  emit a client source project
//   httpdsl blocks <file>... --out <file>   export a block palette manifest
//   httpdsl fmt [--check] <file>...         rewrite files in canonical form
//
// Exit codes, uniform across commands:
//   0  success
//   1  domain failure (validation errors, Failure branch, name collisions,
//      --check found non-canonical files)
//   2  usage, parse, or I/O error
//   3  transport error (timeout, connection failure, unreachable proxy)

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "httpdsl/binder.hpp"
#include "httpdsl/blocks.hpp"
#include "httpdsl/codegen.hpp"
#include "httpdsl/diagnostics.hpp"
#include "httpdsl/executor.hpp"
#include "httpdsl/model.hpp"
#include "httpdsl/parser.hpp"
#include "httpdsl/transport.hpp"

namespace {

constexpr int kExitSuccess = 0;
constexpr int kExitDomainFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitTransport = 3;

void print_diagnostics(const std::vector<httpdsl::Diagnostic>& diagnostics) {
  for (const httpdsl::Diagnostic& diagnostic : diagnostics) {
    std::cerr << httpdsl::format_diagnostic(diagnostic) << "\n";
  }
}

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return std::nullopt;
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Reads, parses, and validates one description file. On failure the document
// is absent and `exit_code` names the reason (I/O vs. content).
struct LoadedDocument {
  std::optional<httpdsl::RequestDocument> document;
  int exit_code = kExitSuccess;
};

LoadedDocument load_document(const std::string& path) {
  const std::optional<std::string> text = read_file(path);
  if (!text.has_value()) {
    std::cerr << "httpdsl: cannot read " << path << "\n";
    return {std::nullopt, kExitUsage};
  }
  httpdsl::Parsed<httpdsl::RequestDocument> parsed =
      httpdsl::parse_document(*text, path);
  if (!parsed.ok()) {
    print_diagnostics(parsed.diagnostics);
    return {std::nullopt, kExitUsage};
  }
  const std::vector<httpdsl::Diagnostic> problems =
      httpdsl::validate_document(*parsed.value);
  if (httpdsl::has_error(problems)) {
    print_diagnostics(problems);
    return {std::nullopt, kExitUsage};
  }
  print_diagnostics(problems);  // warnings, if any
  return {std::move(parsed.value), kExitSuccess};
}

// "name=value" for --input and --env. The value may be empty and may itself
// contain '='.
bool split_binding(const std::string& text, std::string& name,
                   std::string& value) {
  const std::size_t eq = text.find('=');
  if (eq == std::string::npos || eq == 0) {
    return false;
  }
  name = text.substr(0, eq);
  value = text.substr(eq + 1);
  return true;
}

int cmd_validate(const std::vector<std::string>& paths) {
  bool any_error = false;
  for (const std::string& path : paths) {
    const std::optional<std::string> text = read_file(path);
    if (!text.has_value()) {
      std::cerr << "httpdsl: cannot read " << path << "\n";
      return kExitUsage;
    }
    const httpdsl::Parsed<httpdsl::RequestDocument> parsed =
        httpdsl::parse_document(*text, path);
    print_diagnostics(parsed.diagnostics);
    if (!parsed.ok()) {
      any_error = true;
      continue;
    }
    const std::vector<httpdsl::Diagnostic> problems =
        httpdsl::validate_document(*parsed.value);
    print_diagnostics(problems);
    any_error = any_error || httpdsl::has_error(problems);
  }
  return any_error ? kExitDomainFailure : kExitSuccess;
}

int cmd_run(const std::string& path, const std::string& message_name,
            const std::vector<std::string>& input_flags,
            const std::vector<std::string>& env_flags,
            const std::string& transport_spec) {
  LoadedDocument loaded = load_document(path);
  if (!loaded.document.has_value()) {
    return loaded.exit_code;
  }

  const httpdsl::HttpMessage* message = nullptr;
  for (const httpdsl::HttpMessage& candidate : loaded.document->messages) {
    if (candidate.name == message_name) {
      message = &candidate;
      break;
    }
  }
  if (message == nullptr) {
    std::cerr << "httpdsl: no message named \"" << message_name << "\" in "
              << path << "\n";
    return kExitUsage;
  }

  httpdsl::BindingMap inputs;
  for (const std::string& flag : input_flags) {
    std::string name;
    std::string value;
    if (!split_binding(flag, name, value) || !httpdsl::is_identifier(name)) {
      std::cerr << "httpdsl: --input expects identifier=value, got \"" << flag
                << "\"\n";
      return kExitUsage;
    }
    inputs[name] = value;
  }

  // Environment bindings come from the process environment; --env overrides
  // win so runs can be made reproducible.
  httpdsl::BindingMap environment;
  std::vector<std::string> wanted =
      httpdsl::collect_environment_variables(*message);
  wanted.push_back(httpdsl::kTimeoutEnvVar);
  for (const std::string& name : wanted) {
    if (const char* value = std::getenv(name.c_str())) {
      environment[name] = value;
    }
  }
  for (const std::string& flag : env_flags) {
    std::string name;
    std::string value;
    if (!split_binding(flag, name, value) ||
        !httpdsl::is_environment_name(name)) {
      std::cerr << "httpdsl: --env expects NAME=value with an environment "
                   "variable name, got \""
                << flag << "\"\n";
      return kExitUsage;
    }
    environment[name] = value;
  }

  const httpdsl::ResolveResult resolved =
      httpdsl::resolve(*message, inputs, environment);
  if (!resolved.request.has_value()) {
    for (const httpdsl::ResolveError& error : resolved.errors) {
      switch (error.kind) {
        case httpdsl::ResolveError::Kind::kMissingInput:
          std::cerr << "httpdsl: missing --input binding for variable \""
                    << error.name << "\"\n";
          break;
        case httpdsl::ResolveError::Kind::kMissingEnvironment:
          std::cerr << "httpdsl: environment variable \"" << error.name
                    << "\" is not set (use --env " << error.name
                    << "=value to supply it)\n";
          break;
        case httpdsl::ResolveError::Kind::kInvalidValue:
          std::cerr << "httpdsl: invalid value for " << error.name << ": "
                    << error.reason << "\n";
          break;
      }
    }
    return kExitUsage;
  }

  std::unique_ptr<httpdsl::Transport> transport;
  if (transport_spec.empty()) {
    transport = std::make_unique<httpdsl::HttplibTransport>();
  } else if (transport_spec.rfind("mock:", 0) == 0) {
    std::string error;
    transport = httpdsl::ScriptedTransport::from_file(
        transport_spec.substr(5), &error);
    if (transport == nullptr) {
      std::cerr << "httpdsl: " << error << "\n";
      return kExitUsage;
    }
  } else {
    std::cerr << "httpdsl: --transport understands only mock:<script-file>\n";
    return kExitUsage;
  }

  const httpdsl::ExecuteResult outcome =
      httpdsl::send_request(*resolved.request, *transport);
  if (outcome.plan_error.has_value()) {
    std::cerr << "httpdsl: " << to_text(outcome.plan_error->kind) << ": "
              << outcome.plan_error->detail << "\n";
    return kExitUsage;
  }
  if (outcome.transport_error.has_value()) {
    std::cerr << "httpdsl: " << to_text(outcome.transport_error->kind) << ": "
              << outcome.transport_error->detail << "\n";
    return kExitTransport;
  }

  const httpdsl::ResponseObject& response = *outcome.response;
  if (resolved.request->return_form == httpdsl::ReturnForm::kPayloadText) {
    std::cout << response.payload;
  } else {
    std::cout << "statuscode: " << response.statuscode << "\n"
              << "succeeded: " << (response.succeeded ? "true" : "false")
              << "\n"
              << "tryAgain: " << (response.try_again ? "true" : "false")
              << "\n"
              << "nextUri: " << response.next_uri.value_or("<absent>") << "\n"
              << "requestType: " << to_text(resolved.request->method) << "\n"
              << "payload:\n"
              << response.payload;
  }
  return httpdsl::classify(response) == httpdsl::BranchResult::kSuccess
             ? kExitSuccess
             : kExitDomainFailure;
}

int cmd_generate(const std::vector<std::string>& paths,
                 const std::string& out_dir, const std::string& dialect) {
  std::vector<httpdsl::HttpMessage> messages;
  for (const std::string& path : paths) {
    LoadedDocument loaded = load_document(path);
    if (!loaded.document.has_value()) {
      return loaded.exit_code;
    }
    messages.insert(messages.end(), loaded.document->messages.begin(),
                    loaded.document->messages.end());
  }

  const httpdsl::PlanProjectResult plan =
      httpdsl::plan_project(messages, dialect);
  if (!plan.ok()) {
    std::cerr << "httpdsl: " << plan.error->detail << "\n";
    return plan.error->kind ==
                   httpdsl::CodegenError::Kind::kDuplicateMessageName
               ? kExitDomainFailure
               : kExitUsage;
  }

  const httpdsl::EmitResult emitted = httpdsl::emit(*plan.tree, out_dir);
  if (!emitted.ok()) {
    std::cerr << "httpdsl: " << *emitted.io_error << "\n";
    return kExitUsage;
  }

  const httpdsl::EmitReport& report = *emitted.report;
  std::cout << "created: " << report.created.size() << "\n"
            << "skipped: " << report.skipped.size() << "\n"
            << "overwritten: " << report.overwritten.size() << "\n";
  for (const std::string& warning : report.warnings) {
    std::cerr << "httpdsl: warning: " << warning << "\n";
  }
  return kExitSuccess;
}

int cmd_blocks(const std::vector<std::string>& paths,
               const std::string& out_file, const std::string& name_flag,
               bool with_rest_prelude) {
  std::vector<httpdsl::RequestDocument> documents;
  for (const std::string& path : paths) {
    LoadedDocument loaded = load_document(path);
    if (!loaded.document.has_value()) {
      return loaded.exit_code;
    }
    documents.push_back(std::move(*loaded.document));
  }

  std::string palette_name = name_flag;
  if (palette_name.empty()) {
    const std::filesystem::path out_path(out_file);
    palette_name =
        out_file == "-" ? "palette" : out_path.stem().string();
  }

  const httpdsl::BuildPaletteResult built =
      httpdsl::build_palette(documents, palette_name);
  if (!built.ok()) {
    std::cerr << "httpdsl: " << to_text(*built.error) << "\n";
    return kExitDomainFailure;
  }
  httpdsl::Palette palette = std::move(*built.palette);

  if (with_rest_prelude) {
    const httpdsl::Palette& prelude = httpdsl::rest_prelude();
    for (const httpdsl::BlockDescriptor& block : prelude.descriptors) {
      for (const httpdsl::BlockDescriptor& own : palette.descriptors) {
        if (own.name == block.name) {
          std::cerr << "httpdsl: "
                    << to_text(httpdsl::DuplicateBlockName{
                           block.name, block.source, own.source})
                    << "\n";
          return kExitDomainFailure;
        }
      }
    }
    palette.descriptors.insert(palette.descriptors.begin(),
                               prelude.descriptors.begin(),
                               prelude.descriptors.end());
    palette.sources.insert(palette.sources.begin(), prelude.sources.begin(),
                           prelude.sources.end());
  }

  const std::string manifest = httpdsl::export_palette(palette);
  if (out_file == "-") {
    std::cout << manifest;
    return kExitSuccess;
  }
  std::ofstream out(out_file, std::ios::binary | std::ios::trunc);
  out.write(manifest.data(), static_cast<std::streamsize>(manifest.size()));
  out.close();
  if (!out) {
    std::cerr << "httpdsl: cannot write " << out_file << "\n";
    return kExitUsage;
  }
  std::cout << "wrote " << palette.descriptors.size() << " blocks to "
            << out_file << "\n";
  return kExitSuccess;
}

int cmd_fmt(const std::vector<std::string>& paths, bool check_only) {
  bool any_noncanonical = false;
  for (const std::string& path : paths) {
    const std::optional<std::string> text = read_file(path);
    if (!text.has_value()) {
      std::cerr << "httpdsl: cannot read " << path << "\n";
      return kExitUsage;
    }
    const httpdsl::Parsed<httpdsl::RequestDocument> parsed =
        httpdsl::parse_document(*text, path);
    if (!parsed.ok()) {
      print_diagnostics(parsed.diagnostics);
      return kExitUsage;
    }
    const std::string canonical = httpdsl::format_document(*parsed.value);
    if (canonical == *text) {
      continue;
    }
    if (check_only) {
      std::cout << path << ": not canonical\n";
      any_noncanonical = true;
      continue;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(canonical.data(),
              static_cast<std::streamsize>(canonical.size()));
    out.close();
    if (!out) {
      std::cerr << "httpdsl: cannot write " << path << "\n";
      return kExitUsage;
    }
    std::cout << "reformatted " << path << "\n";
  }
  return any_noncanonical ? kExitDomainFailure : kExitSuccess;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"httpdsl — describe, check, run, and generate HTTP requests"};
  app.require_subcommand(1);

  // validate
  std::vector<std::string> validate_paths;
  CLI::App* validate =
      app.add_subcommand("validate", "Parse and check description files");
  validate->add_option("paths", validate_paths, "description files")
      ->required();

  // run
  std::string run_path;
  std::string run_message;
  std::vector<std::string> run_inputs;
  std::vector<std::string> run_envs;
  std::string run_transport;
  CLI::App* run = app.add_subcommand("run", "Send one message and print the "
                                            "response");
  run->add_option("file", run_path, "description file")->required();
  run->add_option("message", run_message, "message name")->required();
  run->add_option("--input", run_inputs,
                  "input variable binding, name=value (repeatable)");
  run->add_option("--env", run_envs,
                  "environment override, NAME=value (repeatable)");
  run->add_option("--transport", run_transport,
                  "mock:<script-file> to answer from a script instead of "
                  "the network");

  // generate
  std::vector<std::string> generate_paths;
  std::string generate_out;
  std::string generate_dialect{httpdsl::kCppDialect};
  CLI::App* generate =
      app.add_subcommand("generate", "Emit a client source project");
  generate->add_option("paths", generate_paths, "description files")
      ->required();
  generate->add_option("--out", generate_out, "output directory")->required();
  generate->add_option("--dialect", generate_dialect,
                       "target dialect (built in: cpp)");

  // blocks
  std::vector<std::string> blocks_paths;
  std::string blocks_out;
  std::string blocks_name;
  bool blocks_with_prelude = false;
  CLI::App* blocks =
      app.add_subcommand("blocks", "Export a block palette manifest");
  blocks->add_option("paths", blocks_paths, "description files");
  blocks->add_option("--out", blocks_out,
                     "palette file to write ('-' for stdout)")
      ->required();
  blocks->add_option("--name", blocks_name,
                     "palette name (default: output file stem)");
  blocks->add_flag("--with-rest-prelude", blocks_with_prelude,
                   "prepend the built-in GET/POST/PUT/DELETE blocks");

  // fmt
  std::vector<std::string> fmt_paths;
  bool fmt_check = false;
  CLI::App* fmt =
      app.add_subcommand("fmt", "Rewrite files in canonical form");
  fmt->add_option("paths", fmt_paths, "description files")->required();
  fmt->add_flag("--check", fmt_check,
                "report non-canonical files instead of rewriting them");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitSuccess : kExitUsage;
  }

  if (validate->parsed()) {
    return cmd_validate(validate_paths);
  }
  if (run->parsed()) {
    return cmd_run(run_path, run_message, run_inputs, run_envs,
                   run_transport);
  }
  if (generate->parsed()) {
    return cmd_generate(generate_paths, generate_out, generate_dialect);
  }
  if (blocks->parsed()) {
    return cmd_blocks(blocks_paths, blocks_out, blocks_name,
                      blocks_with_prelude);
  }
  if (fmt->parsed()) {
    return cmd_fmt(fmt_paths, fmt_check);
  }
  return kExitUsage;
}
