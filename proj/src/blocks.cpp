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

#include "httpdsl/blocks.hpp"

#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "httpdsl/binder.hpp"
#include "httpdsl/parser.hpp"
#include "rest_prelude_data.hpp"

namespace httpdsl {

std::string to_text(PortType type) {
  switch (type) {
    case PortType::kText:
      return "TEXT";
  }
  return "TEXT";
}

std::string to_text(BlockOutputForm form) {
  switch (form) {
    case BlockOutputForm::kText:
      return "TEXT";
    case BlockOutputForm::kFull:
      return "FULL";
  }
  return "TEXT";
}

std::string to_text(const DuplicateBlockName& error) {
  return "block name \"" + error.name + "\" is defined in both " +
         error.first_source + " and " + error.second_source;
}

BlockDescriptor derive_block(const HttpMessage& message) {
  BlockDescriptor descriptor;
  descriptor.name = message.name;
  descriptor.label = message.name;
  for (const std::string& variable : collect_input_variables(message)) {
    descriptor.input_ports.push_back(BlockPort{variable, PortType::kText});
  }
  const ReturnValue returns =
      message.return_value ? *message.return_value : default_return_value();
  const BlockOutputForm form = returns.form == ReturnForm::kFullResponse
                                   ? BlockOutputForm::kFull
                                   : BlockOutputForm::kText;
  descriptor.branches = {
      BlockBranch{"Success", BlockOutput{"response", form}},
      BlockBranch{"Failure", BlockOutput{"response", form}},
  };
  return descriptor;
}

const Palette& rest_prelude() {
  static const Palette palette = [] {
    const Parsed<RequestDocument> parsed = parse_document(
        internal::kRestPreludeSource, internal::kRestPreludeSourceName);
    if (!parsed.ok()) {
      // Unreachable when the bundled source is intact; the test suite parses
      // it on every run.
      std::string detail = "bundled REST block descriptions failed to parse";
      for (const Diagnostic& diagnostic : parsed.diagnostics) {
        detail += "\n  " + format_diagnostic(diagnostic);
      }
      throw std::logic_error(detail);
    }
    const BuildPaletteResult built = build_palette({*parsed.value}, "rest");
    if (!built.ok()) {
      throw std::logic_error(to_text(*built.error));
    }
    return *built.palette;
  }();
  return palette;
}

BuildPaletteResult build_palette(const std::vector<RequestDocument>& documents,
                                 const std::string& palette_name) {
  Palette palette;
  palette.name = palette_name;
  std::map<std::string, std::string> first_seen;  // block name -> source
  for (const RequestDocument& document : documents) {
    palette.sources.push_back(document.source_name);
    for (const HttpMessage& message : document.messages) {
      const auto [it, inserted] =
          first_seen.emplace(message.name, document.source_name);
      if (!inserted) {
        return {std::nullopt, DuplicateBlockName{message.name, it->second,
                                                 document.source_name}};
      }
      BlockDescriptor descriptor = derive_block(message);
      descriptor.source = document.source_name;
      palette.descriptors.push_back(std::move(descriptor));
    }
  }
  return {std::move(palette), std::nullopt};
}

std::string export_palette(const Palette& palette) {
  std::ostringstream out;
  out << "palette-manifest 1\n";
  out << "palette " << palette.name << "\n";
  for (const std::string& source : palette.sources) {
    out << "source " << source << "\n";
  }
  for (const BlockDescriptor& descriptor : palette.descriptors) {
    out << "block " << descriptor.name << "\n";
    out << "  label " << descriptor.label << "\n";
    out << "  source " << descriptor.source << "\n";
    for (const BlockPort& port : descriptor.input_ports) {
      out << "  port " << port.name << " " << to_text(port.type) << "\n";
    }
    for (const BlockBranch& branch : descriptor.branches) {
      out << "  branch " << branch.name << " " << branch.output.name << " "
          << to_text(branch.output.form) << "\n";
    }
    out << "end\n";
  }
  return out.str();
}

namespace {

// Splits "first rest-of-line" at the first space; `rest` may be empty.
void split_directive(const std::string& line, std::string& head,
                     std::string& rest) {
  const std::size_t space = line.find(' ');
  if (space == std::string::npos) {
    head = line;
    rest.clear();
  } else {
    head = line.substr(0, space);
    rest = line.substr(space + 1);
  }
}

std::string trim(const std::string& text) {
  std::size_t begin = 0;
  std::size_t end = text.size();
  while (begin < end && (text[begin] == ' ' || text[begin] == '\t')) {
    ++begin;
  }
  while (end > begin &&
         (text[end - 1] == ' ' || text[end - 1] == '\t' ||
          text[end - 1] == '\r')) {
    --end;
  }
  return text.substr(begin, end - begin);
}

}  // namespace

Parsed<Palette> parse_palette_manifest(const std::string& text,
                                       const std::string& source_name) {
  Parsed<Palette> result;
  Palette palette;
  std::optional<BlockDescriptor> block;
  bool saw_header = false;
  bool saw_name = false;

  const auto fail = [&](std::size_t line_number, const std::string& message) {
    result.diagnostics.push_back(Diagnostic{
        Severity::kError, source_name, Span{line_number, 1, 0}, message});
  };

  std::istringstream in(text);
  std::string raw;
  std::size_t line_number = 0;
  while (std::getline(in, raw)) {
    ++line_number;
    const std::string line = trim(raw);
    if (line.empty()) {
      continue;
    }
    std::string head;
    std::string rest;
    split_directive(line, head, rest);

    if (!saw_header) {
      if (head != "palette-manifest") {
        fail(line_number, "expected 'palette-manifest <version>' first");
        return result;
      }
      if (rest != "1") {
        fail(line_number, "unsupported palette manifest version '" + rest +
                              "' (this reader understands version 1)");
        return result;
      }
      saw_header = true;
      continue;
    }

    if (head == "palette") {
      if (saw_name) {
        fail(line_number, "duplicate 'palette' line");
        return result;
      }
      palette.name = rest;
      saw_name = true;
    } else if (head == "source" && !block.has_value()) {
      if (!saw_name) {
        fail(line_number, "'source' must follow the 'palette' line");
        return result;
      }
      palette.sources.push_back(rest);
    } else if (head == "block") {
      if (block.has_value()) {
        fail(line_number,
             "block '" + block->name + "' is missing its 'end' line");
        return result;
      }
      if (rest.empty()) {
        fail(line_number, "'block' needs a name");
        return result;
      }
      block = BlockDescriptor{};
      block->name = rest;
    } else if (head == "label" && block.has_value()) {
      block->label = rest;
    } else if (head == "source" && block.has_value()) {
      block->source = rest;
    } else if (head == "port" && block.has_value()) {
      std::string port_name;
      std::string type_text;
      split_directive(rest, port_name, type_text);
      if (port_name.empty() || type_text != "TEXT") {
        fail(line_number, "expected 'port <name> TEXT'");
        return result;
      }
      block->input_ports.push_back(BlockPort{port_name, PortType::kText});
    } else if (head == "branch" && block.has_value()) {
      std::istringstream fields(rest);
      std::string branch_name;
      std::string output_name;
      std::string form_text;
      std::string extra;
      fields >> branch_name >> output_name >> form_text;
      if (branch_name.empty() || output_name.empty() ||
          (form_text != "TEXT" && form_text != "FULL") || (fields >> extra)) {
        fail(line_number, "expected 'branch <name> <output> TEXT|FULL'");
        return result;
      }
      block->branches.push_back(BlockBranch{
          branch_name,
          BlockOutput{output_name, form_text == "FULL"
                                       ? BlockOutputForm::kFull
                                       : BlockOutputForm::kText}});
    } else if (head == "end") {
      if (!block.has_value()) {
        fail(line_number, "'end' without an open block");
        return result;
      }
      palette.descriptors.push_back(std::move(*block));
      block.reset();
    } else {
      fail(line_number, "unknown manifest line '" + head + "'");
      return result;
    }
  }

  if (!saw_header) {
    fail(line_number + 1, "empty palette manifest");
    return result;
  }
  if (block.has_value()) {
    fail(line_number + 1,
         "block '" + block->name + "' is missing its 'end' line");
    return result;
  }
  if (!saw_name) {
    fail(line_number + 1, "manifest has no 'palette' line");
    return result;
  }
  result.value = std::move(palette);
  return result;
}

}  // namespace httpdsl
