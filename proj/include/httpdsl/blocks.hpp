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
// Reusable workflow blocks derived from request messages.
//
// A block descriptor is the modeling-tool view of one message: the message
// name becomes the block's name and label, its input variables become text
// input ports (in the fixed collection order), and every block exposes the
// same two outcome branches, Success and Failure, each carrying the response
// output. Palettes group descriptors; a palette can be exported to a
// line-oriented `.palette` manifest and read back.

#ifndef HTTPDSL_BLOCKS_HPP_
#define HTTPDSL_BLOCKS_HPP_

#include <optional>
#include <string>
#include <vector>

#include "httpdsl/diagnostics.hpp"
#include "httpdsl/model.hpp"

namespace httpdsl {

// Every port carries plain text; there are no typed data objects.
enum class PortType {
  kText,
};

std::string to_text(PortType type);

struct BlockPort {
  std::string name;
  PortType type = PortType::kText;

  friend bool operator==(const BlockPort&, const BlockPort&) = default;
};

// What a branch hands back: the response, either as payload text or as the
// full response object.
enum class BlockOutputForm {
  kText,
  kFull,
};

std::string to_text(BlockOutputForm form);

struct BlockOutput {
  std::string name;  // always "response"
  BlockOutputForm form = BlockOutputForm::kText;

  friend bool operator==(const BlockOutput&, const BlockOutput&) = default;
};

struct BlockBranch {
  std::string name;  // "Success" or "Failure"
  BlockOutput output;

  friend bool operator==(const BlockBranch&, const BlockBranch&) = default;
};

// One derived block. Invariants:
//   - name == label == the source message's name,
//   - input_ports mirror collect_input_variables(message), order-preserving,
//   - exactly two branches, Success then Failure, with identical outputs.
struct BlockDescriptor {
  std::string name;
  std::string label;
  std::vector<BlockPort> input_ports;
  std::vector<BlockBranch> branches;
  std::string source;  // description file the message came from

  friend bool operator==(const BlockDescriptor&,
                         const BlockDescriptor&) = default;
};

// A named group of descriptors with the files they were derived from.
// Descriptor names are unique within a palette.
struct Palette {
  std::string name;
  std::vector<BlockDescriptor> descriptors;
  std::vector<std::string> sources;

  friend bool operator==(const Palette&, const Palette&) = default;
};

// Derives the block for one valid message. The output form follows the
// message's return value: payload text by default, the full response when
// the message says `as response`. Environment variables never become ports;
// they are resolved at deployment time, not wired in a model.
BlockDescriptor derive_block(const HttpMessage& message);

// The built-in palette of generic REST blocks: GetRequest, PostRequest,
// PutRequest, and DeleteRequest, each parameterized over server, path, one
// query parameter, and one header. PostRequest and PutRequest additionally
// take the body payload as their one extra port. The palette is parsed once
// from the bundled description source (shipped as data/rest.http) on first
// use; the same object is returned on every call.
const Palette& rest_prelude();

// Two description files (or one, listed twice) defined the same block name.
struct DuplicateBlockName {
  std::string name;
  std::string first_source;
  std::string second_source;

  friend bool operator==(const DuplicateBlockName&,
                         const DuplicateBlockName&) = default;
};

std::string to_text(const DuplicateBlockName& error);

struct BuildPaletteResult {
  std::optional<Palette> palette;
  std::optional<DuplicateBlockName> error;

  bool ok() const { return palette.has_value(); }
};

// Derives one descriptor per message across all documents, in document order
// then message order. Every document's source name lands in the palette's
// provenance list (even if the document holds no messages). A block name
// seen twice — across documents or within one — is a hard error, never
// last-writer-wins.
BuildPaletteResult build_palette(const std::vector<RequestDocument>& documents,
                                 const std::string& palette_name);

// Serializes a palette to its `.palette` manifest: UTF-8, LF line endings,
// a versioned header, then one record per block. Identical palettes export
// byte-identical manifests.
//
//   palette-manifest 1
//   palette <name>
//   source <path>                   (one per provenance entry)
//   block <name>
//     label <label>
//     source <path>
//     port <name> TEXT              (one per input port, in order)
//     branch Success response TEXT|FULL
//     branch Failure response TEXT|FULL
//   end
std::string export_palette(const Palette& palette);

// Reads a manifest back. parse_palette_manifest(export_palette(p)) == p for
// every valid palette.
Parsed<Palette> parse_palette_manifest(const std::string& text,
                                       const std::string& source_name);

}  // namespace httpdsl

#endif  // HTTPDSL_BLOCKS_HPP_
