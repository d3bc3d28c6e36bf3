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

#ifndef HTTPDSL_BASE64_HPP_
#define HTTPDSL_BASE64_HPP_

#include <optional>
#include <string>
#include <string_view>

namespace httpdsl {

// Standard base64 (RFC 4648), with padding.
std::string base64_encode(std::string_view bytes);

// Strict decoder: the input must be canonical base64 — alphabet characters
// only, length a multiple of four, correct '=' padding. Returns nullopt for
// anything else (including whitespace).
std::optional<std::string> base64_decode(const std::string& text);

}  // namespace httpdsl

#endif  // HTTPDSL_BASE64_HPP_
