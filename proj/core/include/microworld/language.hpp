// Copyright 2026 The Microworld Authors
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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "microworld/caption.hpp"

namespace microworld {

inline constexpr std::string_view kPaddingToken = "<pad>";

// Closed vocabulary in its fixed enumeration order. Entry 0 is the padding
// token, so a token's id is its index here.
const std::vector<std::string>& vocabulary();

std::optional<std::uint32_t> token_id(std::string_view token);
bool in_lexicon(std::string_view token);

// Deterministic surface form, e.g. "A red circle is to the left of a cyan
// semicircle." Throws std::invalid_argument for an invalid AST.
std::string realize(const Caption& caption);

// Lowercases, splits on whitespace and detaches a trailing period. Throws
// UnknownWordError on the first out-of-lexicon form.
std::vector<std::string> tokenize(std::string_view text);

// Inverse of realize(). Throws ParseError (with token position) or
// UnknownWordError for text outside the grammar.
Caption parse(std::string_view text);

}  // namespace microworld
