// Copyright 2026 The orgmatch Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ORGMATCH_TEXT_H_
#define ORGMATCH_TEXT_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace orgmatch {

// Decodes UTF-8 and maps every code point to an ASCII approximation:
// Latin letters lose their diacritics, Greek and Cyrillic are romanized,
// dashes U+2013/U+2014 become a spaced hyphen, typographic quotes become
// ASCII quotes. Unmapped code points become a space; combining marks
// vanish. Malformed sequences are skipped byte by byte.
std::string TransliterateToAscii(std::string_view utf8);

// ASCII lower-casing; other bytes are left alone.
std::string AsciiLower(std::string_view text);

std::string_view Trim(std::string_view text);

std::vector<std::string> SplitWhitespace(std::string_view text);

std::string Join(const std::vector<std::string> &parts, std::string_view sep);

// Edit distance with unit insert/delete/substitute costs.
size_t Levenshtein(std::string_view a, std::string_view b);

// 1 - Levenshtein(a, b) / max(|a|, |b|); 1 when both are empty.
double LevenshteinSimilarity(std::string_view a, std::string_view b);

// 64-bit FNV-1a. Stable across platforms, used for cache keys.
uint64_t Fnv1a64(std::string_view data, uint64_t seed = 0xcbf29ce484222325ULL);

std::string HexU64(uint64_t value);

// Reads a UTF-8 config file: one entry per line, blank lines and lines
// whose first non-blank character is '#' are skipped, entries are trimmed.
std::vector<std::string> ReadConfigLines(const std::filesystem::path &path);

// Reads a whole file into memory. Throws ParseError if it cannot be opened.
std::string ReadFile(const std::filesystem::path &path);

}  // namespace orgmatch

#endif  // ORGMATCH_TEXT_H_
