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

#ifndef ORGMATCH_NORMALIZE_H_
#define ORGMATCH_NORMALIZE_H_

#include <array>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "orgmatch/config.h"

namespace orgmatch {

// Stemmed roots that mark the core organization types.
inline constexpr std::array<std::string_view, 4> kBasicKeys = {"univer", "institu", "hospital",
                                                               "labora"};

bool IsBasicKey(std::string_view token);

// Partition delimiters retained by cleaning: , ; : / and the spaced hyphen
// that stands for an en dash.
bool IsDelimiterToken(std::string_view token);

// Splits normalized text into word tokens and single-character delimiter
// tokens ("a b, c" -> {"a", "b", ",", "c"}).
std::vector<std::string> SplitNormalized(std::string_view text);

// Inverse of SplitNormalized: ",;:" attach to the preceding word, "/" and
// "-" stand between spaces.
std::string RenderTokens(const std::vector<std::string> &tokens);

// Word tokens only, delimiters dropped.
std::vector<std::string> WordTokens(const std::vector<std::string> &tokens);

enum class TokenLabel { kBasicKey, kCountry, kOther };

const char *TokenLabelName(TokenLabel label);

// One country mention located in a token sequence.
struct CountryMention {
  std::string country;  // canonical normalized name
  size_t begin = 0;     // token range [begin, end) in the delimiter-bearing stream
  size_t end = 0;
};

// Normalized country names and spelling variants, with the list of names
// that only count as a country when they form the trailing partition.
class CountryDictionary {
 public:
  // `phrase` and `canonical` must already be normalized.
  void Add(const std::string &phrase, const std::string &canonical);
  void MarkAmbiguous(const std::string &phrase);

  bool Contains(std::string_view canonical) const { return names_.count(std::string(canonical)) > 0; }
  const std::set<std::string> &names() const { return names_; }

  // Longest-match scan over a delimiter-bearing token stream. Mentions do
  // not cross delimiters. Ambiguous phrases must span the whole trailing
  // partition.
  std::vector<CountryMention> Scan(const std::vector<std::string> &tokens) const;

 private:
  std::set<std::string> names_;
  std::map<std::string, std::string> phrases_;  // "united states" -> canonical
  std::set<std::string> ambiguous_;
  size_t max_phrase_tokens_ = 0;
};

// Cleaned and stemmed affiliation text plus what was extracted from it.
struct NormalizedAffiliation {
  std::string original;
  std::string cleaned;
  std::string stemmed;
  std::vector<std::string> countries;
  // One entry per word token of `stemmed`, in order.
  std::vector<std::pair<std::string, TokenLabel>> token_labels;

  // Stemmed tokens with delimiters kept, as used by partitioning.
  std::vector<std::string> tokens;
  // Stemmed word tokens joined by single spaces; the registry lookup key.
  std::string key;

  size_t BasicKeyCount() const;
};

// Rule-based cleaning and table-driven stemming. Instances are immutable
// after construction and safe to share across threads.
class Normalizer {
 public:
  explicit Normalizer(const Config &config);

  // Lower-cases, transliterates, drops stopwords, special characters,
  // multi-digit numbers and non-institutional parentheses, collapses double
  // consonants, expands abbreviations, substitutes foreign critical terms,
  // fixes typos and converts roman numerals i..ix. Iterated to a fixed
  // point, so Clean(Clean(x)) == Clean(x).
  std::string Clean(std::string_view text) const;

  std::string Stem(std::string_view cleaned) const;
  std::string StemToken(std::string_view token) const;

  // Countries of `dict` mentioned in `text`, deduplicated, in order of first
  // appearance. `text` may be raw or already normalized.
  std::vector<std::string> ExtractCountries(std::string_view text,
                                            const CountryDictionary &dict) const;

  NormalizedAffiliation CleanAndStem(std::string_view text, const CountryDictionary &dict) const;

  // Stem(Clean(text)) with delimiters removed.
  std::string Key(std::string_view text) const;

  // Builds the dictionary from the configured countries plus `extra`
  // (typically registry countries). All names are normalized here.
  CountryDictionary BuildCountryDictionary(const Config &config,
                                           const std::vector<std::string> &extra = {}) const;

 private:
  using TokenSeq = std::vector<std::string>;
  struct Replacement {
    TokenSeq from;
    TokenSeq to;
  };

  std::string CleanOnce(std::string_view text) const;
  std::string ExpandAbbreviations(const std::string &text) const;
  void ApplyReplacements(const std::vector<Replacement> &table, TokenSeq *tokens) const;
  static std::string CollapseDoubleConsonants(std::string_view token);

  std::unordered_set<std::string> stopwords_;
  std::vector<std::pair<std::string, std::string>> abbreviations_;  // longest pattern first
  std::vector<Replacement> translations_;
  std::vector<Replacement> typos_;
  std::unordered_map<std::string, std::string> exact_stems_;
  std::vector<std::pair<std::string, std::string>> prefix_stems_;  // longest prefix first
};

}  // namespace orgmatch

#endif  // ORGMATCH_NORMALIZE_H_
