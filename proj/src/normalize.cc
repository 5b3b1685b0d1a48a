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

#include "orgmatch/normalize.h"

#include <algorithm>
#include <cctype>

#include "orgmatch/text.h"

namespace orgmatch {
namespace {

constexpr int kMaxCleanPasses = 8;

// Terms whose presence keeps a parenthesized group (sans parentheses).
constexpr std::array<std::string_view, 7> kParenKeepTerms = {
    "univ", "hosp", "clinic", "klinik", "hopital", "ospedal", "spital"};

constexpr std::array<std::string_view, 9> kRomanNumerals = {"i",  "ii",  "iii", "iv", "v",
                                                            "vi", "vii", "viii", "ix"};

bool IsAlnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }
bool IsAlpha(char c) { return c >= 'a' && c <= 'z'; }
bool IsDigit(char c) { return c >= '0' && c <= '9'; }

bool IsConsonant(char c) {
  return IsAlpha(c) && c != 'a' && c != 'e' && c != 'i' && c != 'o' && c != 'u' && c != 'y';
}

// Removes parenthesized groups unless they contain a key institutional term,
// in which case only the parentheses go.
std::string ProcessParentheses(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (c == ')') {
      out.push_back(' ');
      ++i;
      continue;
    }
    if (c != '(') {
      out.push_back(c);
      ++i;
      continue;
    }
    int depth = 0;
    size_t j = i;
    for (; j < s.size(); ++j) {
      if (s[j] == '(') ++depth;
      if (s[j] == ')' && --depth == 0) break;
    }
    if (j >= s.size()) {
      out.push_back(' ');  // unbalanced: drop the lone parenthesis
      ++i;
      continue;
    }
    std::string_view inner = s.substr(i + 1, j - i - 1);
    bool keep = false;
    for (auto term : kParenKeepTerms) keep = keep || inner.find(term) != std::string_view::npos;
    out.push_back(' ');
    if (keep) {
      out += ProcessParentheses(inner);
      out.push_back(' ');
    }
    i = j + 1;
  }
  return out;
}

// "u.s.a." -> "usa": dotted single-letter runs of length >= 2.
std::string JoinDottedAcronyms(const std::string &s) {
  std::string out;
  out.reserve(s.size());
  const size_t n = s.size();
  size_t i = 0;
  while (i < n) {
    if ((i == 0 || !IsAlnum(s[i - 1])) && IsAlpha(s[i])) {
      std::string letters;
      size_t j = i;
      bool dotted = false;
      while (j < n && IsAlpha(s[j]) && (j + 1 >= n || !IsAlnum(s[j + 1]))) {
        letters.push_back(s[j]);
        if (j + 1 < n && s[j + 1] == '.') {
          dotted = true;
          j += 2;
        } else {
          ++j;
          break;
        }
      }
      if (letters.size() >= 2 && dotted) {
        out += letters;
        i = j;
        continue;
      }
    }
    out.push_back(s[i]);
    ++i;
  }
  return out;
}

// Maps every character to a word character, a space, or a delimiter token.
std::string NormalizeCharacters(const std::string &s) {
  std::string out;
  out.reserve(s.size() + 8);
  const size_t n = s.size();
  for (size_t i = 0; i < n; ++i) {
    char c = s[i];
    if (IsAlpha(c) || IsDigit(c)) {
      out.push_back(c);
    } else if (c == ',' || c == ';' || c == ':' || c == '/') {
      out += ' ';
      out += c;
      out += ' ';
    } else if (c == '-') {
      bool spaced_before = i == 0 || s[i - 1] == ' ';
      bool spaced_after = i + 1 >= n || s[i + 1] == ' ';
      out += (spaced_before && spaced_after) ? " - " : " ";
    } else if (c == '\'') {
      if (i + 1 < n && s[i + 1] == 's' && (i + 2 >= n || !IsAlnum(s[i + 2]))) {
        ++i;  // possessive 's
      }
      out += ' ';
    } else if (c == '&') {
      out += " and ";
    } else {
      out += ' ';
    }
  }
  return out;
}

bool HasDigitRun(std::string_view token) {
  for (size_t i = 0; i + 1 < token.size(); ++i) {
    if (IsDigit(token[i]) && IsDigit(token[i + 1])) return true;
  }
  return false;
}

std::vector<std::string> LowerTokens(std::string_view text) {
  return SplitWhitespace(AsciiLower(TransliterateToAscii(text)));
}

}  // namespace

bool IsBasicKey(std::string_view token) {
  return std::find(kBasicKeys.begin(), kBasicKeys.end(), token) != kBasicKeys.end();
}

bool IsDelimiterToken(std::string_view token) {
  return token.size() == 1 && std::string_view(",;:/-").find(token[0]) != std::string_view::npos;
}

std::vector<std::string> SplitNormalized(std::string_view text) {
  std::vector<std::string> out;
  for (auto &piece : SplitWhitespace(text)) {
    std::string word;
    for (char c : piece) {
      if (IsDelimiterToken(std::string_view(&c, 1))) {
        if (!word.empty()) out.push_back(std::move(word));
        word.clear();
        out.emplace_back(1, c);
      } else {
        word.push_back(c);
      }
    }
    if (!word.empty()) out.push_back(std::move(word));
  }
  return out;
}

std::string RenderTokens(const std::vector<std::string> &tokens) {
  std::string out;
  for (const auto &t : tokens) {
    bool glue = t == "," || t == ";" || t == ":";
    if (!out.empty() && !glue) out.push_back(' ');
    out += t;
  }
  return out;
}

std::vector<std::string> WordTokens(const std::vector<std::string> &tokens) {
  std::vector<std::string> out;
  for (const auto &t : tokens) {
    if (!IsDelimiterToken(t)) out.push_back(t);
  }
  return out;
}

const char *TokenLabelName(TokenLabel label) {
  switch (label) {
    case TokenLabel::kBasicKey: return "basic_key";
    case TokenLabel::kCountry: return "country";
    case TokenLabel::kOther: return "other";
  }
  return "other";
}

void CountryDictionary::Add(const std::string &phrase, const std::string &canonical) {
  if (phrase.empty() || canonical.empty()) return;
  names_.insert(canonical);
  phrases_.emplace(phrase, canonical);
  phrases_.emplace(canonical, canonical);
  max_phrase_tokens_ = std::max({max_phrase_tokens_, SplitWhitespace(phrase).size(),
                                 SplitWhitespace(canonical).size()});
}

void CountryDictionary::MarkAmbiguous(const std::string &phrase) {
  if (!phrase.empty()) ambiguous_.insert(phrase);
}

std::vector<CountryMention> CountryDictionary::Scan(const std::vector<std::string> &tokens) const {
  std::vector<CountryMention> out;
  size_t trailing_start = 0;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (IsDelimiterToken(tokens[i])) trailing_start = i + 1;
  }
  size_t i = 0;
  while (i < tokens.size()) {
    if (IsDelimiterToken(tokens[i])) {
      ++i;
      continue;
    }
    size_t matched_len = 0;
    const std::string *canonical = nullptr;
    std::string phrase;
    for (size_t len = 1; len <= max_phrase_tokens_ && i + len <= tokens.size(); ++len) {
      const std::string &t = tokens[i + len - 1];
      if (IsDelimiterToken(t)) break;
      if (len > 1) phrase.push_back(' ');
      phrase += t;
      auto it = phrases_.find(phrase);
      if (it == phrases_.end()) continue;
      if (ambiguous_.count(phrase) > 0 && !(i == trailing_start && i + len == tokens.size())) continue;
      matched_len = len;
      canonical = &it->second;
    }
    if (matched_len == 0) {
      ++i;
      continue;
    }
    out.push_back({*canonical, i, i + matched_len});
    i += matched_len;
  }
  return out;
}

size_t NormalizedAffiliation::BasicKeyCount() const {
  return static_cast<size_t>(std::count_if(token_labels.begin(), token_labels.end(), [](const auto &p) {
    return p.second == TokenLabel::kBasicKey;
  }));
}

Normalizer::Normalizer(const Config &config) {
  for (const auto &w : config.stopwords) {
    for (const auto &t : LowerTokens(w)) stopwords_.insert(CollapseDoubleConsonants(t));
  }
  for (const auto &[pattern, expansion] : config.abbreviations) {
    abbreviations_.emplace_back(AsciiLower(TransliterateToAscii(pattern)),
                                AsciiLower(TransliterateToAscii(expansion)));
  }
  std::stable_sort(abbreviations_.begin(), abbreviations_.end(),
                   [](const auto &a, const auto &b) { return a.first.size() > b.first.size(); });
  auto build = [](const std::vector<std::pair<std::string, std::string>> &in) {
    std::vector<Replacement> out;
    for (const auto &[from, to] : in) {
      Replacement r{SplitNormalized(NormalizeCharacters(AsciiLower(TransliterateToAscii(from)))),
                    SplitNormalized(NormalizeCharacters(AsciiLower(TransliterateToAscii(to))))};
      if (!r.from.empty()) out.push_back(std::move(r));
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const Replacement &a, const Replacement &b) { return a.from.size() > b.from.size(); });
    return out;
  };
  translations_ = build(config.translations);
  typos_ = build(config.typos);
  for (const auto &rule : config.stems) {
    std::string form = AsciiLower(rule.form);
    if (rule.prefix) {
      prefix_stems_.emplace_back(form, rule.root);
    } else {
      exact_stems_.emplace(form, rule.root);
    }
  }
  std::stable_sort(prefix_stems_.begin(), prefix_stems_.end(),
                   [](const auto &a, const auto &b) { return a.first.size() > b.first.size(); });
}

std::string Normalizer::CollapseDoubleConsonants(std::string_view token) {
  std::string out;
  out.reserve(token.size());
  for (char c : token) {
    if (!out.empty() && out.back() == c && IsConsonant(c)) continue;
    out.push_back(c);
  }
  return out;
}

std::string Normalizer::ExpandAbbreviations(const std::string &s) const {
  std::string out;
  out.reserve(s.size());
  size_t i = 0;
  while (i < s.size()) {
    bool at_start = (i == 0 || !IsAlnum(s[i - 1])) && IsAlpha(s[i]);
    bool replaced = false;
    if (at_start) {
      for (const auto &[pattern, expansion] : abbreviations_) {
        if (s.compare(i, pattern.size(), pattern) != 0) continue;
        size_t end = i + pattern.size();
        bool boundary = pattern.back() == '.' || end >= s.size() || !IsAlnum(s[end]);
        if (!boundary) continue;
        out += ' ';
        out += expansion;
        out += ' ';
        i = end;
        replaced = true;
        break;
      }
    }
    if (!replaced) {
      out.push_back(s[i]);
      ++i;
    }
  }
  return out;
}

void Normalizer::ApplyReplacements(const std::vector<Replacement> &table, TokenSeq *tokens) const {
  if (table.empty()) return;
  TokenSeq out;
  out.reserve(tokens->size());
  size_t i = 0;
  while (i < tokens->size()) {
    const Replacement *hit = nullptr;
    for (const auto &r : table) {
      if (i + r.from.size() > tokens->size()) continue;
      if (std::equal(r.from.begin(), r.from.end(), tokens->begin() + static_cast<ptrdiff_t>(i))) {
        hit = &r;
        break;
      }
    }
    if (hit == nullptr) {
      out.push_back(std::move((*tokens)[i]));
      ++i;
      continue;
    }
    out.insert(out.end(), hit->to.begin(), hit->to.end());
    i += hit->from.size();
  }
  *tokens = std::move(out);
}

std::string Normalizer::CleanOnce(std::string_view text) const {
  std::string s = AsciiLower(TransliterateToAscii(text));
  s = ProcessParentheses(s);
  s = ExpandAbbreviations(s);
  s = JoinDottedAcronyms(s);
  TokenSeq tokens = SplitNormalized(NormalizeCharacters(s));

  ApplyReplacements(translations_, &tokens);
  ApplyReplacements(typos_, &tokens);

  TokenSeq kept;
  kept.reserve(tokens.size());
  for (auto &t : tokens) {
    if (IsDelimiterToken(t)) {
      kept.push_back(std::move(t));
      continue;
    }
    if (HasDigitRun(t)) continue;
    if (IsDigit(t[0])) {
      size_t k = 0;
      while (k < t.size() && IsDigit(t[k])) ++k;
      if (k < t.size()) {
        std::string rest = t.substr(k);
        if (rest == "st" || rest == "nd" || rest == "rd" || rest == "th") continue;
        t = rest;
      }
    }
    for (size_t r = 0; r < kRomanNumerals.size(); ++r) {
      if (t == kRomanNumerals[r]) {
        t = std::to_string(r + 1);
        break;
      }
    }
    t = CollapseDoubleConsonants(t);
    if (stopwords_.count(t) > 0) continue;
    kept.push_back(std::move(t));
  }

  // Drop leading, trailing and repeated delimiters.
  TokenSeq out;
  out.reserve(kept.size());
  for (auto &t : kept) {
    if (IsDelimiterToken(t) && (out.empty() || IsDelimiterToken(out.back()))) continue;
    out.push_back(std::move(t));
  }
  while (!out.empty() && IsDelimiterToken(out.back())) out.pop_back();
  return RenderTokens(out);
}

std::string Normalizer::Clean(std::string_view text) const {
  std::string current = CleanOnce(text);
  for (int pass = 1; pass < kMaxCleanPasses; ++pass) {
    std::string next = CleanOnce(current);
    if (next == current) break;
    current = std::move(next);
  }
  return current;
}

std::string Normalizer::StemToken(std::string_view token) const {
  if (auto it = exact_stems_.find(std::string(token)); it != exact_stems_.end()) return it->second;
  for (const auto &[prefix, root] : prefix_stems_) {
    if (token.size() >= prefix.size() && token.compare(0, prefix.size(), prefix) == 0) return root;
  }
  return std::string(token);
}

std::string Normalizer::Stem(std::string_view cleaned) const {
  TokenSeq tokens = SplitNormalized(cleaned);
  for (auto &t : tokens) {
    if (!IsDelimiterToken(t)) t = StemToken(t);
  }
  return RenderTokens(tokens);
}

std::string Normalizer::Key(std::string_view text) const {
  return Join(WordTokens(SplitNormalized(Stem(Clean(text)))), " ");
}

std::vector<std::string> Normalizer::ExtractCountries(std::string_view text,
                                                      const CountryDictionary &dict) const {
  std::vector<std::string> out;
  for (const auto &m : dict.Scan(SplitNormalized(Stem(Clean(text))))) {
    if (std::find(out.begin(), out.end(), m.country) == out.end()) out.push_back(m.country);
  }
  return out;
}

NormalizedAffiliation Normalizer::CleanAndStem(std::string_view text, const CountryDictionary &dict) const {
  NormalizedAffiliation n;
  n.original = std::string(text);
  n.cleaned = Clean(text);
  n.stemmed = Stem(n.cleaned);
  n.tokens = SplitNormalized(n.stemmed);

  std::vector<bool> is_country(n.tokens.size(), false);
  for (const auto &m : dict.Scan(n.tokens)) {
    for (size_t k = m.begin; k < m.end; ++k) is_country[k] = true;
    if (std::find(n.countries.begin(), n.countries.end(), m.country) == n.countries.end()) {
      n.countries.push_back(m.country);
    }
  }
  std::vector<std::string> words;
  for (size_t k = 0; k < n.tokens.size(); ++k) {
    const auto &t = n.tokens[k];
    if (IsDelimiterToken(t)) continue;
    TokenLabel label = TokenLabel::kOther;
    if (IsBasicKey(t)) {
      label = TokenLabel::kBasicKey;
    } else if (is_country[k]) {
      label = TokenLabel::kCountry;
    }
    n.token_labels.emplace_back(t, label);
    words.push_back(t);
  }
  n.key = Join(words, " ");
  return n;
}

CountryDictionary Normalizer::BuildCountryDictionary(const Config &config,
                                                     const std::vector<std::string> &extra) const {
  CountryDictionary dict;
  for (const auto &c : config.countries) dict.Add(Key(c), Key(c));
  for (const auto &c : extra) dict.Add(Key(c), Key(c));
  for (const auto &v : config.country_variants) dict.Add(Key(v.variant), Key(v.canonical));
  for (const auto &a : config.ambiguous_countries) dict.MarkAmbiguous(Key(a));
  return dict;
}

}  // namespace orgmatch
