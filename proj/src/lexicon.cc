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

#include "orgmatch/lexicon.h"

#include <algorithm>

#include "orgmatch/text.h"

namespace orgmatch {

void PhraseSet::Add(const std::string &phrase, const std::string &payload) {
  auto tokens = SplitWhitespace(phrase);
  if (tokens.empty()) return;
  std::string key = Join(tokens, " ");
  if (!payloads_.emplace(key, payload).second) return;
  auto &bucket = by_first_[tokens.front()];
  bucket.push_back(std::move(tokens));
  std::stable_sort(bucket.begin(), bucket.end(),
                   [](const auto &a, const auto &b) { return a.size() > b.size(); });
}

const std::string *PhraseSet::Payload(const std::string &phrase) const {
  auto it = payloads_.find(phrase);
  return it == payloads_.end() ? nullptr : &it->second;
}

std::vector<PhraseSet::Hit> PhraseSet::FindAll(const std::vector<std::string> &tokens) const {
  std::vector<Hit> out;
  for (size_t i = 0; i < tokens.size(); ++i) {
    auto it = by_first_.find(tokens[i]);
    if (it == by_first_.end()) continue;
    for (const auto &phrase : it->second) {
      if (i + phrase.size() > tokens.size()) continue;
      bool ok = true;
      for (size_t k = 0; k < phrase.size() && ok; ++k) ok = tokens[i + k] == phrase[k];
      if (!ok) continue;
      Hit hit;
      hit.begin = i;
      hit.end = i + phrase.size();
      hit.phrase = Join(phrase, " ");
      hit.payload = payloads_.at(hit.phrase);
      out.push_back(std::move(hit));
    }
  }
  return out;
}

bool PhraseSet::ContainsAny(const std::vector<std::string> &tokens) const {
  return !FindAll(tokens).empty();
}

bool Lexicon::HasKeyword(const std::vector<std::string> &tokens) const {
  for (const auto &t : tokens) {
    for (const auto &k : keywords) {
      if (t.size() >= k.size() && t.compare(0, k.size(), k) == 0) return true;
    }
  }
  return false;
}

Lexicon BuildLexicon(const Config &config, const Normalizer &normalizer,
                     const std::vector<std::string> &extra_cities) {
  Lexicon lex;
  for (const auto &k : config.keywords) {
    std::string key = normalizer.Key(k);
    if (!key.empty() && std::find(lex.keywords.begin(), lex.keywords.end(), key) == lex.keywords.end()) {
      lex.keywords.push_back(key);
    }
  }
  for (const auto &e : config.specific.acronyms) lex.acronyms.Add(normalizer.Key(e.phrase), e.target_id);
  for (const auto &e : config.specific.entities) lex.entities.Add(normalizer.Key(e.phrase), e.target_id);
  for (const auto &rule : config.banned) {
    std::string key = normalizer.Key(rule.phrase);
    switch (rule.kind) {
      case BannedKind::kGeneric: lex.generic.Add(key); break;
      case BannedKind::kAddress: lex.address.Add(key); break;
      case BannedKind::kPlacement: lex.placement.Add(key); break;
      case BannedKind::kChild: lex.child.Add(key); break;
    }
  }
  for (const auto &c : config.cities) lex.cities.Add(normalizer.Key(c));
  for (const auto &c : extra_cities) lex.cities.Add(normalizer.Key(c));
  return lex;
}

}  // namespace orgmatch
