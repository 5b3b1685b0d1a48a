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

#ifndef ORGMATCH_LEXICON_H_
#define ORGMATCH_LEXICON_H_

#include <map>
#include <string>
#include <vector>

#include "orgmatch/config.h"
#include "orgmatch/normalize.h"

namespace orgmatch {

// A set of normalized token phrases, matched on token boundaries.
class PhraseSet {
 public:
  struct Hit {
    size_t begin = 0;  // token range [begin, end)
    size_t end = 0;
    std::string phrase;
    std::string payload;
  };

  // Adds a normalized phrase ("eth zurich"). Empty phrases are ignored; a
  // repeated phrase keeps its first payload.
  void Add(const std::string &phrase, const std::string &payload = "");

  // All occurrences, leftmost first, longest first at each position. A
  // phrase never spans a delimiter token.
  std::vector<Hit> FindAll(const std::vector<std::string> &tokens) const;
  bool ContainsAny(const std::vector<std::string> &tokens) const;
  bool Contains(const std::string &phrase) const { return payloads_.count(phrase) > 0; }
  const std::string *Payload(const std::string &phrase) const;

  size_t size() const { return payloads_.size(); }
  const std::map<std::string, std::string> &phrases() const { return payloads_; }

 private:
  std::map<std::string, std::string> payloads_;
  std::map<std::string, std::vector<std::vector<std::string>>> by_first_;
};

// Normalized working forms of the curated keyword, specific, banned and
// city lists.
struct Lexicon {
  std::vector<std::string> keywords;  // matched as token prefixes
  PhraseSet acronyms;
  PhraseSet entities;  // payload: configured parent identifier, may be empty
  PhraseSet generic;
  PhraseSet address;
  PhraseSet placement;
  PhraseSet child;
  PhraseSet cities;

  bool HasKeyword(const std::vector<std::string> &tokens) const;
};

Lexicon BuildLexicon(const Config &config, const Normalizer &normalizer,
                     const std::vector<std::string> &extra_cities = {});

}  // namespace orgmatch

#endif  // ORGMATCH_LEXICON_H_
