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

#ifndef ORGMATCH_CONFIG_H_
#define ORGMATCH_CONFIG_H_

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace orgmatch {

// A curated phrase with an optional identifier it resolves to.
struct SpecificEntry {
  std::string phrase;
  std::string target_id;  // empty when the entry only extends the keyword filter
};

// Curated acronyms and entity names enabled by the `specific` switch.
struct SpecificKeywordConfig {
  std::vector<SpecificEntry> acronyms;
  std::vector<SpecificEntry> entities;
};

enum class BannedKind { kGeneric, kAddress, kPlacement, kChild };

struct BannedRule {
  BannedKind kind;
  std::string phrase;
};

struct StemRule {
  std::string form;
  std::string root;
  bool prefix = false;
};

struct CountryVariant {
  std::string variant;
  std::string canonical;
};

// Raw contents of the static configuration files. Entries are stored as
// written; the normalizer and lexicon derive their working forms from this.
struct Config {
  std::vector<std::string> stopwords;
  std::vector<std::pair<std::string, std::string>> abbreviations;
  std::vector<std::pair<std::string, std::string>> translations;
  std::vector<std::pair<std::string, std::string>> typos;
  std::vector<StemRule> stems;
  std::vector<std::string> countries;
  std::vector<CountryVariant> country_variants;
  std::vector<std::string> ambiguous_countries;
  std::vector<std::string> cities;
  std::vector<std::string> keywords;
  SpecificKeywordConfig specific;
  std::vector<BannedRule> banned;

  // Loads every file from `dir`. Missing files yield empty lists, except
  // that a directory with none of the expected files is an error.
  static Config LoadDir(const std::filesystem::path &dir);

  nlohmann::json ToJson() const;
  static Config FromJson(const nlohmann::json &j);
};

// $ORGMATCH_DATA_DIR if set, otherwise the data directory of the build tree.
std::filesystem::path DefaultDataDir();

}  // namespace orgmatch

#endif  // ORGMATCH_CONFIG_H_
