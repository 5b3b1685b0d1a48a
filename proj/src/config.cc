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

#include "orgmatch/config.h"

#include <cstdlib>

#include "orgmatch/error.h"
#include "orgmatch/text.h"

#ifndef ORGMATCH_DEFAULT_DATA_DIR
#define ORGMATCH_DEFAULT_DATA_DIR "data"
#endif

namespace orgmatch {
namespace {

namespace fs = std::filesystem;

std::vector<std::string> LinesIfPresent(const fs::path &path, int *found) {
  if (!fs::exists(path)) return {};
  ++*found;
  return ReadConfigLines(path);
}

// Splits "a<TAB>b"; b is empty when there is no tab.
std::pair<std::string, std::string> SplitTab(const std::string &line) {
  size_t tab = line.find('\t');
  if (tab == std::string::npos) return {line, ""};
  return {std::string(Trim(line.substr(0, tab))), std::string(Trim(line.substr(tab + 1)))};
}

std::vector<std::pair<std::string, std::string>> LoadPairs(const fs::path &path, int *found) {
  std::vector<std::pair<std::string, std::string>> out;
  size_t lineno = 0;
  for (const auto &line : LinesIfPresent(path, found)) {
    ++lineno;
    auto kv = SplitTab(line);
    if (kv.second.empty()) {
      throw ParseError(path.filename().string() + ": expected pattern<TAB>replacement", lineno);
    }
    out.push_back(std::move(kv));
  }
  return out;
}

std::vector<SpecificEntry> LoadSpecific(const fs::path &path, int *found) {
  std::vector<SpecificEntry> out;
  for (const auto &line : LinesIfPresent(path, found)) {
    auto kv = SplitTab(line);
    out.push_back({kv.first, kv.second});
  }
  return out;
}

BannedKind ParseBannedKind(const std::string &name) {
  if (name == "generic") return BannedKind::kGeneric;
  if (name == "address") return BannedKind::kAddress;
  if (name == "placement") return BannedKind::kPlacement;
  if (name == "child") return BannedKind::kChild;
  throw ParseError("banned.txt: unknown category '" + name + "'", 0);
}

const char *BannedKindName(BannedKind kind) {
  switch (kind) {
    case BannedKind::kGeneric: return "generic";
    case BannedKind::kAddress: return "address";
    case BannedKind::kPlacement: return "placement";
    case BannedKind::kChild: return "child";
  }
  return "generic";
}

}  // namespace

Config Config::LoadDir(const fs::path &dir) {
  Config c;
  int found = 0;
  c.stopwords = LinesIfPresent(dir / "stopwords.txt", &found);
  c.abbreviations = LoadPairs(dir / "abbreviations.tsv", &found);
  c.translations = LoadPairs(dir / "translations.tsv", &found);
  c.typos = LoadPairs(dir / "typos.tsv", &found);
  for (const auto &[form, root] : LoadPairs(dir / "stems.tsv", &found)) {
    StemRule rule;
    rule.prefix = !form.empty() && form.back() == '*';
    rule.form = rule.prefix ? form.substr(0, form.size() - 1) : form;
    rule.root = root;
    c.stems.push_back(std::move(rule));
  }
  for (const auto &line : LinesIfPresent(dir / "countries.txt", &found)) {
    auto kv = SplitTab(line);
    if (kv.second.empty()) {
      c.countries.push_back(kv.first);
    } else {
      c.country_variants.push_back({kv.first, kv.second});
    }
  }
  c.ambiguous_countries = LinesIfPresent(dir / "ambiguous_countries.txt", &found);
  c.cities = LinesIfPresent(dir / "city_names.txt", &found);
  c.keywords = LinesIfPresent(dir / "keywords.txt", &found);
  c.specific.acronyms = LoadSpecific(dir / "specific_acronyms.txt", &found);
  c.specific.entities = LoadSpecific(dir / "specific_entities.txt", &found);
  for (const auto &line : LinesIfPresent(dir / "banned.txt", &found)) {
    auto kv = SplitTab(line);
    if (kv.second.empty()) throw ParseError("banned.txt: expected category<TAB>phrase", 0);
    c.banned.push_back({ParseBannedKind(kv.first), kv.second});
  }
  if (found == 0) throw ParseError("no configuration files found in " + dir.string(), 0);
  return c;
}

nlohmann::json Config::ToJson() const {
  using nlohmann::json;
  json j;
  j["stopwords"] = stopwords;
  auto pairs = [](const std::vector<std::pair<std::string, std::string>> &v) {
    json a = json::array();
    for (const auto &[k, val] : v) a.push_back(json::array({k, val}));
    return a;
  };
  j["abbreviations"] = pairs(abbreviations);
  j["translations"] = pairs(translations);
  j["typos"] = pairs(typos);
  json stems_j = json::array();
  for (const auto &s : stems) stems_j.push_back(json::array({s.form, s.root, s.prefix}));
  j["stems"] = stems_j;
  j["countries"] = countries;
  json variants = json::array();
  for (const auto &v : country_variants) variants.push_back(json::array({v.variant, v.canonical}));
  j["country_variants"] = variants;
  j["ambiguous_countries"] = ambiguous_countries;
  j["cities"] = cities;
  j["keywords"] = keywords;
  auto specific_list = [](const std::vector<SpecificEntry> &v) {
    json a = json::array();
    for (const auto &e : v) a.push_back(json::array({e.phrase, e.target_id}));
    return a;
  };
  j["specific_acronyms"] = specific_list(specific.acronyms);
  j["specific_entities"] = specific_list(specific.entities);
  json banned_j = json::array();
  for (const auto &b : banned) banned_j.push_back(json::array({BannedKindName(b.kind), b.phrase}));
  j["banned"] = banned_j;
  return j;
}

Config Config::FromJson(const nlohmann::json &j) {
  Config c;
  try {
    c.stopwords = j.at("stopwords").get<std::vector<std::string>>();
    auto pairs = [](const nlohmann::json &a) {
      std::vector<std::pair<std::string, std::string>> v;
      for (const auto &p : a) v.emplace_back(p.at(0).get<std::string>(), p.at(1).get<std::string>());
      return v;
    };
    c.abbreviations = pairs(j.at("abbreviations"));
    c.translations = pairs(j.at("translations"));
    c.typos = pairs(j.at("typos"));
    for (const auto &s : j.at("stems")) {
      c.stems.push_back({s.at(0).get<std::string>(), s.at(1).get<std::string>(), s.at(2).get<bool>()});
    }
    c.countries = j.at("countries").get<std::vector<std::string>>();
    for (const auto &v : j.at("country_variants")) {
      c.country_variants.push_back({v.at(0).get<std::string>(), v.at(1).get<std::string>()});
    }
    c.ambiguous_countries = j.at("ambiguous_countries").get<std::vector<std::string>>();
    c.cities = j.at("cities").get<std::vector<std::string>>();
    c.keywords = j.at("keywords").get<std::vector<std::string>>();
    auto specific_list = [](const nlohmann::json &a) {
      std::vector<SpecificEntry> v;
      for (const auto &e : a) v.push_back({e.at(0).get<std::string>(), e.at(1).get<std::string>()});
      return v;
    };
    c.specific.acronyms = specific_list(j.at("specific_acronyms"));
    c.specific.entities = specific_list(j.at("specific_entities"));
    for (const auto &b : j.at("banned")) {
      c.banned.push_back({ParseBannedKind(b.at(0).get<std::string>()), b.at(1).get<std::string>()});
    }
  } catch (const nlohmann::json::exception &e) {
    throw ParseError(std::string("config: ") + e.what(), 0);
  }
  return c;
}

fs::path DefaultDataDir() {
  if (const char *env = std::getenv("ORGMATCH_DATA_DIR"); env != nullptr && *env != '\0') {
    return env;
  }
  return ORGMATCH_DEFAULT_DATA_DIR;
}

}  // namespace orgmatch
