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

#ifndef ORGMATCH_REGISTRY_H_
#define ORGMATCH_REGISTRY_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "orgmatch/config.h"
#include "orgmatch/lexicon.h"
#include "orgmatch/normalize.h"

namespace orgmatch {

enum class OrgType { kUniversity, kHospital, kInstitute, kLaboratory, kCompany, kOther };
enum class OrgStatus { kActive, kInactive, kWithdrawn };
enum class NameSource { kCanonical, kLabel, kAlias, kAcronym };

const char *OrgTypeName(OrgType t);
const char *OrgStatusName(OrgStatus s);
const char *NameSourceName(NameSource s);

struct OrgName {
  std::string value;
  NameSource source = NameSource::kAlias;
};

struct OrganizationRecord {
  std::string id;
  std::string canonical_name;
  std::vector<OrgName> aliases;  // labels, aliases and acronyms, flagged by source
  std::string country;
  std::optional<std::string> city;
  OrgType org_type = OrgType::kOther;
  OrgStatus status = OrgStatus::kActive;
  std::vector<std::string> parent_ids;
  std::vector<std::string> successor_ids;

  bool active() const { return status == OrgStatus::kActive; }
};

enum class RegistryFormat { kAuto, kRorV2Json, kRorV1Json };

struct LoadReport {
  size_t entries = 0;
  size_t rejected_missing_country = 0;
  size_t dropped_active_successors = 0;
};

// Strips a "https://ror.org/" style prefix.
std::string CanonicalRorId(std::string_view id);

// Parses a registry dump given as a JSON array or as JSON lines. Entries
// without a country are rejected and counted in `report`. Throws ParseError
// with line context on malformed input and IntegrityError on duplicate ids.
std::vector<OrganizationRecord> ParseRegistry(std::string_view content, RegistryFormat format,
                                              LoadReport *report = nullptr);
std::vector<OrganizationRecord> LoadRegistry(const std::filesystem::path &path,
                                             RegistryFormat format = RegistryFormat::kAuto,
                                             LoadReport *report = nullptr);

enum class ThresholdMode {
  kRecordType,        // sim_u for university-type records
  kPartitionContent,  // sim_u whenever the partition contains "univer"
};

struct IndexOptions {
  bool index_acronyms = true;
  std::string version_tag;
};

// Sorted sparse term-frequency vector over vocabulary ids.
struct SparseTerms {
  std::vector<std::pair<uint32_t, uint32_t>> terms;  // (token id, count), ascending id
  double norm = 0.0;
  double norm_sq = 0.0;  // exact sum of squared counts
};

// One indexed registry name.
struct NameEntry {
  uint32_t record = 0;  // position in RegistryIndex::records()
  NameSource source = NameSource::kCanonical;
  std::string key;  // normalized form
  SparseTerms terms;
};

// Immutable lookup structures over a registry. Safe for concurrent reads.
class RegistryIndex {
 public:
  static RegistryIndex Build(std::vector<OrganizationRecord> records, const Config &config,
                             const IndexOptions &options = {});

  const std::vector<OrganizationRecord> &records() const { return records_; }
  const OrganizationRecord *Find(std::string_view id) const;
  const OrganizationRecord &Get(std::string_view id) const;  // throws IntegrityError
  std::optional<uint32_t> Position(std::string_view id) const;

  // All ids whose normalized canonical name or alias equals `normalized`,
  // sorted by id.
  std::vector<std::string> LookupExact(std::string_view normalized) const;

  const std::map<std::string, std::vector<std::string>> &by_normalized_name() const { return by_name_; }
  const std::map<std::string, std::vector<std::string>> &by_country() const { return by_country_; }
  const std::set<std::string> &country_dictionary() const { return countries_.names(); }
  const std::set<std::string> &city_dictionary() const { return city_names_; }
  const std::map<std::string, std::string> &specific_entities() const { return specific_entities_; }
  const std::string &version_tag() const { return version_tag_; }
  const std::string &source_hash() const { return source_hash_; }
  void set_source_hash(std::string hash) { source_hash_ = std::move(hash); }

  const Config &config() const { return config_; }
  const Normalizer &normalizer() const { return *normalizer_; }
  const CountryDictionary &countries() const { return countries_; }
  const Lexicon &lexicon() const { return lexicon_; }
  const IndexOptions &options() const { return options_; }

  // Normalized country and city of a record.
  const std::string &RecordCountry(uint32_t pos) const { return record_country_[pos]; }
  const std::string &RecordCity(uint32_t pos) const { return record_city_[pos]; }

  // Candidate-search structures. Names are grouped by record country; each
  // country owns the contiguous range CountryRange(c) of names().
  const std::vector<NameEntry> &names() const { return names_; }
  const std::vector<double> &name_norms_sq() const { return name_norms_sq_; }
  const std::vector<uint8_t> &name_is_university() const { return name_is_univ_; }
  std::optional<std::pair<uint32_t, uint32_t>> CountryRange(const std::string &country) const;
  std::optional<uint32_t> TokenId(std::string_view token) const;

  struct Posting {
    uint32_t name;  // index into names()
    uint32_t count;
  };
  // Postings of `token_id` restricted to names of `country`, ascending name.
  const std::vector<Posting> *Postings(const std::string &country, uint32_t token_id) const;

  // Term vector over vocabulary ids. Tokens missing from the vocabulary get
  // no entry but still count towards the norm.
  SparseTerms Vectorize(const std::vector<std::string> &tokens) const;

  // Deterministic serialization: identical inputs give identical bytes.
  nlohmann::json ToJson() const;
  static RegistryIndex FromJson(const nlohmann::json &j);
  void Save(const std::filesystem::path &path) const;
  static RegistryIndex Load(const std::filesystem::path &path);

 private:
  void Finalize(const std::vector<std::vector<std::string>> *precomputed_keys);

  std::vector<OrganizationRecord> records_;
  std::unordered_map<std::string, uint32_t> position_;
  Config config_;
  IndexOptions options_;
  std::unique_ptr<Normalizer> normalizer_;
  CountryDictionary countries_;
  Lexicon lexicon_;
  std::string version_tag_;
  std::string source_hash_;

  std::vector<std::string> record_country_;
  std::vector<std::string> record_city_;
  std::map<std::string, std::vector<std::string>> by_name_;
  std::map<std::string, std::vector<std::string>> by_country_;
  std::set<std::string> city_names_;
  std::map<std::string, std::string> specific_entities_;

  std::vector<NameEntry> names_;
  std::vector<double> name_norms_sq_;
  std::vector<uint8_t> name_is_univ_;
  std::map<std::string, std::pair<uint32_t, uint32_t>> country_ranges_;
  std::unordered_map<std::string, uint32_t> vocabulary_;
  std::unordered_map<uint64_t, std::vector<Posting>> postings_;  // (country idx << 32) | token
  std::map<std::string, uint32_t> country_idx_;
};

// Loads the index at `cache_path` if its recorded source hash matches the
// dump at `registry_path`; otherwise builds from the dump and rewrites the
// cache. An empty cache path disables caching.
RegistryIndex LoadOrBuildIndex(const std::filesystem::path &registry_path, const Config &config,
                               const std::filesystem::path &cache_path, const IndexOptions &options = {},
                               LoadReport *report = nullptr);

}  // namespace orgmatch

#endif  // ORGMATCH_REGISTRY_H_
