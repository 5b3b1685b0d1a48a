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

#include "orgmatch/registry.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <regex>
#include <unordered_set>

#include "orgmatch/error.h"
#include "orgmatch/text.h"

namespace orgmatch {

using nlohmann::json;

namespace {

constexpr int kIndexFormatVersion = 1;

size_t LineOfOffset(std::string_view content, size_t offset) {
  offset = std::min(offset, content.size());
  return 1 + static_cast<size_t>(std::count(content.begin(), content.begin() + offset, '\n'));
}

std::string StringField(const json &j, const char *name) {
  auto it = j.find(name);
  if (it == j.end() || !it->is_string()) return "";
  return it->get<std::string>();
}

OrgType OrgTypeFromRor(const json &types) {
  if (!types.is_array()) return OrgType::kOther;
  bool hospital = false, institute = false, company = false;
  for (const auto &t : types) {
    if (!t.is_string()) continue;
    std::string v = AsciiLower(t.get<std::string>());
    if (v == "education") return OrgType::kUniversity;
    hospital |= v == "healthcare";
    institute |= v == "facility";
    company |= v == "company";
  }
  if (hospital) return OrgType::kHospital;
  if (institute) return OrgType::kInstitute;
  if (company) return OrgType::kCompany;
  return OrgType::kOther;
}

OrgStatus OrgStatusFromString(const std::string &s) {
  std::string v = AsciiLower(s);
  if (v == "inactive") return OrgStatus::kInactive;
  if (v == "withdrawn") return OrgStatus::kWithdrawn;
  return OrgStatus::kActive;
}

void ReadRelationships(const json &j, OrganizationRecord *rec) {
  auto it = j.find("relationships");
  if (it == j.end() || !it->is_array()) return;
  for (const auto &rel : *it) {
    std::string type = AsciiLower(StringField(rel, "type"));
    std::string id = CanonicalRorId(StringField(rel, "id"));
    if (id.empty()) continue;
    if (type == "parent") rec->parent_ids.push_back(id);
    if (type == "successor") rec->successor_ids.push_back(id);
  }
}

// ROR schema v2: names[] with types, locations[] with geonames details.
OrganizationRecord FromRorV2(const json &j) {
  OrganizationRecord rec;
  rec.id = CanonicalRorId(StringField(j, "id"));
  std::string first_label;
  if (auto it = j.find("names"); it != j.end() && it->is_array()) {
    for (const auto &n : *it) {
      std::string value = StringField(n, "value");
      if (value.empty()) continue;
      bool display = false, label = false, acronym = false;
      if (auto t = n.find("types"); t != n.end() && t->is_array()) {
        for (const auto &ty : *t) {
          if (!ty.is_string()) continue;
          const std::string &s = ty.get_ref<const std::string &>();
          display |= s == "ror_display";
          label |= s == "label";
          acronym |= s == "acronym";
        }
      }
      if (display && rec.canonical_name.empty()) {
        rec.canonical_name = value;
      } else if (acronym) {
        rec.aliases.push_back({value, NameSource::kAcronym});
      } else if (label) {
        if (first_label.empty()) first_label = value;
        rec.aliases.push_back({value, NameSource::kLabel});
      } else {
        rec.aliases.push_back({value, NameSource::kAlias});
      }
    }
  }
  if (rec.canonical_name.empty() && !first_label.empty()) {
    rec.canonical_name = first_label;
    auto it = std::find_if(rec.aliases.begin(), rec.aliases.end(),
                           [&](const OrgName &n) { return n.value == first_label; });
    if (it != rec.aliases.end()) rec.aliases.erase(it);
  }
  if (auto it = j.find("locations"); it != j.end() && it->is_array() && !it->empty()) {
    const json &geo = (*it)[0].value("geonames_details", json::object());
    rec.country = StringField(geo, "country_name");
    std::string city = StringField(geo, "name");
    if (!city.empty()) rec.city = city;
  }
  rec.org_type = OrgTypeFromRor(j.value("types", json::array()));
  rec.status = OrgStatusFromString(StringField(j, "status"));
  ReadRelationships(j, &rec);
  return rec;
}

// ROR schema v1 (dumps up to v1.x): flat name, aliases, acronyms, labels.
OrganizationRecord FromRorV1(const json &j) {
  OrganizationRecord rec;
  rec.id = CanonicalRorId(StringField(j, "id"));
  rec.canonical_name = StringField(j, "name");
  if (auto it = j.find("labels"); it != j.end() && it->is_array()) {
    for (const auto &l : *it) {
      std::string v = StringField(l, "label");
      if (!v.empty()) rec.aliases.push_back({v, NameSource::kLabel});
    }
  }
  if (auto it = j.find("aliases"); it != j.end() && it->is_array()) {
    for (const auto &a : *it) {
      if (a.is_string() && !a.get_ref<const std::string &>().empty()) {
        rec.aliases.push_back({a.get<std::string>(), NameSource::kAlias});
      }
    }
  }
  if (auto it = j.find("acronyms"); it != j.end() && it->is_array()) {
    for (const auto &a : *it) {
      if (a.is_string() && !a.get_ref<const std::string &>().empty()) {
        rec.aliases.push_back({a.get<std::string>(), NameSource::kAcronym});
      }
    }
  }
  if (auto it = j.find("country"); it != j.end() && it->is_object()) {
    rec.country = StringField(*it, "country_name");
  }
  if (auto it = j.find("addresses"); it != j.end() && it->is_array() && !it->empty()) {
    std::string city = StringField((*it)[0], "city");
    if (!city.empty()) rec.city = city;
  }
  rec.org_type = OrgTypeFromRor(j.value("types", json::array()));
  rec.status = OrgStatusFromString(StringField(j, "status"));
  ReadRelationships(j, &rec);
  return rec;
}

RegistryFormat DetectFormat(const json &entry) {
  if (entry.contains("names") && entry["names"].is_array()) return RegistryFormat::kRorV2Json;
  if (entry.contains("name") && entry["name"].is_string()) return RegistryFormat::kRorV1Json;
  return RegistryFormat::kRorV2Json;
}

json RecordToJson(const OrganizationRecord &r) {
  json aliases = json::array();
  for (const auto &a : r.aliases) aliases.push_back({{"value", a.value}, {"source", NameSourceName(a.source)}});
  json j = {{"id", r.id},
            {"canonical_name", r.canonical_name},
            {"aliases", aliases},
            {"country", r.country},
            {"org_type", OrgTypeName(r.org_type)},
            {"status", OrgStatusName(r.status)},
            {"parent_ids", r.parent_ids},
            {"successor_ids", r.successor_ids}};
  j["city"] = r.city ? json(*r.city) : json(nullptr);
  return j;
}

template <typename E, size_t N>
E EnumFromName(const std::string &name, const std::array<E, N> &values, const char *(*to_name)(E)) {
  for (E v : values) {
    if (name == to_name(v)) return v;
  }
  throw ParseError("unknown enum value '" + name + "' in index", 0);
}

OrganizationRecord RecordFromJson(const json &j) {
  OrganizationRecord r;
  r.id = j.at("id").get<std::string>();
  r.canonical_name = j.at("canonical_name").get<std::string>();
  for (const auto &a : j.at("aliases")) {
    r.aliases.push_back({a.at("value").get<std::string>(),
                         EnumFromName(a.at("source").get<std::string>(),
                                      std::array{NameSource::kCanonical, NameSource::kLabel,
                                                 NameSource::kAlias, NameSource::kAcronym},
                                      &NameSourceName)});
  }
  r.country = j.at("country").get<std::string>();
  if (!j.at("city").is_null()) r.city = j.at("city").get<std::string>();
  r.org_type = EnumFromName(j.at("org_type").get<std::string>(),
                            std::array{OrgType::kUniversity, OrgType::kHospital, OrgType::kInstitute,
                                       OrgType::kLaboratory, OrgType::kCompany, OrgType::kOther},
                            &OrgTypeName);
  r.status = EnumFromName(j.at("status").get<std::string>(),
                          std::array{OrgStatus::kActive, OrgStatus::kInactive, OrgStatus::kWithdrawn},
                          &OrgStatusName);
  r.parent_ids = j.at("parent_ids").get<std::vector<std::string>>();
  r.successor_ids = j.at("successor_ids").get<std::vector<std::string>>();
  return r;
}

}  // namespace

const char *OrgTypeName(OrgType t) {
  switch (t) {
    case OrgType::kUniversity: return "university";
    case OrgType::kHospital: return "hospital";
    case OrgType::kInstitute: return "institute";
    case OrgType::kLaboratory: return "laboratory";
    case OrgType::kCompany: return "company";
    case OrgType::kOther: return "other";
  }
  return "other";
}

const char *OrgStatusName(OrgStatus s) {
  switch (s) {
    case OrgStatus::kActive: return "active";
    case OrgStatus::kInactive: return "inactive";
    case OrgStatus::kWithdrawn: return "withdrawn";
  }
  return "active";
}

const char *NameSourceName(NameSource s) {
  switch (s) {
    case NameSource::kCanonical: return "canonical";
    case NameSource::kLabel: return "label";
    case NameSource::kAlias: return "alias";
    case NameSource::kAcronym: return "acronym";
  }
  return "alias";
}

std::string CanonicalRorId(std::string_view id) {
  id = Trim(id);
  for (std::string_view prefix : {"https://ror.org/", "http://ror.org/", "ror.org/"}) {
    if (id.substr(0, prefix.size()) == prefix) {
      id.remove_prefix(prefix.size());
      break;
    }
  }
  return std::string(id);
}

std::vector<OrganizationRecord> ParseRegistry(std::string_view content, RegistryFormat format,
                                              LoadReport *report) {
  LoadReport local;
  LoadReport &rep = report != nullptr ? *report : local;
  rep = LoadReport{};

  // (entry, line) pairs; line is the first line of the entry.
  std::vector<std::pair<json, size_t>> entries;
  std::string_view trimmed = Trim(content);
  if (!trimmed.empty() && trimmed.front() == '[') {
    json doc;
    try {
      doc = json::parse(content);
    } catch (const json::parse_error &e) {
      throw ParseError(std::string("malformed registry JSON: ") + e.what(), LineOfOffset(content, e.byte));
    }
    for (size_t i = 0; i < doc.size(); ++i) entries.emplace_back(std::move(doc[i]), i + 1);
  } else {
    size_t line_no = 0;
    size_t pos = 0;
    while (pos <= content.size()) {
      size_t end = content.find('\n', pos);
      if (end == std::string_view::npos) end = content.size();
      ++line_no;
      std::string_view line = Trim(content.substr(pos, end - pos));
      if (!line.empty()) {
        try {
          entries.emplace_back(json::parse(line), line_no);
        } catch (const json::parse_error &e) {
          throw ParseError(std::string("malformed registry record: ") + e.what(), line_no);
        }
      }
      pos = end + 1;
    }
  }

  std::vector<OrganizationRecord> out;
  std::unordered_set<std::string> seen;
  for (auto &[entry, line] : entries) {
    if (!entry.is_object()) throw ParseError("registry entry is not an object", line);
    ++rep.entries;
    RegistryFormat f = format == RegistryFormat::kAuto ? DetectFormat(entry) : format;
    OrganizationRecord rec = f == RegistryFormat::kRorV1Json ? FromRorV1(entry) : FromRorV2(entry);
    if (rec.id.empty()) throw ParseError("registry entry without id", line);
    if (!seen.insert(rec.id).second) {
      throw IntegrityError("duplicate registry id " + rec.id + " (record " + std::to_string(line) + ")");
    }
    if (Trim(rec.country).empty()) {
      ++rep.rejected_missing_country;
      continue;
    }
    if (rec.active() && !rec.successor_ids.empty()) {
      rec.successor_ids.clear();
      ++rep.dropped_active_successors;
    }
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<OrganizationRecord> LoadRegistry(const std::filesystem::path &path, RegistryFormat format,
                                             LoadReport *report) {
  return ParseRegistry(ReadFile(path), format, report);
}

RegistryIndex RegistryIndex::Build(std::vector<OrganizationRecord> records, const Config &config,
                                   const IndexOptions &options) {
  if (records.empty()) throw UsageError("cannot build an index from an empty registry");
  RegistryIndex idx;
  idx.records_ = std::move(records);
  idx.config_ = config;
  idx.options_ = options;
  idx.version_tag_ = options.version_tag.empty() ? "unknown" : options.version_tag;
  idx.Finalize(nullptr);
  return idx;
}

void RegistryIndex::Finalize(const std::vector<std::vector<std::string>> *precomputed_keys) {
  normalizer_ = std::make_unique<Normalizer>(config_);
  const Normalizer &norm = *normalizer_;

  position_.clear();
  for (uint32_t i = 0; i < records_.size(); ++i) {
    if (!position_.emplace(records_[i].id, i).second) {
      throw IntegrityError("duplicate registry id " + records_[i].id);
    }
  }

  std::vector<std::string> raw_countries, raw_cities;
  for (const auto &r : records_) {
    raw_countries.push_back(r.country);
    if (r.city) raw_cities.push_back(*r.city);
  }
  countries_ = norm.BuildCountryDictionary(config_, raw_countries);
  lexicon_ = BuildLexicon(config_, norm, raw_cities);

  record_country_.assign(records_.size(), "");
  record_city_.assign(records_.size(), "");
  by_country_.clear();
  for (uint32_t i = 0; i < records_.size(); ++i) {
    std::string c = norm.Key(records_[i].country);
    if (c.empty()) c = AsciiLower(Trim(records_[i].country));
    record_country_[i] = c;
    if (records_[i].city) record_city_[i] = norm.Key(*records_[i].city);
    by_country_[c].push_back(records_[i].id);
  }
  for (auto &[c, ids] : by_country_) std::sort(ids.begin(), ids.end());

  city_names_.clear();
  for (const auto &[phrase, payload] : lexicon_.cities.phrases()) city_names_.insert(phrase);

  // Names, grouped by country (countries in sorted order), records in load
  // order within a country, canonical name first.
  country_idx_.clear();
  for (const auto &[c, ids] : by_country_) {
    uint32_t next = static_cast<uint32_t>(country_idx_.size());
    country_idx_.emplace(c, next);
  }
  std::vector<std::vector<uint32_t>> records_by_country(country_idx_.size());
  for (uint32_t i = 0; i < records_.size(); ++i) {
    records_by_country[country_idx_.at(record_country_[i])].push_back(i);
  }

  names_.clear();
  by_name_.clear();
  country_ranges_.clear();
  std::vector<uint32_t> name_country;
  for (const auto &[c, ci] : country_idx_) {
    uint32_t begin = static_cast<uint32_t>(names_.size());
    for (uint32_t pos : records_by_country[ci]) {
      const OrganizationRecord &r = records_[pos];
      std::vector<std::pair<std::string, NameSource>> raw = {{r.canonical_name, NameSource::kCanonical}};
      for (const auto &a : r.aliases) {
        if (a.source == NameSource::kAcronym && !options_.index_acronyms) continue;
        raw.emplace_back(a.value, a.source);
      }
      std::set<std::string> seen;
      for (size_t k = 0; k < raw.size(); ++k) {
        std::string key = precomputed_keys != nullptr ? (*precomputed_keys)[pos][k] : norm.Key(raw[k].first);
        if (key.empty() || !seen.insert(key).second) continue;
        NameEntry e;
        e.record = pos;
        e.source = raw[k].second;
        e.key = key;
        names_.push_back(std::move(e));
        name_country.push_back(ci);
        auto &ids = by_name_[key];
        if (std::find(ids.begin(), ids.end(), r.id) == ids.end()) ids.push_back(r.id);
      }
    }
    country_ranges_[c] = {begin, static_cast<uint32_t>(names_.size())};
  }
  for (auto &[k, ids] : by_name_) std::sort(ids.begin(), ids.end());

  vocabulary_.clear();
  postings_.clear();
  name_norms_sq_.assign(names_.size(), 0.0);
  name_is_univ_.assign(names_.size(), 0);
  for (uint32_t n = 0; n < names_.size(); ++n) {
    NameEntry &e = names_[n];
    std::map<uint32_t, uint32_t> counts;
    for (const auto &tok : SplitWhitespace(e.key)) {
      auto [it, inserted] = vocabulary_.emplace(tok, static_cast<uint32_t>(vocabulary_.size()));
      ++counts[it->second];
    }
    double sq = 0.0;
    for (const auto &[id, cnt] : counts) {
      e.terms.terms.emplace_back(id, cnt);
      sq += static_cast<double>(cnt) * cnt;
      uint64_t pkey = (static_cast<uint64_t>(name_country[n]) << 32) | id;
      postings_[pkey].push_back({n, cnt});
    }
    e.terms.norm_sq = sq;
    e.terms.norm = std::sqrt(sq);
    name_norms_sq_[n] = sq;
    name_is_univ_[n] = records_[e.record].org_type == OrgType::kUniversity ? 1 : 0;
  }

  // Curated entities resolve to their configured target when it is in the
  // registry, otherwise to the unique record carrying that exact name.
  specific_entities_.clear();
  auto add_specific = [&](const PhraseSet &set) {
    for (const auto &[phrase, target] : set.phrases()) {
      if (specific_entities_.count(phrase) > 0) continue;
      std::string id = CanonicalRorId(target);
      if (!id.empty() && Find(id) != nullptr) {
        specific_entities_[phrase] = id;
        continue;
      }
      auto it = by_name_.find(phrase);
      if (it != by_name_.end() && it->second.size() == 1) specific_entities_[phrase] = it->second[0];
    }
  };
  add_specific(lexicon_.entities);
  add_specific(lexicon_.acronyms);
}

const OrganizationRecord *RegistryIndex::Find(std::string_view id) const {
  auto it = position_.find(std::string(id));
  return it == position_.end() ? nullptr : &records_[it->second];
}

const OrganizationRecord &RegistryIndex::Get(std::string_view id) const {
  const OrganizationRecord *r = Find(id);
  if (r == nullptr) throw IntegrityError("unknown registry id " + std::string(id));
  return *r;
}

std::optional<uint32_t> RegistryIndex::Position(std::string_view id) const {
  auto it = position_.find(std::string(id));
  if (it == position_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> RegistryIndex::LookupExact(std::string_view normalized) const {
  auto it = by_name_.find(std::string(normalized));
  return it == by_name_.end() ? std::vector<std::string>{} : it->second;
}

std::optional<std::pair<uint32_t, uint32_t>> RegistryIndex::CountryRange(const std::string &country) const {
  auto it = country_ranges_.find(country);
  if (it == country_ranges_.end()) return std::nullopt;
  return it->second;
}

std::optional<uint32_t> RegistryIndex::TokenId(std::string_view token) const {
  auto it = vocabulary_.find(std::string(token));
  if (it == vocabulary_.end()) return std::nullopt;
  return it->second;
}

const std::vector<RegistryIndex::Posting> *RegistryIndex::Postings(const std::string &country,
                                                                  uint32_t token_id) const {
  auto c = country_idx_.find(country);
  if (c == country_idx_.end()) return nullptr;
  auto it = postings_.find((static_cast<uint64_t>(c->second) << 32) | token_id);
  return it == postings_.end() ? nullptr : &it->second;
}

SparseTerms RegistryIndex::Vectorize(const std::vector<std::string> &tokens) const {
  std::map<std::string, uint32_t> counts;
  for (const auto &t : tokens) ++counts[t];
  SparseTerms out;
  double sq = 0.0;
  for (const auto &[tok, cnt] : counts) {
    sq += static_cast<double>(cnt) * cnt;
    if (auto id = TokenId(tok)) out.terms.emplace_back(*id, cnt);
  }
  std::sort(out.terms.begin(), out.terms.end());
  out.norm_sq = sq;
  out.norm = std::sqrt(sq);
  return out;
}

json RegistryIndex::ToJson() const {
  json records = json::array();
  json keys = json::array();
  for (const auto &r : records_) {
    records.push_back(RecordToJson(r));
    json k = json::array({normalizer_->Key(r.canonical_name)});
    for (const auto &a : r.aliases) k.push_back(normalizer_->Key(a.value));
    keys.push_back(std::move(k));
  }
  return {{"format_version", kIndexFormatVersion},
          {"version_tag", version_tag_},
          {"source_hash", source_hash_},
          {"options", {{"index_acronyms", options_.index_acronyms}, {"version_tag", options_.version_tag}}},
          {"config", config_.ToJson()},
          {"records", std::move(records)},
          {"name_keys", std::move(keys)}};
}

RegistryIndex RegistryIndex::FromJson(const json &j) {
  try {
    if (j.at("format_version").get<int>() != kIndexFormatVersion) {
      throw ParseError("unsupported index format version", 0);
    }
    RegistryIndex idx;
    idx.version_tag_ = j.at("version_tag").get<std::string>();
    idx.source_hash_ = j.at("source_hash").get<std::string>();
    idx.options_.index_acronyms = j.at("options").at("index_acronyms").get<bool>();
    idx.options_.version_tag = j.at("options").at("version_tag").get<std::string>();
    idx.config_ = Config::FromJson(j.at("config"));
    for (const auto &r : j.at("records")) idx.records_.push_back(RecordFromJson(r));
    auto keys = j.at("name_keys").get<std::vector<std::vector<std::string>>>();
    if (keys.size() != idx.records_.size()) throw ParseError("index name keys do not match records", 0);
    // name_keys cover every alias; Finalize skips acronyms itself when
    // they are not indexed, so drop them from the key lists accordingly.
    for (size_t i = 0; i < keys.size(); ++i) {
      if (keys[i].size() != idx.records_[i].aliases.size() + 1) {
        throw ParseError("index name keys do not match record " + idx.records_[i].id, 0);
      }
      if (!idx.options_.index_acronyms) {
        std::vector<std::string> kept = {keys[i][0]};
        for (size_t a = 0; a < idx.records_[i].aliases.size(); ++a) {
          if (idx.records_[i].aliases[a].source != NameSource::kAcronym) kept.push_back(keys[i][a + 1]);
        }
        keys[i] = std::move(kept);
      }
    }
    if (idx.records_.empty()) throw ParseError("index contains no records", 0);
    idx.Finalize(&keys);
    return idx;
  } catch (const json::exception &e) {
    throw ParseError(std::string("corrupt index: ") + e.what(), 0);
  }
}

void RegistryIndex::Save(const std::filesystem::path &path) const {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write index to " + path.string());
    out << ToJson().dump() << '\n';
    if (!out) throw Error("failed writing index to " + path.string());
  }
  std::filesystem::rename(tmp, path);
}

RegistryIndex RegistryIndex::Load(const std::filesystem::path &path) {
  std::string content = ReadFile(path);
  json j;
  try {
    j = json::parse(content);
  } catch (const json::parse_error &e) {
    throw ParseError("corrupt index " + path.string() + ": " + e.what(), LineOfOffset(content, e.byte));
  }
  return FromJson(j);
}

RegistryIndex LoadOrBuildIndex(const std::filesystem::path &registry_path, const Config &config,
                               const std::filesystem::path &cache_path, const IndexOptions &options,
                               LoadReport *report) {
  std::string content = ReadFile(registry_path);
  IndexOptions opts = options;
  if (opts.version_tag.empty()) {
    static const std::regex kVersion(R"(v\d+(\.\d+)+)");
    std::smatch m;
    std::string name = registry_path.filename().string();
    if (std::regex_search(name, m, kVersion)) opts.version_tag = m.str();
  }
  uint64_t h = Fnv1a64(content);
  h = Fnv1a64(config.ToJson().dump(), h);
  h = Fnv1a64(std::string(opts.index_acronyms ? "1" : "0") + opts.version_tag, h);
  std::string hash = HexU64(h);

  if (!cache_path.empty() && std::filesystem::exists(cache_path)) {
    try {
      RegistryIndex cached = RegistryIndex::Load(cache_path);
      if (cached.source_hash() == hash) return cached;
    } catch (const Error &) {
      // Stale or corrupt cache: rebuild below.
    }
  }
  RegistryIndex idx = RegistryIndex::Build(ParseRegistry(content, RegistryFormat::kAuto, report), config, opts);
  idx.set_source_hash(hash);
  if (!cache_path.empty()) idx.Save(cache_path);
  return idx;
}

}  // namespace orgmatch
