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

#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>

#include "fixtures.h"
#include "orgmatch/error.h"
#include "orgmatch/registry.h"
#include "orgmatch/text.h"

namespace orgmatch {
namespace {

using testing::DefaultConfig;
using testing::FixtureIndex;
using testing::MakeRecord;

const char *kThree = R"([
{"id": "https://ror.org/02v51f717", "names": [{"value": "Peking University", "types": ["ror_display"]}],
 "status": "active", "types": ["education"],
 "locations": [{"geonames_details": {"name": "Beijing", "country_name": "China"}}]},
{"id": "https://ror.org/03g5ew477", "names": [{"value": "Institute of Applied Physics", "types": ["ror_display"]}],
 "status": "inactive", "types": ["facility"],
 "locations": [{"geonames_details": {"name": "Jena", "country_name": "Germany"}}],
 "relationships": [{"type": "successor", "id": "https://ror.org/01zy2cs03"}]},
{"id": "https://ror.org/01zy2cs03", "names": [{"value": "Institute of Applied and Quantum Physics",
 "types": ["ror_display"]}, {"value": "IAQP", "types": ["acronym"]}], "status": "active", "types": ["facility"],
 "locations": [{"geonames_details": {"name": "Jena", "country_name": "Germany"}}]}
])";

TEST(LoadRegistryTest, ThreeRecordsKeepIds) {
  LoadReport report;
  auto records = ParseRegistry(kThree, RegistryFormat::kAuto, &report);
  ASSERT_EQ(records.size(), 3u);
  EXPECT_EQ(records[0].id, "02v51f717");
  EXPECT_EQ(records[1].id, "03g5ew477");
  EXPECT_EQ(records[2].id, "01zy2cs03");
  EXPECT_EQ(report.entries, 3u);
  EXPECT_EQ(records[0].org_type, OrgType::kUniversity);
  EXPECT_EQ(records[0].city, "Beijing");
  ASSERT_EQ(records[2].aliases.size(), 1u);
  EXPECT_EQ(records[2].aliases[0].source, NameSource::kAcronym);
}

TEST(LoadRegistryTest, InactiveRecordKeepsSuccessor) {
  auto records = ParseRegistry(kThree, RegistryFormat::kRorV2Json);
  EXPECT_EQ(records[1].status, OrgStatus::kInactive);
  EXPECT_EQ(records[1].successor_ids, (std::vector<std::string>{"01zy2cs03"}));
}

TEST(LoadRegistryTest, MissingCountryIsCounted) {
  LoadReport report;
  auto records = LoadRegistry(testing::FixturePath("registry_v2.jsonl"), RegistryFormat::kAuto, &report);
  EXPECT_EQ(report.rejected_missing_country, 1u);
  EXPECT_EQ(records.size() + 1, report.entries);
  EXPECT_TRUE(std::none_of(records.begin(), records.end(), [](const auto &r) { return r.id == "0065vkd37"; }));
}

TEST(LoadRegistryTest, MalformedLineReportsLineNumber) {
  std::string jsonl = R"({"id": "02v51f717", "names": [{"value": "A", "types": ["ror_display"]}],
    "locations": [{"geonames_details": {"country_name": "China"}}]})";
  // Collapse to one line, then append a broken second line.
  std::erase(jsonl, '\n');
  jsonl += "\n{\"id\": \n";
  try {
    ParseRegistry(jsonl, RegistryFormat::kAuto);
    FAIL() << "expected ParseError";
  } catch (const ParseError &e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(LoadRegistryTest, DuplicateIdIsIntegrityError) {
  std::string line = R"({"id": "02v51f717", "names": [{"value": "A", "types": ["ror_display"]}], )"
                     R"("locations": [{"geonames_details": {"country_name": "China"}}]})";
  EXPECT_THROW(ParseRegistry(line + "\n" + line + "\n", RegistryFormat::kAuto), IntegrityError);
}

TEST(LoadRegistryTest, V1Adapter) {
  const char *v1 = R"([{"id": "https://ror.org/052gg0110", "name": "University of Oxford",
    "aliases": ["Oxford University"], "acronyms": [], "labels": [], "status": "active",
    "types": ["Education"], "country": {"country_name": "United Kingdom"},
    "addresses": [{"city": "Oxford"}], "relationships": []}])";
  auto records = ParseRegistry(v1, RegistryFormat::kAuto);
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0].canonical_name, "University of Oxford");
  EXPECT_EQ(records[0].country, "United Kingdom");
  EXPECT_EQ(records[0].city, "Oxford");
  EXPECT_EQ(records[0].org_type, OrgType::kUniversity);
  ASSERT_EQ(records[0].aliases.size(), 1u);
}

TEST(LoadRegistryTest, CanonicalIdStripsPrefix) {
  EXPECT_EQ(CanonicalRorId("https://ror.org/00njsd438"), "00njsd438");
  EXPECT_EQ(CanonicalRorId("http://ror.org/00njsd438"), "00njsd438");
  EXPECT_EQ(CanonicalRorId("00njsd438"), "00njsd438");
}

TEST(BuildIndexTest, EmptyInputIsRejected) { EXPECT_THROW(RegistryIndex::Build({}, DefaultConfig()), UsageError); }

TEST(BuildIndexTest, NoAliasesMeansOneKeyPerRecord) {
  auto idx = RegistryIndex::Build({MakeRecord("02v51f717", "Peking University", "China"),
                                   MakeRecord("052gg0110", "University of Oxford", "United Kingdom")},
                                  DefaultConfig());
  EXPECT_EQ(idx.by_normalized_name().size(), 2u);
  for (const auto &[key, ids] : idx.by_normalized_name()) EXPECT_EQ(ids.size(), 1u) << key;
}

TEST(BuildIndexTest, SpecificEntityMapsToConfiguredParent) {
  ASSERT_TRUE(FixtureIndex().specific_entities().count("google"));
  EXPECT_EQ(FixtureIndex().specific_entities().at("google"), "00njsd438");
}

TEST(BuildIndexTest, CountryAndCityDictionariesComeFromRegistry) {
  const auto &idx = FixtureIndex();
  EXPECT_TRUE(idx.country_dictionary().count("china"));
  EXPECT_TRUE(idx.country_dictionary().count("hong kong"));
  EXPECT_TRUE(idx.city_dictionary().count("moraga"));
}

TEST(LookupExactTest, CanonicalNameFindsRecord) {
  const auto &idx = FixtureIndex();
  EXPECT_EQ(idx.LookupExact(idx.normalizer().Key("Peking University")), (std::vector<std::string>{"02v51f717"}));
  EXPECT_TRUE(idx.LookupExact("no such organization").empty());
}

TEST(LookupExactTest, SharedAliasReturnsBothSorted) {
  const auto &idx = FixtureIndex();
  EXPECT_EQ(idx.LookupExact(idx.normalizer().Key("MIT")), (std::vector<std::string>{"02xzytt36", "042nb2s44"}));
  EXPECT_EQ(idx.LookupExact(idx.normalizer().Key("Saint Mary's College")),
            (std::vector<std::string>{"02kzs4y22", "04xwm0p92"}));
}

TEST(LookupExactTest, AcronymsCanBeExcluded) {
  IndexOptions options;
  options.index_acronyms = false;
  auto idx = RegistryIndex::Build(LoadRegistry(testing::FixturePath("registry_v2.jsonl")), DefaultConfig(), options);
  EXPECT_TRUE(idx.LookupExact(idx.normalizer().Key("MIT")).empty());
  for (const auto &n : idx.names()) EXPECT_NE(n.source, NameSource::kAcronym);
}

TEST(RegistryInvariants, NormalizationParity) {
  const auto &idx = FixtureIndex();
  for (const auto &rec : idx.records()) {
    auto norm = idx.normalizer().CleanAndStem(rec.canonical_name, idx.countries());
    auto ids = idx.LookupExact(norm.key);
    EXPECT_NE(std::find(ids.begin(), ids.end(), rec.id), ids.end()) << rec.canonical_name;
  }
}

TEST(RegistryInvariants, CountryPartitionIsTotal) {
  const auto &idx = FixtureIndex();
  std::multiset<std::string> from_countries;
  for (const auto &[c, ids] : idx.by_country()) from_countries.insert(ids.begin(), ids.end());
  std::multiset<std::string> all;
  for (const auto &r : idx.records()) all.insert(r.id);
  EXPECT_EQ(from_countries, all);
}

TEST(RegistryInvariants, IndexValuesReferenceRecords) {
  const auto &idx = FixtureIndex();
  for (const auto &[k, ids] : idx.by_normalized_name()) {
    for (const auto &id : ids) EXPECT_NE(idx.Find(id), nullptr) << id;
  }
  for (const auto &[k, id] : idx.specific_entities()) EXPECT_NE(idx.Find(id), nullptr) << k;
}

TEST(RegistryInvariants, ActiveRecordsHaveNoSuccessors) {
  for (const auto &r : FixtureIndex().records()) {
    if (r.active()) {
      EXPECT_TRUE(r.successor_ids.empty()) << r.id;
    }
  }
}

TEST(RegistryInvariants, CountryRangesCoverNames) {
  const auto &idx = FixtureIndex();
  size_t covered = 0;
  for (const auto &[c, ids] : idx.by_country()) {
    auto range = idx.CountryRange(c);
    ASSERT_TRUE(range);
    for (uint32_t n = range->first; n < range->second; ++n) EXPECT_EQ(idx.RecordCountry(idx.names()[n].record), c);
    covered += range->second - range->first;
  }
  EXPECT_EQ(covered, idx.names().size());
}

TEST(SerializationTest, BuildIsByteDeterministic) {
  auto records = LoadRegistry(testing::FixturePath("registry_v2.jsonl"));
  auto a = RegistryIndex::Build(records, DefaultConfig());
  auto b = RegistryIndex::Build(records, DefaultConfig());
  EXPECT_EQ(a.ToJson().dump(), b.ToJson().dump());
}

TEST(SerializationTest, SaveLoadRoundTrip) {
  const auto &idx = FixtureIndex();
  auto path = testing::ScratchDir("index") / "index.json";
  idx.Save(path);
  auto loaded = RegistryIndex::Load(path);
  EXPECT_EQ(loaded.ToJson().dump(), idx.ToJson().dump());
  EXPECT_EQ(loaded.by_normalized_name(), idx.by_normalized_name());
  EXPECT_EQ(loaded.name_norms_sq(), idx.name_norms_sq());
}

TEST(SerializationTest, CorruptIndexIsParseError) {
  auto path = testing::ScratchDir("corrupt") / "index.json";
  std::ofstream(path) << "{\"format_version\": 1,\n  broken";
  EXPECT_THROW(RegistryIndex::Load(path), ParseError);
}

TEST(CacheTest, ReusesMatchingCacheAndRebuildsStale) {
  auto dir = testing::ScratchDir("cache");
  auto dump = dir / "ror-v1.40-fixture.jsonl";
  std::filesystem::copy_file(testing::FixturePath("registry_v2.jsonl"), dump);
  auto cache = dir / "cache.json";
  auto first = LoadOrBuildIndex(dump, DefaultConfig(), cache);
  EXPECT_EQ(first.version_tag(), "v1.40");
  ASSERT_TRUE(std::filesystem::exists(cache));
  auto stamp = std::filesystem::last_write_time(cache);
  auto second = LoadOrBuildIndex(dump, DefaultConfig(), cache);
  EXPECT_EQ(std::filesystem::last_write_time(cache), stamp);
  EXPECT_EQ(second.ToJson().dump(), first.ToJson().dump());

  std::ofstream(dump, std::ios::app) << R"({"id": "0aaaaaa11", "names": [{"value": "New Lab", )"
                                     << R"("types": ["ror_display"]}], "locations": [{"geonames_details": )"
                                     << R"({"country_name": "Spain"}}]})" << "\n";
  auto third = LoadOrBuildIndex(dump, DefaultConfig(), cache);
  EXPECT_EQ(third.records().size(), first.records().size() + 1);
}

TEST(VectorizeTest, UnknownTokensCountTowardNorm) {
  const auto &idx = FixtureIndex();
  auto v = idx.Vectorize({"peking", "univer", "zzzunknown"});
  EXPECT_EQ(v.terms.size(), 2u);
  EXPECT_DOUBLE_EQ(v.norm_sq, 3.0);
  EXPECT_TRUE(std::is_sorted(v.terms.begin(), v.terms.end()));
}

}  // namespace
}  // namespace orgmatch
