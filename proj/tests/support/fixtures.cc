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

#include "fixtures.h"

#include <atomic>
#include <chrono>

namespace orgmatch::testing {

std::filesystem::path FixturePath(const std::string &name) {
  return std::filesystem::path(ORGMATCH_FIXTURE_DIR) / name;
}

const Config &DefaultConfig() {
  static const Config config = Config::LoadDir(DefaultDataDir());
  return config;
}

const RegistryIndex &FixtureIndex() {
  static const RegistryIndex index =
      RegistryIndex::Build(LoadRegistry(FixturePath("registry_v2.jsonl")), DefaultConfig());
  return index;
}

std::filesystem::path ScratchDir(const std::string &tag) {
  static std::atomic<int> counter{0};
  auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
  auto dir = std::filesystem::temp_directory_path() /
             ("orgmatch-" + tag + "-" + std::to_string(stamp) + "-" + std::to_string(counter++));
  std::filesystem::create_directories(dir);
  return dir;
}

OrganizationRecord MakeRecord(const std::string &id, const std::string &name, const std::string &country,
                              OrgType type, const std::vector<std::string> &aliases, OrgStatus status) {
  OrganizationRecord r;
  r.id = id;
  r.canonical_name = name;
  for (const auto &a : aliases) r.aliases.push_back({a, NameSource::kAlias});
  r.country = country;
  r.org_type = type;
  r.status = status;
  return r;
}

}  // namespace orgmatch::testing
