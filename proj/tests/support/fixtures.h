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

#ifndef ORGMATCH_TESTS_SUPPORT_FIXTURES_H_
#define ORGMATCH_TESTS_SUPPORT_FIXTURES_H_

#include <filesystem>
#include <string>
#include <vector>

#include "orgmatch/config.h"
#include "orgmatch/registry.h"

namespace orgmatch::testing {

std::filesystem::path FixturePath(const std::string &name);

// Shipped configuration lists, loaded once.
const Config &DefaultConfig();

// Index over tests/fixtures/registry_v2.jsonl, built once.
const RegistryIndex &FixtureIndex();

// A fresh scratch directory under the system temp dir.
std::filesystem::path ScratchDir(const std::string &tag);

// Minimal record constructor for programmatic registries.
OrganizationRecord MakeRecord(const std::string &id, const std::string &name, const std::string &country,
                              OrgType type = OrgType::kUniversity, const std::vector<std::string> &aliases = {},
                              OrgStatus status = OrgStatus::kActive);

}  // namespace orgmatch::testing

#endif  // ORGMATCH_TESTS_SUPPORT_FIXTURES_H_
