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

#ifndef ORGMATCH_DISAMBIGUATE_H_
#define ORGMATCH_DISAMBIGUATE_H_

#include <string>
#include <vector>

#include "json.hpp"
#include "orgmatch/normalize.h"
#include "orgmatch/registry.h"

namespace orgmatch {

enum class DisambiguationRule { kCityCountry, kKnownEntityParent, kUniqueActive, kSuccessorSubstitution, kNone };

const char *DisambiguationRuleName(DisambiguationRule rule);

struct DisambiguationOutcome {
  std::vector<std::string> input_candidates;
  std::vector<std::string> resolved;  // active ids only, sorted
  DisambiguationRule rule_fired = DisambiguationRule::kNone;

  nlohmann::json ToJson() const;
};

// Resolves the records sharing a matched name. `matched_name` is the
// normalized name the candidates were found under; it selects the curated
// entity parent when location information does not decide. Throws
// IntegrityError on an unknown id.
DisambiguationOutcome Resolve(const std::vector<std::string> &cands, const NormalizedAffiliation &norm,
                              const RegistryIndex &index, const std::string &matched_name);

// Follows successor links until active records are reached. Inactive
// records without successors vanish; ids missing from the registry are
// dropped. The result is sorted and unique.
std::vector<std::string> ActiveSuccessors(const std::string &id, const RegistryIndex &index);

}  // namespace orgmatch

#endif  // ORGMATCH_DISAMBIGUATE_H_
