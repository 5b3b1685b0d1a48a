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

#include "orgmatch/disambiguate.h"

#include <algorithm>
#include <deque>
#include <set>

#include "orgmatch/error.h"
#include "orgmatch/text.h"

namespace orgmatch {

namespace {

// True when the multi-word `phrase` occurs in `tokens` between delimiters.
bool ContainsPhrase(const std::vector<std::string> &tokens, const std::string &phrase) {
  auto words = SplitWhitespace(phrase);
  if (words.empty() || words.size() > tokens.size()) return false;
  for (size_t i = 0; i + words.size() <= tokens.size(); ++i) {
    if (std::equal(words.begin(), words.end(), tokens.begin() + i)) return true;
  }
  return false;
}

}  // namespace

const char *DisambiguationRuleName(DisambiguationRule rule) {
  switch (rule) {
    case DisambiguationRule::kCityCountry: return "city_country";
    case DisambiguationRule::kKnownEntityParent: return "known_entity_parent";
    case DisambiguationRule::kUniqueActive: return "unique_active";
    case DisambiguationRule::kSuccessorSubstitution: return "successor_substitution";
    case DisambiguationRule::kNone: return "none";
  }
  return "none";
}

nlohmann::json DisambiguationOutcome::ToJson() const {
  return {{"input_candidates", input_candidates},
          {"resolved", resolved},
          {"rule_fired", DisambiguationRuleName(rule_fired)}};
}

std::vector<std::string> ActiveSuccessors(const std::string &id, const RegistryIndex &index) {
  std::set<std::string> out, visited;
  std::deque<std::string> queue = {id};
  while (!queue.empty()) {
    std::string cur = std::move(queue.front());
    queue.pop_front();
    if (!visited.insert(cur).second) continue;
    const OrganizationRecord *r = index.Find(cur);
    if (r == nullptr) continue;
    if (r->active()) {
      out.insert(cur);
      continue;
    }
    for (const auto &s : r->successor_ids) queue.push_back(s);
  }
  return {out.begin(), out.end()};
}

DisambiguationOutcome Resolve(const std::vector<std::string> &cands, const NormalizedAffiliation &norm,
                              const RegistryIndex &index, const std::string &matched_name) {
  DisambiguationOutcome outcome;
  std::set<std::string> unique(cands.begin(), cands.end());
  outcome.input_candidates.assign(unique.begin(), unique.end());
  for (const auto &id : outcome.input_candidates) index.Get(id);

  std::vector<std::string> set = outcome.input_candidates;
  std::vector<std::string> picked;
  DisambiguationRule rule = DisambiguationRule::kNone;

  if (set.size() > 1) {
    std::vector<std::string> by_city;
    for (const auto &id : set) {
      const std::string &city = index.RecordCity(*index.Position(id));
      if (!city.empty() && ContainsPhrase(norm.tokens, city)) by_city.push_back(id);
    }
    if (by_city.empty()) by_city = set;
    std::vector<std::string> by_country;
    for (const auto &id : by_city) {
      const std::string &c = index.RecordCountry(*index.Position(id));
      if (std::find(norm.countries.begin(), norm.countries.end(), c) != norm.countries.end()) {
        by_country.push_back(id);
      }
    }
    if (by_country.empty()) by_country = by_city;
    if (by_country.size() == 1) {
      picked = by_country;
      rule = DisambiguationRule::kCityCountry;
    } else {
      set = by_country;
    }
  }

  if (rule == DisambiguationRule::kNone) {
    const auto &entities = index.specific_entities();
    auto it = entities.find(matched_name);
    if (it != entities.end() && !(set.size() == 1 && set[0] == it->second)) {
      picked = {it->second};
      rule = DisambiguationRule::kKnownEntityParent;
    }
  }

  if (rule == DisambiguationRule::kNone) {
    if (set.size() == 1) {
      // A lone candidate passes; if it is inactive the successor step
      // below decides.
      picked = set;
      if (index.Get(set[0]).active()) rule = DisambiguationRule::kUniqueActive;
    } else {
      std::vector<std::string> active;
      for (const auto &id : set) {
        if (index.Get(id).active()) active.push_back(id);
      }
      if (active.size() == 1) {
        picked = active;
        rule = DisambiguationRule::kUniqueActive;
      }
    }
  }

  std::set<std::string> resolved;
  bool substituted = false;
  for (const auto &id : picked) {
    if (index.Get(id).active()) {
      resolved.insert(id);
      continue;
    }
    substituted = true;
    for (auto &s : ActiveSuccessors(id, index)) resolved.insert(std::move(s));
  }
  if (substituted && rule == DisambiguationRule::kNone && !resolved.empty()) {
    rule = DisambiguationRule::kSuccessorSubstitution;
  }
  outcome.resolved.assign(resolved.begin(), resolved.end());
  outcome.rule_fired = rule;
  return outcome;
}

}  // namespace orgmatch
