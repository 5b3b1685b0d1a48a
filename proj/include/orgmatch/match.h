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

#ifndef ORGMATCH_MATCH_H_
#define ORGMATCH_MATCH_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "orgmatch/disambiguate.h"
#include "orgmatch/normalize.h"
#include "orgmatch/registry.h"
#include "orgmatch/segment.h"

namespace orgmatch {

// Term-frequency vector over stemmed tokens.
struct TermVector {
  std::map<std::string, uint32_t> counts;
  double magnitude = 0.0;

  static TermVector FromTokens(const std::vector<std::string> &tokens);
  static TermVector FromText(std::string_view text);  // whitespace split
};

// dot(a, b) / (|a| |b|), 0 when either vector is zero.
double CosineSimilarity(const TermVector &a, const TermVector &b);

struct Candidate {
  std::string record_id;
  std::string matched_name;  // normalized registry name that scored
  double name_similarity = 0.0;
  std::optional<double> refine_similarity;
  std::optional<double> levenshtein_norm;
  size_t partition_index = 0;

  double confidence() const { return refine_similarity.value_or(name_similarity); }
  nlohmann::json ToJson() const;
};

struct MatchOptions {
  ThresholdMode threshold_mode = ThresholdMode::kRecordType;
};

// Registry names similar to the partition, restricted to the affiliation's
// countries (all countries when none was detected; `*searched_all` reports
// that). One candidate per record, its best-scoring name; ordered by
// similarity descending then id.
std::vector<Candidate> FindCandidates(const Partition &part, const NormalizedAffiliation &norm,
                                      const RegistryIndex &index, const PipelineParams &params,
                                      const MatchOptions &options = {}, bool *searched_all = nullptr);

// Scores candidates of one partition against the full affiliation and
// ranks them. Fewer than two candidates pass through unchanged.
std::vector<Candidate> Refine(std::vector<Candidate> cands, const NormalizedAffiliation &norm,
                              const Partition &part);

// The ranking used by Refine: higher refine similarity, then Levenshtein
// similarity, then name similarity, then lower id.
bool RefineOrder(const Candidate &a, const Candidate &b);

struct Match {
  std::string id;
  std::string name;  // canonical registry name
  double confidence = 0.0;

  bool operator==(const Match &) const = default;
};

struct PartitionTrace {
  Partition partition;
  std::vector<Candidate> candidates;
  bool searched_all_countries = false;
};

struct MatchTrace {
  bool exact_shortcut = false;
  std::vector<PartitionTrace> partitions;
  size_t survivor_cap = 0;
  std::vector<Candidate> survivors;
  std::vector<DisambiguationOutcome> disambiguation;
};

struct MatchResult {
  NormalizedAffiliation input;
  std::vector<Match> matches;  // confidence descending, then id
  MatchTrace trace;

  nlohmann::json ToJson(bool include_trace = false) const;
  std::vector<std::string> Ids() const;
};

// Full pipeline on an already normalized affiliation.
MatchResult MatchNormalized(const NormalizedAffiliation &norm, const RegistryIndex &index,
                            const PipelineParams &params, const MatchOptions &options = {});

// Normalize, shortcut or partition/prune/shorten, candidate search,
// refinement and disambiguation. Throws UsageError on invalid params.
MatchResult MatchString(std::string_view raw, const RegistryIndex &index, const PipelineParams &params,
                        const MatchOptions &options = {});

}  // namespace orgmatch

#endif  // ORGMATCH_MATCH_H_
