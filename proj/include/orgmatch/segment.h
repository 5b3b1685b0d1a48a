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

#ifndef ORGMATCH_SEGMENT_H_
#define ORGMATCH_SEGMENT_H_

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "orgmatch/lexicon.h"
#include "orgmatch/normalize.h"
#include "orgmatch/registry.h"

namespace orgmatch {

// The four tunable pipeline parameters. Defaults are the F1-optimal
// configuration.
struct PipelineParams {
  int window = 3;
  double sim_u = 0.426;
  double sim_o = 0.827;
  bool specific = true;

  // Throws UsageError naming the offending field.
  void Validate() const;

  nlohmann::json ToJson() const;
  bool operator==(const PipelineParams &) const = default;
};

// Tokens kept on each side of a "univer" occurrence are `window`; set to
// false to treat `window` as the total span instead.
inline constexpr bool kWindowPerSide = true;

enum class Disposition { kKept, kPrunedKeywordFilter, kPrunedBanned, kExactShortcut };

const char *DispositionName(Disposition d);

struct Partition {
  std::vector<std::string> tokens;  // stemmed word tokens
  std::string text;                 // tokens joined by spaces
  size_t index = 0;                 // position within the affiliation
  bool has_basic_key = false;
  bool contains_keyword = false;
  bool exact_key = false;  // text is a registry name
  std::optional<std::string> shortened;
  std::vector<std::string> shortened_tokens;
  Disposition disposition = Disposition::kKept;
  std::string reason;  // which rule pruned or shortened the partition

  // Tokens used for candidate search: the shortened form when present.
  const std::vector<std::string> &MatchTokens() const { return shortened ? shortened_tokens : tokens; }
  std::string MatchText() const { return shortened ? *shortened : text; }

  nlohmann::json ToJson() const;
};

// Registry ids whose normalized name equals the whole normalized
// affiliation, or nullopt when there are none.
std::optional<std::vector<std::string>> TryExactShortcut(const NormalizedAffiliation &norm,
                                                         const RegistryIndex &index);

// Splits on the retained delimiters, then on "and" between two basic
// keywords, then on "at" inside partitions that are not registry names.
std::vector<Partition> PartitionAffiliation(const NormalizedAffiliation &norm, const RegistryIndex &index);

// Keyword filter and banned-partition rules. Pruned partitions stay in the
// list with their disposition set.
void Prune(std::vector<Partition> *parts, const PipelineParams &params, const Lexicon &lexicon);

// Entity-name reduction (specific only) or windowing around "univer".
// Partitions that are pruned or exact registry names are left alone.
void Shorten(Partition *part, const PipelineParams &params, const Lexicon &lexicon);

}  // namespace orgmatch

#endif  // ORGMATCH_SEGMENT_H_
