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

#ifndef ORGMATCH_TESTS_SUPPORT_ORACLES_H_
#define ORGMATCH_TESTS_SUPPORT_ORACLES_H_

#include <map>
#include <set>
#include <string>
#include <vector>

#include "orgmatch/match.h"
#include "orgmatch/metrics.h"
#include "orgmatch/registry.h"
#include "orgmatch/segment.h"

namespace orgmatch::testing {

// Full scan over every record name: no inverted index, no SIMD.
struct OracleCandidate {
  std::string id;
  std::string matched_name;
  double sim = 0.0;
};
// Normalizes every registry name once, then scans all of them per query.
class BruteForceOracle {
 public:
  explicit BruteForceOracle(const RegistryIndex &index);
  std::vector<OracleCandidate> Candidates(const std::vector<std::string> &tokens, const NormalizedAffiliation &norm,
                                          const PipelineParams &params, const MatchOptions &options = {}) const;

 private:
  const RegistryIndex &index_;
  std::vector<std::vector<std::pair<std::string, std::vector<std::string>>>> names_;  // per record
};

// One-shot form of BruteForceOracle::Candidates.
std::vector<OracleCandidate> BruteForceCandidates(const std::vector<std::string> &tokens,
                                                  const NormalizedAffiliation &norm, const RegistryIndex &index,
                                                  const PipelineParams &params, const MatchOptions &options = {});

// Compares FindCandidates output with the oracle; empty string when equal.
std::string DiffCandidates(const std::vector<Candidate> &got, const std::vector<OracleCandidate> &want);

// Counts recomputed string by string with explicit loops.
struct OracleScore {
  int64_t tp = 0, fp = 0, fn = 0;
  double precision = 0.0, recall = 0.0, f1 = 0.0;
};
OracleScore RecountScore(const std::map<std::string, std::set<std::string>> &predictions,
                         const std::map<std::string, std::set<std::string>> &truth);

}  // namespace orgmatch::testing

#endif  // ORGMATCH_TESTS_SUPPORT_ORACLES_H_
