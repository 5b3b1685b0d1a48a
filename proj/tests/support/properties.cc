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

#include "properties.h"

#include <algorithm>
#include <set>

#include "orgmatch/match.h"
#include "orgmatch/normalize.h"
#include "orgmatch/segment.h"

namespace orgmatch::testing {

namespace {

NormalizedAffiliation Normalize(const std::string &raw, const RegistryIndex &index) {
  return index.normalizer().CleanAndStem(raw, index.countries());
}

std::vector<Partition> Segments(const NormalizedAffiliation &norm, const RegistryIndex &index,
                                const PipelineParams &params) {
  auto parts = PartitionAffiliation(norm, index);
  Prune(&parts, params, index.lexicon());
  return parts;
}

bool IsSubsequence(const std::vector<std::string> &small, const std::vector<std::string> &large) {
  size_t j = 0;
  for (const auto &t : large) {
    if (j < small.size() && small[j] == t) ++j;
  }
  return j == small.size();
}

std::set<std::string> CandidateIds(const std::vector<Candidate> &cands) {
  std::set<std::string> out;
  for (const auto &c : cands) out.insert(c.record_id);
  return out;
}

std::string Quote(const std::string &s) { return "\"" + s + "\""; }

}  // namespace

std::string CheckNormalizationIdempotence(Gen &g, const RegistryIndex &index) {
  const std::string raw = g.Chance(0.5) ? RandomAffiliation(g, index) : RandomText(g);
  const Normalizer &n = index.normalizer();
  const std::string once = n.Clean(raw);
  if (n.Clean(once) != once) return "clean not idempotent for " + Quote(raw) + ": " + Quote(once);
  const std::string stemmed = n.Stem(once);
  if (n.Stem(stemmed) != stemmed) return "stem not idempotent for " + Quote(raw) + ": " + Quote(stemmed);
  return "";
}

std::string CheckWindowMonotonicity(Gen &g, const RegistryIndex &index) {
  const std::string raw = RandomAffiliation(g, index);
  PipelineParams p;
  p.specific = false;
  const int w1 = g.Int(1, 10);
  const int w2 = g.Int(w1, 10);
  auto norm = Normalize(raw, index);
  for (auto part : Segments(norm, index, p)) {
    if (part.disposition != Disposition::kKept) continue;
    Partition a = part, b = part;
    p.window = w1;
    Shorten(&a, p, index.lexicon());
    p.window = w2;
    Shorten(&b, p, index.lexicon());
    if (!IsSubsequence(a.MatchTokens(), b.MatchTokens()) || !IsSubsequence(b.MatchTokens(), part.tokens)) {
      return "window " + std::to_string(w1) + " vs " + std::to_string(w2) + " on " + Quote(part.text) + ": " +
             Quote(a.MatchText()) + " / " + Quote(b.MatchText());
    }
  }
  return "";
}

std::string CheckSpecificMonotonicity(Gen &g, const RegistryIndex &index) {
  const std::string raw = RandomAffiliation(g, index);
  auto norm = Normalize(raw, index);
  PipelineParams off, on;
  off.specific = false;
  on.specific = true;
  auto a = Segments(norm, index, off);
  auto b = Segments(norm, index, on);
  if (a.size() != b.size()) return "partition count differs for " + Quote(raw);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].disposition == Disposition::kKept && b[i].disposition != Disposition::kKept) {
      return "partition " + Quote(a[i].text) + " kept only without specific in " + Quote(raw);
    }
  }
  return "";
}

std::string CheckThresholdMonotonicity(Gen &g, const RegistryIndex &index) {
  const std::string raw = RandomAffiliation(g, index);
  auto norm = Normalize(raw, index);
  PipelineParams lo = RandomParams(g);
  PipelineParams hi = lo;
  hi.sim_u = std::min(1.0, lo.sim_u + g.Real(0.0, 0.5));
  hi.sim_o = std::min(1.0, lo.sim_o + g.Real(0.0, 0.5));
  MatchOptions options;
  if (g.Chance(0.3)) options.threshold_mode = ThresholdMode::kPartitionContent;
  for (auto part : Segments(norm, index, lo)) {
    if (part.disposition != Disposition::kKept) continue;
    Shorten(&part, lo, index.lexicon());
    auto loose = CandidateIds(FindCandidates(part, norm, index, lo, options));
    auto strict = CandidateIds(FindCandidates(part, norm, index, hi, options));
    if (!std::includes(loose.begin(), loose.end(), strict.begin(), strict.end())) {
      return "raising thresholds added candidates on " + Quote(part.MatchText());
    }
  }
  return "";
}

std::string CheckCountryRestriction(Gen &g, const RegistryIndex &index) {
  const std::string raw = RandomAffiliation(g, index);
  auto norm = Normalize(raw, index);
  if (norm.countries.empty()) return "";
  std::set<std::string> allowed(norm.countries.begin(), norm.countries.end());
  PipelineParams p = RandomParams(g);
  for (auto part : Segments(norm, index, p)) {
    if (part.disposition != Disposition::kKept) continue;
    Shorten(&part, p, index.lexicon());
    for (const auto &c : FindCandidates(part, norm, index, p)) {
      auto pos = index.Position(c.record_id);
      if (!pos || allowed.count(index.RecordCountry(*pos)) == 0) {
        return "candidate " + c.record_id + " outside detected countries for " + Quote(raw);
      }
    }
  }
  return "";
}

std::string CheckNoInactiveOutput(Gen &g, const RegistryIndex &index) {
  const std::string raw = RandomAffiliation(g, index);
  PipelineParams p = RandomParams(g);
  auto result = MatchString(raw, index, p);
  double prev = 2.0;
  std::set<std::string> seen;
  for (const auto &m : result.matches) {
    const auto *rec = index.Find(m.id);
    if (rec == nullptr || !rec->active()) return "inactive or unknown id " + m.id + " for " + Quote(raw);
    if (!(m.confidence >= 0.0 && m.confidence <= 1.0) || m.confidence > prev) {
      return "confidence order/bounds broken for " + Quote(raw);
    }
    if (!seen.insert(m.id).second) return "duplicate id " + m.id + " for " + Quote(raw);
    prev = m.confidence;
  }
  return "";
}

PropertyRun RunProperty(const PropertyCheck &check, const RegistryIndex &index, size_t cases, uint64_t seed) {
  Gen g(seed);
  PropertyRun run;
  for (; run.cases < cases; ++run.cases) {
    run.failure = check(g, index);
    if (!run.failure.empty()) {
      ++run.cases;
      break;
    }
  }
  return run;
}

}  // namespace orgmatch::testing
