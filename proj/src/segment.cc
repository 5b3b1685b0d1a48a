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

#include "orgmatch/segment.h"

#include <algorithm>

#include "orgmatch/error.h"
#include "orgmatch/text.h"

namespace orgmatch {

namespace {

bool AnyBasicKey(const std::vector<std::string> &tokens, size_t begin, size_t end) {
  for (size_t i = begin; i < end; ++i) {
    if (IsBasicKey(tokens[i])) return true;
  }
  return false;
}

// Splits `tokens` at every "and" that has a basic keyword on both sides.
// The left side is checked from the previous split point on.
std::vector<std::vector<std::string>> SplitAnd(const std::vector<std::string> &tokens) {
  std::vector<std::vector<std::string>> out;
  size_t start = 0;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i] != "and") continue;
    if (AnyBasicKey(tokens, start, i) && AnyBasicKey(tokens, i + 1, tokens.size())) {
      out.emplace_back(tokens.begin() + start, tokens.begin() + i);
      start = i + 1;
    }
  }
  out.emplace_back(tokens.begin() + start, tokens.end());
  return out;
}

void SplitAt(const std::vector<std::string> &tokens, const RegistryIndex &index,
             std::vector<std::vector<std::string>> *out) {
  if (tokens.empty()) return;
  auto at = std::find(tokens.begin(), tokens.end(), "at");
  if (at == tokens.end() || !index.LookupExact(Join(tokens, " ")).empty()) {
    out->push_back(tokens);
    return;
  }
  SplitAt(std::vector<std::string>(tokens.begin(), at), index, out);
  SplitAt(std::vector<std::string>(at + 1, tokens.end()), index, out);
}

}  // namespace

void PipelineParams::Validate() const {
  if (window < 1 || window > 10) throw UsageError("window must be in [1, 10], got " + std::to_string(window));
  if (!(sim_u > 0.0 && sim_u <= 1.0)) throw UsageError("sim_u must be in (0, 1], got " + std::to_string(sim_u));
  if (!(sim_o > 0.0 && sim_o <= 1.0)) throw UsageError("sim_o must be in (0, 1], got " + std::to_string(sim_o));
}

nlohmann::json PipelineParams::ToJson() const {
  return {{"window", window}, {"sim_u", sim_u}, {"sim_o", sim_o}, {"specific", specific}};
}

const char *DispositionName(Disposition d) {
  switch (d) {
    case Disposition::kKept: return "kept";
    case Disposition::kPrunedKeywordFilter: return "pruned_keyword_filter";
    case Disposition::kPrunedBanned: return "pruned_banned";
    case Disposition::kExactShortcut: return "exact_shortcut";
  }
  return "kept";
}

nlohmann::json Partition::ToJson() const {
  nlohmann::json j = {{"index", index},
                      {"text", text},
                      {"disposition", DispositionName(disposition)},
                      {"has_basic_key", has_basic_key},
                      {"contains_keyword", contains_keyword}};
  j["shortened"] = shortened ? nlohmann::json(*shortened) : nlohmann::json(nullptr);
  if (!reason.empty()) j["reason"] = reason;
  return j;
}

std::optional<std::vector<std::string>> TryExactShortcut(const NormalizedAffiliation &norm,
                                                         const RegistryIndex &index) {
  if (norm.key.empty()) return std::nullopt;
  auto ids = index.LookupExact(norm.key);
  if (ids.empty()) return std::nullopt;
  return ids;
}

std::vector<Partition> PartitionAffiliation(const NormalizedAffiliation &norm, const RegistryIndex &index) {
  std::vector<std::vector<std::string>> segments(1);
  for (const auto &t : norm.tokens) {
    if (IsDelimiterToken(t)) {
      segments.emplace_back();
    } else {
      segments.back().push_back(t);
    }
  }

  std::vector<Partition> out;
  for (const auto &seg : segments) {
    for (const auto &piece : SplitAnd(seg)) {
      std::vector<std::vector<std::string>> pieces;
      SplitAt(piece, index, &pieces);
      for (auto &tokens : pieces) {
        if (tokens.empty()) continue;
        Partition p;
        p.index = out.size();
        p.text = Join(tokens, " ");
        p.has_basic_key = AnyBasicKey(tokens, 0, tokens.size());
        p.exact_key = !index.LookupExact(p.text).empty();
        p.tokens = std::move(tokens);
        out.push_back(std::move(p));
      }
    }
  }
  return out;
}

void Prune(std::vector<Partition> *parts, const PipelineParams &params, const Lexicon &lexicon) {
  // city_after[i]: some partition after i mentions a city.
  std::vector<bool> city_after(parts->size() + 1, false);
  for (size_t i = parts->size(); i-- > 0;) {
    city_after[i] = city_after[i + 1] || lexicon.cities.ContainsAny((*parts)[i].tokens);
  }

  for (size_t i = 0; i < parts->size(); ++i) {
    Partition &p = (*parts)[i];
    if (p.disposition != Disposition::kKept) continue;
    p.contains_keyword = lexicon.HasKeyword(p.tokens) ||
                         (params.specific && (lexicon.acronyms.ContainsAny(p.tokens) ||
                                              lexicon.entities.ContainsAny(p.tokens)));
    if (!p.contains_keyword) {
      p.disposition = Disposition::kPrunedKeywordFilter;
      p.reason = "no keyword";
      continue;
    }
    if (lexicon.generic.Contains(p.text) && !city_after[i + 1]) {
      p.disposition = Disposition::kPrunedBanned;
      p.reason = "generic";
      continue;
    }
    if (lexicon.address.ContainsAny(p.tokens)) {
      p.disposition = Disposition::kPrunedBanned;
      p.reason = "address";
      continue;
    }
    if (!p.has_basic_key) {
      if (lexicon.placement.ContainsAny(p.tokens)) {
        p.disposition = Disposition::kPrunedBanned;
        p.reason = "placement";
      } else if (lexicon.child.ContainsAny(p.tokens)) {
        p.disposition = Disposition::kPrunedBanned;
        p.reason = "child";
      }
    }
  }
}

void Shorten(Partition *part, const PipelineParams &params, const Lexicon &lexicon) {
  if (part->disposition != Disposition::kKept || part->exact_key) return;
  const auto &tokens = part->tokens;

  if (params.specific) {
    auto hits = lexicon.entities.FindAll(tokens);
    if (!hits.empty()) {
      part->shortened_tokens.assign(tokens.begin() + hits[0].begin, tokens.begin() + hits[0].end);
      part->shortened = Join(part->shortened_tokens, " ");
      part->reason = "entity";
      return;
    }
  }

  const int64_t n = static_cast<int64_t>(tokens.size());
  const int64_t left = kWindowPerSide ? params.window : params.window / 2;
  const int64_t right = kWindowPerSide ? params.window : (params.window - 1) / 2;
  std::vector<bool> keep(tokens.size(), false);
  bool any = false;
  for (int64_t i = 0; i < n; ++i) {
    if (tokens[i] != "univer") continue;
    any = true;
    for (int64_t k = std::max<int64_t>(0, i - left); k <= std::min(n - 1, i + right); ++k) keep[k] = true;
  }
  if (!any) return;
  part->shortened_tokens.clear();
  for (int64_t i = 0; i < n; ++i) {
    if (keep[i]) part->shortened_tokens.push_back(tokens[i]);
  }
  part->shortened = Join(part->shortened_tokens, " ");
  part->reason = "window";
}

}  // namespace orgmatch
