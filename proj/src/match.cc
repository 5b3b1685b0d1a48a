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

#include "orgmatch/match.h"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "orgmatch/simd/cosine_kernel.h"
#include "orgmatch/text.h"

namespace orgmatch {

namespace {

double SumSquares(const std::map<std::string, uint32_t> &counts) {
  double sq = 0.0;
  for (const auto &[tok, c] : counts) sq += static_cast<double>(c) * c;
  return sq;
}

nlohmann::json OptionalJson(const std::optional<double> &v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

TermVector TermVector::FromTokens(const std::vector<std::string> &tokens) {
  TermVector v;
  for (const auto &t : tokens) ++v.counts[t];
  v.magnitude = std::sqrt(SumSquares(v.counts));
  return v;
}

TermVector TermVector::FromText(std::string_view text) { return FromTokens(SplitWhitespace(text)); }

double CosineSimilarity(const TermVector &a, const TermVector &b) {
  if (a.counts.empty() || b.counts.empty()) return 0.0;
  const auto &small = a.counts.size() <= b.counts.size() ? a.counts : b.counts;
  const auto &large = a.counts.size() <= b.counts.size() ? b.counts : a.counts;
  double dot = 0.0;
  for (const auto &[tok, c] : small) {
    auto it = large.find(tok);
    if (it != large.end()) dot += static_cast<double>(c) * it->second;
  }
  if (dot == 0.0) return 0.0;
  // Same expression as the search kernel; see cosine_kernel.h.
  return dot / std::sqrt(SumSquares(a.counts) * SumSquares(b.counts));
}

nlohmann::json Candidate::ToJson() const {
  return {{"id", record_id},
          {"matched_name", matched_name},
          {"name_similarity", name_similarity},
          {"refine_similarity", OptionalJson(refine_similarity)},
          {"levenshtein_norm", OptionalJson(levenshtein_norm)},
          {"partition_index", partition_index}};
}

std::vector<Candidate> FindCandidates(const Partition &part, const NormalizedAffiliation &norm,
                                      const RegistryIndex &index, const PipelineParams &params,
                                      const MatchOptions &options, bool *searched_all) {
  std::vector<std::string> countries;
  if (norm.countries.empty()) {
    for (const auto &[c, ids] : index.by_country()) countries.push_back(c);
  } else {
    countries = norm.countries;
  }
  if (searched_all != nullptr) *searched_all = norm.countries.empty();

  const auto &tokens = part.MatchTokens();
  SparseTerms query = index.Vectorize(tokens);
  if (query.terms.empty()) return {};

  const bool partition_univ = std::find(tokens.begin(), tokens.end(), "univer") != tokens.end();
  const auto &names = index.names();
  std::vector<double> dots, sims;
  std::vector<uint8_t> pass, flags;

  // Best name per record; the earlier (canonical-first) name wins ties.
  struct Best {
    double sim;
    uint32_t name;
  };
  std::unordered_map<uint32_t, Best> best;
  std::vector<uint32_t> order;

  for (const auto &country : countries) {
    auto range = index.CountryRange(country);
    if (!range) continue;
    const uint32_t begin = range->first;
    const size_t len = range->second - range->first;
    dots.assign(len, 0.0);
    bool touched = false;
    for (const auto &[token, qcount] : query.terms) {
      const auto *postings = index.Postings(country, token);
      if (postings == nullptr) continue;
      touched = true;
      for (const auto &p : *postings) dots[p.name - begin] += static_cast<double>(qcount) * p.count;
    }
    if (!touched) continue;

    std::span<const uint8_t> is_univ;
    if (options.threshold_mode == ThresholdMode::kRecordType) {
      is_univ = std::span<const uint8_t>(index.name_is_university()).subspan(begin, len);
    } else {
      flags.assign(len, partition_univ ? 1 : 0);
      is_univ = flags;
    }
    simd::CosineBlock block;
    block.dots = dots;
    block.norms_sq = std::span<const double>(index.name_norms_sq()).subspan(begin, len);
    block.is_univ = is_univ;
    block.query_sq = query.norm_sq;
    block.sim_u = params.sim_u;
    block.sim_o = params.sim_o;
    sims.resize(len);
    pass.resize(len);
    if (simd::CosineThreshold(block, sims, pass) == 0) continue;

    for (size_t i = 0; i < len; ++i) {
      if (pass[i] == 0) continue;
      const uint32_t n = begin + static_cast<uint32_t>(i);
      auto [it, inserted] = best.try_emplace(names[n].record, Best{sims[i], n});
      if (inserted) {
        order.push_back(names[n].record);
      } else if (sims[i] > it->second.sim) {
        it->second = Best{sims[i], n};
      }
    }
  }

  std::vector<Candidate> out;
  out.reserve(order.size());
  for (uint32_t rec : order) {
    const Best &b = best.at(rec);
    Candidate c;
    c.record_id = index.records()[rec].id;
    c.matched_name = names[b.name].key;
    c.name_similarity = b.sim;
    c.partition_index = part.index;
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), [](const Candidate &a, const Candidate &b) {
    if (a.name_similarity != b.name_similarity) return a.name_similarity > b.name_similarity;
    return a.record_id < b.record_id;
  });
  return out;
}

bool RefineOrder(const Candidate &a, const Candidate &b) {
  double ra = a.refine_similarity.value_or(0.0), rb = b.refine_similarity.value_or(0.0);
  if (ra != rb) return ra > rb;
  double la = a.levenshtein_norm.value_or(0.0), lb = b.levenshtein_norm.value_or(0.0);
  if (la != lb) return la > lb;
  if (a.name_similarity != b.name_similarity) return a.name_similarity > b.name_similarity;
  return a.record_id < b.record_id;
}

std::vector<Candidate> Refine(std::vector<Candidate> cands, const NormalizedAffiliation &norm,
                              const Partition &part) {
  if (cands.size() < 2) return cands;
  const TermVector full = TermVector::FromTokens(WordTokens(norm.tokens));
  const std::string text = part.MatchText();
  for (auto &c : cands) {
    c.refine_similarity = CosineSimilarity(TermVector::FromText(c.matched_name), full);
    c.levenshtein_norm = LevenshteinSimilarity(c.matched_name, text);
  }
  std::sort(cands.begin(), cands.end(), RefineOrder);
  return cands;
}

nlohmann::json MatchResult::ToJson(bool include_trace) const {
  nlohmann::json matches_json = nlohmann::json::array();
  for (const auto &m : matches) {
    matches_json.push_back({{"id", m.id}, {"name", m.name}, {"confidence", m.confidence}});
  }
  nlohmann::json j = {{"input", input.original}, {"matches", std::move(matches_json)}};
  if (!include_trace) return j;

  nlohmann::json labels = nlohmann::json::array();
  for (const auto &[tok, label] : input.token_labels) labels.push_back({tok, TokenLabelName(label)});
  nlohmann::json parts = nlohmann::json::array();
  for (const auto &p : trace.partitions) {
    nlohmann::json pj = p.partition.ToJson();
    pj["searched_all_countries"] = p.searched_all_countries;
    pj["candidates"] = nlohmann::json::array();
    for (const auto &c : p.candidates) pj["candidates"].push_back(c.ToJson());
    parts.push_back(std::move(pj));
  }
  nlohmann::json survivors = nlohmann::json::array();
  for (const auto &c : trace.survivors) survivors.push_back(c.ToJson());
  nlohmann::json disamb = nlohmann::json::array();
  for (const auto &d : trace.disambiguation) disamb.push_back(d.ToJson());
  j["trace"] = {{"cleaned", input.cleaned},
                {"stemmed", input.stemmed},
                {"countries", input.countries},
                {"token_labels", std::move(labels)},
                {"exact_shortcut", trace.exact_shortcut},
                {"partitions", std::move(parts)},
                {"survivor_cap", trace.survivor_cap},
                {"survivors", std::move(survivors)},
                {"disambiguation", std::move(disamb)}};
  return j;
}

std::vector<std::string> MatchResult::Ids() const {
  std::vector<std::string> ids;
  for (const auto &m : matches) ids.push_back(m.id);
  return ids;
}

MatchResult MatchNormalized(const NormalizedAffiliation &norm, const RegistryIndex &index,
                            const PipelineParams &params, const MatchOptions &options) {
  params.Validate();
  MatchResult result;
  result.input = norm;
  if (norm.key.empty()) return result;

  std::map<std::string, double> confidence;  // id -> best confidence
  auto add = [&](const DisambiguationOutcome &outcome, double conf) {
    for (const auto &id : outcome.resolved) {
      auto [it, inserted] = confidence.emplace(id, conf);
      if (!inserted) it->second = std::max(it->second, conf);
    }
    result.trace.disambiguation.push_back(outcome);
  };

  if (auto ids = TryExactShortcut(norm, index)) {
    result.trace.exact_shortcut = true;
    PartitionTrace pt;
    pt.partition.tokens = WordTokens(norm.tokens);
    pt.partition.text = norm.key;
    pt.partition.exact_key = true;
    pt.partition.has_basic_key = norm.BasicKeyCount() > 0;
    pt.partition.disposition = Disposition::kExactShortcut;
    result.trace.partitions.push_back(std::move(pt));
    add(Resolve(*ids, norm, index, norm.key), 1.0);
  } else {
    std::vector<Partition> parts = PartitionAffiliation(norm, index);
    Prune(&parts, params, index.lexicon());
    std::vector<Candidate> tops;
    for (auto &p : parts) {
      PartitionTrace pt;
      if (p.disposition == Disposition::kKept) {
        Shorten(&p, params, index.lexicon());
        auto cands = FindCandidates(p, norm, index, params, options, &pt.searched_all_countries);
        cands = Refine(std::move(cands), norm, p);
        if (!cands.empty()) tops.push_back(cands.front());
        pt.candidates = std::move(cands);
      }
      pt.partition = std::move(p);
      result.trace.partitions.push_back(std::move(pt));
    }

    // One survivor per matched partition, at most as many as there are
    // basic keywords in the string (and at least one).
    std::stable_sort(tops.begin(), tops.end(), [](const Candidate &a, const Candidate &b) {
      if (a.confidence() != b.confidence()) return a.confidence() > b.confidence();
      if (a.name_similarity != b.name_similarity) return a.name_similarity > b.name_similarity;
      return a.partition_index < b.partition_index;
    });
    const size_t cap = std::max<size_t>(1, norm.BasicKeyCount());
    result.trace.survivor_cap = cap;
    std::vector<Candidate> survivors;
    for (const auto &c : tops) {
      if (survivors.size() >= cap) break;
      bool dup = std::any_of(survivors.begin(), survivors.end(),
                             [&](const Candidate &s) { return s.record_id == c.record_id; });
      if (!dup) survivors.push_back(c);
    }
    for (const auto &c : survivors) {
      add(Resolve(index.LookupExact(c.matched_name), norm, index, c.matched_name), c.confidence());
    }
    result.trace.survivors = std::move(survivors);
  }

  for (const auto &[id, conf] : confidence) {
    result.matches.push_back({id, index.Get(id).canonical_name, std::clamp(conf, 0.0, 1.0)});
  }
  std::stable_sort(result.matches.begin(), result.matches.end(),
                   [](const Match &a, const Match &b) { return a.confidence > b.confidence; });
  return result;
}

MatchResult MatchString(std::string_view raw, const RegistryIndex &index, const PipelineParams &params,
                        const MatchOptions &options) {
  params.Validate();
  return MatchNormalized(index.normalizer().CleanAndStem(raw, index.countries()), index, params, options);
}

}  // namespace orgmatch
