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

#ifndef ORGMATCH_DATASET_H_
#define ORGMATCH_DATASET_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "orgmatch/registry.h"

namespace orgmatch {

// ROR identifier syntax, with or without a "https://ror.org/" prefix.
bool IsValidRorId(std::string_view id);

struct AnnotationObject {
  std::vector<std::string> exact;
  std::vector<std::string> ancestor;

  size_t size() const { return exact.size() + ancestor.size(); }
};

struct ExpertJudgement {
  int64_t expert_id = 0;
  AnnotationObject matches;
};

struct AnnotationRecord {
  std::string raw_affiliation_string;
  std::vector<std::string> extracted_dois;
  std::vector<ExpertJudgement> expert_judgements;
  AnnotationObject final_judgement;
  size_t line = 0;  // 1-based source line, 0 when built in memory

  // Canonical ids of the final judgement: exact plus ancestor, or exact
  // only.
  std::set<std::string> Truth(bool exact_only = false) const;
};

struct DatasetIssue {
  size_t line = 0;
  std::string message;
  std::vector<std::string> fields;
};

// Parses and validates one JSON object. Throws ValidationError.
AnnotationRecord ParseAnnotation(const nlohmann::json &j, size_t line = 0);
nlohmann::json AnnotationToJson(const AnnotationRecord &r);

// Every valid record plus one issue per invalid line.
struct DatasetCheck {
  std::vector<AnnotationRecord> records;
  std::vector<DatasetIssue> issues;
};
DatasetCheck CheckDataset(std::string_view content);

// Strict variants: the first invalid line throws ParseError (malformed
// JSON) or ValidationError (schema).
std::vector<AnnotationRecord> ParseDataset(std::string_view content);
std::vector<AnnotationRecord> LoadDataset(const std::filesystem::path &path);

// One compact JSON object per line, keys sorted, LF endings.
std::string SerializeDataset(const std::vector<AnnotationRecord> &records);
void WriteDataset(const std::filesystem::path &path, const std::vector<AnnotationRecord> &records);

struct DatasetStats {
  size_t strings = 0;
  size_t links = 0;
  size_t exact = 0;
  size_t ancestor = 0;
  size_t distinct_dois = 0;

  nlohmann::json ToJson() const;
  bool operator==(const DatasetStats &) const = default;
};

DatasetStats ComputeStats(const std::vector<AnnotationRecord> &records);

struct ChangeLogEntry {
  std::string old_id;
  std::optional<std::string> new_id;
  size_t record_line = 0;
  std::string reason;  // "successor", "no_successor" or "unknown"

  nlohmann::json ToJson() const;
};

struct RefreshResult {
  std::vector<AnnotationRecord> records;
  std::vector<ChangeLogEntry> log;
};

// Replaces ids that are inactive in `index` by their active successors, or
// removes them when there are none. Covers the final and every expert
// judgement. Ids missing from the registry are logged and kept.
RefreshResult RefreshInactive(const std::vector<AnnotationRecord> &records, const RegistryIndex &index);

std::string SerializeChangeLog(const std::vector<ChangeLogEntry> &log);

struct SingleIdRecord {
  std::string raw_affiliation_string;
  std::string ror_id;
};

// Two-column CSV (optional header) or JSONL with raw_affiliation_string
// and ror_id, chosen by file extension.
std::vector<SingleIdRecord> LoadSingleIdCorpus(const std::filesystem::path &path);
std::vector<SingleIdRecord> ParseSingleIdCsv(std::string_view content);
std::vector<SingleIdRecord> ParseSingleIdJsonl(std::string_view content);

// Splits one CSV record (RFC 4180 quoting) starting at `*pos`; advances
// `*pos` past the record terminator.
std::vector<std::string> ReadCsvRecord(std::string_view content, size_t *pos);

}  // namespace orgmatch

#endif  // ORGMATCH_DATASET_H_
