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

#include "orgmatch/dataset.h"

#include <algorithm>
#include <fstream>
#include <regex>

#include "orgmatch/disambiguate.h"
#include "orgmatch/error.h"
#include "orgmatch/text.h"

namespace orgmatch {

using nlohmann::json;

namespace {

const std::regex &RorIdPattern() {
  // Crockford base32 without i, l, o, u; a leading 0; two check digits.
  static const std::regex re("^(https?://ror\\.org/)?0[a-hj-km-np-tv-z0-9]{6}[0-9]{2}$");
  return re;
}

AnnotationObject ParseObject(const json &j, const std::string &where, std::vector<std::string> *bad_fields) {
  AnnotationObject obj;
  if (!j.is_object()) {
    bad_fields->push_back(where);
    return obj;
  }
  for (const char *field : {"exact", "ancestor"}) {
    auto it = j.find(field);
    std::string name = where + "." + field;
    if (it == j.end() || !it->is_array()) {
      bad_fields->push_back(name);
      continue;
    }
    auto &dst = std::string_view(field) == "exact" ? obj.exact : obj.ancestor;
    for (const auto &id : *it) {
      if (!id.is_string() || !IsValidRorId(id.get<std::string>())) {
        bad_fields->push_back(name);
        break;
      }
      dst.push_back(id.get<std::string>());
    }
  }
  std::set<std::string> exact;
  for (const auto &id : obj.exact) exact.insert(CanonicalRorId(id));
  for (const auto &id : obj.ancestor) {
    if (exact.count(CanonicalRorId(id)) > 0) {
      bad_fields->push_back(where + ".exact/ancestor overlap");
      break;
    }
  }
  return obj;
}

json ObjectToJson(const AnnotationObject &o) { return {{"exact", o.exact}, {"ancestor", o.ancestor}}; }

std::string WithPrefixOf(const std::string &like, const std::string &canonical) {
  std::string_view v(like);
  size_t slash = v.rfind('/');
  if (slash == std::string_view::npos) return canonical;
  return std::string(v.substr(0, slash + 1)) + canonical;
}

}  // namespace

bool IsValidRorId(std::string_view id) { return std::regex_match(id.begin(), id.end(), RorIdPattern()); }

std::set<std::string> AnnotationRecord::Truth(bool exact_only) const {
  std::set<std::string> out;
  for (const auto &id : final_judgement.exact) out.insert(CanonicalRorId(id));
  if (!exact_only) {
    for (const auto &id : final_judgement.ancestor) out.insert(CanonicalRorId(id));
  }
  return out;
}

AnnotationRecord ParseAnnotation(const json &j, size_t line) {
  if (!j.is_object()) throw ValidationError("record is not a JSON object", {"<record>"}, line);
  AnnotationRecord r;
  r.line = line;
  std::vector<std::string> bad;

  auto raw = j.find("raw_affiliation_string");
  if (raw == j.end() || !raw->is_string() || Trim(raw->get<std::string>()).empty()) {
    bad.push_back("raw_affiliation_string");
  } else {
    r.raw_affiliation_string = raw->get<std::string>();
  }

  auto dois = j.find("extracted_dois");
  if (dois != j.end() && dois->is_string()) {
    r.extracted_dois.push_back(dois->get<std::string>());  // single DOI written as a bare string
  } else if (dois == j.end() || !dois->is_array()) {
    bad.push_back("extracted_dois");
  } else {
    for (const auto &d : *dois) {
      if (!d.is_string()) {
        bad.push_back("extracted_dois");
        break;
      }
      r.extracted_dois.push_back(d.get<std::string>());
    }
  }

  auto experts = j.find("expert_judgements");
  if (experts == j.end() || !experts->is_array() || experts->size() < 2) {
    bad.push_back("expert_judgements");
  } else {
    for (size_t i = 0; i < experts->size(); ++i) {
      const json &e = (*experts)[i];
      std::string where = "expert_judgements[" + std::to_string(i) + "]";
      ExpertJudgement ej;
      auto id = e.is_object() ? e.find("expert_id") : e.end();
      if (!e.is_object() || id == e.end() || !id->is_number_integer() || id->get<int64_t>() < 1) {
        bad.push_back(where + ".expert_id");
      } else {
        ej.expert_id = id->get<int64_t>();
      }
      auto m = e.is_object() ? e.find("matches") : e.end();
      if (m == e.end()) {
        bad.push_back(where + ".matches");
      } else {
        ej.matches = ParseObject(*m, where + ".matches", &bad);
      }
      r.expert_judgements.push_back(std::move(ej));
    }
  }

  auto fin = j.find("final_judgement");
  if (fin == j.end()) {
    bad.push_back("final_judgement");
  } else {
    r.final_judgement = ParseObject(*fin, "final_judgement", &bad);
  }

  for (const auto &[key, value] : j.items()) {
    if (key != "raw_affiliation_string" && key != "extracted_dois" && key != "expert_judgements" &&
        key != "final_judgement") {
      bad.push_back(key + " (unknown field)");
    }
  }

  if (!bad.empty()) throw ValidationError("invalid annotation record: " + Join(bad, ", "), bad, line);
  return r;
}

json AnnotationToJson(const AnnotationRecord &r) {
  json experts = json::array();
  for (const auto &e : r.expert_judgements) {
    experts.push_back({{"expert_id", e.expert_id}, {"matches", ObjectToJson(e.matches)}});
  }
  return {{"raw_affiliation_string", r.raw_affiliation_string},
          {"extracted_dois", r.extracted_dois},
          {"expert_judgements", std::move(experts)},
          {"final_judgement", ObjectToJson(r.final_judgement)}};
}

DatasetCheck CheckDataset(std::string_view content) {
  DatasetCheck check;
  size_t line_no = 0, pos = 0;
  while (pos < content.size()) {
    size_t end = content.find('\n', pos);
    if (end == std::string_view::npos) end = content.size();
    ++line_no;
    std::string_view line = Trim(content.substr(pos, end - pos));
    pos = end + 1;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error &e) {
      check.issues.push_back({line_no, std::string("malformed JSON: ") + e.what(), {}});
      continue;
    }
    try {
      check.records.push_back(ParseAnnotation(j));
      check.records.back().line = line_no;
    } catch (const ValidationError &e) {
      check.issues.push_back({line_no, e.what(), e.fields()});
    }
  }
  return check;
}

std::vector<AnnotationRecord> ParseDataset(std::string_view content) {
  DatasetCheck check = CheckDataset(content);
  if (!check.issues.empty()) {
    const DatasetIssue &first = check.issues.front();
    if (first.fields.empty()) throw ParseError(first.message, first.line);
    throw ValidationError(first.message, first.fields, first.line);
  }
  return std::move(check.records);
}

std::vector<AnnotationRecord> LoadDataset(const std::filesystem::path &path) {
  return ParseDataset(ReadFile(path));
}

std::string SerializeDataset(const std::vector<AnnotationRecord> &records) {
  std::string out;
  for (const auto &r : records) {
    out += AnnotationToJson(r).dump();
    out.push_back('\n');
  }
  return out;
}

void WriteDataset(const std::filesystem::path &path, const std::vector<AnnotationRecord> &records) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << SerializeDataset(records);
}

json DatasetStats::ToJson() const {
  return {{"strings", strings},
          {"links", links},
          {"exact", exact},
          {"ancestor", ancestor},
          {"distinct_dois", distinct_dois}};
}

DatasetStats ComputeStats(const std::vector<AnnotationRecord> &records) {
  DatasetStats s;
  std::set<std::string> dois;
  for (const auto &r : records) {
    ++s.strings;
    s.exact += r.final_judgement.exact.size();
    s.ancestor += r.final_judgement.ancestor.size();
    for (const auto &d : r.extracted_dois) dois.insert(AsciiLower(Trim(d)));
  }
  s.links = s.exact + s.ancestor;
  s.distinct_dois = dois.size();
  return s;
}

json ChangeLogEntry::ToJson() const {
  return {{"old_id", old_id},
          {"new_id", new_id ? json(*new_id) : json(nullptr)},
          {"record_line", record_line},
          {"reason", reason}};
}

RefreshResult RefreshInactive(const std::vector<AnnotationRecord> &records, const RegistryIndex &index) {
  RefreshResult result;
  result.records = records;
  for (size_t r = 0; r < result.records.size(); ++r) {
    AnnotationRecord &rec = result.records[r];
    const size_t line = rec.line > 0 ? rec.line : r + 1;
    // The same id usually repeats across expert and final judgements; log
    // each replacement once per record.
    std::set<std::pair<std::string, std::string>> logged;
    auto log = [&](const std::string &old_id, const std::optional<std::string> &new_id, const char *reason) {
      if (logged.emplace(old_id, new_id.value_or("")).second) result.log.push_back({old_id, new_id, line, reason});
    };

    auto refresh_list = [&](std::vector<std::string> *ids) {
      std::vector<std::string> out;
      for (const auto &id : *ids) {
        std::string canonical = CanonicalRorId(id);
        const OrganizationRecord *org = index.Find(canonical);
        if (org == nullptr) {
          log(id, std::nullopt, "unknown");
          out.push_back(id);
          continue;
        }
        if (org->active()) {
          out.push_back(id);
          continue;
        }
        std::vector<std::string> succ = ActiveSuccessors(canonical, index);
        if (succ.empty()) {
          log(id, std::nullopt, "no_successor");
          continue;
        }
        for (const auto &s : succ) {
          std::string written = WithPrefixOf(id, s);
          log(id, written, "successor");
          out.push_back(written);
        }
      }
      // Drop duplicates introduced by substitution, keeping first position.
      std::vector<std::string> unique;
      std::set<std::string> seen;
      for (auto &id : out) {
        if (seen.insert(CanonicalRorId(id)).second) unique.push_back(std::move(id));
      }
      *ids = std::move(unique);
    };
    auto refresh_object = [&](AnnotationObject *obj) {
      refresh_list(&obj->exact);
      refresh_list(&obj->ancestor);
      // A successor may already be listed as exact; exact wins.
      std::set<std::string> exact;
      for (const auto &id : obj->exact) exact.insert(CanonicalRorId(id));
      std::erase_if(obj->ancestor, [&](const std::string &id) { return exact.count(CanonicalRorId(id)) > 0; });
    };

    refresh_object(&rec.final_judgement);
    for (auto &e : rec.expert_judgements) refresh_object(&e.matches);
  }
  return result;
}

std::string SerializeChangeLog(const std::vector<ChangeLogEntry> &log) {
  std::string out;
  for (const auto &e : log) {
    out += e.ToJson().dump();
    out.push_back('\n');
  }
  return out;
}

std::vector<std::string> ReadCsvRecord(std::string_view content, size_t *pos) {
  std::vector<std::string> fields(1);
  size_t i = *pos;
  bool quoted = false;
  while (i < content.size()) {
    char c = content[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < content.size() && content[i + 1] == '"') {
          fields.back().push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        fields.back().push_back(c);
      }
      ++i;
      continue;
    }
    if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else if (c == '\n') {
      ++i;
      break;
    } else if (c != '\r') {
      fields.back().push_back(c);
    }
    ++i;
  }
  *pos = i;
  return fields;
}

std::vector<SingleIdRecord> ParseSingleIdCsv(std::string_view content) {
  std::vector<SingleIdRecord> out;
  size_t pos = 0, record = 0;
  while (pos < content.size()) {
    auto fields = ReadCsvRecord(content, &pos);
    ++record;
    if (fields.size() == 1 && Trim(fields[0]).empty()) continue;
    if (fields.size() < 2) throw ParseError("expected two CSV columns", record);
    std::string id(Trim(fields[1]));
    if (!IsValidRorId(id)) {
      if (record == 1) continue;  // header
      throw ValidationError("invalid ROR id '" + id + "'", {"ror_id"}, record);
    }
    out.push_back({fields[0], CanonicalRorId(id)});
  }
  return out;
}

std::vector<SingleIdRecord> ParseSingleIdJsonl(std::string_view content) {
  std::vector<SingleIdRecord> out;
  size_t line_no = 0, pos = 0;
  while (pos < content.size()) {
    size_t end = content.find('\n', pos);
    if (end == std::string_view::npos) end = content.size();
    ++line_no;
    std::string_view line = Trim(content.substr(pos, end - pos));
    pos = end + 1;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error &e) {
      throw ParseError(std::string("malformed JSON: ") + e.what(), line_no);
    }
    std::vector<std::string> bad;
    if (!j.is_object() || !j.contains("raw_affiliation_string") || !j["raw_affiliation_string"].is_string()) {
      bad.push_back("raw_affiliation_string");
    }
    if (!j.is_object() || !j.contains("ror_id") || !j["ror_id"].is_string() ||
        !IsValidRorId(j["ror_id"].get<std::string>())) {
      bad.push_back("ror_id");
    }
    if (!bad.empty()) throw ValidationError("invalid single-id record: " + Join(bad, ", "), bad, line_no);
    out.push_back({j["raw_affiliation_string"].get<std::string>(), CanonicalRorId(j["ror_id"].get<std::string>())});
  }
  return out;
}

std::vector<SingleIdRecord> LoadSingleIdCorpus(const std::filesystem::path &path) {
  std::string ext = AsciiLower(path.extension().string());
  std::string content = ReadFile(path);
  if (ext == ".csv") return ParseSingleIdCsv(content);
  return ParseSingleIdJsonl(content);
}

}  // namespace orgmatch
