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

#include "generators.h"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace orgmatch::testing {

namespace {

const std::vector<std::string> kDepartments = {
    "Department of Physics", "Dept. of Chemistry", "School of Medicine", "Faculty of Law",
    "Laboratory of Genetics", "Institute of Cell Biology", "Division of Cardiology", "Center for Data Science",
    "Graduate School of Engineering", "Unit of Epidemiology", "Research Program in Oncology", "Clinic of Neurology"};
const std::vector<std::string> kNoise = {"Professor", "PhD student", "123 University Road", "P.O. Box 2200",
                                         "Campus II", "Building (B)", "Room 101", "e-mail: a@b.org",
                                         "and", "at", "The", "Visiting Scholar"};
const std::vector<std::string> kCities = {"Berlin", "Paris", "Tokyo", "Boston", "Beijing", "Munich", "Turin",
                                          "Shenzhen", "Cambridge", "Athens", "New York", "Zurich"};
const std::vector<std::string> kCountries = {"Germany", "France", "Japan", "USA", "China", "Italy",
                                             "United Kingdom", "Greece", "Switzerland", "Hong Kong", "Georgia"};
const std::vector<std::string> kDelims = {", ", ", ", "; ", " - ", " – ", " / ", ": ", " "};

std::string Recase(Gen &g, std::string s) {
  switch (g.Int(0, 3)) {
    case 0:
      for (char &c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
      break;
    case 1:
      for (char &c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      break;
    default:
      break;
  }
  return s;
}

std::string Perturb(Gen &g, std::string s) {
  auto replace = [&](const std::string &from, const std::string &to) {
    if (auto pos = s.find(from); pos != std::string::npos) s.replace(pos, from.size(), to);
  };
  if (g.Chance(0.2)) replace("University", "Univ.");
  if (g.Chance(0.1)) replace("University", "Universty");
  if (g.Chance(0.1)) replace("Institute", "Inst.");
  if (g.Chance(0.1)) replace("University", "Universität");
  if (g.Chance(0.15)) s = "The " + s;
  return Recase(g, s);
}

}  // namespace

std::string RandomAffiliation(Gen &g, const RegistryIndex &index) {
  const auto &records = index.records();
  std::vector<std::string> parts;
  if (g.Chance(0.5)) parts.push_back(g.Pick(kDepartments));
  const int orgs = g.Int(0, 3) == 0 ? 2 : 1;
  for (int k = 0; k < orgs; ++k) {
    const auto &rec = records[static_cast<size_t>(g.Int(0, static_cast<int>(records.size()) - 1))];
    std::string name = rec.canonical_name;
    if (!rec.aliases.empty() && g.Chance(0.3)) name = g.Pick(rec.aliases).value;
    parts.push_back(Perturb(g, name));
    if (rec.city && g.Chance(0.4)) parts.push_back(*rec.city);
  }
  if (g.Chance(0.3)) parts.insert(parts.begin() + g.Int(0, static_cast<int>(parts.size())), g.Pick(kNoise));
  if (g.Chance(0.3)) parts.push_back(g.Pick(kCities));
  if (g.Chance(0.1)) parts.push_back(std::to_string(g.Int(1000, 99999)));
  if (g.Chance(0.6)) parts.push_back(g.Chance(0.8) ? records[g.Int(0, static_cast<int>(records.size()) - 1)].country
                                                   : g.Pick(kCountries));
  if (g.Chance(0.05)) return RandomText(g);
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += g.Pick(kDelims);
    out += parts[i];
  }
  return out;
}

std::string RandomText(Gen &g, size_t max_len) {
  static const std::vector<std::string> kAtoms = {
      "a", "b", "e", "i", "o", "u", "n", "s", "t", "ll", "ss", "univ", "inst", " ", " ", " ", ",", ";", "-", "–",
      "/", ":", "(", ")", ".", "'", "&", "é", "ü", "ø", "ñ", "ß", "İ", "中", "1", "42", "II", "iv", "x"};
  std::string out;
  const size_t n = static_cast<size_t>(g.Int(0, static_cast<int>(max_len)));
  while (out.size() < n) out += g.Pick(kAtoms);
  return out;
}

PipelineParams RandomParams(Gen &g) {
  PipelineParams p;
  p.window = g.Int(1, 10);
  p.sim_u = std::max(0.01, std::round(g.Real(0.0, 1.0) * 1000.0) / 1000.0);
  p.sim_o = std::max(0.01, std::round(g.Real(0.0, 1.0) * 1000.0) / 1000.0);
  p.specific = g.Chance(0.5);
  return p;
}

std::string RandomRorId(Gen &g) {
  static const std::string kAlphabet = "0123456789abcdefghjkmnpqrstvwxyz";
  std::string id = "0";
  for (int i = 0; i < 6; ++i) id += kAlphabet[static_cast<size_t>(g.Int(0, static_cast<int>(kAlphabet.size()) - 1))];
  id += std::to_string(g.Int(10, 99));
  return id;
}

std::vector<OrganizationRecord> SyntheticRegistry(Gen &g, size_t n) {
  static const std::vector<std::string> kPlaces = {"Avalon", "Brigham", "Corvin", "Dunmore", "Elstow", "Farrow",
                                                   "Glenby", "Halden", "Iverton", "Jarrow", "Kelso", "Lindqvist"};
  static const std::vector<std::string> kFields = {"Technology", "Medicine", "Science", "Arts", "Physics",
                                                   "Chemistry", "Agriculture", "Economics"};
  static const std::vector<std::string> kCountryNames = {"Germany", "France", "Japan", "China", "United States"};
  std::vector<OrganizationRecord> out;
  std::set<std::string> ids;
  while (out.size() < n) {
    std::string id = RandomRorId(g);
    if (!ids.insert(id).second) continue;
    const std::string &place = g.Pick(kPlaces);
    const std::string &field = g.Pick(kFields);
    OrganizationRecord r;
    r.id = id;
    r.country = g.Pick(kCountryNames);
    r.city = place;
    switch (g.Int(0, 4)) {
      case 0:
        r.canonical_name = "University of " + place;
        r.org_type = OrgType::kUniversity;
        break;
      case 1:
        r.canonical_name = place + " University of " + field;
        r.org_type = OrgType::kUniversity;
        break;
      case 2:
        r.canonical_name = place + " Institute of " + field;
        r.org_type = OrgType::kInstitute;
        break;
      case 3:
        r.canonical_name = place + " General Hospital";
        r.org_type = OrgType::kHospital;
        break;
      default:
        r.canonical_name = place + " " + field + " Laboratory";
        r.org_type = OrgType::kLaboratory;
        break;
    }
    if (g.Chance(0.4)) r.aliases.push_back({place + " " + field + " " + (g.Chance(0.5) ? "Institute" : "University"),
                                            NameSource::kAlias});
    if (g.Chance(0.2)) r.aliases.push_back({place.substr(0, 1) + field.substr(0, 1) + "U", NameSource::kAcronym});
    if (g.Chance(0.1)) r.status = OrgStatus::kInactive;
    out.push_back(std::move(r));
  }
  return out;
}

ScoreFixture RandomScoreFixture(Gen &g, size_t max_strings, size_t max_ids) {
  std::vector<std::string> pool;
  for (size_t i = 0; i < max_ids + 2; ++i) pool.push_back("id" + std::to_string(i));
  ScoreFixture f;
  const int strings = g.Int(1, static_cast<int>(max_strings));
  for (int s = 0; s < strings; ++s) {
    std::string key = "s" + std::to_string(s);
    auto draw = [&] {
      std::set<std::string> ids;
      const int k = g.Int(0, static_cast<int>(max_ids));
      for (int i = 0; i < k; ++i) ids.insert(g.Pick(pool));
      return ids;
    };
    f.predictions[key] = draw();
    f.truth[key] = draw();
  }
  return f;
}

}  // namespace orgmatch::testing
