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

#include "orgmatch/metrics.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <iomanip>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "orgmatch/error.h"
#include "orgmatch/text.h"

namespace orgmatch {

namespace {

double RoundTo(double v, double quantum) { return std::round(v / quantum) * quantum; }

std::vector<double> ParseRealAxis(const std::string &name, const std::string &text) {
  std::vector<double> out;
  try {
    if (text.find(':') != std::string::npos) {
      std::vector<std::string> parts;
      std::stringstream ss(text);
      for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
      if (parts.size() < 2 || parts.size() > 3) throw UsageError("bad range for " + name + ": " + text);
      double lo = std::stod(parts[0]), hi = std::stod(parts[1]);
      double step = parts.size() == 3 ? std::stod(parts[2]) : 1.0;
      if (step <= 0.0 || hi < lo) throw UsageError("bad range for " + name + ": " + text);
      for (int64_t k = 0;; ++k) {
        double v = RoundTo(lo + static_cast<double>(k) * step, 1e-9);
        if (v > hi + 1e-9) break;
        out.push_back(v);
      }
    } else {
      std::stringstream ss(text);
      for (std::string p; std::getline(ss, p, ',');) out.push_back(std::stod(p));
    }
  } catch (const std::logic_error &) {
    throw UsageError("bad value for " + name + ": " + text);
  }
  if (out.empty()) throw UsageError("empty axis " + name);
  return out;
}

}  // namespace

ConfusionCounts CountSets(const std::set<std::string> &pred, const std::set<std::string> &truth) {
  ConfusionCounts c;
  for (const auto &id : pred) {
    if (truth.count(id) > 0) {
      ++c.tp;
    } else {
      ++c.fp;
    }
  }
  for (const auto &id : truth) {
    if (pred.count(id) == 0) ++c.fn_;
  }
  return c;
}

void ComputeRates(MetricsReport *r) {
  r->warnings.clear();
  const double tp = static_cast<double>(r->total.tp);
  const int64_t pred = r->total.tp + r->total.fp;
  const int64_t truth = r->total.tp + r->total.fn_;
  if (pred == 0) {
    r->precision = 0.0;
    r->warnings.push_back("no predictions: precision reported as 0");
  } else {
    r->precision = tp / static_cast<double>(pred);
  }
  if (truth == 0) {
    r->recall = 0.0;
    r->warnings.push_back("no ground truth: recall reported as 0");
  } else {
    r->recall = tp / static_cast<double>(truth);
  }
  const double sum = r->precision + r->recall;
  r->f1 = sum > 0.0 ? 2.0 * r->precision * r->recall / sum : 0.0;
}

nlohmann::json MetricsReport::ToJson(bool include_per_string) const {
  nlohmann::json j = {{"precision", precision},
                      {"recall", recall},
                      {"f1", f1},
                      {"tp", total.tp},
                      {"fp", total.fp},
                      {"fn", total.fn_},
                      {"params", params.ToJson()},
                      {"warnings", warnings}};
  j["accuracy"] = accuracy ? nlohmann::json(*accuracy) : nlohmann::json(nullptr);
  if (include_per_string) {
    nlohmann::json ps = nlohmann::json::array();
    for (const auto &[key, c] : per_string) ps.push_back({{"key", key}, {"tp", c.tp}, {"fp", c.fp}, {"fn", c.fn_}});
    j["per_string"] = std::move(ps);
  }
  return j;
}

std::string MetricsReport::ToTable() const {
  std::ostringstream os;
  os << std::fixed << std::setprecision(3);
  os << std::left << std::setw(10) << "metric" << std::right << std::setw(10) << "value" << '\n';
  os << std::left << std::setw(10) << "precision" << std::right << std::setw(10) << precision << '\n';
  os << std::left << std::setw(10) << "recall" << std::right << std::setw(10) << recall << '\n';
  os << std::left << std::setw(10) << "f1" << std::right << std::setw(10) << f1 << '\n';
  if (accuracy) os << std::left << std::setw(10) << "accuracy" << std::right << std::setw(10) << *accuracy << '\n';
  os << std::left << std::setw(10) << "tp" << std::right << std::setw(10) << total.tp << '\n';
  os << std::left << std::setw(10) << "fp" << std::right << std::setw(10) << total.fp << '\n';
  os << std::left << std::setw(10) << "fn" << std::right << std::setw(10) << total.fn_ << '\n';
  for (const auto &w : warnings) os << "warning: " << w << '\n';
  return os.str();
}

MetricsReport Score(const std::map<std::string, std::set<std::string>> &predictions,
                    const std::map<std::string, std::set<std::string>> &truth) {
  std::vector<std::string> missing;
  for (const auto &[k, v] : predictions) {
    if (truth.count(k) == 0) missing.push_back(k + " (no truth)");
  }
  for (const auto &[k, v] : truth) {
    if (predictions.count(k) == 0) missing.push_back(k + " (no prediction)");
  }
  if (!missing.empty()) throw ValidationError("prediction and truth keys differ: " + Join(missing, ", "), missing);

  MetricsReport r;
  for (const auto &[key, t] : truth) {
    ConfusionCounts c = CountSets(predictions.at(key), t);
    r.total += c;
    r.per_string.emplace_back(key, c);
  }
  ComputeRates(&r);
  return r;
}

AccuracyReport ScoreSingleId(const std::map<std::string, std::vector<std::string>> &predictions,
                             const std::map<std::string, std::string> &truth, bool restrict_to_single_result) {
  std::vector<std::string> missing;
  for (const auto &[k, v] : predictions) {
    if (truth.count(k) == 0) missing.push_back(k + " (no truth)");
  }
  for (const auto &[k, v] : truth) {
    if (predictions.count(k) == 0) missing.push_back(k + " (no prediction)");
  }
  if (!missing.empty()) throw ValidationError("prediction and truth keys differ: " + Join(missing, ", "), missing);

  AccuracyReport a;
  a.total = truth.size();
  for (const auto &[key, id] : truth) {
    const auto &pred = predictions.at(key);
    if (restrict_to_single_result && pred.size() != 1) continue;
    ++a.evaluated;
    if (!pred.empty() && CanonicalRorId(pred.front()) == CanonicalRorId(id)) ++a.correct;
  }
  if (a.evaluated == 0) throw UsageError("accuracy undefined: no strings to evaluate");
  a.accuracy = static_cast<double>(a.correct) / static_cast<double>(a.evaluated);
  return a;
}

void ParallelFor(size_t n, size_t workers, const std::function<void(size_t)> &fn) {
  workers = std::max<size_t>(1, std::min(workers, n));
  if (workers == 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&] {
      for (size_t i; (i = next.fetch_add(1)) < n;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!error) error = std::current_exception();
          next.store(n);
        }
      }
    });
  }
  for (auto &t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

size_t DefaultWorkers() {
  if (const char *env = std::getenv("ORGMATCH_WORKERS"); env != nullptr && *env != '\0') {
    char *end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<EvalItem> MakeEvalItems(const std::vector<AnnotationRecord> &records, bool exact_only) {
  std::vector<EvalItem> out;
  out.reserve(records.size());
  for (const auto &r : records) out.push_back({r.raw_affiliation_string, r.Truth(exact_only)});
  return out;
}

std::vector<EvalItem> MakeEvalItems(const std::vector<SingleIdRecord> &records) {
  std::vector<EvalItem> out;
  out.reserve(records.size());
  for (const auto &r : records) out.push_back({r.raw_affiliation_string, {CanonicalRorId(r.ror_id)}});
  return out;
}

NormalizedCorpus::NormalizedCorpus(const std::vector<EvalItem> &items, const RegistryIndex &index,
                                   size_t workers) {
  std::unordered_map<std::string, size_t> slot_of;
  std::vector<const std::string *> distinct;
  slot_.reserve(items.size());
  for (const auto &item : items) {
    auto [it, inserted] = slot_of.emplace(item.raw, distinct.size());
    if (inserted) distinct.push_back(&item.raw);
    slot_.push_back(it->second);
  }
  norms_.resize(distinct.size());
  ParallelFor(distinct.size(), workers, [&](size_t i) {
    norms_[i] = index.normalizer().CleanAndStem(*distinct[i], index.countries());
  });
}

namespace {

MetricsReport ReportFromCounts(const std::vector<EvalItem> &items, const std::vector<ConfusionCounts> &counts,
                               const PipelineParams &params) {
  MetricsReport r;
  r.params = params;
  // Keys are zero-padded positions so lexicographic order is input order.
  const size_t width = std::to_string(items.size()).size();
  r.per_string.reserve(items.size());
  for (size_t i = 0; i < items.size(); ++i) {
    std::string key = std::to_string(i);
    key.insert(0, width - key.size(), '0');
    r.total += counts[i];
    r.per_string.emplace_back(std::move(key), counts[i]);
  }
  ComputeRates(&r);
  return r;
}

std::set<std::string> PredictedIds(const MatchResult &m) {
  std::set<std::string> out;
  for (const auto &match : m.matches) out.insert(match.id);
  return out;
}

}  // namespace

std::vector<std::vector<std::string>> PredictAll(const std::vector<EvalItem> &items, const RegistryIndex &index,
                                                 const PipelineParams &params, size_t workers,
                                                 const MatchOptions &options) {
  params.Validate();
  NormalizedCorpus corpus(items, index, workers);
  std::vector<std::vector<std::string>> out(items.size());
  ParallelFor(items.size(), workers,
              [&](size_t i) { out[i] = MatchNormalized(corpus.at(i), index, params, options).Ids(); });
  return out;
}

MetricsReport Evaluate(const std::vector<EvalItem> &items, const RegistryIndex &index, const PipelineParams &params,
                       size_t workers, const MatchOptions &options) {
  auto predictions = PredictAll(items, index, params, workers, options);
  std::vector<ConfusionCounts> counts(items.size());
  for (size_t i = 0; i < items.size(); ++i) {
    counts[i] = CountSets({predictions[i].begin(), predictions[i].end()}, items[i].truth);
  }
  return ReportFromCounts(items, counts, params);
}

const char *ObjectiveName(Objective o) {
  switch (o) {
    case Objective::kPrecision: return "precision";
    case Objective::kRecall: return "recall";
    case Objective::kF1: return "f1";
  }
  return "f1";
}

Objective ParseObjective(const std::string &name) {
  std::string n = AsciiLower(name);
  if (n == "precision" || n == "p") return Objective::kPrecision;
  if (n == "recall" || n == "r") return Objective::kRecall;
  if (n == "f1") return Objective::kF1;
  throw UsageError("unknown objective '" + name + "' (precision, recall, f1)");
}

double ObjectiveValue(const MetricsReport &r, Objective o) {
  switch (o) {
    case Objective::kPrecision: return r.precision;
    case Objective::kRecall: return r.recall;
    case Objective::kF1: return r.f1;
  }
  return r.f1;
}

std::vector<PipelineParams> ParamGrid::Points() const {
  std::vector<PipelineParams> out;
  for (int w : window) {
    for (double u : sim_u) {
      for (double o : sim_o) {
        for (bool s : specific) out.push_back({w, u, o, s});
      }
    }
  }
  return out;
}

ParamGrid ParamGrid::Single(const PipelineParams &p) { return {{p.window}, {p.sim_u}, {p.sim_o}, {p.specific}}; }

ParamGrid ParamGrid::WindowSweep(const PipelineParams &base) {
  ParamGrid g = Single(base);
  g.window.clear();
  for (int w = 1; w <= 10; ++w) g.window.push_back(w);
  return g;
}

ParamGrid ParamGrid::ThresholdSweep(const PipelineParams &base, const std::string &which) {
  ParamGrid g = Single(base);
  std::vector<double> values;
  for (int k = 1; k <= 10; ++k) values.push_back(k / 10.0);
  if (which == "sim_u") {
    g.sim_u = values;
  } else if (which == "sim_o") {
    g.sim_o = values;
  } else {
    throw UsageError("threshold sweep axis must be sim_u or sim_o, got '" + which + "'");
  }
  return g;
}

ParamGrid ParamGrid::Parse(const std::string &text, const PipelineParams &base) {
  ParamGrid g = Single(base);
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ';');) {
    std::string_view trimmed = Trim(item);
    if (trimmed.empty()) continue;
    size_t eq = trimmed.find('=');
    if (eq == std::string_view::npos) throw UsageError("grid axis needs name=values: " + std::string(trimmed));
    std::string name(Trim(trimmed.substr(0, eq)));
    std::string values(Trim(trimmed.substr(eq + 1)));
    if (name == "window") {
      g.window.clear();
      for (double v : ParseRealAxis(name, values)) g.window.push_back(static_cast<int>(std::lround(v)));
    } else if (name == "sim_u" || name == "sim-u") {
      g.sim_u = ParseRealAxis(name, values);
    } else if (name == "sim_o" || name == "sim-o") {
      g.sim_o = ParseRealAxis(name, values);
    } else if (name == "specific") {
      g.specific.clear();
      std::stringstream vs(values);
      for (std::string v; std::getline(vs, v, ',');) {
        std::string lv = AsciiLower(Trim(v));
        if (lv == "true" || lv == "1") {
          g.specific.push_back(true);
        } else if (lv == "false" || lv == "0") {
          g.specific.push_back(false);
        } else {
          throw UsageError("bad value for specific: " + v);
        }
      }
    } else {
      throw UsageError("unknown grid axis '" + name + "'");
    }
  }
  for (const auto &p : g.Points()) p.Validate();
  return g;
}

std::vector<PipelineParams> RandomSearch::Propose(const ParamGrid &grid) const {
  if (grid.empty()) return {};
  std::mt19937_64 rng(seed_);
  auto [wmin, wmax] = std::minmax_element(grid.window.begin(), grid.window.end());
  auto [umin, umax] = std::minmax_element(grid.sim_u.begin(), grid.sim_u.end());
  auto [omin, omax] = std::minmax_element(grid.sim_o.begin(), grid.sim_o.end());
  std::uniform_int_distribution<int> window(*wmin, *wmax);
  std::uniform_real_distribution<double> sim_u(*umin, *umax);
  std::uniform_real_distribution<double> sim_o(*omin, *omax);
  std::uniform_int_distribution<size_t> specific(0, grid.specific.size() - 1);
  std::vector<PipelineParams> out;
  out.reserve(budget_);
  for (size_t i = 0; i < budget_; ++i) {
    PipelineParams p;
    p.window = window(rng);
    // Rounded so that CSV rows reproduce the evaluated point exactly.
    p.sim_u = *umin == *umax ? *umin : RoundTo(sim_u(rng), 1e-6);
    p.sim_o = *omin == *omax ? *omin : RoundTo(sim_o(rng), 1e-6);
    p.sim_u = std::clamp(p.sim_u, 1e-6, 1.0);
    p.sim_o = std::clamp(p.sim_o, 1e-6, 1.0);
    p.specific = grid.specific[specific(rng)];
    out.push_back(p);
  }
  return out;
}

std::vector<SweepResult> Sweep(const std::vector<EvalItem> &items, const RegistryIndex &index, const ParamGrid &grid,
                               Objective objective, const SearchStrategy &strategy, size_t workers,
                               const MatchOptions &options) {
  if (grid.empty()) throw UsageError("parameter grid is empty");
  std::vector<PipelineParams> points = strategy.Propose(grid);
  if (points.empty()) throw UsageError("search strategy proposed no points");
  for (const auto &p : points) p.Validate();

  NormalizedCorpus corpus(items, index, workers);
  const size_t n = items.size();
  std::vector<ConfusionCounts> counts(points.size() * n);
  ParallelFor(points.size() * n, workers, [&](size_t k) {
    const size_t p = k / n, i = k % n;
    counts[k] = CountSets(PredictedIds(MatchNormalized(corpus.at(i), index, points[p], options)), items[i].truth);
  });

  std::vector<SweepResult> results;
  results.reserve(points.size());
  for (size_t p = 0; p < points.size(); ++p) {
    std::vector<ConfusionCounts> slice(counts.begin() + static_cast<ptrdiff_t>(p * n),
                                       counts.begin() + static_cast<ptrdiff_t>((p + 1) * n));
    results.push_back({points[p], ReportFromCounts(items, slice, points[p])});
  }
  std::stable_sort(results.begin(), results.end(), [&](const SweepResult &a, const SweepResult &b) {
    return ObjectiveValue(a.report, objective) > ObjectiveValue(b.report, objective);
  });
  return results;
}

std::string SweepCsv(const std::vector<SweepResult> &results) {
  std::ostringstream os;
  os << "window,sim_o,sim_u,specific,P,R,F1\n";
  os << std::setprecision(10);
  for (const auto &r : results) {
    os << r.params.window << ',' << r.params.sim_o << ',' << r.params.sim_u << ','
       << (r.params.specific ? "true" : "false") << ',' << r.report.precision << ',' << r.report.recall << ','
       << r.report.f1 << '\n';
  }
  return os.str();
}

}  // namespace orgmatch
