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

#ifndef ORGMATCH_METRICS_H_
#define ORGMATCH_METRICS_H_

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "orgmatch/dataset.h"
#include "orgmatch/match.h"
#include "orgmatch/registry.h"
#include "orgmatch/segment.h"

namespace orgmatch {

struct ConfusionCounts {
  int64_t tp = 0;
  int64_t fp = 0;
  int64_t fn_ = 0;

  ConfusionCounts &operator+=(const ConfusionCounts &o) {
    tp += o.tp;
    fp += o.fp;
    fn_ += o.fn_;
    return *this;
  }
  bool operator==(const ConfusionCounts &) const = default;
};

ConfusionCounts CountSets(const std::set<std::string> &pred, const std::set<std::string> &truth);

struct MetricsReport {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::optional<double> accuracy;
  ConfusionCounts total;
  std::vector<std::pair<std::string, ConfusionCounts>> per_string;  // sorted by key
  PipelineParams params;
  std::vector<std::string> warnings;  // degenerate denominators

  nlohmann::json ToJson(bool include_per_string = false) const;
  std::string ToTable() const;
};

// Fills precision/recall/f1 from `total`.
void ComputeRates(MetricsReport *report);

// Micro-averaged scores. Both maps must have the same keys; otherwise
// throws ValidationError listing the unmatched keys.
MetricsReport Score(const std::map<std::string, std::set<std::string>> &predictions,
                    const std::map<std::string, std::set<std::string>> &truth);

struct AccuracyReport {
  double accuracy = 0.0;
  size_t correct = 0;
  size_t evaluated = 0;
  size_t total = 0;
};

// A string counts as correct when its top (first) predicted id equals the
// truth. With `restrict_to_single_result` only strings with exactly one
// predicted id are evaluated. Throws UsageError when nothing is evaluated
// and ValidationError on key mismatch.
AccuracyReport ScoreSingleId(const std::map<std::string, std::vector<std::string>> &predictions,
                             const std::map<std::string, std::string> &truth, bool restrict_to_single_result);

// Runs fn(i) for i in [0, n) on up to `workers` threads. The first
// exception thrown by fn is rethrown after all threads join.
void ParallelFor(size_t n, size_t workers, const std::function<void(size_t)> &fn);

// Number of workers from $ORGMATCH_WORKERS, else hardware concurrency.
size_t DefaultWorkers();

// One scored affiliation; records are scored individually even when their
// strings repeat.
struct EvalItem {
  std::string raw;
  std::set<std::string> truth;
};

std::vector<EvalItem> MakeEvalItems(const std::vector<AnnotationRecord> &records, bool exact_only = false);
std::vector<EvalItem> MakeEvalItems(const std::vector<SingleIdRecord> &records);

// Normalizes each distinct string once; reused across parameter points.
class NormalizedCorpus {
 public:
  NormalizedCorpus(const std::vector<EvalItem> &items, const RegistryIndex &index, size_t workers);
  const NormalizedAffiliation &at(size_t i) const { return norms_[slot_[i]]; }
  size_t size() const { return slot_.size(); }

 private:
  std::vector<NormalizedAffiliation> norms_;
  std::vector<size_t> slot_;
};

// Predicted ids per item, in match order (confidence descending).
std::vector<std::vector<std::string>> PredictAll(const std::vector<EvalItem> &items, const RegistryIndex &index,
                                                 const PipelineParams &params, size_t workers,
                                                 const MatchOptions &options = {});

MetricsReport Evaluate(const std::vector<EvalItem> &items, const RegistryIndex &index, const PipelineParams &params,
                       size_t workers, const MatchOptions &options = {});

enum class Objective { kPrecision, kRecall, kF1 };

const char *ObjectiveName(Objective o);
Objective ParseObjective(const std::string &name);  // throws UsageError
double ObjectiveValue(const MetricsReport &r, Objective o);

// Axis values of a parameter grid.
struct ParamGrid {
  std::vector<int> window;
  std::vector<double> sim_u;
  std::vector<double> sim_o;
  std::vector<bool> specific;

  // Cartesian product, window outermost.
  std::vector<PipelineParams> Points() const;
  bool empty() const { return window.empty() || sim_u.empty() || sim_o.empty() || specific.empty(); }

  static ParamGrid Single(const PipelineParams &p);
  // window 1..10, other parameters fixed at `base`.
  static ParamGrid WindowSweep(const PipelineParams &base);
  // One of "sim_u" / "sim_o" over 0.1, 0.2, ..., 1.0, others fixed.
  static ParamGrid ThresholdSweep(const PipelineParams &base, const std::string &which);

  // "window=1:10;sim_u=0.1:1.0:0.1;sim_o=0.827;specific=true,false". Axes
  // left out take the value of `base`.
  static ParamGrid Parse(const std::string &text, const PipelineParams &base = {});
};

// Proposes the parameter points a sweep evaluates.
class SearchStrategy {
 public:
  virtual ~SearchStrategy() = default;
  virtual std::vector<PipelineParams> Propose(const ParamGrid &grid) const = 0;
};

class ExhaustiveSearch : public SearchStrategy {
 public:
  std::vector<PipelineParams> Propose(const ParamGrid &grid) const override { return grid.Points(); }
};

// Samples `budget` points uniformly within the grid's bounds: window as an
// integer, thresholds as reals, specific from the listed values.
class RandomSearch : public SearchStrategy {
 public:
  explicit RandomSearch(size_t budget = 1000, uint64_t seed = 42) : budget_(budget), seed_(seed) {}
  std::vector<PipelineParams> Propose(const ParamGrid &grid) const override;

 private:
  size_t budget_;
  uint64_t seed_;
};

struct SweepResult {
  PipelineParams params;
  MetricsReport report;
};

// Evaluates every proposed point, ranked by `objective` descending (ties
// keep proposal order). Throws UsageError on an empty grid.
std::vector<SweepResult> Sweep(const std::vector<EvalItem> &items, const RegistryIndex &index, const ParamGrid &grid,
                               Objective objective, const SearchStrategy &strategy, size_t workers,
                               const MatchOptions &options = {});

// Header window,sim_o,sim_u,specific,P,R,F1 and one row per result.
std::string SweepCsv(const std::vector<SweepResult> &results);

}  // namespace orgmatch

#endif  // ORGMATCH_METRICS_H_
