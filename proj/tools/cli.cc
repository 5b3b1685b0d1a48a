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

#include "cli.h"

#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "orgmatch/config.h"
#include "orgmatch/dataset.h"
#include "orgmatch/error.h"
#include "orgmatch/match.h"
#include "orgmatch/metrics.h"
#include "orgmatch/registry.h"
#include "orgmatch/service.h"
#include "orgmatch/text.h"

namespace orgmatch::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string Env(const char *name, const std::string &fallback = "") {
  const char *v = std::getenv(name);
  return v != nullptr && *v != '\0' ? std::string(v) : fallback;
}

struct Context {
  std::string registry;
  std::string index;
  std::string data_dir;
  std::string log_level;
  std::shared_ptr<spdlog::logger> log;
};

void AddParamFlags(CLI::App *app, PipelineParams *params) {
  app->add_option("--window", params->window, "tokens kept on each side of \"univer\" (1-10)")
      ->check(CLI::Range(1, 10));
  app->add_option("--sim-o", params->sim_o, "similarity threshold for non-university records (0-1]");
  app->add_option("--sim-u", params->sim_u, "similarity threshold for university records (0-1]");
  app->add_option("--specific", params->specific, "use curated acronym and entity keywords (true|false)");
}

void AddThresholdMode(CLI::App *app, MatchOptions *options) {
  static const std::map<std::string, ThresholdMode> kModes = {{"record", ThresholdMode::kRecordType},
                                                              {"partition", ThresholdMode::kPartitionContent}};
  app->add_option("--threshold-mode", options->threshold_mode,
                  "apply sim_u by record type (record) or by partition content (partition)")
      ->transform(CLI::CheckedTransformer(kModes, CLI::ignore_case));
}

Config LoadConfig(const Context &ctx) {
  return Config::LoadDir(ctx.data_dir.empty() ? DefaultDataDir() : fs::path(ctx.data_dir));
}

void LogReport(const Context &ctx, const LoadReport &report) {
  if (report.rejected_missing_country > 0) {
    ctx.log->warn("{} registry entries rejected for missing country", report.rejected_missing_country);
  }
  if (report.dropped_active_successors > 0) {
    ctx.log->warn("{} active registry entries had successor links; links dropped", report.dropped_active_successors);
  }
}

RegistryIndex LoadIndex(const Context &ctx) {
  if (!ctx.index.empty()) {
    ctx.log->info("loading index {}", ctx.index);
    return RegistryIndex::Load(ctx.index);
  }
  if (ctx.registry.empty()) throw UsageError("an index is required: pass --index or --registry");
  fs::path cache;
  if (std::string dir = Env("ORGMATCH_INDEX_CACHE"); !dir.empty()) {
    cache = fs::path(dir) / ("index-" + fs::path(ctx.registry).filename().string() + ".json");
  }
  LoadReport report;
  RegistryIndex idx = LoadOrBuildIndex(ctx.registry, LoadConfig(ctx), cache, {}, &report);
  LogReport(ctx, report);
  return idx;
}

void WriteText(const std::string &path, const std::string &text, std::ostream &out) {
  if (path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error("cannot write " + path);
  f << text;
  if (!f) throw Error("failed writing " + path);
}

std::vector<EvalItem> LoadEvalItems(const std::string &path, bool single_id, bool exact_only) {
  std::string ext = AsciiLower(fs::path(path).extension().string());
  if (single_id || ext == ".csv") return MakeEvalItems(LoadSingleIdCorpus(path));
  return MakeEvalItems(LoadDataset(path), exact_only);
}

// ---- build-index ----

int CmdBuildIndex(const Context &ctx, const std::string &out_path, const std::string &version_tag, bool no_acronyms,
                  std::ostream &out) {
  if (ctx.registry.empty()) throw UsageError("build-index needs --registry");
  IndexOptions options;
  options.version_tag = version_tag;
  options.index_acronyms = !no_acronyms;
  LoadReport report;
  RegistryIndex idx = LoadOrBuildIndex(ctx.registry, LoadConfig(ctx), "", options, &report);
  LogReport(ctx, report);
  idx.Save(out_path);
  size_t aliases = 0;
  for (const auto &r : idx.records()) aliases += r.aliases.size();
  out << json{{"records", idx.records().size()},
              {"aliases", aliases},
              {"indexed_names", idx.names().size()},
              {"rejected_missing_country", report.rejected_missing_country},
              {"version_tag", idx.version_tag()},
              {"output", out_path}}
             .dump()
      << '\n';
  return kExitOk;
}

// ---- match ----

int CmdMatch(const Context &ctx, const std::string &affiliation, const PipelineParams &params,
             const MatchOptions &options, bool trace, std::ostream &out) {
  params.Validate();
  RegistryIndex idx = LoadIndex(ctx);
  MatchResult result = MatchString(affiliation, idx, params, options);
  out << BuildMatchResponse(result, idx, params, trace).dump() << '\n';
  return kExitOk;
}

// ---- batch ----

struct BatchLine {
  size_t line = 0;
  std::optional<std::string> affiliation;
  std::string error;
};

std::vector<BatchLine> ReadBatchInput(const std::string &path) {
  std::string content = ReadFile(path);
  std::vector<BatchLine> lines;
  if (AsciiLower(fs::path(path).extension().string()) == ".csv") {
    size_t pos = 0, record = 0;
    while (pos < content.size()) {
      auto fields = ReadCsvRecord(content, &pos);
      ++record;
      std::string first(Trim(fields[0]));
      if (record == 1 && (first == "raw_affiliation_string" || first == "affiliation")) continue;
      BatchLine b;
      b.line = record;
      if (fields.size() == 1 && first.empty()) {
        b.error = "blank line";
      } else {
        b.affiliation = fields[0];
      }
      lines.push_back(std::move(b));
    }
    return lines;
  }
  size_t pos = 0, line_no = 0;
  while (pos < content.size()) {
    size_t end = content.find('\n', pos);
    if (end == std::string::npos) end = content.size();
    std::string_view text = Trim(std::string_view(content).substr(pos, end - pos));
    pos = end + 1;
    BatchLine b;
    b.line = ++line_no;
    if (text.empty()) {
      b.error = "blank line";
    } else {
      try {
        json j = json::parse(text);
        if (j.is_object() && j.contains("raw_affiliation_string") && j["raw_affiliation_string"].is_string()) {
          b.affiliation = j["raw_affiliation_string"].get<std::string>();
        } else if (j.is_object() && j.contains("affiliation") && j["affiliation"].is_string()) {
          b.affiliation = j["affiliation"].get<std::string>();
        } else {
          b.error = "missing raw_affiliation_string";
        }
      } catch (const json::parse_error &e) {
        b.error = std::string("malformed JSON: ") + e.what();
      }
    }
    lines.push_back(std::move(b));
  }
  return lines;
}

int CmdBatch(const Context &ctx, const std::string &input, const std::string &output, size_t workers,
             const PipelineParams &params, const MatchOptions &options, std::ostream &out) {
  params.Validate();
  if (workers == 0) throw UsageError("--workers must be positive");
  std::vector<BatchLine> lines = ReadBatchInput(input);
  RegistryIndex idx = LoadIndex(ctx);
  std::vector<std::string> rendered(lines.size());
  ParallelFor(lines.size(), workers, [&](size_t i) {
    const BatchLine &b = lines[i];
    json j;
    if (b.affiliation) {
      try {
        j = BuildMatchResponse(MatchString(*b.affiliation, idx, params, options), idx, params);
        j["input"] = *b.affiliation;
      } catch (const std::exception &e) {
        j = {{"error", e.what()}};
      }
    } else {
      j = {{"error", b.error}};
    }
    j["line"] = b.line;
    rendered[i] = j.dump();
  });
  std::string text;
  size_t failures = 0;
  for (size_t i = 0; i < lines.size(); ++i) {
    text += rendered[i];
    text.push_back('\n');
    failures += lines[i].affiliation ? 0 : 1;
  }
  WriteText(output, text, out);
  ctx.log->info("batch: {} lines, {} errors", lines.size(), failures);
  return failures == 0 ? kExitOk : kExitFindings;
}

// ---- eval ----

struct EvalFlags {
  std::string dataset;
  bool single_id = false;
  bool exact_only = false;
  bool restrict_single = false;
  bool per_string = false;
  std::string format = "json";
  size_t workers = 0;
};

int CmdEval(const Context &ctx, const EvalFlags &flags, const PipelineParams &params, const MatchOptions &options,
            std::ostream &out) {
  params.Validate();
  std::vector<EvalItem> items = LoadEvalItems(flags.dataset, flags.single_id, flags.exact_only);
  RegistryIndex idx = LoadIndex(ctx);
  const size_t workers = flags.workers > 0 ? flags.workers : DefaultWorkers();
  auto predictions = PredictAll(items, idx, params, workers, options);

  std::map<std::string, std::set<std::string>> pred_map, truth_map;
  std::map<std::string, std::vector<std::string>> pred_list;
  std::map<std::string, std::string> single_truth;
  const size_t width = std::to_string(items.size()).size();
  bool single = true;
  for (size_t i = 0; i < items.size(); ++i) {
    std::string key = std::to_string(i);
    key.insert(0, width - key.size(), '0');
    pred_map[key] = {predictions[i].begin(), predictions[i].end()};
    truth_map[key] = items[i].truth;
    pred_list[key] = predictions[i];
    if (items[i].truth.size() == 1) {
      single_truth[key] = *items[i].truth.begin();
    } else {
      single = false;
    }
  }
  MetricsReport report = Score(pred_map, truth_map);
  report.params = params;
  json extra;
  if (single && !items.empty() && (flags.single_id || flags.restrict_single)) {
    AccuracyReport acc = ScoreSingleId(pred_list, single_truth, flags.restrict_single);
    report.accuracy = acc.accuracy;
    extra = {{"correct", acc.correct}, {"evaluated", acc.evaluated}, {"total", acc.total}};
  }
  if (flags.format == "table") {
    out << report.ToTable();
  } else {
    json j = report.ToJson(flags.per_string);
    if (!extra.is_null()) j["accuracy_counts"] = extra;
    j["strings"] = items.size();
    j["registry_version"] = idx.version_tag();
    out << j.dump() << '\n';
  }
  return kExitOk;
}

// ---- tune ----

struct TuneFlags {
  std::string dataset;
  std::string grid;
  std::string sweep;
  std::string objective = "f1";
  std::string strategy = "grid";
  size_t budget = 1000;
  uint64_t seed = 42;
  std::string out_csv;
  bool exact_only = false;
  size_t workers = 0;
};

json BestJson(const SweepResult &r) {
  return {{"params", r.params.ToJson()},
          {"precision", r.report.precision},
          {"recall", r.report.recall},
          {"f1", r.report.f1}};
}

int CmdTune(const Context &ctx, const TuneFlags &flags, const PipelineParams &base, const MatchOptions &options,
            std::ostream &out) {
  Objective objective = ParseObjective(flags.objective);
  ParamGrid grid;
  if (!flags.sweep.empty() && !flags.grid.empty()) throw UsageError("use either --grid or --sweep");
  if (flags.sweep == "window") {
    grid = ParamGrid::WindowSweep(base);
  } else if (!flags.sweep.empty()) {
    grid = ParamGrid::ThresholdSweep(base, flags.sweep);
  } else {
    grid = ParamGrid::Parse(flags.grid, base);
  }
  std::unique_ptr<SearchStrategy> strategy;
  if (flags.strategy == "grid") {
    strategy = std::make_unique<ExhaustiveSearch>();
  } else if (flags.strategy == "random") {
    strategy = std::make_unique<RandomSearch>(flags.budget, flags.seed);
  } else {
    throw UsageError("--strategy must be grid or random");
  }

  std::vector<EvalItem> items = LoadEvalItems(flags.dataset, false, flags.exact_only);
  RegistryIndex idx = LoadIndex(ctx);
  const size_t workers = flags.workers > 0 ? flags.workers : DefaultWorkers();
  auto results = Sweep(items, idx, grid, objective, *strategy, workers, options);
  WriteText(flags.out_csv, SweepCsv(results), out);

  json best = json::object();
  for (Objective o : {Objective::kPrecision, Objective::kRecall, Objective::kF1}) {
    const SweepResult *top = &results.front();
    for (const auto &r : results) {
      if (ObjectiveValue(r.report, o) > ObjectiveValue(top->report, o)) top = &r;
    }
    best[ObjectiveName(o)] = BestJson(*top);
  }
  if (flags.out_csv != "-") {
    out << json{{"objective", ObjectiveName(objective)}, {"points", results.size()}, {"best", best}}.dump() << '\n';
  }
  return kExitOk;
}

// ---- dataset ----

int CmdDatasetValidate(const std::string &path, std::ostream &out) {
  DatasetCheck check = CheckDataset(ReadFile(path));
  for (const auto &issue : check.issues) out << "line " << issue.line << ": " << issue.message << '\n';
  out << json{{"records", check.records.size()}, {"issues", check.issues.size()}}.dump() << '\n';
  return check.issues.empty() ? kExitOk : kExitFindings;
}

int CmdDatasetStats(const std::string &path, std::ostream &out, std::ostream &err) {
  DatasetCheck check = CheckDataset(ReadFile(path));
  for (const auto &issue : check.issues) err << "line " << issue.line << ": " << issue.message << '\n';
  if (!check.issues.empty()) return kExitFindings;
  out << ComputeStats(check.records).ToJson().dump() << '\n';
  return kExitOk;
}

int CmdDatasetRefresh(const Context &ctx, const std::string &path, const std::string &out_path,
                      const std::string &log_path, std::ostream &out) {
  std::vector<AnnotationRecord> records = LoadDataset(path);
  RegistryIndex idx = LoadIndex(ctx);
  RefreshResult refreshed = RefreshInactive(records, idx);
  WriteText(out_path, SerializeDataset(refreshed.records), out);
  if (!log_path.empty()) WriteText(log_path, SerializeChangeLog(refreshed.log), out);
  size_t replaced = 0, removed = 0, unknown = 0;
  for (const auto &e : refreshed.log) {
    replaced += e.reason == "successor";
    removed += e.reason == "no_successor";
    unknown += e.reason == "unknown";
  }
  if (out_path != "-") {
    out << json{{"records", refreshed.records.size()},
                {"changes", refreshed.log.size()},
                {"replaced", replaced},
                {"removed", removed},
                {"unknown", unknown}}
               .dump()
        << '\n';
  }
  return kExitOk;
}

// ---- serve ----

int CmdServe(const Context &ctx, ServiceOptions options, std::ostream &out) {
  options.defaults.Validate();
  MatchService service(options);
  std::thread loader([&] {
    try {
      service.SetIndex(std::make_shared<const RegistryIndex>(LoadIndex(ctx)));
      ctx.log->info("index ready");
    } catch (const std::exception &e) {
      ctx.log->error("index load failed: {}", e.what());
      service.Stop();
    }
  });
  if (!service.Start()) {
    loader.join();
    throw Error("cannot bind " + options.host + ":" + std::to_string(options.port));
  }
  out << "listening on " << options.host << ':' << service.port() << std::endl;
  loader.join();
  service.Wait();
  return kExitOk;
}

}  // namespace

int Run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  Context ctx;
  ctx.log_level = Env("ORGMATCH_LOG_LEVEL", "warn");

  CLI::App app{"Match raw affiliation strings to organization registry identifiers."};
  app.name("orgmatch");
  app.require_subcommand(1);
  app.add_option("--registry", ctx.registry, "registry dump (ROR JSON array or JSON lines)");
  app.add_option("--index", ctx.index, "prebuilt index file");
  app.add_option("--data-dir", ctx.data_dir, "directory of configuration lists");
  app.add_option("--log-level", ctx.log_level, "error, warn, info or debug");

  PipelineParams params;
  MatchOptions options;

  std::string out_path, version_tag;
  bool no_acronyms = false;
  CLI::App *build = app.add_subcommand("build-index", "build and save the registry index");
  build->add_option("--out", out_path, "index output path")->required();
  build->add_option("--version-tag", version_tag, "registry version recorded in the index");
  build->add_flag("--no-acronyms", no_acronyms, "do not index registry acronyms");

  std::string affiliation;
  bool trace = false;
  CLI::App *match = app.add_subcommand("match", "match one affiliation string");
  match->add_option("affiliation", affiliation, "raw affiliation string")->required();
  match->add_flag("--trace", trace, "include the per-partition trace");
  AddParamFlags(match, &params);
  AddThresholdMode(match, &options);

  std::string batch_in, batch_out = "-";
  size_t workers = DefaultWorkers();
  CLI::App *batch = app.add_subcommand("batch", "match every line of a JSONL or CSV file");
  batch->add_option("--input", batch_in, "input file")->required();
  batch->add_option("--output", batch_out, "output JSONL ('-' for stdout)");
  batch->add_option("--workers", workers, "worker threads");
  AddParamFlags(batch, &params);
  AddThresholdMode(batch, &options);

  EvalFlags eval_flags;
  CLI::App *eval = app.add_subcommand("eval", "score the matcher against a ground-truth dataset");
  eval->add_option("--dataset", eval_flags.dataset, "annotation JSONL or single-id CSV/JSONL")->required();
  eval->add_flag("--single-id", eval_flags.single_id, "dataset has one ror_id per string");
  eval->add_flag("--exact-only", eval_flags.exact_only, "score exact links only");
  eval->add_flag("--restrict-single", eval_flags.restrict_single, "accuracy over single-result predictions only");
  eval->add_flag("--per-string", eval_flags.per_string, "include per-string counts");
  eval->add_option("--format", eval_flags.format, "json or table")->check(CLI::IsMember({"json", "table"}));
  eval->add_option("--workers", eval_flags.workers, "worker threads");
  AddParamFlags(eval, &params);
  AddThresholdMode(eval, &options);

  TuneFlags tune_flags;
  CLI::App *tune = app.add_subcommand("tune", "sweep pipeline parameters over a dataset");
  tune->add_option("--dataset", tune_flags.dataset, "annotation JSONL")->required();
  tune->add_option("--grid", tune_flags.grid, "grid, e.g. 'window=1:10;sim_u=0.1:1:0.1;specific=true,false'");
  tune->add_option("--sweep", tune_flags.sweep, "predefined sweep: window, sim_u or sim_o");
  tune->add_option("--objective", tune_flags.objective, "precision, recall or f1");
  tune->add_option("--strategy", tune_flags.strategy, "grid or random");
  tune->add_option("--budget", tune_flags.budget, "random search iterations");
  tune->add_option("--seed", tune_flags.seed, "random search seed");
  tune->add_option("--out", tune_flags.out_csv, "sweep CSV path ('-' for stdout)")->required();
  tune->add_flag("--exact-only", tune_flags.exact_only, "score exact links only");
  tune->add_option("--workers", tune_flags.workers, "worker threads");
  AddParamFlags(tune, &params);
  AddThresholdMode(tune, &options);

  std::string dataset_path, refresh_out, refresh_log;
  CLI::App *dataset = app.add_subcommand("dataset", "validate, summarize or refresh a dataset");
  dataset->require_subcommand(1);
  CLI::App *validate = dataset->add_subcommand("validate", "check every line against the schema");
  validate->add_option("file", dataset_path)->required();
  CLI::App *stats = dataset->add_subcommand("stats", "count strings, links and DOIs");
  stats->add_option("file", dataset_path)->required();
  CLI::App *refresh = dataset->add_subcommand("refresh", "replace inactive identifiers");
  refresh->add_option("file", dataset_path)->required();
  refresh->add_option("--out", refresh_out, "refreshed JSONL ('-' for stdout)")->required();
  refresh->add_option("--log", refresh_log, "change log JSONL");

  ServiceOptions service_options;
  service_options.host = Env("ORGMATCH_HOST", service_options.host);
  service_options.port = std::atoi(Env("ORGMATCH_PORT", std::to_string(service_options.port)).c_str());
  CLI::App *serve = app.add_subcommand("serve", "serve POST /match and GET /health");
  serve->add_option("--host", service_options.host, "listen address");
  serve->add_option("--port", service_options.port, "listen port (0 picks one)");
  serve->add_option("--max-chars", service_options.max_affiliation_chars, "affiliation length limit");
  AddParamFlags(serve, &params);
  AddThresholdMode(serve, &options);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err);
  ctx.log = std::make_shared<spdlog::logger>("orgmatch", sink);
  ctx.log->set_pattern("%l: %v");
  ctx.log->set_level(spdlog::level::from_str(ctx.log_level));

  try {
    if (*build) return CmdBuildIndex(ctx, out_path, version_tag, no_acronyms, out);
    if (*match) return CmdMatch(ctx, affiliation, params, options, trace, out);
    if (*batch) return CmdBatch(ctx, batch_in, batch_out, workers, params, options, out);
    if (*eval) return CmdEval(ctx, eval_flags, params, options, out);
    if (*tune) return CmdTune(ctx, tune_flags, params, options, out);
    if (*validate) return CmdDatasetValidate(dataset_path, out);
    if (*stats) return CmdDatasetStats(dataset_path, out, err);
    if (*refresh) return CmdDatasetRefresh(ctx, dataset_path, refresh_out, refresh_log, out);
    if (*serve) {
      service_options.defaults = params;
      service_options.match_options = options;
      return CmdServe(ctx, service_options, out);
    }
  } catch (const ValidationError &e) {
    err << "error: " << e.what() << '\n';
    return kExitFindings;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace orgmatch::cli
