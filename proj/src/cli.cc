// Copyright 2026 The SCGC Authors.
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

#include "scgc/cli.h"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11/CLI11.hpp>

#include "scgc/data_io.h"
#include "scgc/errors.h"
#include "scgc/kmeans.h"
#include "scgc/pipeline.h"

namespace scgc {
namespace {

namespace fs = std::filesystem;

struct Flags {
  std::optional<std::string> dataset;
  std::optional<std::string> sbm;
  std::optional<int> epochs;
  std::optional<double> lr;
  std::optional<int> t;
  std::optional<double> sigma;
  std::optional<int> dim;
  std::optional<int> depth;
  std::optional<int> runs;
  std::optional<std::uint64_t> seed;
  std::optional<int> kmeans_restarts;
  std::string out = "scgc_out";
  std::optional<std::string> export_embeddings;
  bool row_normalize = false;
  bool eval_noise = false;
  std::string ablate;
  std::string sweep_param;
  std::vector<std::string> values;
  int repeats = 3;
  std::string embeddings;
  std::string labels;
  int k = 0;
};

struct Input {
  std::string name;
  Graph graph;
};

void AddInputOptions(CLI::App* cmd, Flags& f) {
  auto* dataset = cmd->add_option(
      "--dataset", f.dataset,
      "Dataset directory with edges.txt, features.txt and labels.txt");
  auto* sbm = cmd->add_option(
      "--sbm", f.sbm,
      "Synthetic block model, e.g. \"blocks=4,nodes=50,p_in=0.3,p_out=0.02,"
      "dim=16,shift=1,seed=0\" (\"default\" for all defaults)");
  dataset->excludes(sbm);
}

void AddTrainOptions(CLI::App* cmd, Flags& f) {
  AddInputOptions(cmd, f);
  cmd->add_option("--epochs", f.epochs, "Training epochs [400]");
  cmd->add_option("--lr", f.lr, "Adam learning rate [per dataset, else 1e-3]");
  cmd->add_option("--t", f.t, "Low-pass filter layers [per dataset, else 2]");
  cmd->add_option("--sigma", f.sigma, "Embedding noise std [0.01]");
  cmd->add_option("--dim", f.dim, "Embedding dimension [500]");
  cmd->add_option("--depth", f.depth,
                  "Linear layers per encoder; 0 skips training [1]");
  cmd->add_option("--runs", f.runs, "Independent seeds [10]");
  cmd->add_option("--seed", f.seed, "Base seed; run r uses seed + r [0]");
  cmd->add_option("--kmeans-restarts", f.kmeans_restarts,
                  "k-means++ restarts per run [10]");
  cmd->add_option("--out", f.out, "Output directory")->capture_default_str();
  cmd->add_option("--export-embeddings", f.export_embeddings,
                  "Write the first run's embeddings to this file");
  cmd->add_flag("--row-normalize-features", f.row_normalize,
                "Scale attribute rows to unit l2 norm before filtering");
  cmd->add_flag("--eval-noise", f.eval_noise,
                "Keep a noise draw on the second view in the final fused "
                "embeddings");
}

std::string ReadSbmSpec(const std::string& text) {
  return text == "default" ? std::string() : text;
}

Input LoadInput(const Flags& f) {
  if (f.dataset.has_value()) {
    DatasetBundle bundle = LoadDataset(*f.dataset);
    return Input{bundle.name, std::move(bundle.graph)};
  }
  if (f.sbm.has_value()) {
    DatasetBundle bundle = GenerateSbm(SbmSpec::Parse(ReadSbmSpec(*f.sbm)));
    return Input{"sbm", std::move(bundle.graph)};
  }
  throw ConfigError("one of --dataset or --sbm is required");
}

ExperimentConfig BuildConfig(const Flags& f, const std::string& dataset) {
  ExperimentConfig config;
  config.train = DatasetDefaults(dataset);
  if (f.epochs) config.train.epochs = *f.epochs;
  if (f.lr) config.train.learning_rate = *f.lr;
  if (f.t) config.train.t = *f.t;
  if (f.sigma) config.train.sigma = *f.sigma;
  if (f.dim) config.train.embed_dim = *f.dim;
  if (f.depth) config.train.depth = *f.depth;
  config.train.seed = f.seed.value_or(0);
  if (f.runs) config.runs = *f.runs;
  if (f.kmeans_restarts) config.kmeans_restarts = *f.kmeans_restarts;
  config.row_normalize_features = f.row_normalize;
  config.train.eval_noise = f.eval_noise;
  config.threads = ThreadsFromEnvironment();
  return config;
}

std::string Percent(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", 100.0 * v);
  return buf;
}

void PrintSummary(std::ostream& out, const ClusteringReport& report) {
  const std::pair<const char*, const MetricSummary*> rows[] = {
      {"ACC", &report.acc},
      {"NMI", &report.nmi},
      {"ARI", &report.ari},
      {"F1 ", &report.f1}};
  for (const auto& [name, s] : rows) {
    out << name << "  " << Percent(s->mean) << " +/- " << Percent(s->std)
        << "\n";
  }
}

void PrintRuns(std::ostream& out, const ExperimentResult& result) {
  for (const RunOutcome& run : result.runs) {
    out << "seed " << run.seed << ": acc " << Percent(run.metrics.acc)
        << " nmi " << Percent(run.metrics.nmi) << " ari "
        << Percent(run.metrics.ari) << " f1 " << Percent(run.metrics.f1)
        << " (" << FormatDouble(run.train_seconds) << " s)\n";
  }
}

fs::path PrepareOutDir(const Flags& f) {
  fs::path dir(f.out);
  fs::create_directories(dir);
  return dir;
}

int FinishExperiment(const Flags& f, const std::string& dataset,
                     const ExperimentConfig& config,
                     const ExperimentResult& result,
                     const std::string& report_name, std::ostream& out) {
  const fs::path dir = PrepareOutDir(f);
  const fs::path report_path = dir / report_name;
  ExportReport(result.report, DescribeExperiment(dataset, config, result),
               report_path);
  if (f.export_embeddings) {
    ExportEmbeddings(result.runs.front().embeddings, *f.export_embeddings);
    out << "embeddings (seed " << result.runs.front().seed << ") -> "
        << *f.export_embeddings << "\n";
  }
  PrintRuns(out, result);
  PrintSummary(out, result.report);
  out << "report -> " << report_path.string() << "\n";
  return kExitOk;
}

int CmdTrain(const Flags& f, std::ostream& out) {
  const Input input = LoadInput(f);
  const ExperimentConfig config = BuildConfig(f, input.name);
  config.Validate();
  const ExperimentResult result = RunExperiment(input.graph, config);
  return FinishExperiment(f, input.name, config, result, "report.txt", out);
}

int CmdAblate(const Flags& f, std::ostream& out) {
  const std::optional<AblationMode> mode = ParseAblationMode(f.ablate);
  if (!mode.has_value() || *mode == AblationMode::kNone) {
    throw ConfigError(
        "unknown ablation mode \"" + f.ablate +
        "\"; expected no_filter, no_scm, shared_encoder, no_noise, drop, add "
        "or diffusion");
  }
  const Input input = LoadInput(f);
  ExperimentConfig config = BuildConfig(f, input.name);
  config.ablation = *mode;
  config.Validate();
  const ExperimentResult result = RunExperiment(input.graph, config);
  return FinishExperiment(f, input.name, config, result,
                          "ablate_" + f.ablate + ".txt", out);
}

template <typename T>
T ParseSweepValue(const std::string& param, const std::string& text) {
  T value{};
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("bad value \"" + text + "\" for sweep parameter " +
                      param);
  }
  return value;
}

int CmdSweep(const Flags& f, std::ostream& out) {
  const std::string& param = f.sweep_param;
  if (param != "t" && param != "sigma" && param != "depth") {
    throw ConfigError("sweep parameter must be t, sigma or depth, got \"" +
                      param + "\"");
  }
  std::vector<std::string> values;
  for (const std::string& v : f.values) {
    if (!v.empty()) values.push_back(v);
  }
  if (values.empty()) throw ConfigError("--values must list at least one value");

  const Input input = LoadInput(f);
  const ExperimentConfig base = BuildConfig(f, input.name);
  std::vector<ExperimentConfig> configs;
  for (const std::string& v : values) {
    ExperimentConfig config = base;
    if (param == "t") {
      config.train.t = ParseSweepValue<int>(param, v);
    } else if (param == "sigma") {
      config.train.sigma = ParseSweepValue<double>(param, v);
    } else {
      config.train.depth = ParseSweepValue<int>(param, v);
    }
    config.Validate();
    configs.push_back(config);
  }

  const fs::path dir = PrepareOutDir(f);
  std::ostringstream summary;
  summary << "# sweep over " << param << " on " << input.name << "\n"
          << "# value acc_mean acc_std nmi_mean nmi_std ari_mean ari_std "
             "f1_mean f1_std\n";
  for (std::size_t i = 0; i < values.size(); ++i) {
    const ExperimentResult result = RunExperiment(input.graph, configs[i]);
    const fs::path path = dir / ("sweep_" + param + "_" + values[i] + ".txt");
    ExportReport(result.report,
                 DescribeExperiment(input.name, configs[i], result), path);
    const ClusteringReport& r = result.report;
    summary << values[i];
    for (const MetricSummary* s : {&r.acc, &r.nmi, &r.ari, &r.f1}) {
      summary << ' ' << FormatDouble(s->mean) << ' ' << FormatDouble(s->std);
    }
    summary << "\n";
    out << param << " = " << values[i] << ": ACC " << Percent(r.acc.mean)
        << " +/- " << Percent(r.acc.std) << ", NMI " << Percent(r.nmi.mean)
        << " +/- " << Percent(r.nmi.std) << "\n";
  }
  const fs::path summary_path = dir / ("sweep_" + param + ".txt");
  std::ofstream file(summary_path);
  file << summary.str();
  if (!file) throw DataError("cannot write " + summary_path.string());
  out << "summary -> " << summary_path.string() << "\n";
  return kExitOk;
}

constexpr const char* kBenchBoundary =
    "low-pass filtering plus all training epochs and the final embedding "
    "pass; excludes dataset parsing, k-means and metrics";

int CmdBench(const Flags& f, std::ostream& out) {
  if (f.repeats < 1) throw ConfigError("--repeats must be >= 1");
  const Input input = LoadInput(f);
  const ExperimentConfig config = BuildConfig(f, input.name);
  config.Validate();

  std::vector<double> seconds;
  for (int r = 0; r < f.repeats; ++r) {
    const auto start = std::chrono::steady_clock::now();
    EmbedOnce(input.graph, config, config.train.seed);
    seconds.push_back(std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count());
    out << "repeat " << r << ": " << FormatDouble(seconds.back()) << " s\n";
  }
  std::vector<double> sorted = seconds;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t mid = sorted.size() / 2;
  const double median = sorted.size() % 2 == 1
                            ? sorted[mid]
                            : 0.5 * (sorted[mid - 1] + sorted[mid]);

  const ReportMetadata meta =
      DescribeExperiment(input.name, config, ExperimentResult{});
  std::ostringstream doc;
  doc << "format = scgc-bench-1\n"
      << "repeats = " << f.repeats << "\n";
  for (const auto& [key, value] : meta.config) {
    if (key == "runs" || key.rfind("kmeans.", 0) == 0) continue;
    doc << "config." << key << " = " << value << "\n";
  }
  doc << "timing.boundary = " << kBenchBoundary << "\n"
      << "timing.seconds =";
  for (double s : seconds) doc << ' ' << FormatDouble(s);
  doc << "\ntiming.median_seconds = " << FormatDouble(median) << "\n";

  const fs::path path = PrepareOutDir(f) / "bench.txt";
  std::ofstream file(path);
  file << doc.str();
  if (!file) throw DataError("cannot write " + path.string());
  out << "median " << FormatDouble(median) << " s over " << f.repeats
      << " repeats of " << config.train.epochs << " epochs (" << kBenchBoundary
      << ")\n"
      << "bench -> " << path.string() << "\n";
  return kExitOk;
}

int CmdSbm(const Flags& f, std::ostream& out) {
  if (!f.sbm.has_value()) throw ConfigError("--sbm SPEC is required");
  const SbmSpec spec = SbmSpec::Parse(ReadSbmSpec(*f.sbm));
  DatasetBundle bundle = GenerateSbm(spec);
  const fs::path dir(f.out);
  SaveDataset(bundle, dir);
  out << "SBM " << spec.ToString() << ": "
      << bundle.graph.adjacency.num_nodes() << " nodes, "
      << bundle.graph.adjacency.num_undirected_edges() << " edges -> "
      << dir.string() << "\n";
  return kExitOk;
}

int CmdEval(const Flags& f, std::ostream& out) {
  if (f.k < 1) throw ConfigError("--k must be >= 1");
  const int runs = f.runs.value_or(10);
  const int restarts = f.kmeans_restarts.value_or(10);
  if (runs < 1) throw ConfigError("--runs must be >= 1");
  const std::uint64_t seed = f.seed.value_or(0);

  const DenseMatrix z = LoadEmbeddings(f.embeddings);
  const std::vector<int> labels = LoadLabels(f.labels);
  if (static_cast<std::size_t>(z.rows()) != labels.size()) {
    throw DataError("embeddings have " + std::to_string(z.rows()) +
                    " rows but " + f.labels + " has " +
                    std::to_string(labels.size()) + " labels");
  }

  ExperimentResult result;
  std::vector<RunMetrics> metrics;
  for (int r = 0; r < runs; ++r) {
    RunOutcome run;
    run.seed = seed + static_cast<std::uint64_t>(r);
    run.predicted =
        KMeans(z, f.k, KMeansOptions{restarts, 300, run.seed, 1}).labels;
    run.metrics = EvaluateClustering(labels, run.predicted);
    metrics.push_back(run.metrics);
    result.runs.push_back(std::move(run));
  }
  result.report = Aggregate(metrics);

  ReportMetadata meta;
  meta.config = {{"embeddings", fs::path(f.embeddings).filename().string()},
                 {"k", std::to_string(f.k)},
                 {"runs", std::to_string(runs)},
                 {"base_seed", std::to_string(seed)},
                 {"kmeans.restarts", std::to_string(restarts)},
                 {"kmeans.max_iter", "300"},
                 {"kmeans.init", "k-means++"}};
  for (const RunOutcome& run : result.runs) meta.seeds.push_back(run.seed);

  const fs::path path = PrepareOutDir(f) / "eval_report.txt";
  ExportReport(result.report, meta, path);
  PrintSummary(out, result.report);
  out << "report -> " << path.string() << "\n";
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  Flags f;
  CLI::App app{"Simple contrastive graph clustering"};
  app.name("scgc");
  app.require_subcommand(1);

  auto* train = app.add_subcommand("train", "Train, cluster and score");
  AddTrainOptions(train, f);

  auto* ablate = app.add_subcommand("ablate", "Run one ablation variant");
  AddTrainOptions(ablate, f);
  ablate
      ->add_option("--ablate", f.ablate,
                   "no_filter, no_scm, shared_encoder, no_noise, drop, add "
                   "or diffusion")
      ->required();

  auto* sweep = app.add_subcommand("sweep", "Sensitivity sweep of one setting");
  AddTrainOptions(sweep, f);
  sweep->add_option("--sweep", f.sweep_param, "t, sigma or depth")->required();
  sweep->add_option("--values", f.values, "Comma-separated values")
      ->delimiter(',')
      ->required();

  auto* bench = app.add_subcommand("bench", "Time filtering plus training");
  AddTrainOptions(bench, f);
  bench->add_option("--repeats", f.repeats, "Timed repetitions")
      ->capture_default_str();

  auto* sbm = app.add_subcommand("sbm", "Write a synthetic dataset");
  sbm->add_option("--sbm", f.sbm, "Block model spec (see train --help)")
      ->required();
  sbm->add_option("--out", f.out, "Output dataset directory")
      ->capture_default_str();

  auto* eval = app.add_subcommand("eval", "Cluster and score saved embeddings");
  eval->add_option("--embeddings", f.embeddings, "Embedding file")->required();
  eval->add_option("--labels", f.labels, "Labels file")->required();
  eval->add_option("--k", f.k, "Number of clusters")->required();
  eval->add_option("--runs", f.runs, "k-means seeds [10]");
  eval->add_option("--seed", f.seed, "Base seed [0]");
  eval->add_option("--kmeans-restarts", f.kmeans_restarts,
                   "k-means++ restarts per run [10]");
  eval->add_option("--out", f.out, "Output directory")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (train->parsed()) return CmdTrain(f, out);
    if (ablate->parsed()) return CmdAblate(f, out);
    if (sweep->parsed()) return CmdSweep(f, out);
    if (bench->parsed()) return CmdBench(f, out);
    if (sbm->parsed()) return CmdSbm(f, out);
    if (eval->parsed()) return CmdEval(f, out);
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const fs::filesystem_error& e) {
    err << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitConfig;
}

int RunCli(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return RunCli(args, std::cout, std::cerr);
}

}  // namespace scgc
