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

#include "scgc/pipeline.h"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <thread>

#include "scgc/errors.h"
#include "scgc/filter.h"

namespace scgc {
namespace {

constexpr std::pair<AblationMode, std::string_view> kModeNames[] = {
    {AblationMode::kNone, "none"},
    {AblationMode::kNoFilter, "no_filter"},
    {AblationMode::kNoScm, "no_scm"},
    {AblationMode::kSharedEncoder, "shared_encoder"},
    {AblationMode::kNoNoise, "no_noise"},
    {AblationMode::kDropEdges, "drop"},
    {AblationMode::kAddEdges, "add"},
    {AblationMode::kDiffusion, "diffusion"},
};

bool SkipsTraining(const ExperimentConfig& config) {
  return config.ablation == AblationMode::kNoScm || config.train.depth == 0;
}

bool IsGraphAugmentation(AblationMode mode) {
  return mode == AblationMode::kDropEdges || mode == AblationMode::kAddEdges ||
         mode == AblationMode::kDiffusion;
}

// Second-view graph for the augmentation ablations.
SparseAdjacency AugmentedGraph(const SparseAdjacency& a,
                               const ExperimentConfig& config,
                               std::uint64_t seed) {
  switch (config.ablation) {
    case AblationMode::kDropEdges:
      return DropEdges(a, config.augment_fraction, seed);
    case AblationMode::kAddEdges:
      return AddEdges(a, config.augment_fraction, seed);
    case AblationMode::kDiffusion: {
      const double avg_degree =
          a.num_nodes() == 0 ? 0.0
                             : 2.0 * static_cast<double>(a.num_undirected_edges()) /
                                   static_cast<double>(a.num_nodes());
      const int k = std::max(1, static_cast<int>(std::lround(avg_degree)));
      return SparsifyDiffusion(PprDiffusion(a, config.diffusion_teleport), k);
    }
    default:
      return a;
  }
}

}  // namespace

std::optional<AblationMode> ParseAblationMode(std::string_view name) {
  for (const auto& [mode, text] : kModeNames) {
    if (text == name) return mode;
  }
  return std::nullopt;
}

std::string_view AblationModeName(AblationMode mode) {
  for (const auto& [m, text] : kModeNames) {
    if (m == mode) return text;
  }
  return "unknown";
}

void ExperimentConfig::Validate() const {
  if (runs < 1) throw ConfigError("runs must be >= 1");
  if (kmeans_restarts < 1) throw ConfigError("k-means restarts must be >= 1");
  if (kmeans_max_iter < 1) throw ConfigError("k-means max_iter must be >= 1");
  if (threads < 1) throw ConfigError("threads must be >= 1");
  if (train.depth < 0) throw ConfigError("encoder depth must be >= 0");
  if (SkipsTraining(*this)) {
    if (train.t < 0) throw ConfigError("filter layer count t must be >= 0");
  } else {
    train.Validate();
  }
  if (IsGraphAugmentation(ablation)) {
    if (!(augment_fraction >= 0.0 && augment_fraction < 1.0)) {
      throw ConfigError("augmentation fraction must lie in [0, 1)");
    }
    if (!(diffusion_teleport > 0.0 && diffusion_teleport <= 1.0)) {
      throw ConfigError("diffusion teleport rate must lie in (0, 1]");
    }
  }
}

TrainConfig DatasetDefaults(std::string_view dataset_name) {
  std::string name(dataset_name);
  std::transform(name.begin(), name.end(), name.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  TrainConfig config;
  config.epochs = 400;
  config.sigma = 0.01;
  config.embed_dim = 500;
  config.learning_rate = 1e-3;
  config.t = 2;
  if (name == "corafull") {
    config.learning_rate = 1e-4;
  } else if (name == "citeseer") {
    config.learning_rate = 5e-5;
  } else if (name == "amap") {
    config.learning_rate = 1e-5;
    config.t = 5;
  } else if (name == "bat" || name == "uat") {
    config.t = 3;
  } else if (name == "eat") {
    config.t = 5;
  }
  return config;
}

int ThreadsFromEnvironment() {
  const char* env = std::getenv("SCGC_THREADS");
  if (env == nullptr) return 1;
  const int value = std::atoi(env);
  return value > 0 ? value : 1;
}

DenseMatrix EmbedOnce(const Graph& graph, const ExperimentConfig& config,
                      std::uint64_t seed, std::vector<double>* loss_history) {
  TrainConfig train = config.train;
  train.seed = seed;
  DenseMatrix x = graph.attributes;
  if (config.row_normalize_features) RowNormalizeFeatures(x);

  switch (config.ablation) {
    case AblationMode::kNoFilter:
      train.t = 0;
      break;
    case AblationMode::kSharedEncoder:
      train.unshared_encoders = false;
      break;
    case AblationMode::kNoNoise:
      train.noise_enabled = false;
      break;
    case AblationMode::kDropEdges:
    case AblationMode::kAddEdges:
    case AblationMode::kDiffusion:
      // The graph augmentation replaces unshared encoders and noise.
      train.unshared_encoders = false;
      train.noise_enabled = false;
      break;
    default:
      break;
  }

  if (SkipsTraining(config)) return LowPassDenoise(graph.adjacency, x, train.t);

  const SparseAdjacency a_hat = AddSelfLoops(graph.adjacency);
  const ViewInput x_s = SmoothedInput(graph.adjacency, x, train.t);
  TrainResult result;
  if (IsGraphAugmentation(config.ablation)) {
    const SparseAdjacency augmented =
        AugmentedGraph(graph.adjacency, config, seed);
    result = TrainOnInputs(x_s, SmoothedInput(augmented, x, train.t), a_hat,
                           train);
  } else {
    result = TrainOnInputs(x_s, x_s, a_hat, train);
  }
  if (loss_history != nullptr) *loss_history = std::move(result.loss_history);
  return std::move(result.embeddings);
}

ExperimentResult RunExperiment(const Graph& graph,
                               const ExperimentConfig& config) {
  config.Validate();
  graph.Validate();
  if (!graph.labels.has_value() || !graph.num_classes.has_value()) {
    throw DataError("graph has no ground-truth labels to evaluate against");
  }
  const int k = *graph.num_classes;

  ExperimentResult result;
  result.runs.resize(config.runs);
  std::vector<std::exception_ptr> errors(config.runs);

  auto run_one = [&](int r) {
    try {
      RunOutcome& out = result.runs[r];
      out.seed = config.train.seed + static_cast<std::uint64_t>(r);
      const auto start = std::chrono::steady_clock::now();
      out.embeddings = EmbedOnce(graph, config, out.seed, &out.loss_history);
      out.train_seconds = std::chrono::duration<double>(
                              std::chrono::steady_clock::now() - start)
                              .count();
      const KMeansResult clusters =
          KMeans(out.embeddings, k,
                 KMeansOptions{config.kmeans_restarts, config.kmeans_max_iter,
                               out.seed, 1});
      out.predicted = clusters.labels;
      out.metrics = EvaluateClustering(*graph.labels, out.predicted);
    } catch (...) {
      errors[r] = std::current_exception();
    }
  };

  const int threads = std::min(config.threads, config.runs);
  if (threads <= 1) {
    for (int r = 0; r < config.runs; ++r) run_one(r);
  } else {
    std::atomic<int> next{0};
    std::vector<std::jthread> pool;
    for (int w = 0; w < threads; ++w) {
      pool.emplace_back([&] {
        for (int r = next++; r < config.runs; r = next++) run_one(r);
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::vector<RunMetrics> metrics;
  for (const RunOutcome& run : result.runs) metrics.push_back(run.metrics);
  result.report = Aggregate(metrics);
  return result;
}

ReportMetadata DescribeExperiment(const std::string& dataset,
                                  const ExperimentConfig& config,
                                  const ExperimentResult& result) {
  ReportMetadata meta;
  const TrainConfig& t = config.train;
  auto flag = [](bool b) { return std::string(b ? "true" : "false"); };
  meta.config = {
      {"dataset", dataset},
      {"ablation", std::string(AblationModeName(config.ablation))},
      {"epochs", std::to_string(t.epochs)},
      {"learning_rate", FormatDouble(t.learning_rate)},
      {"t", std::to_string(t.t)},
      {"sigma", FormatDouble(t.sigma)},
      {"embed_dim", std::to_string(t.embed_dim)},
      {"depth", std::to_string(t.depth)},
      {"unshared_encoders", flag(t.unshared_encoders)},
      {"noise_enabled", flag(t.noise_enabled)},
      {"bias", flag(t.bias)},
      {"adam.beta1", FormatDouble(t.adam.beta1)},
      {"adam.beta2", FormatDouble(t.adam.beta2)},
      {"adam.eps", FormatDouble(t.adam.eps)},
      {"init", "glorot_uniform"},
      {"eval_pass", t.eval_noise ? "noised" : "noise_free"},
      {"base_seed", std::to_string(t.seed)},
      {"runs", std::to_string(config.runs)},
      {"kmeans.restarts", std::to_string(config.kmeans_restarts)},
      {"kmeans.max_iter", std::to_string(config.kmeans_max_iter)},
      {"kmeans.init", "k-means++"},
      {"row_normalize_features", flag(config.row_normalize_features)},
  };
  if (IsGraphAugmentation(config.ablation)) {
    meta.config.emplace_back("augment_fraction",
                             FormatDouble(config.augment_fraction));
    meta.config.emplace_back("diffusion_teleport",
                             FormatDouble(config.diffusion_teleport));
  }
  std::string seconds;
  for (const RunOutcome& run : result.runs) {
    meta.seeds.push_back(run.seed);
    if (!seconds.empty()) seconds += ' ';
    seconds += FormatDouble(run.train_seconds);
  }
  meta.timing = {{"train_seconds", seconds}};
  return meta;
}

}  // namespace scgc
