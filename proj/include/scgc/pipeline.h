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

// End-to-end experiment runs: filter, train, fuse, cluster, score. Shared by
// the command-line tool and the acceptance suite.

#ifndef SCGC_PIPELINE_H_
#define SCGC_PIPELINE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scgc/data_io.h"
#include "scgc/graph.h"
#include "scgc/kmeans.h"
#include "scgc/metrics.h"
#include "scgc/model.h"

namespace scgc {

enum class AblationMode {
  kNone,
  kNoFilter,       // t = 0
  kNoScm,          // k-means directly on the smoothed attributes
  kSharedEncoder,  // one encoder for both views
  kNoNoise,        // sigma = 0
  kDropEdges,      // second view from a graph with 10% of edges removed
  kAddEdges,       // second view from a graph with 10% extra edges
  kDiffusion,      // second view from a sparsified PPR diffusion graph
};

std::optional<AblationMode> ParseAblationMode(std::string_view name);
std::string_view AblationModeName(AblationMode mode);

struct ExperimentConfig {
  TrainConfig train;
  AblationMode ablation = AblationMode::kNone;
  int runs = 10;
  int kmeans_restarts = 10;
  int kmeans_max_iter = 300;
  bool row_normalize_features = false;
  double augment_fraction = 0.1;
  double diffusion_teleport = 0.2;
  // Upper bound on concurrently executing runs.
  int threads = 1;

  // Throws ConfigError on invalid settings.
  void Validate() const;
};

// Hyperparameters tuned per benchmark (learning rate and filter depth); any
// unrecognized name gets the CORA settings.
TrainConfig DatasetDefaults(std::string_view dataset_name);

// SCGC_THREADS if set to a positive integer, otherwise 1.
int ThreadsFromEnvironment();

struct RunOutcome {
  std::uint64_t seed = 0;
  RunMetrics metrics;
  double train_seconds = 0.0;  // filtering + optimization for this run
  std::vector<double> loss_history;
  DenseMatrix embeddings;
  std::vector<int> predicted;
};

struct ExperimentResult {
  std::vector<RunOutcome> runs;
  ClusteringReport report;
};

// Runs seeds seed, seed+1, ..., seed+runs-1. Per-run results are stored by
// run index, so the outcome does not depend on thread scheduling.
ExperimentResult RunExperiment(const Graph& graph,
                               const ExperimentConfig& config);

// The filtering + training part of a single run, without clustering.
// Returns the embeddings that would be clustered.
DenseMatrix EmbedOnce(const Graph& graph, const ExperimentConfig& config,
                      std::uint64_t seed,
                      std::vector<double>* loss_history = nullptr);

// Config, seed and convention entries for the report.
ReportMetadata DescribeExperiment(const std::string& dataset,
                                  const ExperimentConfig& config,
                                  const ExperimentResult& result);

}  // namespace scgc

#endif  // SCGC_PIPELINE_H_
