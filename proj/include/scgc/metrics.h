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

// External clustering metrics against ground-truth labels.
//
// Label values are arbitrary integers; they are compacted internally, so
// every metric is invariant to renaming predicted cluster ids.

#ifndef SCGC_METRICS_H_
#define SCGC_METRICS_H_

#include <span>
#include <string>
#include <vector>

#include "scgc/graph.h"

namespace scgc {

// Minimum-cost perfect matching on a square cost matrix (Kuhn-Munkres with
// potentials, O(n^3)). Returns assignment[row] = column. Throws
// std::invalid_argument on a non-square or non-finite matrix.
std::vector<int> HungarianAssignment(const DenseMatrix& cost);

// Best one-to-one match of predicted clusters onto true classes, maximizing
// the number of agreeing points. Among maximal matchings the one with the
// highest macro F1 is taken, which keeps ACC and F1 consistent and makes
// the choice independent of cluster naming.
struct LabelAlignment {
  std::vector<int> mapped;  // y_pred rewritten into y_true's label values
  int matched = 0;          // points whose mapped label equals y_true
};
LabelAlignment AlignLabels(std::span<const int> y_true,
                           std::span<const int> y_pred);

double ClusteringAccuracy(std::span<const int> y_true,
                          std::span<const int> y_pred);

// Mutual information over the arithmetic mean of the two entropies
// (natural log). Defined as 0 when both partitions are a single cluster.
double NormalizedMutualInfo(std::span<const int> y_true,
                            std::span<const int> y_pred);

double AdjustedRandIndex(std::span<const int> y_true,
                         std::span<const int> y_pred);

// Unweighted mean over the classes present in y_true of the per-class F1
// after alignment.
double MacroF1Aligned(std::span<const int> y_true, std::span<const int> y_pred);

struct RunMetrics {
  double acc = 0.0;
  double nmi = 0.0;
  double ari = 0.0;
  double f1 = 0.0;
};

RunMetrics EvaluateClustering(std::span<const int> y_true,
                              std::span<const int> y_pred);

struct MetricSummary {
  std::vector<double> values;
  double mean = 0.0;
  double std = 0.0;  // population standard deviation
};

MetricSummary Summarize(std::span<const double> values);

// Per-run metrics and their mean +- std.
struct ClusteringReport {
  std::vector<RunMetrics> per_run;
  MetricSummary acc;
  MetricSummary nmi;
  MetricSummary ari;
  MetricSummary f1;

  int runs() const { return static_cast<int>(per_run.size()); }
};

ClusteringReport Aggregate(std::span<const RunMetrics> runs);

}  // namespace scgc

#endif  // SCGC_METRICS_H_
