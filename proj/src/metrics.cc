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

#include "scgc/metrics.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace scgc {
namespace {

// Dense relabeling of an arbitrary label vector to 0..k-1, ordered by value.
struct Compacted {
  std::vector<int> ids;
  std::vector<int> values;  // values[id] = original label
};

Compacted Compact(std::span<const int> labels) {
  Compacted out;
  out.values.assign(labels.begin(), labels.end());
  std::sort(out.values.begin(), out.values.end());
  out.values.erase(std::unique(out.values.begin(), out.values.end()),
                   out.values.end());
  out.ids.reserve(labels.size());
  for (int l : labels) {
    out.ids.push_back(static_cast<int>(
        std::lower_bound(out.values.begin(), out.values.end(), l) -
        out.values.begin()));
  }
  return out;
}

struct Contingency {
  Compacted truth;
  Compacted pred;
  // counts[cluster][class]
  std::vector<std::vector<long long>> counts;
  std::vector<long long> class_sizes;
  std::vector<long long> cluster_sizes;
  long long n = 0;
};

Contingency BuildContingency(std::span<const int> y_true,
                             std::span<const int> y_pred) {
  if (y_true.size() != y_pred.size()) {
    throw std::invalid_argument("label vectors differ in length (" +
                                std::to_string(y_true.size()) + " vs " +
                                std::to_string(y_pred.size()) + ")");
  }
  if (y_true.empty()) throw std::invalid_argument("label vectors are empty");
  Contingency c;
  c.truth = Compact(y_true);
  c.pred = Compact(y_pred);
  const std::size_t classes = c.truth.values.size();
  const std::size_t clusters = c.pred.values.size();
  c.counts.assign(clusters, std::vector<long long>(classes, 0));
  c.class_sizes.assign(classes, 0);
  c.cluster_sizes.assign(clusters, 0);
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    ++c.counts[c.pred.ids[i]][c.truth.ids[i]];
    ++c.class_sizes[c.truth.ids[i]];
    ++c.cluster_sizes[c.pred.ids[i]];
  }
  c.n = static_cast<long long>(y_true.size());
  return c;
}

double Comb2(long long x) { return 0.5 * static_cast<double>(x) * (x - 1); }

struct Matching {
  std::vector<int> class_of_cluster;  // -1 when matched to padding
  long long matched = 0;
};

Matching MatchClusters(const Contingency& c) {
  const int classes = static_cast<int>(c.class_sizes.size());
  const int clusters = static_cast<int>(c.cluster_sizes.size());
  const int m = std::max(classes, clusters);
  // Agreement count dominates; F1 (scaled below one unit of count in total)
  // only separates equally accurate matchings.
  const double lambda = 1.0 / static_cast<double>(classes + 1);
  DenseMatrix cost = DenseMatrix::Zero(m, m);
  for (int k = 0; k < clusters; ++k) {
    for (int j = 0; j < classes; ++j) {
      const double count = static_cast<double>(c.counts[k][j]);
      const double f1 =
          2.0 * count /
          static_cast<double>(c.cluster_sizes[k] + c.class_sizes[j]);
      cost(k, j) = -(count + lambda * f1);
    }
  }
  const std::vector<int> assignment = HungarianAssignment(cost);
  Matching out;
  out.class_of_cluster.assign(clusters, -1);
  for (int k = 0; k < clusters; ++k) {
    if (assignment[k] < classes) {
      out.class_of_cluster[k] = assignment[k];
      out.matched += c.counts[k][assignment[k]];
    }
  }
  return out;
}

}  // namespace

std::vector<int> HungarianAssignment(const DenseMatrix& cost) {
  if (cost.rows() != cost.cols()) {
    throw std::invalid_argument("assignment cost matrix must be square");
  }
  if (!cost.allFinite()) {
    throw std::invalid_argument("assignment cost matrix has non-finite entries");
  }
  const int n = static_cast<int>(cost.rows());
  if (n == 0) return {};
  const double inf = std::numeric_limits<double>::infinity();
  // 1-based potentials; p[j] is the row matched to column j.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const int i0 = p[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> assignment(n, -1);
  for (int j = 1; j <= n; ++j) assignment[p[j] - 1] = j - 1;
  return assignment;
}

LabelAlignment AlignLabels(std::span<const int> y_true,
                           std::span<const int> y_pred) {
  const Contingency c = BuildContingency(y_true, y_pred);
  const Matching match = MatchClusters(c);
  // Unmatched clusters get labels outside y_true's range.
  const int spare = c.truth.values.back() + 1;
  LabelAlignment out;
  out.matched = static_cast<int>(match.matched);
  out.mapped.reserve(y_pred.size());
  for (int id : c.pred.ids) {
    const int cls = match.class_of_cluster[id];
    out.mapped.push_back(cls >= 0 ? c.truth.values[cls] : spare + id);
  }
  return out;
}

double ClusteringAccuracy(std::span<const int> y_true,
                          std::span<const int> y_pred) {
  const Contingency c = BuildContingency(y_true, y_pred);
  return static_cast<double>(MatchClusters(c).matched) /
         static_cast<double>(c.n);
}

double NormalizedMutualInfo(std::span<const int> y_true,
                            std::span<const int> y_pred) {
  const Contingency c = BuildContingency(y_true, y_pred);
  const double n = static_cast<double>(c.n);
  auto entropy = [n](const std::vector<long long>& sizes) {
    double h = 0.0;
    for (long long s : sizes) {
      if (s > 0) {
        const double p = static_cast<double>(s) / n;
        h -= p * std::log(p);
      }
    }
    return h;
  };
  const double h_true = entropy(c.class_sizes);
  const double h_pred = entropy(c.cluster_sizes);
  if (h_true == 0.0 && h_pred == 0.0) return 0.0;
  double mi = 0.0;
  for (std::size_t k = 0; k < c.cluster_sizes.size(); ++k) {
    for (std::size_t j = 0; j < c.class_sizes.size(); ++j) {
      const long long nkj = c.counts[k][j];
      if (nkj == 0) continue;
      const double p = static_cast<double>(nkj) / n;
      mi += p * std::log(n * static_cast<double>(nkj) /
                         (static_cast<double>(c.cluster_sizes[k]) *
                          static_cast<double>(c.class_sizes[j])));
    }
  }
  const double nmi = mi / (0.5 * (h_true + h_pred));
  return std::clamp(nmi, 0.0, 1.0);
}

double AdjustedRandIndex(std::span<const int> y_true,
                         std::span<const int> y_pred) {
  const Contingency c = BuildContingency(y_true, y_pred);
  double index = 0.0;
  for (const auto& row : c.counts) {
    for (long long x : row) index += Comb2(x);
  }
  double sum_true = 0.0;
  for (long long s : c.class_sizes) sum_true += Comb2(s);
  double sum_pred = 0.0;
  for (long long s : c.cluster_sizes) sum_pred += Comb2(s);
  const double total = Comb2(c.n);
  if (total == 0.0) return 1.0;
  const double expected = sum_true * sum_pred / total;
  const double max_index = 0.5 * (sum_true + sum_pred);
  // Both partitions trivial in the same way (all-in-one or all singletons).
  if (max_index == expected) return 1.0;
  return (index - expected) / (max_index - expected);
}

double MacroF1Aligned(std::span<const int> y_true,
                      std::span<const int> y_pred) {
  const Contingency c = BuildContingency(y_true, y_pred);
  const Matching match = MatchClusters(c);
  const std::size_t classes = c.class_sizes.size();
  double total = 0.0;
  for (std::size_t k = 0; k < match.class_of_cluster.size(); ++k) {
    const int j = match.class_of_cluster[k];
    if (j < 0) continue;
    total += 2.0 * static_cast<double>(c.counts[k][j]) /
             static_cast<double>(c.cluster_sizes[k] + c.class_sizes[j]);
  }
  return total / static_cast<double>(classes);
}

RunMetrics EvaluateClustering(std::span<const int> y_true,
                              std::span<const int> y_pred) {
  return RunMetrics{ClusteringAccuracy(y_true, y_pred),
                    NormalizedMutualInfo(y_true, y_pred),
                    AdjustedRandIndex(y_true, y_pred),
                    MacroF1Aligned(y_true, y_pred)};
}

MetricSummary Summarize(std::span<const double> values) {
  MetricSummary s;
  s.values.assign(values.begin(), values.end());
  if (values.empty()) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  // Rounding in the sum must not push the mean outside the observed range.
  s.mean = std::clamp(sum / static_cast<double>(values.size()), *lo, *hi);
  double sq = 0.0;
  for (double v : values) sq += (v - s.mean) * (v - s.mean);
  s.std = std::sqrt(sq / static_cast<double>(values.size()));
  return s;
}

ClusteringReport Aggregate(std::span<const RunMetrics> runs) {
  ClusteringReport report;
  report.per_run.assign(runs.begin(), runs.end());
  std::vector<double> acc, nmi, ari, f1;
  for (const RunMetrics& r : runs) {
    acc.push_back(r.acc);
    nmi.push_back(r.nmi);
    ari.push_back(r.ari);
    f1.push_back(r.f1);
  }
  report.acc = Summarize(acc);
  report.nmi = Summarize(nmi);
  report.ari = Summarize(ari);
  report.f1 = Summarize(f1);
  return report;
}

}  // namespace scgc
