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

#include "scgc/kmeans.h"

#include <algorithm>
#include <atomic>
#include <random>
#include <string>
#include <thread>

#include "scgc/errors.h"
#include "scgc/random.h"

namespace scgc {
namespace {

double SquaredDistance(const DenseMatrix& a, Eigen::Index i,
                       const DenseMatrix& b, Eigen::Index j) {
  return (a.row(i) - b.row(j)).squaredNorm();
}

DenseMatrix SeedPlusPlus(const DenseMatrix& z, int k, std::mt19937_64& rng) {
  const Eigen::Index n = z.rows();
  DenseMatrix centers(k, z.cols());
  std::uniform_int_distribution<Eigen::Index> first(0, n - 1);
  centers.row(0) = z.row(first(rng));
  std::vector<double> closest(n);
  for (Eigen::Index i = 0; i < n; ++i) closest[i] = SquaredDistance(z, i, centers, 0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int c = 1; c < k; ++c) {
    double total = 0.0;
    for (double d : closest) total += d;
    Eigen::Index chosen = 0;
    if (total > 0.0) {
      double target = unit(rng) * total;
      chosen = n - 1;
      for (Eigen::Index i = 0; i < n; ++i) {
        target -= closest[i];
        if (target < 0.0) {
          chosen = i;
          break;
        }
      }
    } else {
      // All points coincide with chosen centers; any point will do.
      chosen = first(rng);
    }
    centers.row(c) = z.row(chosen);
    for (Eigen::Index i = 0; i < n; ++i) {
      closest[i] = std::min(closest[i], SquaredDistance(z, i, centers, c));
    }
  }
  return centers;
}

KMeansResult Lloyd(const DenseMatrix& z, int k, int max_iter,
                   std::mt19937_64& rng) {
  const Eigen::Index n = z.rows();
  KMeansResult result;
  result.centers = SeedPlusPlus(z, k, rng);
  result.labels.assign(n, -1);
  std::vector<double> dist(n);

  for (int iter = 0; iter < max_iter; ++iter) {
    bool changed = false;
    double inertia = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      int best = 0;
      double best_d = SquaredDistance(z, i, result.centers, 0);
      for (int c = 1; c < k; ++c) {
        const double d = SquaredDistance(z, i, result.centers, c);
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      if (result.labels[i] != best) changed = true;
      result.labels[i] = best;
      dist[i] = best_d;
      inertia += best_d;
    }
    result.inertia = inertia;
    result.inertia_trace.push_back(inertia);
    result.iterations = iter + 1;
    if (!changed) break;

    DenseMatrix sums = DenseMatrix::Zero(k, z.cols());
    std::vector<Eigen::Index> counts(k, 0);
    for (Eigen::Index i = 0; i < n; ++i) {
      sums.row(result.labels[i]) += z.row(i);
      ++counts[result.labels[i]];
    }
    for (int c = 0; c < k; ++c) {
      if (counts[c] > 0) continue;
      // Empty cluster: take over the point farthest from its center, drawn
      // from a cluster that can spare it.
      Eigen::Index far = -1;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (counts[result.labels[i]] > 1 && (far < 0 || dist[i] > dist[far])) {
          far = i;
        }
      }
      --counts[result.labels[far]];
      sums.row(result.labels[far]) -= z.row(far);
      result.labels[far] = c;
      counts[c] = 1;
      sums.row(c) = z.row(far);
      dist[far] = 0.0;
    }
    for (int c = 0; c < k; ++c) {
      result.centers.row(c) = sums.row(c) / static_cast<double>(counts[c]);
    }
    if (iter + 1 == max_iter) {
      // Out of iterations: report inertia against the final centers.
      result.inertia = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        result.inertia += SquaredDistance(z, i, result.centers, result.labels[i]);
      }
    }
  }
  return result;
}

}  // namespace

KMeansResult KMeans(const DenseMatrix& z, int k, const KMeansOptions& options) {
  if (k < 1) throw ConfigError("k must be >= 1");
  if (k > z.rows()) {
    throw ConfigError("k = " + std::to_string(k) + " exceeds point count " +
                      std::to_string(z.rows()));
  }
  if (options.restarts < 1) throw ConfigError("restarts must be >= 1");
  if (options.max_iter < 1) throw ConfigError("max_iter must be >= 1");
  CheckFinite(z, "k-means input");

  std::vector<KMeansResult> runs(options.restarts);
  auto run_one = [&](int r) {
    auto rng = MakeStream(options.seed, StreamTag::kKMeans,
                          {static_cast<std::uint64_t>(r)});
    runs[r] = Lloyd(z, k, options.max_iter, rng);
  };

  int threads = options.threads;
  if (threads <= 0) {
    threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  }
  threads = std::min(threads, options.restarts);
  if (threads <= 1) {
    for (int r = 0; r < options.restarts; ++r) run_one(r);
  } else {
    std::atomic<int> next{0};
    std::vector<std::jthread> pool;
    for (int w = 0; w < threads; ++w) {
      pool.emplace_back([&] {
        for (int r = next++; r < options.restarts; r = next++) run_one(r);
      });
    }
  }

  int best = 0;
  for (int r = 1; r < options.restarts; ++r) {
    if (runs[r].inertia < runs[best].inertia) best = r;
  }
  return std::move(runs[best]);
}

}  // namespace scgc
