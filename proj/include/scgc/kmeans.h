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

#ifndef SCGC_KMEANS_H_
#define SCGC_KMEANS_H_

#include <cstdint>
#include <vector>

#include "scgc/graph.h"

namespace scgc {

struct KMeansOptions {
  int restarts = 10;
  int max_iter = 300;
  std::uint64_t seed = 0;
  // Worker threads for independent restarts; 0 means one per restart up to
  // the hardware concurrency.
  int threads = 1;
};

struct KMeansResult {
  std::vector<int> labels;
  DenseMatrix centers;  // k x d
  double inertia = 0.0;
  int iterations = 0;
  // Inertia after every assignment step of the winning restart.
  std::vector<double> inertia_trace;
};

// Lloyd's algorithm with k-means++ seeding, repeated `restarts` times with
// seeds derived from (seed, restart); the lowest-inertia restart wins, ties
// going to the lower restart index. Assignment ties go to the lower center
// index. A center that loses all its points is moved onto the point
// farthest from its currently assigned center.
//
// Throws ConfigError if k < 1, k > N or restarts < 1.
KMeansResult KMeans(const DenseMatrix& z, int k, const KMeansOptions& options);

inline KMeansResult KMeans(const DenseMatrix& z, int k, int restarts,
                           int max_iter, std::uint64_t seed) {
  return KMeans(z, k, KMeansOptions{restarts, max_iter, seed, 1});
}

}  // namespace scgc

#endif  // SCGC_KMEANS_H_
