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

// Attribute smoothing with stacked low-pass graph filters, and the
// graph-level augmentations used as ablation baselines.

#ifndef SCGC_FILTER_H_
#define SCGC_FILTER_H_

#include <cstdint>

#include "scgc/graph.h"

namespace scgc {

struct FilterConfig {
  int t = 2;  // number of stacked filter layers
};

// X_s = H^t X with H = SymNormFilter(AddSelfLoops(A)). Applies t sparse
// products; H^t itself is never formed. t = 0 returns X.
DenseMatrix LowPassDenoise(const Graph& graph, int t);
DenseMatrix LowPassDenoise(const SparseAdjacency& adjacency,
                           const DenseMatrix& x, int t);

// Removes floor(fraction * |E|) undirected edges chosen uniformly at random.
// Operates on the raw adjacency (no self-loops expected).
SparseAdjacency DropEdges(const SparseAdjacency& a, double fraction,
                          std::uint64_t seed);

// Adds floor(fraction * |E|) distinct absent undirected edges chosen
// uniformly. Throws ConfigError when not enough absent pairs exist.
SparseAdjacency AddEdges(const SparseAdjacency& a, double fraction,
                         std::uint64_t seed);

// Dense personalized-PageRank diffusion
//   teleport * (I - (1 - teleport) H)^-1
// solved by Cholesky. Throws NumericalError if the factorization fails.
DenseMatrix PprDiffusion(const SparseAdjacency& a, double teleport);

// Turns a dense diffusion matrix into a binary graph: entries below
// `threshold` are dropped, each row keeps its `k` largest off-diagonal
// entries, and the result is symmetrized by union.
SparseAdjacency SparsifyDiffusion(const DenseMatrix& diffusion, int k,
                                  double threshold = 1e-4);

}  // namespace scgc

#endif  // SCGC_FILTER_H_
