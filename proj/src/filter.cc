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

#include "scgc/filter.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <unordered_set>
#include <vector>

#include <Eigen/Cholesky>

#include "scgc/errors.h"
#include "scgc/random.h"

namespace scgc {
namespace {

std::uint64_t PairKey(NodeId u, NodeId v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
}

}  // namespace

DenseMatrix LowPassDenoise(const Graph& graph, int t) {
  return LowPassDenoise(graph.adjacency, graph.attributes, t);
}

DenseMatrix LowPassDenoise(const SparseAdjacency& adjacency,
                           const DenseMatrix& x, int t) {
  if (t < 0) throw ConfigError("filter layer count t must be >= 0");
  if (t == 0) return x;
  const SparseAdjacency h = SymNormFilter(AddSelfLoops(adjacency));
  DenseMatrix smoothed = Spmm(h, x);
  for (int layer = 1; layer < t; ++layer) smoothed = Spmm(h, smoothed);
  return smoothed;
}

SparseAdjacency DropEdges(const SparseAdjacency& a, double fraction,
                          std::uint64_t seed) {
  if (!(fraction >= 0.0 && fraction < 1.0)) {
    throw ConfigError("edge drop fraction must lie in [0, 1)");
  }
  std::vector<Edge> edges = a.UndirectedEdges();
  const auto drop = static_cast<std::size_t>(
      std::floor(fraction * static_cast<double>(edges.size())));
  if (drop == 0) return a;

  std::vector<std::size_t> order(edges.size());
  std::iota(order.begin(), order.end(), 0);
  auto rng = MakeStream(seed, StreamTag::kDropEdges);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<bool> removed(edges.size(), false);
  for (std::size_t k = 0; k < drop; ++k) removed[order[k]] = true;

  std::vector<Edge> kept;
  kept.reserve(edges.size() - drop);
  for (std::size_t k = 0; k < edges.size(); ++k) {
    if (!removed[k]) kept.push_back(edges[k]);
  }
  for (NodeId i = 0; i < a.num_nodes(); ++i) {
    if (a.contains(i, i)) kept.push_back({i, i, a.at(i, i)});
  }
  return SparseAdjacency::FromEdges(a.num_nodes(), kept);
}

SparseAdjacency AddEdges(const SparseAdjacency& a, double fraction,
                         std::uint64_t seed) {
  if (!(fraction >= 0.0) || !std::isfinite(fraction)) {
    throw ConfigError("edge add fraction must be >= 0");
  }
  const NodeId n = a.num_nodes();
  std::vector<Edge> edges = a.UndirectedEdges();
  const auto add = static_cast<std::int64_t>(
      std::floor(fraction * static_cast<double>(edges.size())));
  if (add == 0) return a;
  const std::int64_t pairs = static_cast<std::int64_t>(n) * (n - 1) / 2;
  const std::int64_t absent = pairs - static_cast<std::int64_t>(edges.size());
  if (add > absent) {
    throw ConfigError("cannot add " + std::to_string(add) + " edges: only " +
                      std::to_string(absent) + " absent pairs");
  }

  std::unordered_set<std::uint64_t> present;
  present.reserve(edges.size() + static_cast<std::size_t>(add));
  for (const Edge& e : edges) present.insert(PairKey(e.u, e.v));

  auto rng = MakeStream(seed, StreamTag::kAddEdges);
  std::vector<Edge> added;
  if (2 * add <= absent) {
    // Rejection sampling stays cheap while at least half the pairs are free.
    std::uniform_int_distribution<NodeId> pick(0, n - 1);
    while (static_cast<std::int64_t>(added.size()) < add) {
      const NodeId u = pick(rng);
      const NodeId v = pick(rng);
      if (u == v) continue;
      if (present.insert(PairKey(u, v)).second) {
        added.push_back({std::min(u, v), std::max(u, v), 1.0});
      }
    }
  } else {
    std::vector<Edge> candidates;
    for (NodeId u = 0; u < n; ++u) {
      for (NodeId v = u + 1; v < n; ++v) {
        if (!present.contains(PairKey(u, v))) candidates.push_back({u, v, 1.0});
      }
    }
    std::shuffle(candidates.begin(), candidates.end(), rng);
    added.assign(candidates.begin(), candidates.begin() + add);
  }

  edges.insert(edges.end(), added.begin(), added.end());
  for (NodeId i = 0; i < n; ++i) {
    if (a.contains(i, i)) edges.push_back({i, i, a.at(i, i)});
  }
  return SparseAdjacency::FromEdges(n, edges);
}

DenseMatrix PprDiffusion(const SparseAdjacency& a, double teleport) {
  if (!(teleport > 0.0 && teleport <= 1.0)) {
    throw ConfigError("teleport rate must lie in (0, 1]");
  }
  const NodeId n = a.num_nodes();
  if (teleport == 1.0) return DenseMatrix::Identity(n, n);
  const DenseMatrix h = SymNormFilter(AddSelfLoops(a)).ToDense();
  const DenseMatrix system =
      DenseMatrix::Identity(n, n) - (1.0 - teleport) * h;
  Eigen::LLT<DenseMatrix> llt(system);
  if (llt.info() != Eigen::Success) {
    throw NumericalError("diffusion system is not positive definite");
  }
  DenseMatrix diffusion = llt.solve(DenseMatrix::Identity(n, n));
  diffusion *= teleport;
  if (!diffusion.allFinite()) {
    throw NumericalError("diffusion solve produced non-finite entries");
  }
  return diffusion;
}

SparseAdjacency SparsifyDiffusion(const DenseMatrix& diffusion, int k,
                                  double threshold) {
  if (diffusion.rows() != diffusion.cols()) {
    throw std::invalid_argument("diffusion matrix must be square");
  }
  if (k < 1) throw ConfigError("top-k must be >= 1");
  const auto n = static_cast<NodeId>(diffusion.rows());
  std::vector<Edge> edges;
  std::vector<NodeId> order;
  for (NodeId i = 0; i < n; ++i) {
    order.clear();
    for (NodeId j = 0; j < n; ++j) {
      if (j != i && diffusion(i, j) >= threshold) order.push_back(j);
    }
    const auto keep = std::min<std::size_t>(order.size(), k);
    std::partial_sort(order.begin(), order.begin() + keep, order.end(),
                      [&](NodeId x, NodeId y) {
                        if (diffusion(i, x) != diffusion(i, y)) {
                          return diffusion(i, x) > diffusion(i, y);
                        }
                        return x < y;
                      });
    for (std::size_t r = 0; r < keep; ++r) edges.push_back({i, order[r], 1.0});
  }
  return SparseAdjacency::FromEdges(n, edges);
}

}  // namespace scgc
