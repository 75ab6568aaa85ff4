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

// Graph containers and the sparse kernels used by filtering and training.

#ifndef SCGC_GRAPH_H_
#define SCGC_GRAPH_H_

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace scgc {

using NodeId = std::int32_t;

// Row-major dense matrix: attributes X, smoothed X_s, embeddings Z.
using DenseMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

// Throws DataError if any entry is NaN or infinite.
void CheckFinite(const DenseMatrix& m, const char* what);

struct Edge {
  NodeId u;
  NodeId v;
  double weight = 1.0;
};

// Symmetric sparse matrix in CSR form with sorted, duplicate-free rows.
// The same container holds A, A + I and the normalized filter H.
class SparseAdjacency {
 public:
  SparseAdjacency() = default;

  // Builds a symmetric matrix from an undirected edge list. Each edge is
  // inserted in both directions; duplicates (in either orientation) are
  // merged keeping the first weight seen. Self-loops are kept as given.
  // Throws DataError on out-of-range endpoints or non-finite weights.
  static SparseAdjacency FromEdges(NodeId n, std::span<const Edge> edges);

  // Adopts raw CSR buffers after checking every type invariant.
  static SparseAdjacency FromCsr(NodeId n, std::vector<std::int64_t> row_ptr,
                                 std::vector<NodeId> col_idx,
                                 std::vector<double> values);

  NodeId num_nodes() const { return n_; }
  // Stored (directed) entries, diagonal included.
  std::int64_t nnz() const { return static_cast<std::int64_t>(col_idx_.size()); }
  // Undirected off-diagonal edges.
  std::int64_t num_undirected_edges() const;
  std::int64_t num_self_loops() const;

  const std::vector<std::int64_t>& row_ptr() const { return row_ptr_; }
  const std::vector<NodeId>& col_idx() const { return col_idx_; }
  const std::vector<double>& values() const { return values_; }

  std::span<const NodeId> neighbors(NodeId i) const {
    return {col_idx_.data() + row_ptr_[i],
            static_cast<std::size_t>(row_ptr_[i + 1] - row_ptr_[i])};
  }
  std::span<const double> weights(NodeId i) const {
    return {values_.data() + row_ptr_[i],
            static_cast<std::size_t>(row_ptr_[i + 1] - row_ptr_[i])};
  }

  // Stored value at (i, j), or 0 when absent. O(log deg).
  double at(NodeId i, NodeId j) const;
  bool contains(NodeId i, NodeId j) const;

  // Off-diagonal edges with u < v in row-major order.
  std::vector<Edge> UndirectedEdges() const;

  DenseMatrix ToDense() const;

  // Throws DataError describing the first violated invariant.
  void Validate() const;

  friend bool operator==(const SparseAdjacency&,
                         const SparseAdjacency&) = default;

 private:
  NodeId n_ = 0;
  std::vector<std::int64_t> row_ptr_{0};
  std::vector<NodeId> col_idx_;
  std::vector<double> values_;
};

// An attributed graph G = {X, A} with optional ground truth.
struct Graph {
  SparseAdjacency adjacency;
  DenseMatrix attributes;
  std::optional<std::vector<int>> labels;
  std::optional<int> num_classes;

  NodeId num_nodes() const { return adjacency.num_nodes(); }
  // Throws DataError on shape or label-range violations.
  void Validate() const;
};

// A + I. Existing diagonal entries are replaced by 1, so the operation is
// idempotent.
SparseAdjacency AddSelfLoops(const SparseAdjacency& a);

// Row sums of the (self-looped) adjacency.
Vector DegreeVector(const SparseAdjacency& a_hat);

// H = D^-1/2 (A + I) D^-1/2 = I - L~. Requires a full unit diagonal; throws
// DataError otherwise.
SparseAdjacency SymNormFilter(const SparseAdjacency& a_hat);

// Sparse times dense. Row accumulation order is fixed by the CSR layout so
// the result is deterministic.
DenseMatrix Spmm(const SparseAdjacency& h, const DenseMatrix& x);

}  // namespace scgc

#endif  // SCGC_GRAPH_H_
