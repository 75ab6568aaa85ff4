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

#include "scgc/graph.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "scgc/errors.h"

namespace scgc {

void CheckFinite(const DenseMatrix& m, const char* what) {
  if (!m.allFinite()) {
    throw DataError(std::string(what) + " contains non-finite entries");
  }
}

SparseAdjacency SparseAdjacency::FromEdges(NodeId n,
                                           std::span<const Edge> edges) {
  if (n < 0) throw DataError("negative node count");
  struct Entry {
    NodeId row;
    NodeId col;
    double value;
    std::size_t order;
  };
  std::vector<Entry> entries;
  entries.reserve(2 * edges.size());
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const Edge& e = edges[k];
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n) {
      throw DataError("edge (" + std::to_string(e.u) + ", " +
                      std::to_string(e.v) + ") out of range for " +
                      std::to_string(n) + " nodes");
    }
    if (!std::isfinite(e.weight)) throw DataError("non-finite edge weight");
    entries.push_back({e.u, e.v, e.weight, k});
    if (e.u != e.v) entries.push_back({e.v, e.u, e.weight, k});
  }
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Entry& a, const Entry& b) {
                     if (a.row != b.row) return a.row < b.row;
                     if (a.col != b.col) return a.col < b.col;
                     return a.order < b.order;
                   });

  SparseAdjacency out;
  out.n_ = n;
  out.row_ptr_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (std::size_t k = 0; k < entries.size(); ++k) {
    if (k > 0 && entries[k].row == entries[k - 1].row &&
        entries[k].col == entries[k - 1].col) {
      continue;
    }
    out.col_idx_.push_back(entries[k].col);
    out.values_.push_back(entries[k].value);
    ++out.row_ptr_[entries[k].row + 1];
  }
  for (NodeId i = 0; i < n; ++i) out.row_ptr_[i + 1] += out.row_ptr_[i];
  return out;
}

SparseAdjacency SparseAdjacency::FromCsr(NodeId n,
                                         std::vector<std::int64_t> row_ptr,
                                         std::vector<NodeId> col_idx,
                                         std::vector<double> values) {
  SparseAdjacency out;
  out.n_ = n;
  out.row_ptr_ = std::move(row_ptr);
  out.col_idx_ = std::move(col_idx);
  out.values_ = std::move(values);
  out.Validate();
  return out;
}

void SparseAdjacency::Validate() const {
  if (n_ < 0) throw DataError("negative node count");
  if (row_ptr_.size() != static_cast<std::size_t>(n_) + 1 ||
      row_ptr_.front() != 0) {
    throw DataError("row_ptr must have n+1 entries starting at 0");
  }
  if (row_ptr_.back() != static_cast<std::int64_t>(col_idx_.size()) ||
      col_idx_.size() != values_.size()) {
    throw DataError("row_ptr[n], col_idx and values lengths disagree");
  }
  for (NodeId i = 0; i < n_; ++i) {
    if (row_ptr_[i + 1] < row_ptr_[i]) {
      throw DataError("row_ptr decreases at row " + std::to_string(i));
    }
    for (std::int64_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      const NodeId j = col_idx_[k];
      if (j < 0 || j >= n_) {
        throw DataError("column index out of range in row " +
                        std::to_string(i));
      }
      if (k > row_ptr_[i] && col_idx_[k - 1] >= j) {
        throw DataError("row " + std::to_string(i) +
                        " is unsorted or has duplicate entries");
      }
      if (!std::isfinite(values_[k])) {
        throw DataError("non-finite value in row " + std::to_string(i));
      }
    }
  }
  for (NodeId i = 0; i < n_; ++i) {
    for (std::int64_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      const NodeId j = col_idx_[k];
      if (!contains(j, i) || at(j, i) != values_[k]) {
        throw DataError("matrix is not symmetric at (" + std::to_string(i) +
                        ", " + std::to_string(j) + ")");
      }
    }
  }
}

std::int64_t SparseAdjacency::num_self_loops() const {
  std::int64_t loops = 0;
  for (NodeId i = 0; i < n_; ++i) loops += contains(i, i) ? 1 : 0;
  return loops;
}

std::int64_t SparseAdjacency::num_undirected_edges() const {
  return (nnz() - num_self_loops()) / 2;
}

double SparseAdjacency::at(NodeId i, NodeId j) const {
  const auto row = neighbors(i);
  const auto it = std::lower_bound(row.begin(), row.end(), j);
  if (it == row.end() || *it != j) return 0.0;
  return values_[row_ptr_[i] + (it - row.begin())];
}

bool SparseAdjacency::contains(NodeId i, NodeId j) const {
  const auto row = neighbors(i);
  return std::binary_search(row.begin(), row.end(), j);
}

std::vector<Edge> SparseAdjacency::UndirectedEdges() const {
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(num_undirected_edges()));
  for (NodeId i = 0; i < n_; ++i) {
    for (std::int64_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      if (col_idx_[k] > i) edges.push_back({i, col_idx_[k], values_[k]});
    }
  }
  return edges;
}

DenseMatrix SparseAdjacency::ToDense() const {
  DenseMatrix dense = DenseMatrix::Zero(n_, n_);
  for (NodeId i = 0; i < n_; ++i) {
    for (std::int64_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      dense(i, col_idx_[k]) = values_[k];
    }
  }
  return dense;
}

void Graph::Validate() const {
  adjacency.Validate();
  if (attributes.rows() != adjacency.num_nodes()) {
    throw DataError("attribute rows (" + std::to_string(attributes.rows()) +
                    ") != node count (" +
                    std::to_string(adjacency.num_nodes()) + ")");
  }
  CheckFinite(attributes, "attribute matrix");
  if (labels.has_value()) {
    if (labels->size() != static_cast<std::size_t>(adjacency.num_nodes())) {
      throw DataError("label vector length differs from node count");
    }
    if (!num_classes.has_value() || *num_classes < 1) {
      throw DataError("labels present without a positive class count");
    }
    for (std::size_t i = 0; i < labels->size(); ++i) {
      if ((*labels)[i] < 0 || (*labels)[i] >= *num_classes) {
        throw DataError("label of node " + std::to_string(i) +
                        " outside [0, " + std::to_string(*num_classes) + ")");
      }
    }
  }
}

SparseAdjacency AddSelfLoops(const SparseAdjacency& a) {
  const NodeId n = a.num_nodes();
  std::vector<std::int64_t> row_ptr(static_cast<std::size_t>(n) + 1, 0);
  std::vector<NodeId> cols;
  std::vector<double> vals;
  cols.reserve(static_cast<std::size_t>(a.nnz() + n));
  vals.reserve(static_cast<std::size_t>(a.nnz() + n));
  for (NodeId i = 0; i < n; ++i) {
    const auto nbrs = a.neighbors(i);
    const auto wts = a.weights(i);
    bool placed = false;
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
      if (!placed && nbrs[k] >= i) {
        cols.push_back(i);
        vals.push_back(1.0);
        placed = true;
        if (nbrs[k] == i) continue;
      }
      cols.push_back(nbrs[k]);
      vals.push_back(wts[k]);
    }
    if (!placed) {
      cols.push_back(i);
      vals.push_back(1.0);
    }
    row_ptr[i + 1] = static_cast<std::int64_t>(cols.size());
  }
  return SparseAdjacency::FromCsr(n, std::move(row_ptr), std::move(cols),
                                  std::move(vals));
}

Vector DegreeVector(const SparseAdjacency& a_hat) {
  Vector degree(a_hat.num_nodes());
  for (NodeId i = 0; i < a_hat.num_nodes(); ++i) {
    double sum = 0.0;
    for (double w : a_hat.weights(i)) sum += w;
    degree[i] = sum;
  }
  return degree;
}

SparseAdjacency SymNormFilter(const SparseAdjacency& a_hat) {
  const NodeId n = a_hat.num_nodes();
  for (NodeId i = 0; i < n; ++i) {
    if (a_hat.at(i, i) <= 0.0) {
      throw DataError("normalized filter needs a positive diagonal; row " +
                      std::to_string(i) + " has none");
    }
  }
  const Vector degree = DegreeVector(a_hat);
  Vector inv_sqrt(n);
  for (NodeId i = 0; i < n; ++i) {
    if (!(degree[i] > 0.0)) {
      throw DataError("non-positive degree at row " + std::to_string(i));
    }
    inv_sqrt[i] = 1.0 / std::sqrt(degree[i]);
  }
  std::vector<double> vals(a_hat.values());
  for (NodeId i = 0; i < n; ++i) {
    for (std::int64_t k = a_hat.row_ptr()[i]; k < a_hat.row_ptr()[i + 1];
         ++k) {
      // Same operand order for (i, j) and (j, i) keeps H exactly symmetric.
      const NodeId j = a_hat.col_idx()[k];
      vals[k] = a_hat.values()[k] *
                (inv_sqrt[std::min(i, j)] * inv_sqrt[std::max(i, j)]);
    }
  }
  return SparseAdjacency::FromCsr(n, a_hat.row_ptr(), a_hat.col_idx(),
                                  std::move(vals));
}

DenseMatrix Spmm(const SparseAdjacency& h, const DenseMatrix& x) {
  if (x.rows() != h.num_nodes()) {
    throw std::invalid_argument("spmm: matrix has " +
                                std::to_string(h.num_nodes()) +
                                " columns but operand has " +
                                std::to_string(x.rows()) + " rows");
  }
  DenseMatrix out = DenseMatrix::Zero(x.rows(), x.cols());
  for (NodeId i = 0; i < h.num_nodes(); ++i) {
    const auto nbrs = h.neighbors(i);
    const auto wts = h.weights(i);
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
      out.row(i).noalias() += wts[k] * x.row(nbrs[k]);
    }
  }
  return out;
}

}  // namespace scgc
