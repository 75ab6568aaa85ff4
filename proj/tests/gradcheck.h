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

// Finite-difference oracle for the encoder gradients. The oracle loss is an
// independent long-double re-implementation of the forward pass and of
// (1/N^2) ||Z1 (Z2 + N)^T - A||_F^2 with explicit loops, so it shares no code
// with the library's loss or backward routines.

#ifndef SCGC_TESTS_GRADCHECK_H_
#define SCGC_TESTS_GRADCHECK_H_

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "scgc/graph.h"
#include "scgc/model.h"
#include "test_util.h"

namespace scgc::testing {

using LongMatrix = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

struct GradInstance {
  EncoderParams params;
  DenseMatrix x1;
  DenseMatrix x2;
  DenseMatrix noise;
  SparseAdjacency a_hat;
};

struct InstanceShape {
  int n = 6;
  int input_dim = 4;
  int embed_dim = 3;
  int depth = 1;
  bool bias = false;
  bool shared = false;
  bool distinct_inputs = false;
  double sigma = 0.0;
};

inline GradInstance MakeGradInstance(const InstanceShape& shape,
                                     std::mt19937_64& rng) {
  GradInstance inst;
  inst.params = InitParams(EncoderOptions{.input_dim = shape.input_dim,
                                          .embed_dim = shape.embed_dim,
                                          .depth = shape.depth,
                                          .bias = shape.bias,
                                          .shared = shape.shared},
                           rng());
  // Nonzero biases so their gradients are exercised away from the start.
  std::normal_distribution<double> gauss(0.0, 0.1);
  for (DenseMatrix* t : inst.params.Tensors()) {
    if (t->rows() == 1 && shape.bias) {
      for (Eigen::Index k = 0; k < t->size(); ++k) t->data()[k] = gauss(rng);
    }
  }
  inst.x1 = RandomMatrix(shape.n, shape.input_dim, rng);
  inst.x2 = shape.distinct_inputs ? RandomMatrix(shape.n, shape.input_dim, rng)
                                  : inst.x1;
  inst.noise = shape.sigma * RandomMatrix(shape.n, shape.embed_dim, rng);
  inst.a_hat = AddSelfLoops(RandomGraph(shape.n, 0.4, rng));
  return inst;
}

inline std::vector<LongMatrix> ToLong(const EncoderParams& params) {
  std::vector<LongMatrix> out;
  for (const DenseMatrix* t : params.Tensors()) out.push_back(t->cast<long double>());
  return out;
}

inline LongMatrix OracleEncode(const std::vector<LinearLayer>& layers,
                               const std::vector<LongMatrix>& tensors,
                               std::size_t first, const DenseMatrix& x) {
  LongMatrix h = x.cast<long double>();
  std::size_t idx = first;
  for (const LinearLayer& layer : layers) {
    const LongMatrix& w = tensors[idx++];
    LongMatrix next = LongMatrix::Zero(h.rows(), w.cols());
    for (Eigen::Index i = 0; i < h.rows(); ++i) {
      for (Eigen::Index j = 0; j < w.cols(); ++j) {
        long double acc = 0.0L;
        for (Eigen::Index k = 0; k < h.cols(); ++k) acc += h(i, k) * w(k, j);
        next(i, j) = acc;
      }
    }
    if (layer.has_bias()) {
      const LongMatrix& b = tensors[idx++];
      for (Eigen::Index i = 0; i < next.rows(); ++i) {
        for (Eigen::Index j = 0; j < next.cols(); ++j) next(i, j) += b(0, j);
      }
    }
    h = std::move(next);
  }
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    long double sq = 0.0L;
    for (Eigen::Index j = 0; j < h.cols(); ++j) sq += h(i, j) * h(i, j);
    const long double norm = std::sqrt(sq);
    for (Eigen::Index j = 0; j < h.cols(); ++j) h(i, j) /= norm;
  }
  return h;
}

inline long double OracleLoss(const GradInstance& inst,
                              const std::vector<LongMatrix>& tensors) {
  const EncoderParams& p = inst.params;
  std::size_t view2_first = 0;
  if (!p.shared) {
    for (const LinearLayer& layer : p.view1) view2_first += layer.has_bias() ? 2 : 1;
  }
  const LongMatrix z1 = OracleEncode(p.view1, tensors, 0, inst.x1);
  LongMatrix z2 = OracleEncode(p.encoder(2), tensors, view2_first, inst.x2);
  z2 += inst.noise.cast<long double>();
  const DenseMatrix a = inst.a_hat.ToDense();
  const Eigen::Index n = z1.rows();
  long double total = 0.0L;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      long double s = 0.0L;
      for (Eigen::Index k = 0; k < z1.cols(); ++k) s += z1(i, k) * z2(j, k);
      const long double diff = s - static_cast<long double>(a(i, j));
      total += diff * diff;
    }
  }
  return total / static_cast<long double>(n * n);
}

struct GradCheckResult {
  double max_relative_error = 0.0;
  int entries = 0;
};

// |analytic - numeric| / max(|analytic|, |numeric|, 1e-6), maximized over
// every entry of every parameter tensor. Central differences with step h.
inline GradCheckResult CheckGradients(const GradInstance& inst,
                                      double h = 1e-6,
                                      LossRoute route = LossRoute::kAuto) {
  const ForwardCache cache = Forward(inst.params, inst.x1, inst.x2, inst.noise);
  const EncoderGrads grads =
      Backward(cache, inst.a_hat, inst.x1, inst.x2, inst.params, route);
  const std::vector<const DenseMatrix*> analytic = grads.Tensors();
  std::vector<LongMatrix> tensors = ToLong(inst.params);

  GradCheckResult result;
  for (std::size_t t = 0; t < tensors.size(); ++t) {
    for (Eigen::Index r = 0; r < tensors[t].rows(); ++r) {
      for (Eigen::Index c = 0; c < tensors[t].cols(); ++c) {
        const long double saved = tensors[t](r, c);
        tensors[t](r, c) = saved + h;
        const long double plus = OracleLoss(inst, tensors);
        tensors[t](r, c) = saved - h;
        const long double minus = OracleLoss(inst, tensors);
        tensors[t](r, c) = saved;
        const double numeric = static_cast<double>((plus - minus) / (2.0L * h));
        const double a = (*analytic[t])(r, c);
        const double denom = std::max({std::abs(a), std::abs(numeric), 1e-6});
        result.max_relative_error =
            std::max(result.max_relative_error, std::abs(a - numeric) / denom);
        ++result.entries;
      }
    }
  }
  return result;
}

}  // namespace scgc::testing

#endif  // SCGC_TESTS_GRADCHECK_H_
