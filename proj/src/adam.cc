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

#include "scgc/adam.h"

#include <cmath>
#include <stdexcept>
#include <string>

#include "scgc/errors.h"

namespace scgc {

AdamState MakeAdamState(std::span<const DenseMatrix* const> params,
                        const AdamOptions& options) {
  AdamState state;
  state.options = options;
  for (const DenseMatrix* p : params) {
    state.m.push_back(DenseMatrix::Zero(p->rows(), p->cols()));
    state.v.push_back(DenseMatrix::Zero(p->rows(), p->cols()));
  }
  return state;
}

void AdamStep(std::span<DenseMatrix* const> params,
              std::span<const DenseMatrix* const> grads, AdamState& state,
              double learning_rate) {
  if (params.size() != grads.size() || params.size() != state.m.size()) {
    throw std::invalid_argument("adam: parameter/gradient/state count mismatch");
  }
  if (!(learning_rate > 0.0)) throw ConfigError("learning rate must be > 0");
  for (std::size_t k = 0; k < params.size(); ++k) {
    if (params[k]->rows() != grads[k]->rows() ||
        params[k]->cols() != grads[k]->cols() ||
        state.m[k].rows() != grads[k]->rows() ||
        state.m[k].cols() != grads[k]->cols()) {
      throw std::invalid_argument("adam: shape mismatch in tensor " +
                                  std::to_string(k));
    }
    if (!grads[k]->allFinite()) {
      throw NumericalError("non-finite gradient in tensor " +
                           std::to_string(k));
    }
  }

  const AdamOptions& opt = state.options;
  ++state.step;
  const double t = static_cast<double>(state.step);
  const double correction1 = 1.0 - std::pow(opt.beta1, t);
  const double correction2 = 1.0 - std::pow(opt.beta2, t);
  for (std::size_t k = 0; k < params.size(); ++k) {
    const DenseMatrix& g = *grads[k];
    DenseMatrix& m = state.m[k];
    DenseMatrix& v = state.v[k];
    DenseMatrix& p = *params[k];
    m = opt.beta1 * m + (1.0 - opt.beta1) * g;
    v = opt.beta2 * v + (1.0 - opt.beta2) * g.cwiseProduct(g);
    p.array() -= learning_rate * (m.array() / correction1) /
                 ((v.array() / correction2).sqrt() + opt.eps);
  }
}

}  // namespace scgc
