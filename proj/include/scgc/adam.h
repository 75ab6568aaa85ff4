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

#ifndef SCGC_ADAM_H_
#define SCGC_ADAM_H_

#include <cstdint>
#include <span>
#include <vector>

#include "scgc/graph.h"

namespace scgc {

struct AdamOptions {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

// First and second moment estimates, one pair per parameter tensor.
struct AdamState {
  std::vector<DenseMatrix> m;
  std::vector<DenseMatrix> v;
  std::int64_t step = 0;
  AdamOptions options;
};

// Zero moments shaped like `params`.
AdamState MakeAdamState(std::span<const DenseMatrix* const> params,
                        const AdamOptions& options = {});

// One bias-corrected Adam update, in place:
//   m <- b1 m + (1 - b1) g,  v <- b2 v + (1 - b2) g^2
//   p <- p - lr * m_hat / (sqrt(v_hat) + eps)
// Throws NumericalError on a non-finite gradient (nothing is modified).
void AdamStep(std::span<DenseMatrix* const> params,
              std::span<const DenseMatrix* const> grads, AdamState& state,
              double learning_rate);

}  // namespace scgc

#endif  // SCGC_ADAM_H_
