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

// Structural contrastive module: two linear encoders over the smoothed
// attributes, l2 row normalization, Gaussian perturbation of the second
// view, and an MSE loss pulling the cross-view similarity Z1 Z2^T towards
// the self-looped adjacency. Gradients are derived by hand.
//
// The N x N similarity matrix is never formed during training. With
// M1 = Z1^T Z1 and M2 = Z2^T Z2 (d x d):
//
//   ||S - A||_F^2 = <M1, M2> - 2 sum_{(i,j) in A} a_ij z1_i . z2_j + ||A||^2
//   dL/dZ1 = 2/N^2 (Z1 M2 - A Z2)
//   dL/dZ2 = 2/N^2 (Z2 M1 - A Z1)
//
// so one epoch costs O(N D d + N d^2 + nnz(A) d) time and O(N d) memory.
// The N D d part shrinks to O((nnz(X) + t nnz(H)) d) when the attributes
// are sparse and kept in factored form; see ViewInput.
// Small graphs (N below about d) are cheaper through S itself, so the
// training loop picks whichever route costs less; see LossRoute.

#ifndef SCGC_MODEL_H_
#define SCGC_MODEL_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include <Eigen/SparseCore>

#include "scgc/adam.h"
#include "scgc/graph.h"

namespace scgc {

struct LinearLayer {
  DenseMatrix weight;  // in x out
  DenseMatrix bias;    // 1 x out, or 0 x 0 when the layer has no bias

  bool has_bias() const { return bias.size() > 0; }
};

// Weights of the two siamese encoders. With `shared` set, both views run
// through `view1` and `view2` is empty.
struct EncoderParams {
  std::vector<LinearLayer> view1;
  std::vector<LinearLayer> view2;
  bool shared = false;

  const std::vector<LinearLayer>& encoder(int view) const {
    return (view == 1 || shared) ? view1 : view2;
  }
  const DenseMatrix& w1() const { return view1.front().weight; }
  const DenseMatrix& w2() const { return encoder(2).front().weight; }

  // Every trainable tensor in a fixed order: view1 layers then view2
  // layers, weight before bias.
  std::vector<DenseMatrix*> Tensors();
  std::vector<const DenseMatrix*> Tensors() const;
};

// First-layer input of an encoder view: a dense matrix, or the smoothed
// attributes H^t X kept in factored form with X sparse. The factored form
// computes X_s W as H^t (X W) and X_s^T G as X^T (H^t G). Smoothing fills
// in X, so this avoids dense products with the (much denser) X_s.
// Copies share the underlying data.
class ViewInput {
 public:
  // Implicit, so dense matrices can be passed wherever a ViewInput is
  // expected.
  ViewInput(DenseMatrix x);  // NOLINT(google-explicit-constructor)
  // `h` is the normalized filter (SymNormFilter of A + I).
  static ViewInput Factored(const DenseMatrix& x, SparseAdjacency h, int t);

  Eigen::Index rows() const;
  Eigen::Index cols() const;
  bool factored() const { return sparse_ != nullptr; }

  DenseMatrix Times(const DenseMatrix& w) const;           // X_s W
  DenseMatrix TransposeTimes(const DenseMatrix& g) const;  // X_s^T G
  DenseMatrix ToDense() const;                             // X_s

 private:
  using SparseFeatures = Eigen::SparseMatrix<double, Eigen::RowMajor>;
  ViewInput() = default;

  std::shared_ptr<const DenseMatrix> dense_;
  std::shared_ptr<const SparseFeatures> sparse_;
  std::shared_ptr<const SparseAdjacency> filter_;
  int t_ = 0;
};

// H^t X as a ViewInput, factored when that needs fewer multiply-adds
// (counting a sparse one as four dense ones), dense otherwise.
ViewInput SmoothedInput(const SparseAdjacency& adjacency, const DenseMatrix& x,
                        int t);

// Same layout as the parameters they differentiate.
using EncoderGrads = EncoderParams;

struct EncoderOptions {
  int input_dim = 0;
  int embed_dim = 500;
  int depth = 1;  // stacked linear layers per encoder
  bool bias = false;
  bool shared = false;
};

// Glorot-uniform weights, U[-a, a] with a = sqrt(6 / (fan_in + fan_out)).
// The two views draw from independent streams; biases start at zero.
EncoderParams InitParams(const EncoderOptions& options, std::uint64_t seed);
EncoderParams InitParams(int input_dim, int embed_dim, std::uint64_t seed);

// Scales every row to unit Euclidean norm. Throws NumericalError naming the
// first row whose norm is below 1e-30.
DenseMatrix RowL2Normalize(const DenseMatrix& z);

struct ViewActivations {
  std::vector<DenseMatrix> hidden;  // outputs of layers 1..L-1
  DenseMatrix pre_norm;             // Y, output of the last layer
  Vector row_norms;                 // ||Y_i||
  DenseMatrix normalized;           // Z = Y / ||Y||
};

struct ForwardCache {
  ViewActivations view1;
  ViewActivations view2;
  DenseMatrix noise;      // N; all zeros when sigma == 0
  DenseMatrix perturbed;  // Z2 + N, the second view seen by the loss
};

// N ~ Gaussian(0, sigma) drawn from the stream keyed by (seed, epoch).
DenseMatrix SampleNoise(Eigen::Index rows, Eigen::Index cols, double sigma,
                        std::uint64_t seed, std::int64_t epoch);

// Forward pass with an explicit noise matrix. `x1` feeds view 1 and `x2`
// view 2; ordinarily both are the smoothed attributes.
ForwardCache Forward(const EncoderParams& params, const ViewInput& x1,
                     const ViewInput& x2, const DenseMatrix& noise);
ForwardCache Forward(const EncoderParams& params, const ViewInput& x1,
                     const ViewInput& x2, double sigma, std::uint64_t seed,
                     std::int64_t epoch);
ForwardCache Forward(const EncoderParams& params, const ViewInput& x_s,
                     double sigma, std::uint64_t seed, std::int64_t epoch);

// S = Z1 Z2^T.
DenseMatrix CrossViewSimilarity(const DenseMatrix& z1, const DenseMatrix& z2);

// (1/N^2) ||S - A||_F^2 on an explicit similarity matrix.
double ContrastiveLoss(const DenseMatrix& s, const SparseAdjacency& a_hat);

// Same loss evaluated from the embeddings without forming S.
double ContrastiveLoss(const DenseMatrix& z1, const DenseMatrix& z2,
                       const SparseAdjacency& a_hat);
double ContrastiveLoss(const ForwardCache& cache, const SparseAdjacency& a_hat);

// How the loss and its embedding gradients are evaluated. kGram works with
// the d x d Gram matrices Z1^T Z1 and Z2^T Z2 (O(N d^2), no N x N storage);
// kDense forms S (O(N^2 d)). kAuto picks the cheaper one for the shape.
enum class LossRoute { kAuto, kGram, kDense };

struct LossGradient {
  double loss = 0.0;
  DenseMatrix grad_z1;  // dL/dZ1
  DenseMatrix grad_z2;  // dL/dZ2, equal to dL/d(Z2 + N)
};

LossGradient ContrastiveLossGradient(const DenseMatrix& z1,
                                     const DenseMatrix& z2,
                                     const SparseAdjacency& a_hat,
                                     LossRoute route = LossRoute::kAuto);

// Analytic gradient of the loss with respect to every parameter tensor.
// Shared encoders receive the sum of both views' contributions.
EncoderGrads Backward(const ForwardCache& cache, const SparseAdjacency& a_hat,
                      const ViewInput& x1, const ViewInput& x2,
                      const EncoderParams& params,
                      LossRoute route = LossRoute::kAuto);

// Chain rule from given embedding gradients down to the parameters.
EncoderGrads BackwardFromEmbeddings(const ForwardCache& cache,
                                    const DenseMatrix& grad_z1,
                                    const DenseMatrix& grad_z2,
                                    const ViewInput& x1,
                                    const ViewInput& x2,
                                    const EncoderParams& params);

// Z = (Z1 + Z2) / 2.
DenseMatrix Fuse(const DenseMatrix& z1, const DenseMatrix& z2);

struct TrainConfig {
  int epochs = 400;
  double learning_rate = 1e-3;
  int t = 2;
  double sigma = 0.01;
  int embed_dim = 500;
  int depth = 1;
  std::uint64_t seed = 0;
  bool noise_enabled = true;
  bool unshared_encoders = true;
  bool bias = false;
  // Fuse the noised second view in the final pass (the last loop step of
  // the algorithm taken literally) instead of a noise-free pass.
  bool eval_noise = false;
  AdamOptions adam;

  double effective_sigma() const { return noise_enabled ? sigma : 0.0; }
  // Throws ConfigError on the first invalid field.
  void Validate() const;
};

struct TrainResult {
  DenseMatrix embeddings;            // fused Z from a noise-free pass
  std::vector<double> loss_history;  // one entry per epoch
  EncoderParams params;
};

// Invoked after each epoch's forward pass, before the update.
using EpochObserver =
    std::function<void(int epoch, const ForwardCache& cache, double loss)>;

// Full training run: smooths the attributes with t filter layers, then
// optimizes both encoders against A + I.
TrainResult Train(const Graph& graph, const TrainConfig& config,
                  const EpochObserver& observer = nullptr);

// Training on precomputed view inputs and loss target. Used directly by the
// graph-augmentation ablations, where the two views see different inputs.
TrainResult TrainOnInputs(const ViewInput& x1, const ViewInput& x2,
                          const SparseAdjacency& a_hat,
                          const TrainConfig& config,
                          const EpochObserver& observer = nullptr);

}  // namespace scgc

#endif  // SCGC_MODEL_H_
