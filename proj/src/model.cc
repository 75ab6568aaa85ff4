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

#include "scgc/model.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "scgc/errors.h"
#include "scgc/filter.h"
#include "scgc/random.h"

namespace scgc {
namespace {

std::vector<LinearLayer> InitEncoder(const EncoderOptions& options,
                                     std::mt19937_64& rng) {
  std::vector<LinearLayer> layers;
  for (int l = 0; l < options.depth; ++l) {
    const int in = l == 0 ? options.input_dim : options.embed_dim;
    const int out = options.embed_dim;
    const double bound = std::sqrt(6.0 / static_cast<double>(in + out));
    std::uniform_real_distribution<double> uniform(-bound, bound);
    LinearLayer layer;
    layer.weight.resize(in, out);
    for (Eigen::Index k = 0; k < layer.weight.size(); ++k) {
      layer.weight.data()[k] = uniform(rng);
    }
    if (options.bias) layer.bias = DenseMatrix::Zero(1, out);
    layers.push_back(std::move(layer));
  }
  return layers;
}

ViewActivations EncodeView(const std::vector<LinearLayer>& layers,
                           const ViewInput& x) {
  if (layers.empty()) throw std::invalid_argument("encoder has no layers");
  if (x.cols() != layers.front().weight.rows()) {
    throw std::invalid_argument(
        "encoder input has " + std::to_string(x.cols()) +
        " columns, expected " + std::to_string(layers.front().weight.rows()));
  }
  ViewActivations act;
  const DenseMatrix* input = nullptr;
  for (std::size_t l = 0; l < layers.size(); ++l) {
    DenseMatrix out =
        l == 0 ? x.Times(layers[l].weight) : (*input) * layers[l].weight;
    if (layers[l].has_bias()) out.rowwise() += layers[l].bias.row(0);
    if (l + 1 == layers.size()) {
      act.pre_norm = std::move(out);
    } else {
      act.hidden.push_back(std::move(out));
      input = &act.hidden.back();
    }
  }
  act.row_norms = act.pre_norm.rowwise().norm();
  act.normalized = RowL2Normalize(act.pre_norm);
  return act;
}

// dL/dY from dL/dZ for Z = Y / ||Y|| row by row.
DenseMatrix NormalizeBackward(const ViewActivations& act,
                              const DenseMatrix& grad_z) {
  const Vector dots = (grad_z.cwiseProduct(act.normalized)).rowwise().sum();
  DenseMatrix grad_y = grad_z - act.normalized.cwiseProduct(
                                    dots.replicate(1, grad_z.cols()));
  grad_y.array().colwise() /= act.row_norms.array();
  return grad_y;
}

// Accumulates (or assigns) layer gradients for one view given dL/dY.
void EncoderBackward(const std::vector<LinearLayer>& layers,
                     const ViewActivations& act, const ViewInput& x,
                     DenseMatrix grad_out, std::vector<LinearLayer>& grads,
                     bool accumulate) {
  for (std::size_t l = layers.size(); l-- > 0;) {
    DenseMatrix grad_w = l == 0 ? x.TransposeTimes(grad_out)
                                : DenseMatrix(act.hidden[l - 1].transpose() *
                                              grad_out);
    if (accumulate) {
      grads[l].weight += grad_w;
    } else {
      grads[l].weight = std::move(grad_w);
    }
    if (layers[l].has_bias()) {
      DenseMatrix grad_b = grad_out.colwise().sum();
      if (accumulate) {
        grads[l].bias += grad_b;
      } else {
        grads[l].bias = std::move(grad_b);
      }
    }
    if (l > 0) grad_out = grad_out * layers[l].weight.transpose();
  }
}

// Z^T Z through a symmetric rank update (half the work of a general
// product), mirrored into a full matrix.
DenseMatrix Gram(const DenseMatrix& z) {
  DenseMatrix m = DenseMatrix::Zero(z.cols(), z.cols());
  m.selfadjointView<Eigen::Lower>().rankUpdate(z.transpose());
  m.triangularView<Eigen::StrictlyUpper>() = m.transpose();
  return m;
}

void CheckSameShape(const DenseMatrix& a, const DenseMatrix& b,
                    const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument(std::string(what) + ": shape mismatch (" +
                                std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + " vs " +
                                std::to_string(b.rows()) + "x" +
                                std::to_string(b.cols()) + ")");
  }
}

}  // namespace

ViewInput::ViewInput(DenseMatrix x)
    : dense_(std::make_shared<const DenseMatrix>(std::move(x))) {}

ViewInput ViewInput::Factored(const DenseMatrix& x, SparseAdjacency h, int t) {
  if (t < 0) throw ConfigError("filter layer count t must be >= 0");
  if (h.num_nodes() != x.rows()) {
    throw std::invalid_argument("filter and attributes differ in node count");
  }
  ViewInput in;
  in.sparse_ = std::make_shared<const SparseFeatures>(x.sparseView());
  in.filter_ = std::make_shared<const SparseAdjacency>(std::move(h));
  in.t_ = t;
  return in;
}

Eigen::Index ViewInput::rows() const {
  return factored() ? sparse_->rows() : dense_->rows();
}

Eigen::Index ViewInput::cols() const {
  return factored() ? sparse_->cols() : dense_->cols();
}

DenseMatrix ViewInput::Times(const DenseMatrix& w) const {
  if (!factored()) return (*dense_) * w;
  DenseMatrix out = (*sparse_) * w;
  for (int k = 0; k < t_; ++k) out = Spmm(*filter_, out);
  return out;
}

DenseMatrix ViewInput::TransposeTimes(const DenseMatrix& g) const {
  if (!factored()) return dense_->transpose() * g;
  // H is symmetric, so (H^t X)^T G = X^T (H^t G).
  DenseMatrix hg = g;
  for (int k = 0; k < t_; ++k) hg = Spmm(*filter_, hg);
  return sparse_->transpose() * hg;
}

DenseMatrix ViewInput::ToDense() const {
  if (!factored()) return *dense_;
  DenseMatrix out = DenseMatrix(*sparse_);
  for (int k = 0; k < t_; ++k) out = Spmm(*filter_, out);
  return out;
}

ViewInput SmoothedInput(const SparseAdjacency& adjacency, const DenseMatrix& x,
                        int t) {
  if (t < 0) throw ConfigError("filter layer count t must be >= 0");
  if (t == 0) return ViewInput(x);
  SparseAdjacency h = SymNormFilter(AddSelfLoops(adjacency));
  const auto nnz_x = static_cast<double>((x.array() != 0.0).count());
  const double factored_cost =
      4.0 * (nnz_x + t * static_cast<double>(h.nnz()));
  const double dense_cost = static_cast<double>(x.rows()) * x.cols();
  if (factored_cost < dense_cost) return ViewInput::Factored(x, std::move(h), t);
  return ViewInput(LowPassDenoise(adjacency, x, t));
}

std::vector<DenseMatrix*> EncoderParams::Tensors() {
  std::vector<DenseMatrix*> out;
  for (auto* view : {&view1, &view2}) {
    for (LinearLayer& layer : *view) {
      out.push_back(&layer.weight);
      if (layer.has_bias()) out.push_back(&layer.bias);
    }
  }
  return out;
}

std::vector<const DenseMatrix*> EncoderParams::Tensors() const {
  std::vector<const DenseMatrix*> out;
  for (const auto* view : {&view1, &view2}) {
    for (const LinearLayer& layer : *view) {
      out.push_back(&layer.weight);
      if (layer.has_bias()) out.push_back(&layer.bias);
    }
  }
  return out;
}

EncoderParams InitParams(const EncoderOptions& options, std::uint64_t seed) {
  if (options.input_dim < 1 || options.embed_dim < 1 || options.depth < 1) {
    throw ConfigError("encoder dimensions and depth must be >= 1");
  }
  EncoderParams params;
  params.shared = options.shared;
  auto rng1 = MakeStream(seed, StreamTag::kInitView1);
  params.view1 = InitEncoder(options, rng1);
  if (!options.shared) {
    auto rng2 = MakeStream(seed, StreamTag::kInitView2);
    params.view2 = InitEncoder(options, rng2);
  }
  return params;
}

EncoderParams InitParams(int input_dim, int embed_dim, std::uint64_t seed) {
  return InitParams(EncoderOptions{.input_dim = input_dim,
                                   .embed_dim = embed_dim},
                    seed);
}

DenseMatrix RowL2Normalize(const DenseMatrix& z) {
  DenseMatrix out(z.rows(), z.cols());
  for (Eigen::Index i = 0; i < z.rows(); ++i) {
    const double norm = z.row(i).norm();
    if (!(norm >= 1e-30)) {
      throw NumericalError("degenerate embedding: row " + std::to_string(i) +
                           " has norm " + std::to_string(norm));
    }
    out.row(i) = z.row(i) / norm;
  }
  return out;
}

DenseMatrix SampleNoise(Eigen::Index rows, Eigen::Index cols, double sigma,
                        std::uint64_t seed, std::int64_t epoch) {
  if (sigma < 0.0) throw ConfigError("noise sigma must be >= 0");
  DenseMatrix noise = DenseMatrix::Zero(rows, cols);
  if (sigma == 0.0) return noise;
  auto rng = MakeStream(seed, StreamTag::kNoise,
                        {static_cast<std::uint64_t>(epoch)});
  std::normal_distribution<double> gauss(0.0, sigma);
  for (Eigen::Index k = 0; k < noise.size(); ++k) noise.data()[k] = gauss(rng);
  return noise;
}

ForwardCache Forward(const EncoderParams& params, const ViewInput& x1,
                     const ViewInput& x2, const DenseMatrix& noise) {
  if (x1.rows() != x2.rows()) {
    throw std::invalid_argument("view inputs have different row counts");
  }
  ForwardCache cache;
  cache.view1 = EncodeView(params.encoder(1), x1);
  cache.view2 = EncodeView(params.encoder(2), x2);
  CheckSameShape(cache.view2.normalized, noise, "noise");
  cache.noise = noise;
  cache.perturbed = cache.view2.normalized + noise;
  return cache;
}

ForwardCache Forward(const EncoderParams& params, const ViewInput& x1,
                     const ViewInput& x2, double sigma, std::uint64_t seed,
                     std::int64_t epoch) {
  const Eigen::Index d = params.encoder(2).back().weight.cols();
  return Forward(params, x1, x2, SampleNoise(x2.rows(), d, sigma, seed, epoch));
}

ForwardCache Forward(const EncoderParams& params, const ViewInput& x_s,
                     double sigma, std::uint64_t seed, std::int64_t epoch) {
  return Forward(params, x_s, x_s, sigma, seed, epoch);
}

DenseMatrix CrossViewSimilarity(const DenseMatrix& z1, const DenseMatrix& z2) {
  if (z1.cols() != z2.cols()) {
    throw std::invalid_argument("similarity: embedding widths differ");
  }
  return z1 * z2.transpose();
}

double ContrastiveLoss(const DenseMatrix& s, const SparseAdjacency& a_hat) {
  const Eigen::Index n = a_hat.num_nodes();
  if (s.rows() != n || s.cols() != n) {
    throw std::invalid_argument("loss: similarity matrix is not N x N");
  }
  DenseMatrix diff = s;
  for (NodeId i = 0; i < a_hat.num_nodes(); ++i) {
    const auto nbrs = a_hat.neighbors(i);
    const auto wts = a_hat.weights(i);
    for (std::size_t k = 0; k < nbrs.size(); ++k) diff(i, nbrs[k]) -= wts[k];
  }
  return diff.squaredNorm() / static_cast<double>(n * n);
}

double ContrastiveLoss(const DenseMatrix& z1, const DenseMatrix& z2,
                       const SparseAdjacency& a_hat) {
  CheckSameShape(z1, z2, "loss");
  const Eigen::Index n = a_hat.num_nodes();
  if (z1.rows() != n) {
    throw std::invalid_argument("loss: embedding rows differ from node count");
  }
  const DenseMatrix m1 = Gram(z1);
  const DenseMatrix m2 = Gram(z2);
  const double s_norm2 = m1.cwiseProduct(m2).sum();
  double cross = 0.0;
  double a_norm2 = 0.0;
  for (NodeId i = 0; i < a_hat.num_nodes(); ++i) {
    const auto nbrs = a_hat.neighbors(i);
    const auto wts = a_hat.weights(i);
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
      cross += wts[k] * z1.row(i).dot(z2.row(nbrs[k]));
      a_norm2 += wts[k] * wts[k];
    }
  }
  const double total = s_norm2 - 2.0 * cross + a_norm2;
  return std::max(0.0, total) / static_cast<double>(n * n);
}

double ContrastiveLoss(const ForwardCache& cache,
                       const SparseAdjacency& a_hat) {
  return ContrastiveLoss(cache.view1.normalized, cache.perturbed, a_hat);
}

LossGradient ContrastiveLossGradient(const DenseMatrix& z1,
                                     const DenseMatrix& z2,
                                     const SparseAdjacency& a_hat,
                                     LossRoute route) {
  CheckSameShape(z1, z2, "loss gradient");
  const Eigen::Index n = a_hat.num_nodes();
  if (z1.rows() != n) {
    throw std::invalid_argument("loss: embedding rows differ from node count");
  }
  const Eigen::Index d = z1.cols();
  if (route == LossRoute::kAuto) {
    // Gram: about 4 N d^2 multiply-adds. Dense: about 3 N^2 d.
    route = 3 * n < 4 * d ? LossRoute::kDense : LossRoute::kGram;
  }
  const double inv_n2 = 1.0 / static_cast<double>(n * n);
  const double scale = 2.0 * inv_n2;
  LossGradient out;
  if (route == LossRoute::kDense) {
    DenseMatrix diff = z1 * z2.transpose();
    for (NodeId i = 0; i < n; ++i) {
      const auto nbrs = a_hat.neighbors(i);
      const auto wts = a_hat.weights(i);
      for (std::size_t k = 0; k < nbrs.size(); ++k) diff(i, nbrs[k]) -= wts[k];
    }
    out.loss = diff.squaredNorm() * inv_n2;
    out.grad_z1.noalias() = scale * diff * z2;
    out.grad_z2.noalias() = scale * diff.transpose() * z1;
    return out;
  }
  const DenseMatrix m1 = Gram(z1);
  const DenseMatrix m2 = Gram(z2);
  const DenseMatrix a_z2 = Spmm(a_hat, z2);
  const DenseMatrix a_z1 = Spmm(a_hat, z1);
  double a_norm2 = 0.0;
  for (NodeId i = 0; i < n; ++i) {
    for (double w : a_hat.weights(i)) a_norm2 += w * w;
  }
  // <Z1, A Z2> = sum over stored entries of a_ij z1_i . z2_j.
  const double cross = z1.cwiseProduct(a_z2).sum();
  const double total = m1.cwiseProduct(m2).sum() - 2.0 * cross + a_norm2;
  out.loss = std::max(0.0, total) * inv_n2;
  out.grad_z1.noalias() = z1 * m2;
  out.grad_z1 -= a_z2;
  out.grad_z1 *= scale;
  out.grad_z2.noalias() = z2 * m1;
  out.grad_z2 -= a_z1;
  out.grad_z2 *= scale;
  return out;
}

EncoderGrads BackwardFromEmbeddings(const ForwardCache& cache,
                                    const DenseMatrix& grad_z1,
                                    const DenseMatrix& grad_z2,
                                    const ViewInput& x1,
                                    const ViewInput& x2,
                                    const EncoderParams& params) {
  CheckSameShape(cache.view1.normalized, grad_z1, "backward");
  CheckSameShape(cache.view2.normalized, grad_z2, "backward");
  if (x1.rows() != grad_z1.rows() || x2.rows() != grad_z2.rows()) {
    throw std::invalid_argument("backward: inputs do not match the cache");
  }
  // Noise is additive, so dL/dZ2 (pre-noise) equals dL/d(Z2 + N).
  const DenseMatrix grad_y1 = NormalizeBackward(cache.view1, grad_z1);
  const DenseMatrix grad_y2 = NormalizeBackward(cache.view2, grad_z2);

  EncoderGrads grads;
  grads.shared = params.shared;
  grads.view1.resize(params.view1.size());
  grads.view2.resize(params.view2.size());
  EncoderBackward(params.encoder(1), cache.view1, x1, grad_y1, grads.view1,
                  /*accumulate=*/false);
  if (params.shared) {
    EncoderBackward(params.encoder(2), cache.view2, x2, grad_y2, grads.view1,
                    /*accumulate=*/true);
  } else {
    EncoderBackward(params.encoder(2), cache.view2, x2, grad_y2, grads.view2,
                    /*accumulate=*/false);
  }
  return grads;
}

EncoderGrads Backward(const ForwardCache& cache, const SparseAdjacency& a_hat,
                      const ViewInput& x1, const ViewInput& x2,
                      const EncoderParams& params, LossRoute route) {
  const LossGradient lg = ContrastiveLossGradient(
      cache.view1.normalized, cache.perturbed, a_hat, route);
  return BackwardFromEmbeddings(cache, lg.grad_z1, lg.grad_z2, x1, x2, params);
}

DenseMatrix Fuse(const DenseMatrix& z1, const DenseMatrix& z2) {
  CheckSameShape(z1, z2, "fuse");
  return 0.5 * (z1 + z2);
}

void TrainConfig::Validate() const {
  if (epochs < 1) throw ConfigError("epochs must be >= 1");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw ConfigError("learning rate must be > 0");
  }
  if (t < 0) throw ConfigError("filter layer count t must be >= 0");
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw ConfigError("noise sigma must be >= 0");
  }
  if (embed_dim < 1) throw ConfigError("embedding dimension must be >= 1");
  if (depth < 1) throw ConfigError("encoder depth must be >= 1 for training");
  if (!(adam.beta1 >= 0.0 && adam.beta1 < 1.0) ||
      !(adam.beta2 >= 0.0 && adam.beta2 < 1.0) || !(adam.eps > 0.0)) {
    throw ConfigError("invalid Adam hyperparameters");
  }
}

TrainResult Train(const Graph& graph, const TrainConfig& config,
                  const EpochObserver& observer) {
  config.Validate();
  graph.Validate();
  const ViewInput x_s =
      SmoothedInput(graph.adjacency, graph.attributes, config.t);
  return TrainOnInputs(x_s, x_s, AddSelfLoops(graph.adjacency), config,
                       observer);
}

TrainResult TrainOnInputs(const ViewInput& x1, const ViewInput& x2,
                          const SparseAdjacency& a_hat,
                          const TrainConfig& config,
                          const EpochObserver& observer) {
  config.Validate();
  if (x1.rows() != a_hat.num_nodes() || x2.rows() != a_hat.num_nodes() ||
      x1.cols() != x2.cols()) {
    throw std::invalid_argument("view inputs do not match the loss target");
  }
  TrainResult result;
  result.params = InitParams(
      EncoderOptions{.input_dim = static_cast<int>(x1.cols()),
                     .embed_dim = config.embed_dim,
                     .depth = config.depth,
                     .bias = config.bias,
                     .shared = !config.unshared_encoders},
      config.seed);
  AdamState adam = MakeAdamState(
      std::as_const(result.params).Tensors(), config.adam);
  result.loss_history.reserve(config.epochs);

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    try {
      const ForwardCache cache = Forward(result.params, x1, x2,
                                         config.effective_sigma(), config.seed,
                                         epoch);
      const LossGradient lg = ContrastiveLossGradient(
          cache.view1.normalized, cache.perturbed, a_hat);
      result.loss_history.push_back(lg.loss);
      if (observer) observer(epoch, cache, lg.loss);
      EncoderGrads grads = BackwardFromEmbeddings(cache, lg.grad_z1,
                                                  lg.grad_z2, x1, x2,
                                                  result.params);
      const std::vector<const DenseMatrix*> grad_tensors =
          std::as_const(grads).Tensors();
      AdamStep(result.params.Tensors(), grad_tensors, adam,
               config.learning_rate);
    } catch (const NumericalError& e) {
      throw NumericalError("epoch " + std::to_string(epoch) + ": " + e.what());
    }
  }

  const ForwardCache final_pass =
      config.eval_noise
          ? Forward(result.params, x1, x2, config.effective_sigma(),
                    config.seed, config.epochs)
          : Forward(result.params, x1, x2,
                    DenseMatrix::Zero(x2.rows(), config.embed_dim));
  result.embeddings = Fuse(final_pass.view1.normalized, final_pass.perturbed);
  return result;
}

}  // namespace scgc
