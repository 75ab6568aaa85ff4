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
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "gradcheck.h"
#include "scgc/data_io.h"
#include "scgc/errors.h"
#include "scgc/filter.h"
#include "test_util.h"

namespace scgc {
namespace {

using testing::CheckGradients;
using testing::InstanceShape;
using testing::MakeGradInstance;
using testing::MaxAbsDiff;
using testing::RandomGraph;
using testing::RandomMatrix;

double Median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

TEST(InitParamsTest, DeterministicPerSeed) {
  const EncoderParams a = InitParams(7, 5, 42);
  const EncoderParams b = InitParams(7, 5, 42);
  EXPECT_EQ(a.w1(), b.w1());
  EXPECT_EQ(a.w2(), b.w2());
  EXPECT_NE(a.w1(), InitParams(7, 5, 43).w1());
  EXPECT_NE(a.w1(), a.w2());
  EXPECT_EQ(a.w1().rows(), 7);
  EXPECT_EQ(a.w1().cols(), 5);
}

TEST(InitParamsTest, GlorotBoundForCoraShape) {
  const EncoderParams p = InitParams(1433, 500, 0);
  const double a = std::sqrt(6.0 / 1933.0);
  EXPECT_NEAR(a, 0.0557, 5e-5);
  EXPECT_LE(p.w1().cwiseAbs().maxCoeff(), a);
  EXPECT_LE(p.w2().cwiseAbs().maxCoeff(), a);
  // The draws fill the interval rather than clustering near zero.
  EXPECT_GT(p.w1().cwiseAbs().maxCoeff(), 0.99 * a);
  EXPECT_NEAR(p.w1().mean(), 0.0, 1e-3);
}

TEST(InitParamsTest, DepthBiasAndSharing) {
  const EncoderParams p = InitParams(
      EncoderOptions{.input_dim = 4, .embed_dim = 3, .depth = 3, .bias = true,
                     .shared = true},
      1);
  ASSERT_EQ(p.view1.size(), 3u);
  EXPECT_TRUE(p.view2.empty());
  EXPECT_EQ(p.view1[0].weight.rows(), 4);
  EXPECT_EQ(p.view1[1].weight.rows(), 3);
  EXPECT_EQ(p.view1[2].bias, DenseMatrix::Zero(1, 3));
  EXPECT_EQ(&p.encoder(1), &p.encoder(2));
  EXPECT_EQ(p.Tensors().size(), 6u);
}

TEST(RowL2NormalizeTest, Examples) {
  DenseMatrix z(1, 2);
  z << 3, 4;
  const DenseMatrix n = RowL2Normalize(z);
  EXPECT_DOUBLE_EQ(n(0, 0), 0.6);
  EXPECT_DOUBLE_EQ(n(0, 1), 0.8);

  std::mt19937_64 rng(2);
  const DenseMatrix r = RowL2Normalize(RandomMatrix(10, 5, rng));
  for (Eigen::Index i = 0; i < r.rows(); ++i) {
    EXPECT_NEAR(r.row(i).norm(), 1.0, 1e-12);
  }
  EXPECT_LT(MaxAbsDiff(RowL2Normalize(r), r), 1e-15);
}

TEST(RowL2NormalizeTest, DegenerateRowIsNamed) {
  DenseMatrix z = DenseMatrix::Ones(3, 2);
  z.row(1).setZero();
  try {
    RowL2Normalize(z);
    FAIL() << "expected NumericalError";
  } catch (const NumericalError& e) {
    EXPECT_NE(std::string(e.what()).find("row 1"), std::string::npos);
  }
}

TEST(ForwardTest, SharedWeightsWithoutNoiseGiveIdenticalViews) {
  std::mt19937_64 rng(3);
  const DenseMatrix x = RandomMatrix(6, 4, rng);
  EncoderParams p = InitParams(4, 3, 1);
  p.view2 = p.view1;  // unshared containers, equal values
  const ForwardCache c = Forward(p, x, 0.0, 9, 0);
  EXPECT_EQ(c.view1.normalized, c.view2.normalized);
  EXPECT_EQ(c.perturbed, c.view2.normalized);
  EXPECT_EQ(c.noise, DenseMatrix::Zero(6, 3));
}

TEST(ForwardTest, NoiseIsExactlyTheSampledMatrix) {
  std::mt19937_64 rng(4);
  const DenseMatrix x = RandomMatrix(6, 4, rng);
  const EncoderParams p = InitParams(4, 3, 1);
  const ForwardCache c = Forward(p, x, 0.01, 9, 5);
  EXPECT_EQ(c.noise, SampleNoise(6, 3, 0.01, 9, 5));
  EXPECT_EQ(c.perturbed, DenseMatrix(c.view2.normalized + c.noise));
  EXPECT_NEAR((c.perturbed - c.view2.normalized).norm(), c.noise.norm(), 1e-15);
  EXPECT_EQ(c.view2.normalized, RowL2Normalize(x * p.w2()));
  EXPECT_EQ(c.view1.normalized, RowL2Normalize(x * p.w1()));
}

TEST(ForwardTest, DeterministicPerSeedAndEpoch) {
  std::mt19937_64 rng(5);
  const DenseMatrix x = RandomMatrix(6, 4, rng);
  const EncoderParams p = InitParams(4, 3, 1);
  EXPECT_EQ(Forward(p, x, 0.01, 9, 2).perturbed,
            Forward(p, x, 0.01, 9, 2).perturbed);
  EXPECT_NE(Forward(p, x, 0.01, 9, 2).noise, Forward(p, x, 0.01, 9, 3).noise);
  EXPECT_NE(Forward(p, x, 0.01, 9, 2).noise, Forward(p, x, 0.01, 10, 2).noise);
}

TEST(SampleNoiseTest, MomentsMatchSigma) {
  const DenseMatrix n = SampleNoise(400, 50, 0.5, 1, 0);
  EXPECT_NEAR(n.mean(), 0.0, 0.01);
  const double var = n.squaredNorm() / static_cast<double>(n.size());
  EXPECT_NEAR(std::sqrt(var), 0.5, 0.01);
  EXPECT_THROW(SampleNoise(2, 2, -1.0, 0, 0), ConfigError);
}

TEST(CrossViewSimilarityTest, Examples) {
  std::mt19937_64 rng(6);
  const DenseMatrix z = RowL2Normalize(RandomMatrix(5, 3, rng));
  const DenseMatrix s = CrossViewSimilarity(z, z);
  for (int i = 0; i < 5; ++i) EXPECT_NEAR(s(i, i), 1.0, 1e-12);

  const DenseMatrix eye = DenseMatrix::Identity(3, 3);
  EXPECT_EQ(CrossViewSimilarity(eye, eye), eye);

  const DenseMatrix a = RandomMatrix(6, 3, rng);
  const DenseMatrix b = RandomMatrix(6, 3, rng);
  const DenseMatrix got = CrossViewSimilarity(a, b);
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      double dot = 0.0;
      for (int k = 0; k < 3; ++k) dot += a(i, k) * b(j, k);
      EXPECT_NEAR(got(i, j), dot, 1e-12);
    }
  }
  EXPECT_THROW(CrossViewSimilarity(a, DenseMatrix::Ones(6, 2)),
               std::invalid_argument);
}

TEST(ContrastiveLossTest, ExactTargetGivesZero) {
  const SparseAdjacency a_hat = AddSelfLoops(testing::PathGraph());
  EXPECT_EQ(ContrastiveLoss(a_hat.ToDense(), a_hat), 0.0);
}

TEST(ContrastiveLossTest, TwoNodeMiss) {
  const SparseAdjacency a_hat =
      AddSelfLoops(SparseAdjacency::FromEdges(2, {}));
  EXPECT_DOUBLE_EQ(ContrastiveLoss(DenseMatrix::Zero(2, 2), a_hat), 0.5);
}

TEST(ContrastiveLossTest, DenseOracleAndGramRouteAgree) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 10;
    const SparseAdjacency a_hat = AddSelfLoops(RandomGraph(n, 0.4, rng));
    const DenseMatrix z1 = RowL2Normalize(RandomMatrix(n, 4, rng));
    const DenseMatrix z2 = z1 + 0.1 * RandomMatrix(n, 4, rng);
    const DenseMatrix s = CrossViewSimilarity(z1, z2);
    const double oracle =
        (s - a_hat.ToDense()).squaredNorm() / static_cast<double>(n * n);
    const double dense = ContrastiveLoss(s, a_hat);
    const double gram = ContrastiveLoss(z1, z2, a_hat);
    EXPECT_NEAR(dense, oracle, 1e-12);
    EXPECT_NEAR(gram, oracle, 1e-12);
    EXPECT_GE(gram, 0.0);
  }
}

TEST(ContrastiveLossTest, GradientRoutesAgree) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 3 + trial % 20;
    const int d = 2 + trial % 7;
    const SparseAdjacency a_hat = AddSelfLoops(RandomGraph(n, 0.3, rng));
    const DenseMatrix z1 = RowL2Normalize(RandomMatrix(n, d, rng));
    const DenseMatrix z2 = RowL2Normalize(RandomMatrix(n, d, rng));
    const LossGradient gram =
        ContrastiveLossGradient(z1, z2, a_hat, LossRoute::kGram);
    const LossGradient dense =
        ContrastiveLossGradient(z1, z2, a_hat, LossRoute::kDense);
    EXPECT_NEAR(gram.loss, dense.loss, 1e-12);
    EXPECT_LT(MaxAbsDiff(gram.grad_z1, dense.grad_z1), 1e-12);
    EXPECT_LT(MaxAbsDiff(gram.grad_z2, dense.grad_z2), 1e-12);
    // dL/dS = 2/N^2 (S - A) chained through S = Z1 Z2^T.
    const DenseMatrix ds = 2.0 / (n * n) *
                           (CrossViewSimilarity(z1, z2) - a_hat.ToDense());
    EXPECT_LT(MaxAbsDiff(dense.grad_z1, ds * z2), 1e-12);
    EXPECT_LT(MaxAbsDiff(dense.grad_z2, ds.transpose() * z1), 1e-12);
  }
}

TEST(BackwardTest, ZeroGradientAtExactTarget) {
  // X = I, W1 = W2 = I: Z1 = Z2 = I and S = I = A + I for an edgeless graph.
  EncoderParams p = InitParams(2, 2, 0);
  p.view1[0].weight = DenseMatrix::Identity(2, 2);
  p.view2[0].weight = DenseMatrix::Identity(2, 2);
  const DenseMatrix x = DenseMatrix::Identity(2, 2);
  const SparseAdjacency a_hat = AddSelfLoops(SparseAdjacency::FromEdges(2, {}));
  const ForwardCache c = Forward(p, x, 0.0, 0, 0);
  EXPECT_EQ(ContrastiveLoss(c, a_hat), 0.0);
  const EncoderGrads g = Backward(c, a_hat, x, x, p);
  EXPECT_EQ(g.w1(), DenseMatrix::Zero(2, 2));
  EXPECT_EQ(g.w2(), DenseMatrix::Zero(2, 2));
}

TEST(BackwardTest, MatchesFiniteDifferencesOnSixNodes) {
  std::mt19937_64 rng(10);
  for (double sigma : {0.0, 0.01}) {
    const auto inst = MakeGradInstance(
        InstanceShape{.n = 6, .input_dim = 4, .embed_dim = 3, .sigma = sigma},
        rng);
    for (LossRoute route : {LossRoute::kGram, LossRoute::kDense}) {
      const auto check = CheckGradients(inst, 1e-6, route);
      EXPECT_EQ(check.entries, 24);
      EXPECT_LT(check.max_relative_error, 1e-5);
    }
  }
}

TEST(BackwardTest, NoiseReachesW1OnlyThroughSimilarity) {
  std::mt19937_64 rng(11);
  auto inst = MakeGradInstance(
      InstanceShape{.n = 6, .input_dim = 4, .embed_dim = 3, .sigma = 0.01},
      rng);
  const ForwardCache c1 = Forward(inst.params, inst.x1, inst.x2, inst.noise);
  const DenseMatrix other = 0.01 * RandomMatrix(6, 3, rng);
  const ForwardCache c2 = Forward(inst.params, inst.x1, inst.x2, other);
  // View 1 activations do not see the noise at all.
  EXPECT_EQ(c1.view1.normalized, c2.view1.normalized);
  const EncoderGrads g1 = Backward(c1, inst.a_hat, inst.x1, inst.x2, inst.params);
  const EncoderGrads g2 = Backward(c2, inst.a_hat, inst.x1, inst.x2, inst.params);
  EXPECT_NE(g1.w1(), g2.w1());
  // Chain-rule oracle for W1 under each sample: X^T dY1 with dZ1 = dS Z2n.
  for (const ForwardCache* c : {&c1, &c2}) {
    const DenseMatrix ds = 2.0 / 36.0 *
        (CrossViewSimilarity(c->view1.normalized, c->perturbed) -
         inst.a_hat.ToDense());
    const DenseMatrix dz1 = ds * c->perturbed;
    DenseMatrix dy1(6, 3);
    for (int i = 0; i < 6; ++i) {
      const auto z = c->view1.normalized.row(i);
      dy1.row(i) = (dz1.row(i) - z.dot(dz1.row(i)) * z) / c->view1.row_norms(i);
    }
    const EncoderGrads g = Backward(*c, inst.a_hat, inst.x1, inst.x2, inst.params);
    EXPECT_LT(MaxAbsDiff(g.w1(), inst.x1.transpose() * dy1), 1e-13);
  }
  inst.noise = other;
  EXPECT_LT(CheckGradients(inst).max_relative_error, 1e-5);
}

TEST(BackwardTest, DeepBiasedSharedAndDistinctInputs) {
  std::mt19937_64 rng(12);
  for (int depth = 1; depth <= 3; ++depth) {
    for (bool bias : {false, true}) {
      for (bool shared : {false, true}) {
        const auto inst = MakeGradInstance(
            InstanceShape{.n = 7,
                          .input_dim = 5,
                          .embed_dim = 4,
                          .depth = depth,
                          .bias = bias,
                          .shared = shared,
                          .distinct_inputs = true,
                          .sigma = 0.01},
            rng);
        EXPECT_LT(CheckGradients(inst).max_relative_error, 1e-5)
            << "depth " << depth << " bias " << bias << " shared " << shared;
      }
    }
  }
}

TEST(BackwardTest, ShapeMismatchThrows) {
  std::mt19937_64 rng(13);
  const auto inst = MakeGradInstance(InstanceShape{}, rng);
  const ForwardCache c = Forward(inst.params, inst.x1, inst.x2, inst.noise);
  const SparseAdjacency wrong = AddSelfLoops(RandomGraph(5, 0.5, rng));
  EXPECT_THROW(Backward(c, wrong, inst.x1, inst.x2, inst.params),
               std::invalid_argument);
}

TEST(FuseTest, Examples) {
  std::mt19937_64 rng(14);
  const DenseMatrix z1 = RandomMatrix(4, 3, rng);
  const DenseMatrix z2 = RandomMatrix(4, 3, rng);
  EXPECT_EQ(Fuse(z1, z1), z1);
  EXPECT_EQ(Fuse(z1, -z1), DenseMatrix::Zero(4, 3));
  const DenseMatrix f = Fuse(z1, z2);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(f(i, j), 0.5 * (z1(i, j) + z2(i, j)), 1e-15);
  }
  EXPECT_THROW(Fuse(z1, DenseMatrix::Ones(4, 2)), std::invalid_argument);
}

TrainConfig SmallConfig(int epochs) {
  TrainConfig config;
  config.epochs = epochs;
  config.embed_dim = 16;
  config.t = 2;
  config.seed = 3;
  return config;
}

Graph TwoBlockGraph() {
  SbmSpec spec;
  spec.blocks = 2;
  spec.nodes_per_block = 30;
  spec.p_in = 0.5;
  spec.p_out = 0.01;
  spec.feature_dim = 8;
  spec.seed = 1;
  return GenerateSbm(spec).graph;
}

TEST(TrainConfigTest, Validation) {
  TrainConfig config;
  config.Validate();
  config.epochs = 0;
  EXPECT_THROW(config.Validate(), ConfigError);
  config = TrainConfig{};
  config.learning_rate = 0.0;
  EXPECT_THROW(config.Validate(), ConfigError);
  config = TrainConfig{};
  config.sigma = -1.0;
  EXPECT_THROW(config.Validate(), ConfigError);
  config = TrainConfig{};
  config.embed_dim = 0;
  EXPECT_THROW(config.Validate(), ConfigError);
}

TEST(TrainTest, OneEpochRecordsInitialLoss) {
  const Graph g = TwoBlockGraph();
  const TrainConfig config = SmallConfig(1);
  const TrainResult result = Train(g, config);
  ASSERT_EQ(result.loss_history.size(), 1u);
  const DenseMatrix x_s = LowPassDenoise(g, config.t);
  const EncoderParams init = InitParams(
      EncoderOptions{.input_dim = 8, .embed_dim = 16}, config.seed);
  const ForwardCache c = Forward(init, x_s, config.sigma, config.seed, 0);
  EXPECT_DOUBLE_EQ(result.loss_history[0],
                   ContrastiveLoss(c, AddSelfLoops(g.adjacency)));
  EXPECT_EQ(result.embeddings.rows(), 60);
  EXPECT_EQ(result.embeddings.cols(), 16);
}

TEST(TrainTest, BitwiseDeterministic) {
  const Graph g = TwoBlockGraph();
  const TrainResult a = Train(g, SmallConfig(20));
  const TrainResult b = Train(g, SmallConfig(20));
  EXPECT_EQ(a.embeddings, b.embeddings);
  EXPECT_EQ(a.loss_history, b.loss_history);
}

TEST(TrainTest, LossDecreasesOnTwoBlockSbm) {
  const Graph g = TwoBlockGraph();
  TrainConfig config = SmallConfig(200);
  config.embed_dim = 32;
  const TrainResult r = Train(g, config);
  ASSERT_EQ(r.loss_history.size(), 200u);
  EXPECT_LT(r.loss_history.back(), r.loss_history.front());
  const std::vector<double> first(r.loss_history.begin(),
                                  r.loss_history.begin() + 20);
  const std::vector<double> last(r.loss_history.end() - 20,
                                 r.loss_history.end());
  EXPECT_LT(Median(last), Median(first));
}

TEST(TrainTest, SharedNoiselessViewsGiveSymmetricSimilarity) {
  const Graph g = TwoBlockGraph();
  TrainConfig config = SmallConfig(15);
  config.unshared_encoders = false;
  config.noise_enabled = false;
  int observed = 0;
  const TrainResult r = Train(
      g, config, [&](int, const ForwardCache& c, double) {
        EXPECT_EQ(c.view1.normalized, c.perturbed);
        const DenseMatrix s = CrossViewSimilarity(c.view1.normalized, c.perturbed);
        EXPECT_LT(MaxAbsDiff(s, s.transpose()), 1e-15);
        ++observed;
      });
  EXPECT_EQ(observed, 15);
  EXPECT_TRUE(r.params.shared);
}

TEST(TrainTest, EvalPassIsNoiseFreeByDefault) {
  const Graph g = TwoBlockGraph();
  TrainConfig config = SmallConfig(5);
  config.sigma = 1.0;
  const TrainResult r = Train(g, config);
  const DenseMatrix x_s = LowPassDenoise(g, config.t);
  const ForwardCache c = Forward(r.params, x_s, 0.0, 0, 0);
  EXPECT_EQ(r.embeddings, Fuse(c.view1.normalized, c.view2.normalized));

  config.eval_noise = true;
  const TrainResult noised = Train(g, config);
  const ForwardCache cn = Forward(noised.params, x_s, config.sigma, config.seed,
                                  config.epochs);
  EXPECT_EQ(noised.embeddings, Fuse(cn.view1.normalized, cn.perturbed));
}

TEST(TrainTest, DegenerateInputReportsEpoch) {
  Graph g = TwoBlockGraph();
  // An isolated node with zero attributes has a zero embedding row.
  std::vector<Edge> edges = g.adjacency.UndirectedEdges();
  std::erase_if(edges, [](const Edge& e) { return e.u == 0 || e.v == 0; });
  g.adjacency = SparseAdjacency::FromEdges(60, edges);
  g.attributes.row(0).setZero();
  try {
    Train(g, SmallConfig(3));
    FAIL() << "expected NumericalError";
  } catch (const NumericalError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("epoch 0"), std::string::npos) << what;
    EXPECT_NE(what.find("row 0"), std::string::npos) << what;
  }
}

// Binary bag-of-words style attributes with about `density` nonzeros.
DenseMatrix SparseBinary(int n, int d, double density, std::mt19937_64& rng) {
  std::bernoulli_distribution on(density);
  DenseMatrix x = DenseMatrix::Zero(n, d);
  for (Eigen::Index k = 0; k < x.size(); ++k) x.data()[k] = on(rng) ? 1.0 : 0.0;
  return x;
}

TEST(ViewInputTest, FactoredProductsMatchDenseSmoothing) {
  std::mt19937_64 rng(30);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 5 + trial;
    const SparseAdjacency a = RandomGraph(n, 0.2, rng);
    const DenseMatrix x = SparseBinary(n, 12, 0.1, rng);
    const int t = trial % 4;
    const ViewInput in = ViewInput::Factored(
        x, SymNormFilter(AddSelfLoops(a)), t);
    const DenseMatrix x_s = LowPassDenoise(a, x, t);
    const DenseMatrix w = RandomMatrix(12, 3, rng);
    const DenseMatrix g = RandomMatrix(n, 3, rng);
    EXPECT_TRUE(in.factored());
    EXPECT_EQ(in.rows(), n);
    EXPECT_EQ(in.cols(), 12);
    EXPECT_LE(MaxAbsDiff(in.ToDense(), x_s), 1e-14);
    EXPECT_LE(MaxAbsDiff(in.Times(w), DenseMatrix(x_s * w)), 1e-13);
    EXPECT_LE(MaxAbsDiff(in.TransposeTimes(g),
                         DenseMatrix(x_s.transpose() * g)),
              1e-13);
  }
}

TEST(ViewInputTest, SmoothedInputPicksCheaperForm) {
  std::mt19937_64 rng(31);
  const SparseAdjacency a = RandomGraph(60, 0.05, rng);
  const DenseMatrix sparse_x = SparseBinary(60, 200, 0.02, rng);
  const DenseMatrix dense_x = RandomMatrix(60, 200, rng);
  EXPECT_TRUE(SmoothedInput(a, sparse_x, 2).factored());
  EXPECT_FALSE(SmoothedInput(a, dense_x, 2).factored());
  EXPECT_FALSE(SmoothedInput(a, sparse_x, 0).factored());
  EXPECT_EQ(SmoothedInput(a, dense_x, 2).ToDense(), LowPassDenoise(a, dense_x, 2));
  EXPECT_EQ(SmoothedInput(a, sparse_x, 0).ToDense(), sparse_x);
  EXPECT_THROW(SmoothedInput(a, dense_x, -1), ConfigError);
}

TEST(ViewInputTest, FactoredTrainingMatchesDense) {
  std::mt19937_64 rng(32);
  const SparseAdjacency a = RandomGraph(40, 0.1, rng);
  const DenseMatrix x = SparseBinary(40, 150, 0.03, rng);
  const ViewInput factored =
      ViewInput::Factored(x, SymNormFilter(AddSelfLoops(a)), 2);
  const DenseMatrix x_s = LowPassDenoise(a, x, 2);
  TrainConfig config;
  config.epochs = 10;
  config.embed_dim = 16;
  config.seed = 3;
  const SparseAdjacency a_hat = AddSelfLoops(a);
  const TrainResult f = TrainOnInputs(factored, factored, a_hat, config);
  const TrainResult d = TrainOnInputs(x_s, x_s, a_hat, config);
  ASSERT_EQ(f.loss_history.size(), d.loss_history.size());
  for (std::size_t e = 0; e < f.loss_history.size(); ++e) {
    EXPECT_NEAR(f.loss_history[e], d.loss_history[e],
                1e-12 * d.loss_history[e]);
  }
  EXPECT_LE(MaxAbsDiff(f.embeddings, d.embeddings), 1e-10);
}

}  // namespace
}  // namespace scgc
