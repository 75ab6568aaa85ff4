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

#include "scgc/kmeans.h"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "scgc/errors.h"
#include "scgc/metrics.h"
#include "test_util.h"

namespace scgc {
namespace {

using testing::RandomMatrix;

// Plain Lloyd iterations from fixed initial centers, to a fixpoint.
double NaiveLloydInertia(const DenseMatrix& z, DenseMatrix centers) {
  const int k = static_cast<int>(centers.rows());
  std::vector<int> labels(z.rows(), -1);
  for (int iter = 0; iter < 1000; ++iter) {
    bool changed = false;
    for (Eigen::Index i = 0; i < z.rows(); ++i) {
      int best = 0;
      for (int c = 1; c < k; ++c) {
        if ((z.row(i) - centers.row(c)).squaredNorm() <
            (z.row(i) - centers.row(best)).squaredNorm()) {
          best = c;
        }
      }
      changed |= labels[i] != best;
      labels[i] = best;
    }
    if (!changed) break;
    for (int c = 0; c < k; ++c) {
      Eigen::RowVectorXd sum = Eigen::RowVectorXd::Zero(z.cols());
      int count = 0;
      for (Eigen::Index i = 0; i < z.rows(); ++i) {
        if (labels[i] == c) {
          sum += z.row(i);
          ++count;
        }
      }
      if (count == 0) return std::numeric_limits<double>::infinity();
      centers.row(c) = sum / count;
    }
  }
  double inertia = 0.0;
  for (Eigen::Index i = 0; i < z.rows(); ++i) {
    inertia += (z.row(i) - centers.row(labels[i])).squaredNorm();
  }
  return inertia;
}

TEST(KMeansTest, TwoSeparatedPairs) {
  DenseMatrix z(4, 2);
  z << 0, 0, 0, 1, 10, 0, 10, 1;
  const KMeansResult r = KMeans(z, 2, 10, 300, 0);
  EXPECT_EQ(r.labels[0], r.labels[1]);
  EXPECT_EQ(r.labels[2], r.labels[3]);
  EXPECT_NE(r.labels[0], r.labels[2]);
  EXPECT_DOUBLE_EQ(r.inertia, 1.0);
  const int a = r.labels[0], b = r.labels[2];
  EXPECT_DOUBLE_EQ(r.centers(a, 0), 0.0);
  EXPECT_DOUBLE_EQ(r.centers(a, 1), 0.5);
  EXPECT_DOUBLE_EQ(r.centers(b, 0), 10.0);
  EXPECT_DOUBLE_EQ(r.centers(b, 1), 0.5);
}

TEST(KMeansTest, OneClusterPerPoint) {
  std::mt19937_64 rng(1);
  const DenseMatrix z = RandomMatrix(7, 3, rng);
  const KMeansResult r = KMeans(z, 7, 5, 300, 2);
  EXPECT_EQ(r.inertia, 0.0);
  EXPECT_EQ(std::set<int>(r.labels.begin(), r.labels.end()).size(), 7u);
}

TEST(KMeansTest, MatchesBestLloydFixpointOverAllInitialTriples) {
  std::mt19937_64 rng(2);
  for (int instance = 0; instance < 5; ++instance) {
    const DenseMatrix z = RandomMatrix(20, 2, rng);
    double oracle = std::numeric_limits<double>::infinity();
    for (int a = 0; a < 20; ++a) {
      for (int b = a + 1; b < 20; ++b) {
        for (int c = b + 1; c < 20; ++c) {
          DenseMatrix init(3, 2);
          init << z.row(a), z.row(b), z.row(c);
          oracle = std::min(oracle, NaiveLloydInertia(z, init));
        }
      }
    }
    const KMeansResult r = KMeans(z, 3, 50, 300, instance);
    EXPECT_NEAR(r.inertia, oracle, 1e-9);
  }
}

TEST(KMeansTest, InertiaNeverIncreases) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const DenseMatrix z = RandomMatrix(60, 4, rng);
    const KMeansResult r = KMeans(z, 5, 1, 300, trial);
    for (std::size_t i = 1; i < r.inertia_trace.size(); ++i) {
      EXPECT_LE(r.inertia_trace[i], r.inertia_trace[i - 1] * (1 + 1e-12));
    }
    EXPECT_EQ(static_cast<int>(r.inertia_trace.size()), r.iterations);
    EXPECT_GE(r.inertia, 0.0);
  }
}

TEST(KMeansTest, RowPermutationPermutesLabels) {
  std::mt19937_64 rng(4);
  // Three well separated blobs.
  DenseMatrix z = RandomMatrix(45, 2, rng) * 0.3;
  for (int i = 0; i < 45; ++i) z(i, 0) += 10.0 * (i / 15);
  std::vector<int> perm(45);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  DenseMatrix permuted(45, 2);
  for (int i = 0; i < 45; ++i) permuted.row(i) = z.row(perm[i]);
  const KMeansResult a = KMeans(z, 3, 10, 300, 0);
  const KMeansResult b = KMeans(permuted, 3, 10, 300, 0);
  std::vector<int> back(45);
  for (int i = 0; i < 45; ++i) back[perm[i]] = b.labels[i];
  EXPECT_EQ(ClusteringAccuracy(a.labels, back), 1.0);
}

TEST(KMeansTest, DeterministicAndThreadIndependent) {
  std::mt19937_64 rng(5);
  const DenseMatrix z = RandomMatrix(80, 5, rng);
  const KMeansResult a = KMeans(z, 4, KMeansOptions{8, 300, 7, 1});
  const KMeansResult b = KMeans(z, 4, KMeansOptions{8, 300, 7, 1});
  const KMeansResult c = KMeans(z, 4, KMeansOptions{8, 300, 7, 4});
  EXPECT_EQ(a.labels, b.labels);
  EXPECT_EQ(a.centers, b.centers);
  EXPECT_EQ(a.labels, c.labels);
  EXPECT_EQ(a.inertia, c.inertia);
}

TEST(KMeansTest, EmptyClusterIsReseeded) {
  const DenseMatrix z = DenseMatrix::Ones(5, 2);
  const KMeansResult r = KMeans(z, 2, 1, 300, 0);
  EXPECT_EQ(std::set<int>(r.labels.begin(), r.labels.end()).size(), 2u);
  EXPECT_EQ(r.inertia, 0.0);
  EXPECT_TRUE(r.centers.allFinite());
}

TEST(KMeansTest, InvalidArguments) {
  const DenseMatrix z = DenseMatrix::Ones(3, 2);
  EXPECT_THROW(KMeans(z, 0, 1, 10, 0), ConfigError);
  EXPECT_THROW(KMeans(z, 4, 1, 10, 0), ConfigError);
  EXPECT_THROW(KMeans(z, 2, 0, 10, 0), ConfigError);
  EXPECT_THROW(KMeans(z, 2, 1, 0, 0), ConfigError);
}

}  // namespace
}  // namespace scgc
