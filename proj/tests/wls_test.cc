// Copyright 2026 The kshapiq Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "kshapiq/wls.h"

#include <cmath>
#include <limits>
#include <vector>

#include <gtest/gtest.h>

#include "kshapiq/combinatorics.h"
#include "kshapiq/estimators.h"
#include "kshapiq/exact.h"
#include "test_games.h"

namespace kshapiq {
namespace {

TEST(DesignMatrixTest, OrderOneIsIndicator) {
  const std::vector<Coalition> rows = EnumerateSubsets(4, std::nullopt);
  const Eigen::MatrixXd x = BuildDesignMatrix(rows, 1);
  ASSERT_EQ(x.rows(), 16);
  ASSERT_EQ(x.cols(), 4);
  for (std::uint64_t m = 0; m < 16; ++m) {
    for (unsigned i = 0; i < 4; ++i) EXPECT_EQ(x(m, i), double((m >> i) & 1U));
  }
}

TEST(DesignMatrixTest, OrderTwoEntries) {
  const std::vector<Coalition> rows = EnumerateSubsets(5, std::nullopt);
  const std::vector<Coalition> cols = SubsetsOfSize(5, 2);
  const Eigen::MatrixXd x = BuildDesignMatrix(rows, 2);
  ASSERT_EQ(x.cols(), 10);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      const unsigned overlap = IntersectionSize(rows[r].mask(), cols[c].mask());
      EXPECT_EQ(x(r, c), overlap == 1 ? -0.5 : 0.0);
    }
  }
}

TEST(DesignMatrixTest, OrderThreeFullOverlapIsZero) {
  const std::vector<Coalition> rows = {Coalition::FromPlayers({1, 2, 3}, 6),
                                       Coalition::Full(6)};
  const Eigen::MatrixXd x = BuildDesignMatrix(rows, 3);
  EXPECT_EQ(x(0, 0), 0.0);  // column {1,2,3}
  EXPECT_EQ(x.row(1).norm(), 0.0);
  EXPECT_THROW(BuildDesignMatrix(rows, 0), std::invalid_argument);
}

TEST(SolveWlsTest, TrivialSystems) {
  Eigen::MatrixXd x(1, 1);
  x << 1.0;
  EXPECT_DOUBLE_EQ(SolveWls(x, Eigen::VectorXd::Constant(1, 3.0),
                            Eigen::VectorXd::Ones(1))(0),
                   3.0);
  // Duplicated rows with split weights give the same solution.
  Eigen::MatrixXd a(3, 2);
  a << 1, 0, 0, 1, 1, 1;
  Eigen::VectorXd y(3);
  y << 1, 2, 4;
  Eigen::VectorXd w(3);
  w << 2, 1, 3;
  Eigen::MatrixXd a2(4, 2);
  a2 << 1, 0, 1, 0, 0, 1, 1, 1;
  Eigen::VectorXd y2(4);
  y2 << 1, 1, 2, 4;
  Eigen::VectorXd w2(4);
  w2 << 1, 1, 1, 3;
  EXPECT_LE((SolveWls(a, y, w) - SolveWls(a2, y2, w2)).norm(), 1e-12);
}

TEST(SolveWlsTest, MatchesNormalEquationsWhenWellPosed) {
  Eigen::MatrixXd x = Eigen::MatrixXd::Random(30, 5);
  Eigen::VectorXd y = Eigen::VectorXd::Random(30);
  Eigen::VectorXd w = Eigen::VectorXd::Random(30).cwiseAbs().array() + 0.1;
  const Eigen::MatrixXd xtw = x.transpose() * w.asDiagonal();
  const Eigen::VectorXd direct = (xtw * x).ldlt().solve(xtw * y);
  EXPECT_LE((SolveWls(x, y, w) - direct).norm(), 1e-10);
}

TEST(SolveWlsTest, UnderdeterminedGivesMinimumNorm) {
  Eigen::MatrixXd x(1, 2);
  x << 1, 1;
  const Eigen::VectorXd phi =
      SolveWls(x, Eigen::VectorXd::Constant(1, 2.0), Eigen::VectorXd::Ones(1));
  EXPECT_NEAR(phi(0), 1.0, 1e-12);
  EXPECT_NEAR(phi(1), 1.0, 1e-12);
}

TEST(SolveWlsTest, RejectsBadInput) {
  Eigen::MatrixXd x = Eigen::MatrixXd::Ones(2, 1);
  Eigen::VectorXd y = Eigen::VectorXd::Ones(2);
  EXPECT_THROW(SolveWls(x, y, Eigen::VectorXd::Ones(3)), std::invalid_argument);
  EXPECT_THROW(SolveWls(x, y, Eigen::VectorXd::Zero(2)), std::invalid_argument);
  EXPECT_THROW(SolveWls(Eigen::MatrixXd(0, 1), Eigen::VectorXd(0), Eigen::VectorXd(0)),
               std::invalid_argument);
  y(1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(SolveWls(x, y, Eigen::VectorXd::Ones(2)), std::invalid_argument);
}

TEST(SolveWlsTest, FullEnumerationOrderOneGivesShapleyValues) {
  const unsigned n = 6;
  const LookupGame g = testing::RandomLookupGame(n, 77);
  WlsSystem sys;
  sys.rows = EnumerateSubsets(n, std::nullopt);
  sys.columns = SubsetsOfSize(n, 1);
  sys.response.resize(64);
  sys.weights.resize(64);
  for (std::size_t i = 0; i < 64; ++i) {
    sys.response(i) = g.value(sys.rows[i]);
    sys.weights(i) = KernelWeightMu(1, sys.rows[i].size(), n, 1e6);
  }
  const Eigen::VectorXd phi = sys.Solve();
  const InteractionValues sv = ExactSv(g);
  for (unsigned i = 0; i < n; ++i) {
    EXPECT_NEAR(phi(i), sv.at(Coalition::FromPlayers({i + 1}, n)), 1e-6);
  }
}

TEST(PrecisionMatrixTest, NumericInverseMatchesClosedForm) {
  for (unsigned n = 4; n <= 8; ++n) {
    for (unsigned k = 1; 2 * k <= n; ++k) {
      const std::vector<Coalition> rows = EnumerateSubsets(n, std::nullopt);
      const Eigen::MatrixXd x = BuildDesignMatrix(rows, k);
      auto precision = [&](double mu_inf) {
        Eigen::VectorXd w(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
          w(i) = KernelWeightMu(k, rows[i].size(), n, mu_inf);
        }
        return Eigen::MatrixXd(WeightedPrecisionMatrix(x, w));
      };
      const Eigen::MatrixXd p = precision(1e7);
      const Eigen::MatrixXd a = ConjecturedPrecisionMatrix(n, k);
      EXPECT_LT((p - a).squaredNorm() / static_cast<double>(a.size()), 1e-10)
          << "n=" << n << " k=" << k;
      // First-order bias in 1 / mu_inf cancels.
      const Eigen::MatrixXd limit = 2.0 * precision(2e7) - p;
      EXPECT_LE((limit - a).cwiseAbs().maxCoeff(), 1e-8) << "n=" << n << " k=" << k;
    }
  }
}

TEST(PrecisionMatrixTest, RankDeficientThrows) {
  Eigen::MatrixXd x(2, 2);
  x << 1, 1, 2, 2;
  EXPECT_THROW(WeightedPrecisionMatrix(x, Eigen::VectorXd::Ones(2)), std::runtime_error);
}

}  // namespace
}  // namespace kshapiq
