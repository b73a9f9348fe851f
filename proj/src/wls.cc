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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "kshapiq/combinatorics.h"

namespace kshapiq {

Eigen::MatrixXd BuildDesignMatrix(std::span<const Coalition> rows,
                                  std::span<const Coalition> columns) {
  unsigned max_order = 0;
  for (const Coalition& s : columns) max_order = std::max(max_order, s.size());
  const LambdaWeights lambda(max_order);
  Eigen::MatrixXd x(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(columns.size()));
  for (std::size_t j = 0; j < columns.size(); ++j) {
    const std::uint64_t s_mask = columns[j].mask();
    const unsigned s = columns[j].size();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          lambda.at(s, IntersectionSize(rows[i].mask(), s_mask));
    }
  }
  return x;
}

Eigen::MatrixXd BuildDesignMatrix(std::span<const Coalition> rows,
                                  unsigned order) {
  if (order < 1) throw std::invalid_argument("interaction order must be >= 1");
  if (rows.empty()) return Eigen::MatrixXd(0, 0);
  const std::vector<Coalition> columns = SubsetsOfSize(rows.front().n(), order);
  return BuildDesignMatrix(rows, columns);
}

Eigen::VectorXd WlsSystem::Solve() const {
  return SolveWls(Design(), response, weights);
}

namespace {

void CheckSystem(const Eigen::MatrixXd& x, const Eigen::VectorXd& w) {
  if (x.rows() == 0 || x.cols() == 0) {
    throw std::invalid_argument("WLS needs at least one row and one column");
  }
  if (w.size() != x.rows()) {
    throw std::invalid_argument("WLS weight count does not match the rows");
  }
  if (!x.allFinite() || !w.allFinite()) {
    throw std::invalid_argument("WLS inputs contain non-finite values");
  }
  if ((w.array() <= 0.0).any()) {
    throw std::invalid_argument("WLS weights must be positive");
  }
}

// sqrt(W) X with rows sorted by descending weight.
Eigen::MatrixXd ScaledDesign(const Eigen::MatrixXd& x, const Eigen::VectorXd& w,
                             std::vector<Eigen::Index>& order) {
  order.resize(static_cast<std::size_t>(x.rows()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return w(a) > w(b); });
  Eigen::MatrixXd scaled(x.rows(), x.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const Eigen::Index src = order[static_cast<std::size_t>(i)];
    scaled.row(i) = std::sqrt(w(src)) * x.row(src);
  }
  return scaled;
}

}  // namespace

Eigen::VectorXd SolveWls(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                         const Eigen::VectorXd& w) {
  CheckSystem(x, w);
  if (y.size() != x.rows()) {
    throw std::invalid_argument("WLS response length does not match the rows");
  }
  if (!y.allFinite()) {
    throw std::invalid_argument("WLS response contains non-finite values");
  }
  std::vector<Eigen::Index> order;
  const Eigen::MatrixXd a = ScaledDesign(x, w, order);
  Eigen::VectorXd b(y.size());
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    const Eigen::Index src = order[static_cast<std::size_t>(i)];
    b(i) = std::sqrt(w(src)) * y(src);
  }
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(a);
  return cod.solve(b);
}

Eigen::MatrixXd WeightedPrecisionMatrix(const Eigen::MatrixXd& x,
                                        const Eigen::VectorXd& w) {
  CheckSystem(x, w);
  std::vector<Eigen::Index> order;
  const Eigen::MatrixXd a = ScaledDesign(x, w, order);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  if (qr.rank() < x.cols()) {
    throw std::runtime_error("X^T W X is singular (rank " +
                             std::to_string(qr.rank()) + " < " +
                             std::to_string(x.cols()) + ")");
  }
  const Eigen::Index p = x.cols();
  // X^T W X = P R^T R P^T, so its inverse is P R^{-1} R^{-T} P^T.
  const Eigen::MatrixXd r =
      qr.matrixQR().topLeftCorner(p, p).triangularView<Eigen::Upper>();
  Eigen::MatrixXd r_inv = Eigen::MatrixXd::Identity(p, p);
  r.triangularView<Eigen::Upper>().solveInPlace(r_inv);
  const Eigen::MatrixXd inner = r_inv * r_inv.transpose();
  const auto& perm = qr.colsPermutation();
  return perm * inner * perm.transpose();
}

}  // namespace kshapiq
