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

#ifndef KSHAPIQ_WLS_H_
#define KSHAPIQ_WLS_H_

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "kshapiq/coalition.h"

namespace kshapiq {

// Dense design matrix with X[T, S] = lambda(|S|, |T n S|) for the given rows
// and columns.
Eigen::MatrixXd BuildDesignMatrix(std::span<const Coalition> rows,
                                  std::span<const Coalition> columns);

// Same, with the columns set to every interaction of size `order` in
// ascending mask order. Throws std::invalid_argument for order < 1.
Eigen::MatrixXd BuildDesignMatrix(std::span<const Coalition> rows,
                                  unsigned order);

// Rows (T, y_T, w_T) against columns of interactions.
struct WlsSystem {
  std::vector<Coalition> rows;
  Eigen::VectorXd response;
  Eigen::VectorXd weights;
  std::vector<Coalition> columns;

  Eigen::MatrixXd Design() const { return BuildDesignMatrix(rows, columns); }
  Eigen::VectorXd Solve() const;
};

// argmin_phi || sqrt(W) (y - X phi) ||^2 through a complete orthogonal
// decomposition of sqrt(W) X, with rows ordered by descending weight. When
// X^T W X is singular the minimum-norm minimiser is returned. Throws
// std::invalid_argument on shape mismatch, an empty system, a non-positive
// weight or a non-finite entry.
Eigen::VectorXd SolveWls(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                         const Eigen::VectorXd& w);

// Explicit (X^T W X)^{-1}, computed from the R factor of sqrt(W) X. Throws
// std::runtime_error if X^T W X is singular.
Eigen::MatrixXd WeightedPrecisionMatrix(const Eigen::MatrixXd& x,
                                        const Eigen::VectorXd& w);

}  // namespace kshapiq

#endif  // KSHAPIQ_WLS_H_
