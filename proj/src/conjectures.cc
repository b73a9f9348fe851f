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

#include "kshapiq/conjectures.h"

#include <algorithm>
#include <exception>
#include <stdexcept>

#include <Eigen/Dense>

#include "kshapiq/combinatorics.h"
#include "kshapiq/estimators.h"
#include "kshapiq/exact.h"
#include "kshapiq/wls.h"

namespace kshapiq {

nlohmann::json ConjectureReport::ToJson() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const ConjectureCase& c : cases) {
    nlohmann::json row = {{"n", c.n},
                          {"k", c.k},
                          {"mse", c.mse},
                          {"raw_mse", c.raw_mse},
                          {"pass", c.pass}};
    if (!c.error.empty()) row["error"] = c.error;
    rows.push_back(std::move(row));
  }
  return {{"conjecture", id},   {"n_min", n_min},         {"n_max", n_max},
          {"k_min", k_min},     {"k_max", k_max},         {"max_mse", max_mse},
          {"threshold", threshold}, {"pass", pass},       {"cases", std::move(rows)}};
}

namespace {

struct FullSystem {
  std::vector<Coalition> rows;
  std::vector<Coalition> columns;
  Eigen::MatrixXd design;
  Eigen::VectorXd weights;
};

FullSystem BuildFullSystem(unsigned n, unsigned k, double mu_inf) {
  FullSystem sys;
  sys.rows = EnumerateSubsets(n, std::nullopt);
  sys.columns = SubsetsOfSize(n, k);
  sys.design = BuildDesignMatrix(sys.rows, sys.columns);
  sys.weights.resize(static_cast<Eigen::Index>(sys.rows.size()));
  for (std::size_t i = 0; i < sys.rows.size(); ++i) {
    sys.weights(static_cast<Eigen::Index>(i)) =
        KernelWeightMu(k, sys.rows[i].size(), n, mu_inf);
  }
  return sys;
}

void CheckRange(unsigned n_min, unsigned n_max) {
  if (n_min < 2 || n_max < n_min || n_max > kExactPlayerGuard) {
    throw std::invalid_argument("conjecture sweep needs 2 <= n_min <= n_max <= 20");
  }
}

void Finalise(ConjectureReport& report) {
  report.pass = !report.cases.empty();
  report.max_mse = 0.0;
  for (const ConjectureCase& c : report.cases) {
    report.pass = report.pass && c.pass;
    report.max_mse = std::max(report.max_mse, c.mse);
    report.k_max = std::max(report.k_max, c.k);
  }
}

}  // namespace

double PrecisionMatrixMse(unsigned n, unsigned k, double mu_inf) {
  const FullSystem sys = BuildFullSystem(n, k, mu_inf);
  const Eigen::MatrixXd numeric = WeightedPrecisionMatrix(sys.design, sys.weights);
  const Eigen::MatrixXd closed = ConjecturedPrecisionMatrix(n, k);
  return (numeric - closed).array().square().mean();
}

std::vector<double> SplitRepresentation(const SoumGame& game, unsigned k,
                                        double mu_inf) {
  const unsigned n = game.n();
  if (k < 1 || n < 2 * k) {
    throw std::invalid_argument("split representation needs n >= 2k");
  }
  const FullSystem sys = BuildFullSystem(n, k, mu_inf);
  InteractionValues lower_orders(n, std::max(1U, k - 1), IndexKind::kSII);
  if (k > 1) lower_orders = game.ExactSii(k - 1);
  Eigen::VectorXd residual(static_cast<Eigen::Index>(sys.rows.size()));
  for (std::size_t i = 0; i < sys.rows.size(); ++i) {
    const double lower =
        k > 1 ? KAdditiveApprox(lower_orders, sys.rows[i], k - 1) : 0.0;
    residual(static_cast<Eigen::Index>(i)) = game.value(sys.rows[i]) - lower;
  }
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(residual.size());
  const Eigen::VectorXd phi = SplitOrderSolve(k, sys.rows, sys.columns,
                                              sys.design, residual,
                                              sys.weights, ones);
  return {phi.data(), phi.data() + phi.size()};
}

SplitRepresentationError SplitRepresentationMse(const SoumGame& game,
                                                unsigned k, double mu_inf) {
  const std::vector<double> truth = game.ExactSii(k).values_of_order(k);
  const std::vector<double> base = SplitRepresentation(game, k, mu_inf);
  const std::vector<double> doubled = SplitRepresentation(game, k, 2 * mu_inf);
  SplitRepresentationError err;
  for (std::size_t j = 0; j < truth.size(); ++j) {
    const double raw = base[j] - truth[j];
    const double limit = 2.0 * doubled[j] - base[j] - truth[j];
    err.raw_mse += raw * raw;
    err.limit_mse += limit * limit;
  }
  err.raw_mse /= static_cast<double>(truth.size());
  err.limit_mse /= static_cast<double>(truth.size());
  return err;
}

ConjectureReport ValidateConjectureInverse(unsigned n_min, unsigned n_max,
                                           double mu_inf) {
  CheckRange(n_min, n_max);
  ConjectureReport report;
  report.id = "inverse";
  report.n_min = n_min;
  report.n_max = n_max;
  for (unsigned n = n_min; n <= n_max; ++n) {
    for (unsigned k = 1; 2 * k <= n; ++k) {
      ConjectureCase c;
      c.n = n;
      c.k = k;
      try {
        c.mse = PrecisionMatrixMse(n, k, mu_inf);
        c.raw_mse = c.mse;
        c.pass = c.mse < report.threshold;
      } catch (const std::exception& e) {
        c.error = e.what();
      }
      report.cases.push_back(c);
    }
  }
  Finalise(report);
  return report;
}

ConjectureReport ValidateConjectureSii(unsigned n_min, unsigned n_max,
                                       unsigned n_soums, unsigned m_terms,
                                       std::uint64_t seed, double mu_inf) {
  CheckRange(n_min, n_max);
  if (n_soums < 1) throw std::invalid_argument("need at least one SOUM");
  ConjectureReport report;
  report.id = "sii";
  report.n_min = n_min;
  report.n_max = n_max;
  for (unsigned n = n_min; n <= n_max; ++n) {
    for (unsigned k = 1; 2 * k <= n; ++k) {
      ConjectureCase c;
      c.n = n;
      c.k = k;
      try {
        double limit_total = 0.0;
        double raw_total = 0.0;
        for (unsigned i = 0; i < n_soums; ++i) {
          const std::uint64_t instance_seed =
              seed * 1000003 + n * 1009 + k * 101 + i;
          const SoumGame game = GenerateSoum({n, m_terms, n, 0}, instance_seed);
          const SplitRepresentationError err =
              SplitRepresentationMse(game, k, mu_inf);
          limit_total += err.limit_mse;
          raw_total += err.raw_mse;
        }
        c.mse = limit_total / n_soums;
        c.raw_mse = raw_total / n_soums;
        c.pass = c.mse < report.threshold;
      } catch (const std::exception& e) {
        c.error = e.what();
      }
      report.cases.push_back(c);
    }
  }
  Finalise(report);
  return report;
}

}  // namespace kshapiq
