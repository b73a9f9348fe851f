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

#ifndef KSHAPIQ_ESTIMATORS_H_
#define KSHAPIQ_ESTIMATORS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "json.hpp"
#include "kshapiq/coalition.h"
#include "kshapiq/game.h"
#include "kshapiq/interaction_values.h"
#include "kshapiq/sampler.h"

namespace kshapiq {

enum class Method { kKernelShapIq, kInconsistent, kPermutation, kShapIq };

// "kernelshapiq", "inconsistent", "permutation", "shapiq".
std::string_view MethodName(Method method);
Method ParseMethod(std::string_view name);

inline constexpr double kDefaultMuInf = 1e6;

struct EstimatorConfig {
  unsigned order = 2;
  std::uint64_t budget = 0;
  double mu_inf = kDefaultMuInf;
  // Defaults to SamplingWeights::KernelDefault(n).
  std::optional<SamplingWeights> sampling_weights;
  std::uint64_t seed = 0;

  // Throws std::invalid_argument for order outside [1, n], mu_inf < 1 or a
  // budget below the forced coalitions.
  void Validate(unsigned n) const;
  SamplingWeights WeightsFor(unsigned n) const;
};

struct RunMetadata {
  std::string method;
  std::uint64_t budget = 0;
  std::uint64_t seed = 0;
  double mu_inf = kDefaultMuInf;
  unsigned q0 = 0;
  std::uint64_t n_samples = 0;
  std::uint64_t evaluations = 0;

  nlohmann::json ToJson() const;
};

struct Estimate {
  InteractionValues sii;   // orders 1..k
  InteractionValues ksii;  // Bernoulli aggregation of `sii`
  RunMetadata metadata;

  // Interaction-values JSON for the requested index plus a "metadata" block.
  nlohmann::json ToJson(IndexKind index) const;
};

// (-1)^{s-r} (n-t-s+r)! (t-r)! / (n-s+1)! with t = |T|, s = |S|, r = |T n S|.
// Summing v(T) times this weight over all T gives the SII of S.
double SiiSubsetWeight(unsigned n, const Coalition& s, const Coalition& t);

// (A_k)_{S1 S2} = (-1)^{k-|S1 n S2|} / (n-k+1) / C(n-k, k-|S1 n S2|) over the
// order-k interactions in mask order. Throws std::invalid_argument if n < 2k.
Eigen::MatrixXd ConjecturedPrecisionMatrix(unsigned n, unsigned k);

// Phi_k(S) = sum over supersets S~ of S with |S~| <= k of B_{|S~|-|S|}
// phi(S~). Throws std::invalid_argument unless `sii` holds every order <= k.
InteractionValues AggregateSiiToKsii(const InteractionValues& sii, unsigned k);

// Order-`order` solve for order >= 3: coalitions with order <= |T| <= n-order
// enter a WLS fit against the response zeroed outside that band, the
// remaining coalitions contribute sample_weight * SII weight * response
// directly. `kernel_weights` are the WLS row weights.
Eigen::VectorXd SplitOrderSolve(unsigned order, std::span<const Coalition> rows,
                                std::span<const Coalition> columns,
                                const Eigen::MatrixXd& design,
                                const Eigen::VectorXd& response,
                                const Eigen::VectorXd& kernel_weights,
                                const Eigen::VectorXd& sample_weights);

// Iterative residual fitting, one WLS per order with weights mu_l(t) w_T.
Estimate KernelShapIq(const Game& game, const EstimatorConfig& config);

// One stacked WLS over all orders 1..k with weights mu_1(t) w_T.
Estimate InconsistentKernelShapIq(const Game& game,
                                  const EstimatorConfig& config);

// Random permutations; every interaction whose members appear consecutively
// contributes its discrete derivative at the preceding prefix, reweighted by
// the inverse probability of that event. `budget` bounds distinct game
// evaluations; a permutation that would exceed it is discarded.
Estimate PermutationSamplingSii(const Game& game, unsigned order,
                                std::uint64_t budget, std::uint64_t seed);

// Importance-weighted sum of v(T) times the SII subset weight over a
// border-trick sample.
Estimate ShapIqSii(const Game& game, unsigned order, std::uint64_t budget,
                   const SamplingWeights& weights, std::uint64_t seed);

Estimate RunEstimator(Method method, const Game& game,
                      const EstimatorConfig& config);

}  // namespace kshapiq

#endif  // KSHAPIQ_ESTIMATORS_H_
