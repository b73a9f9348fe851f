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

#include "kshapiq/estimators.h"

#include <algorithm>
#include <bit>
#include <cctype>
#include <iostream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "kshapiq/combinatorics.h"
#include "kshapiq/exact.h"
#include "kshapiq/random.h"
#include "kshapiq/wls.h"

namespace kshapiq {

std::string_view MethodName(Method method) {
  switch (method) {
    case Method::kKernelShapIq:
      return "kernelshapiq";
    case Method::kInconsistent:
      return "inconsistent";
    case Method::kPermutation:
      return "permutation";
    case Method::kShapIq:
      return "shapiq";
  }
  return "kernelshapiq";
}

Method ParseMethod(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  std::erase(lower, '-');
  std::erase(lower, '_');
  if (lower == "kernelshapiq") return Method::kKernelShapIq;
  if (lower == "inconsistent" || lower == "inconsistentkernelshapiq") {
    return Method::kInconsistent;
  }
  if (lower == "permutation") return Method::kPermutation;
  if (lower == "shapiq") return Method::kShapIq;
  throw std::invalid_argument(
      "unknown method '" + std::string(name) +
      "' (expected kernelshapiq, inconsistent, permutation or shapiq)");
}

void EstimatorConfig::Validate(unsigned n) const {
  if (order < 1 || order > n) {
    throw std::invalid_argument("order must lie in [1, n]");
  }
  if (!(mu_inf >= 1.0) || !std::isfinite(mu_inf)) {
    throw std::invalid_argument("mu_inf must be a finite value >= 1");
  }
  if (budget < ForcedCoalitionCount(n)) {
    throw std::invalid_argument("budget " + std::to_string(budget) +
                                " is below the forced coalition count");
  }
  if (sampling_weights) sampling_weights->Validate(n);
}

SamplingWeights EstimatorConfig::WeightsFor(unsigned n) const {
  return sampling_weights ? *sampling_weights : SamplingWeights::KernelDefault(n);
}

nlohmann::json RunMetadata::ToJson() const {
  return {{"method", method},     {"budget", budget}, {"seed", seed},
          {"mu_inf", mu_inf},     {"q0", q0},         {"n_samples", n_samples},
          {"evaluations", evaluations}};
}

nlohmann::json Estimate::ToJson(IndexKind index) const {
  nlohmann::json j = index == IndexKind::kKSII ? ksii.ToJson() : sii.ToJson();
  j["metadata"] = metadata.ToJson();
  return j;
}

double SiiSubsetWeight(unsigned n, const Coalition& s, const Coalition& t) {
  if (s.empty()) throw std::invalid_argument("SII weight needs S != {}");
  const unsigned r = IntersectionSize(s.mask(), t.mask());
  const double w = SiiCoalitionWeight(n, s.size(), t.size() - r);
  return ((s.size() - r) & 1U) != 0 ? -w : w;
}

Eigen::MatrixXd ConjecturedPrecisionMatrix(unsigned n, unsigned k) {
  if (k < 1 || n < 2 * k) {
    throw std::invalid_argument("precision matrix closed form needs n >= 2k");
  }
  const std::vector<Coalition> cols = SubsetsOfSize(n, k);
  const auto p = static_cast<Eigen::Index>(cols.size());
  Eigen::MatrixXd a(p, p);
  for (Eigen::Index i = 0; i < p; ++i) {
    for (Eigen::Index j = 0; j < p; ++j) {
      const unsigned r = IntersectionSize(cols[i].mask(), cols[j].mask());
      const double magnitude = 1.0 / (static_cast<double>(n - k + 1) *
                                      Binomial(n - k, k - r));
      a(i, j) = ((k - r) & 1U) != 0 ? -magnitude : magnitude;
    }
  }
  return a;
}

InteractionValues AggregateSiiToKsii(const InteractionValues& sii, unsigned k) {
  const unsigned n = sii.n();
  if (k < 1 || k > n || !sii.has_complete_order(k)) {
    throw std::invalid_argument("aggregation needs every SII of order 1.." +
                                std::to_string(k));
  }
  BernoulliTable bernoulli(k);
  std::vector<double> b(k + 1);
  for (unsigned i = 0; i <= k; ++i) b[i] = static_cast<double>(bernoulli.at(i));
  InteractionValues out(n, k, IndexKind::kKSII);
  for (const auto& [s, value] : sii.entries()) {
    if (s.size() <= k) out.set(s, 0.0);
  }
  for (const auto& [sup, value] : sii.entries()) {
    const unsigned big = sup.size();
    if (big > k) break;
    for (std::uint64_t sub = sup.mask(); sub != 0; sub = (sub - 1) & sup.mask()) {
      const double coef = b[big - static_cast<unsigned>(std::popcount(sub))];
      if (coef != 0.0) out.add(Coalition(sub, n), coef * value);
    }
  }
  return out;
}

Eigen::VectorXd SplitOrderSolve(unsigned order, std::span<const Coalition> rows,
                                std::span<const Coalition> columns,
                                const Eigen::MatrixXd& design,
                                const Eigen::VectorXd& response,
                                const Eigen::VectorXd& kernel_weights,
                                const Eigen::VectorXd& sample_weights) {
  if (rows.empty()) throw std::invalid_argument("split solve needs rows");
  const unsigned n = rows.front().n();
  Eigen::VectorXd inside = response;
  std::vector<std::size_t> outside;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const unsigned t = rows[i].size();
    if (t < order || t + order > n) {
      inside(static_cast<Eigen::Index>(i)) = 0.0;
      outside.push_back(i);
    }
  }
  Eigen::VectorXd phi = SolveWls(design, inside, kernel_weights);
  for (std::size_t j = 0; j < columns.size(); ++j) {
    double direct = 0.0;
    for (std::size_t i : outside) {
      const auto row = static_cast<Eigen::Index>(i);
      direct += sample_weights(row) * SiiSubsetWeight(n, columns[j], rows[i]) *
                response(row);
    }
    phi(static_cast<Eigen::Index>(j)) += direct;
  }
  return phi;
}

namespace {

struct EvaluatedBatch {
  SamplingBatch batch;
  Eigen::VectorXd values;
  std::uint64_t evaluations = 0;
};

EvaluatedBatch SampleAndEvaluate(const Game& game, std::uint64_t budget,
                                 const SamplingWeights& weights,
                                 std::uint64_t seed) {
  const CenteredGame centered(game);
  GameOracle oracle(centered);
  EvaluatedBatch out{SampleBatch(budget, weights, game.n(), seed), {}, 0};
  out.values.resize(static_cast<Eigen::Index>(out.batch.size()));
  for (std::size_t i = 0; i < out.batch.size(); ++i) {
    out.values(static_cast<Eigen::Index>(i)) =
        oracle.evaluate(out.batch.coalitions[i]);
  }
  out.evaluations = oracle.eval_counter();
  return out;
}

RunMetadata MakeMetadata(Method method, const EstimatorConfig& config,
                         const EvaluatedBatch& data) {
  RunMetadata meta;
  meta.method = std::string(MethodName(method));
  meta.budget = config.budget;
  meta.seed = config.seed;
  meta.mu_inf = config.mu_inf;
  meta.q0 = data.batch.q0;
  meta.n_samples = data.batch.n_samples;
  meta.evaluations = data.evaluations;
  return meta;
}

void WarnIfBandEmpty(unsigned n, unsigned order) {
  if (n < 2 * order) {
    std::cerr << "warning: n=" << n << " < 2k=" << 2 * order
              << "; kernel weights fall back to mu_inf for every size\n";
  }
}

Eigen::VectorXd RowWeights(const SamplingBatch& batch, unsigned order,
                           double mu_inf) {
  Eigen::VectorXd w(static_cast<Eigen::Index>(batch.size()));
  for (std::size_t i = 0; i < batch.size(); ++i) {
    w(static_cast<Eigen::Index>(i)) =
        KernelWeightMu(order, batch.coalitions[i].size(), batch.n, mu_inf) *
        batch.weights[i];
  }
  return w;
}

Eigen::VectorXd SampleWeightVector(const SamplingBatch& batch) {
  return Eigen::Map<const Eigen::VectorXd>(batch.weights.data(),
                                           static_cast<Eigen::Index>(
                                               batch.weights.size()));
}

}  // namespace

Estimate KernelShapIq(const Game& game, const EstimatorConfig& config) {
  const unsigned n = game.n();
  config.Validate(n);
  WarnIfBandEmpty(n, config.order);
  const EvaluatedBatch data =
      SampleAndEvaluate(game, config.budget, config.WeightsFor(n), config.seed);
  const auto& rows = data.batch.coalitions;
  const Eigen::VectorXd sample_weights = SampleWeightVector(data.batch);

  InteractionValues sii(n, config.order, IndexKind::kSII);
  Eigen::VectorXd residual = data.values;
  for (unsigned l = 1; l <= config.order; ++l) {
    const std::vector<Coalition> columns = SubsetsOfSize(n, l);
    const Eigen::MatrixXd x = BuildDesignMatrix(rows, columns);
    const Eigen::VectorXd w = RowWeights(data.batch, l, config.mu_inf);
    const Eigen::VectorXd phi =
        l <= 2 ? SolveWls(x, residual, w)
               : SplitOrderSolve(l, rows, columns, x, residual, w,
                                 sample_weights);
    for (std::size_t j = 0; j < columns.size(); ++j) {
      sii.set(columns[j], phi(static_cast<Eigen::Index>(j)));
    }
    residual -= x * phi;
  }
  Estimate out{sii, AggregateSiiToKsii(sii, config.order),
               MakeMetadata(Method::kKernelShapIq, config, data)};
  return out;
}

Estimate InconsistentKernelShapIq(const Game& game,
                                  const EstimatorConfig& config) {
  const unsigned n = game.n();
  config.Validate(n);
  const EvaluatedBatch data =
      SampleAndEvaluate(game, config.budget, config.WeightsFor(n), config.seed);
  std::vector<Coalition> columns;
  for (unsigned l = 1; l <= config.order; ++l) {
    for (const Coalition& c : SubsetsOfSize(n, l)) columns.push_back(c);
  }
  const Eigen::MatrixXd x = BuildDesignMatrix(data.batch.coalitions, columns);
  const Eigen::VectorXd w = RowWeights(data.batch, 1, config.mu_inf);
  const Eigen::VectorXd phi = SolveWls(x, data.values, w);
  InteractionValues sii(n, config.order, IndexKind::kSII);
  for (std::size_t j = 0; j < columns.size(); ++j) {
    sii.set(columns[j], phi(static_cast<Eigen::Index>(j)));
  }
  return {sii, AggregateSiiToKsii(sii, config.order),
          MakeMetadata(Method::kInconsistent, config, data)};
}

Estimate PermutationSamplingSii(const Game& game, unsigned order,
                                std::uint64_t budget, std::uint64_t seed) {
  const unsigned n = game.n();
  if (order < 1 || order > n) {
    throw std::invalid_argument("order must lie in [1, n]");
  }
  const CenteredGame centered(game);
  GameOracle oracle(centered);
  Rng rng(seed);

  // 1 / P(S consecutive in a uniform permutation) = C(n+1, s) / (n+1).
  std::vector<double> inverse_prob(order + 1);
  for (unsigned s = 1; s <= order; ++s) {
    inverse_prob[s] = Binomial(n + 1, s) / static_cast<double>(n + 1);
  }
  std::unordered_map<std::uint64_t, double> sums;
  std::uint64_t permutations = 0;
  std::vector<std::uint64_t> needed;
  std::unordered_set<std::uint64_t> fresh;
  // Permutations served entirely from the cache are free, so their number is
  // capped at the budget as well.
  while (permutations < budget) {
    const std::vector<unsigned> perm = rng.permutation(n);
    std::vector<std::uint64_t> prefix(n + 1, 0);
    for (unsigned j = 0; j < n; ++j) {
      prefix[j + 1] = prefix[j] | (std::uint64_t{1} << perm[j]);
    }
    fresh.clear();
    needed.clear();
    for (unsigned s = 1; s <= order; ++s) {
      for (unsigned j = 0; j + s <= n; ++j) {
        const std::uint64_t s_mask = prefix[j + s] & ~prefix[j];
        for (std::uint64_t sub = s_mask;; sub = (sub - 1) & s_mask) {
          const std::uint64_t m = prefix[j] | sub;
          if (!oracle.is_cached(Coalition(m, n)) && fresh.insert(m).second) {
            needed.push_back(m);
          }
          if (sub == 0) break;
        }
      }
    }
    if (oracle.eval_counter() + needed.size() > budget) break;
    for (unsigned s = 1; s <= order; ++s) {
      for (unsigned j = 0; j + s <= n; ++j) {
        const std::uint64_t s_mask = prefix[j + s] & ~prefix[j];
        double delta = 0.0;
        for (std::uint64_t sub = s_mask;; sub = (sub - 1) & s_mask) {
          const double v = oracle.evaluate(Coalition(prefix[j] | sub, n));
          delta += ((s - std::popcount(sub)) & 1U) != 0 ? -v : v;
          if (sub == 0) break;
        }
        sums[s_mask] += inverse_prob[s] * delta;
      }
    }
    ++permutations;
  }

  InteractionValues sii(n, order, IndexKind::kSII);
  for (unsigned s = 1; s <= order; ++s) {
    for (const Coalition& c : SubsetsOfSize(n, s)) {
      auto it = sums.find(c.mask());
      sii.set(c, it == sums.end() || permutations == 0
                     ? 0.0
                     : it->second / static_cast<double>(permutations));
    }
  }
  RunMetadata meta;
  meta.method = std::string(MethodName(Method::kPermutation));
  meta.budget = budget;
  meta.seed = seed;
  meta.mu_inf = 0.0;
  meta.n_samples = permutations;
  meta.evaluations = oracle.eval_counter();
  return {sii, AggregateSiiToKsii(sii, order), meta};
}

Estimate ShapIqSii(const Game& game, unsigned order, std::uint64_t budget,
                   const SamplingWeights& weights, std::uint64_t seed) {
  const unsigned n = game.n();
  if (order < 1 || order > n) {
    throw std::invalid_argument("order must lie in [1, n]");
  }
  const EvaluatedBatch data = SampleAndEvaluate(game, budget, weights, seed);
  InteractionValues sii(n, order, IndexKind::kSII);
  for (unsigned s = 1; s <= order; ++s) {
    for (const Coalition& c : SubsetsOfSize(n, s)) {
      double total = 0.0;
      for (std::size_t i = 0; i < data.batch.size(); ++i) {
        total += data.batch.weights[i] *
                 data.values(static_cast<Eigen::Index>(i)) *
                 SiiSubsetWeight(n, c, data.batch.coalitions[i]);
      }
      sii.set(c, total);
    }
  }
  EstimatorConfig config;
  config.budget = budget;
  config.seed = seed;
  config.mu_inf = 0.0;
  return {sii, AggregateSiiToKsii(sii, order),
          MakeMetadata(Method::kShapIq, config, data)};
}

Estimate RunEstimator(Method method, const Game& game,
                      const EstimatorConfig& config) {
  switch (method) {
    case Method::kKernelShapIq:
      return KernelShapIq(game, config);
    case Method::kInconsistent:
      return InconsistentKernelShapIq(game, config);
    case Method::kPermutation:
      return PermutationSamplingSii(game, config.order, config.budget,
                                    config.seed);
    case Method::kShapIq:
      return ShapIqSii(game, config.order, config.budget,
                       config.WeightsFor(game.n()), config.seed);
  }
  throw std::invalid_argument("unknown method");
}

}  // namespace kshapiq
