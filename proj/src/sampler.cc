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

#include "kshapiq/sampler.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "kshapiq/combinatorics.h"
#include "kshapiq/random.h"

namespace kshapiq {

SamplingWeights SamplingWeights::KernelDefault(unsigned n) {
  SamplingWeights w;
  w.q.assign(n + 1, 0.0);
  for (unsigned t = 1; t + 1 <= n; ++t) {
    w.q[t] = 1.0 / (static_cast<double>(t) * static_cast<double>(n - t));
  }
  return w;
}

void SamplingWeights::Validate(unsigned n) const {
  if (q.size() != n + 1) {
    throw std::invalid_argument("sampling weights need n+1 entries, got " +
                                std::to_string(q.size()));
  }
  double interior = 0.0;
  for (std::size_t t = 0; t < q.size(); ++t) {
    if (!std::isfinite(q[t]) || q[t] < 0.0) {
      throw std::invalid_argument("sampling weights must be finite and >= 0");
    }
    if (t >= 1 && t + 1 <= n) interior += q[t];
  }
  if (n >= 2 && interior <= 0.0) {
    throw std::invalid_argument("sampling weights vanish on sizes 1..n-1");
  }
}

nlohmann::json SamplingBatch::ToJson() const {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < coalitions.size(); ++i) {
    rows.push_back({{"mask", coalitions[i].mask()}, {"weight", weights[i]}});
  }
  return {{"q0", q0}, {"n_samples", n_samples}, {"coalitions", std::move(rows)}};
}

namespace {

std::uint64_t BandCount(unsigned n, unsigned lo) {
  std::uint64_t total = 0;
  for (unsigned t = lo; t + lo <= n; ++t) total += BinomialU64(n, t);
  return total;
}

}  // namespace

unsigned ComputeSamplingOrder(std::uint64_t budget, const SamplingWeights& q,
                              unsigned n) {
  q.Validate(n);
  const unsigned all_deterministic = n / 2 + 1;
  if (budget < ForcedCoalitionCount(n)) return 0;
  // Sizes 0 and n are forced.
  std::uint64_t remaining = budget - ForcedCoalitionCount(n);
  unsigned q0 = 1;
  for (unsigned t = 1; t <= n / 2; ++t) {
    if (remaining >= BandCount(n, q0)) return all_deterministic;
    double band_mass = 0.0;
    for (unsigned l = q0; l + q0 <= n; ++l) band_mass += q.q[l];
    if (band_mass <= 0.0) break;
    const double budget_d = static_cast<double>(remaining);
    const double count = Binomial(n, t);
    const bool covers_low = budget_d * (q.q[t] / band_mass) >= count;
    const bool covers_high = budget_d * (q.q[n - t] / band_mass) >= count;
    if (!(covers_low && covers_high)) break;
    const std::uint64_t used = (t == n - t ? 1 : 2) * BinomialU64(n, t);
    if (used > remaining) break;
    remaining -= used;
    ++q0;
  }
  if (remaining >= BandCount(n, q0)) return all_deterministic;
  return q0;
}

SamplingBatch SampleBatch(std::uint64_t budget, const SamplingWeights& q,
                          unsigned n, std::uint64_t seed) {
  q.Validate(n);
  if (budget < ForcedCoalitionCount(n)) {
    throw std::invalid_argument("budget " + std::to_string(budget) +
                                " is below the " +
                                std::to_string(ForcedCoalitionCount(n)) +
                                " forced coalitions");
  }
  SamplingBatch batch;
  batch.n = n;
  batch.q0 = ComputeSamplingOrder(budget, q, n);

  // Deterministic part: every coalition outside the band, in mask order.
  std::vector<std::uint64_t> fixed;
  for (unsigned t = 0; t <= n; ++t) {
    if (t >= batch.q0 && t + batch.q0 <= n) continue;
    for (const Coalition& c : SubsetsOfSize(n, t)) fixed.push_back(c.mask());
  }
  std::sort(fixed.begin(), fixed.end());
  for (std::uint64_t m : fixed) {
    batch.coalitions.emplace_back(m, n);
    batch.weights.push_back(1.0);
    batch.deterministic.push_back(true);
  }
  if (fixed.size() > budget) {
    throw std::logic_error("deterministic part exceeds the budget");
  }
  std::uint64_t remaining = budget - fixed.size();

  const unsigned lo = batch.q0;
  const unsigned hi = n - batch.q0;
  if (remaining == 0 || lo > hi) return batch;

  std::vector<double> size_prob(n + 1, 0.0);
  double band_mass = 0.0;
  for (unsigned t = lo; t <= hi; ++t) band_mass += q.q[t];
  if (band_mass <= 0.0) {
    throw std::invalid_argument("sampling weights vanish on the sampled band");
  }
  std::uint64_t reachable = 0;
  for (unsigned t = lo; t <= hi; ++t) {
    size_prob[t] = q.q[t] / band_mass;
    if (size_prob[t] > 0.0) reachable += BinomialU64(n, t);
  }
  const std::uint64_t target = std::min(remaining, reachable);

  Rng rng(seed);
  std::unordered_map<std::uint64_t, std::size_t> index;
  std::vector<std::uint64_t> counts;
  const std::size_t first_sampled = batch.coalitions.size();
  std::uint64_t draws = 0;
  while (counts.size() < target) {
    const auto t = static_cast<unsigned>(rng.discrete(size_prob));
    const std::uint64_t mask = rng.subset_of_size(n, t);
    ++draws;
    auto [it, inserted] = index.emplace(mask, counts.size());
    if (inserted) {
      counts.push_back(1);
      batch.coalitions.emplace_back(mask, n);
      batch.deterministic.push_back(false);
    } else {
      ++counts[it->second];
    }
  }
  batch.n_samples = draws;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const unsigned t = batch.coalitions[first_sampled + i].size();
    const double p = size_prob[t] / Binomial(n, t);
    batch.weights.push_back(static_cast<double>(counts[i]) /
                            (static_cast<double>(draws) * p));
  }
  return batch;
}

}  // namespace kshapiq
