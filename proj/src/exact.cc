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

#include "kshapiq/exact.h"

#include <bit>
#include <stdexcept>
#include <string>

#include "kshapiq/combinatorics.h"

namespace kshapiq {
namespace {

void CheckGuard(unsigned n, bool force) {
  if (n > LookupGame::kMaxLookupPlayers || (n > kExactPlayerGuard && !force)) {
    throw std::length_error("exact computation over 2^" + std::to_string(n) +
                            " coalitions refused (guard n <= " +
                            std::to_string(kExactPlayerGuard) + ")");
  }
}

void CheckOrder(unsigned order, unsigned n) {
  if (order < 1 || order > n) {
    throw std::invalid_argument("order must lie in [1, n]");
  }
}

// Alternating sum over the sublattice [T, T u S] of a tabulated game.
double DerivativeFromTable(const std::vector<double>& v, std::uint64_t s_mask,
                           std::uint64_t t_mask) {
  const int s = std::popcount(s_mask);
  double total = 0.0;
  std::uint64_t sub = s_mask;
  while (true) {
    const int sign = ((s - std::popcount(sub)) & 1) != 0 ? -1 : 1;
    total += sign * v[t_mask | sub];
    if (sub == 0) break;
    sub = (sub - 1) & s_mask;
  }
  return total;
}

}  // namespace

double PairwiseSum(std::span<const double> values) {
  if (values.size() <= 8) {
    double total = 0.0;
    for (double v : values) total += v;
    return total;
  }
  const std::size_t half = values.size() / 2;
  return PairwiseSum(values.first(half)) + PairwiseSum(values.subspan(half));
}

double DiscreteDerivative(const Game& game, const Coalition& s,
                          const Coalition& t) {
  if (s.empty()) throw std::invalid_argument("discrete derivative needs S != {}");
  if (!s.disjoint(t)) {
    throw std::invalid_argument("discrete derivative needs S and T disjoint");
  }
  const unsigned n = game.n();
  double total = 0.0;
  std::uint64_t sub = s.mask();
  while (true) {
    const bool negative = ((s.size() - std::popcount(sub)) & 1U) != 0;
    const double v = game.value(Coalition(t.mask() | sub, n));
    total += negative ? -v : v;
    if (sub == 0) break;
    sub = (sub - 1) & s.mask();
  }
  return total;
}

double SiiCoalitionWeight(unsigned n, unsigned s, unsigned t) {
  return 1.0 / (static_cast<double>(n - s + 1) * Binomial(n - s, t));
}

std::vector<double> TabulateCentered(const Game& game, bool force) {
  const unsigned n = game.n();
  CheckGuard(n, force);
  std::vector<double> v(std::size_t{1} << n);
  for (std::uint64_t mask = 0; mask < v.size(); ++mask) {
    v[mask] = game.value(Coalition(mask, n));
  }
  const double offset = v[0];
  for (double& x : v) x -= offset;
  return v;
}

InteractionValues ExactSii(const Game& game, unsigned max_order, bool force) {
  const unsigned n = game.n();
  CheckOrder(max_order, n);
  const std::vector<double> v = TabulateCentered(game, force);
  InteractionValues out(n, max_order, IndexKind::kSII);
  std::vector<double> terms;
  for (unsigned s = 1; s <= max_order; ++s) {
    std::vector<double> weight(n - s + 1);
    for (unsigned t = 0; t <= n - s; ++t) weight[t] = SiiCoalitionWeight(n, s, t);
    for (const Coalition& interaction : SubsetsOfSize(n, s)) {
      const std::uint64_t rest = FullMask(n) & ~interaction.mask();
      terms.clear();
      std::uint64_t t_mask = rest;
      while (true) {
        terms.push_back(weight[std::popcount(t_mask)] *
                        DerivativeFromTable(v, interaction.mask(), t_mask));
        if (t_mask == 0) break;
        t_mask = (t_mask - 1) & rest;
      }
      out.set(interaction, PairwiseSum(terms));
    }
  }
  return out;
}

InteractionValues ExactSv(const Game& game, bool force) {
  return ExactSii(game, 1, force);
}

InteractionValues KsiiFromSiiRecursive(const InteractionValues& sii,
                                       unsigned k) {
  const unsigned n = sii.n();
  CheckOrder(k, n);
  if (!sii.has_complete_order(k)) {
    throw std::invalid_argument("k-SII needs every SII of order 1.." +
                                std::to_string(k));
  }
  BernoulliTable bernoulli(k);
  // Phi_1 = SV.
  InteractionValues phi(n, k, IndexKind::kKSII);
  for (const Coalition& c : SubsetsOfSize(n, 1)) phi.set(c, sii.at(c));
  for (unsigned j = 2; j <= k; ++j) {
    for (const Coalition& top : SubsetsOfSize(n, j)) {
      const double value = sii.at(top);
      phi.set(top, value);
      // Every proper nonempty S of `top` picks up B_{j-|S|} * phi^SII(top).
      for (std::uint64_t sub = (top.mask() - 1) & top.mask(); sub != 0;
           sub = (sub - 1) & top.mask()) {
        const auto s = static_cast<unsigned>(std::popcount(sub));
        const double b = static_cast<double>(bernoulli.at(j - s));
        if (b != 0.0) phi.add(Coalition(sub, n), b * value);
      }
    }
  }
  return phi;
}

InteractionValues ExactKsii(const Game& game, unsigned k, bool force) {
  return KsiiFromSiiRecursive(ExactSii(game, k, force), k);
}

InteractionValues MoebiusTransform(const Game& game, bool force) {
  const unsigned n = game.n();
  std::vector<double> a = TabulateCentered(game, force);
  for (unsigned i = 0; i < n; ++i) {
    const std::uint64_t bit = std::uint64_t{1} << i;
    for (std::uint64_t mask = 0; mask < a.size(); ++mask) {
      if (mask & bit) a[mask] -= a[mask ^ bit];
    }
  }
  InteractionValues out(n, n, IndexKind::kMoebius);
  for (std::uint64_t mask = 1; mask < a.size(); ++mask) {
    out.set(Coalition(mask, n), a[mask]);
  }
  return out;
}

double KAdditiveApprox(const InteractionValues& sii, const Coalition& t,
                       unsigned k) {
  if (k < 1 || !sii.has_complete_order(k)) {
    throw std::invalid_argument(
        "k-additive approximation needs every SII of order 1.." +
        std::to_string(k));
  }
  const LambdaWeights lambda(k);
  double total = 0.0;
  for (const auto& [s, value] : sii.entries()) {
    if (s.size() > k) break;
    total += value * lambda.at(s.size(), IntersectionSize(s.mask(), t.mask()));
  }
  return total;
}

}  // namespace kshapiq
