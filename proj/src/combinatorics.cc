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

#include "kshapiq/combinatorics.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace kshapiq {

std::uint64_t BinomialU64(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 result = 1;
  for (unsigned i = 1; i <= k; ++i) {
    // Exact at every step: result * (n - k + i) is divisible by i.
    result = result * (n - k + i) / i;
    if (result > std::numeric_limits<std::uint64_t>::max()) {
      throw std::overflow_error("binomial coefficient overflows 64 bits");
    }
  }
  return static_cast<std::uint64_t>(result);
}

double Binomial(unsigned n, unsigned k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double result = 1.0;
  for (unsigned i = 1; i <= k; ++i) {
    result = result * static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return result < 9.0e15 ? std::round(result) : result;
}

double Factorial(unsigned n) {
  double result = 1.0;
  for (unsigned i = 2; i <= n; ++i) result *= static_cast<double>(i);
  return result;
}

BernoulliTable::BernoulliTable(unsigned max_index) {
  values_.emplace_back(1);
  ExtendTo(max_index);
}

void BernoulliTable::ExtendTo(unsigned m) {
  // B_j = -1/(j+1) * sum_{i<j} C(j+1, i) B_i
  for (unsigned j = static_cast<unsigned>(values_.size()); j <= m; ++j) {
    Rational acc = 0;
    boost::multiprecision::cpp_int binom = 1;  // C(j+1, i)
    for (unsigned i = 0; i < j; ++i) {
      acc += Rational(binom) * values_[i];
      binom = binom * (j + 1 - i) / (i + 1);
    }
    values_.push_back(-acc / Rational(j + 1));
  }
}

const Rational& BernoulliTable::at(unsigned m) {
  ExtendTo(m);
  return values_[m];
}

Rational Bernoulli(unsigned m) {
  BernoulliTable table(m);
  return table.at(m);
}

double BernoulliDouble(unsigned m) {
  return static_cast<double>(Bernoulli(m));
}

Rational LambdaWeight(unsigned k, unsigned l) {
  if (l > k) {
    throw std::invalid_argument("lambda(k, l) requires l <= k, got k=" +
                                std::to_string(k) + ", l=" + std::to_string(l));
  }
  BernoulliTable bernoulli(k);
  Rational sum = 0;
  boost::multiprecision::cpp_int binom = 1;  // C(l, r)
  for (unsigned r = 1; r <= l; ++r) {
    binom = binom * (l - r + 1) / r;
    sum += Rational(binom) * bernoulli.at(k - r);
  }
  return sum;
}

LambdaWeights::LambdaWeights(unsigned k_max) : k_max_(k_max) {
  exact_.resize(k_max + 1);
  approx_.resize(k_max + 1);
  for (unsigned k = 0; k <= k_max; ++k) {
    for (unsigned l = 0; l <= k; ++l) {
      exact_[k].push_back(LambdaWeight(k, l));
      approx_[k].push_back(static_cast<double>(exact_[k].back()));
    }
  }
}

const Rational& LambdaWeights::exact(unsigned k, unsigned l) const {
  if (k > k_max_ || l > k) {
    throw std::out_of_range("lambda table index out of range");
  }
  return exact_[k][l];
}

double LambdaWeights::at(unsigned k, unsigned l) const {
  if (k > k_max_ || l > k) {
    throw std::out_of_range("lambda table index out of range");
  }
  return approx_[k][l];
}

double KernelWeightMu(unsigned k, unsigned t, unsigned n, double mu_inf) {
  if (n >= 2 * k && t >= k && t <= n - k) {
    return 1.0 / Binomial(n - 2 * k, t - k);
  }
  return mu_inf;
}

std::uint64_t CountSubsets(unsigned n, const std::optional<SizeRange>& range) {
  const unsigned lo = range ? range->min : 0;
  const unsigned hi = range ? std::min(range->max, n) : n;
  unsigned __int128 total = 0;
  for (unsigned s = lo; s <= hi; ++s) total += BinomialU64(n, s);
  if (total > std::numeric_limits<std::uint64_t>::max()) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(total);
}

namespace {

void ForEachOfSize(unsigned n, unsigned size,
                   const std::function<void(const Coalition&)>& visit) {
  if (size > n) return;
  if (size == 0) {
    visit(Coalition(0, n));
    return;
  }
  const std::uint64_t last = FullMask(size) << (n - size);
  for (std::uint64_t mask = FullMask(size);; mask = NextSameSize(mask)) {
    visit(Coalition(mask, n));
    if (mask == last) break;
  }
}

}  // namespace

void ForEachSubset(unsigned n, const std::optional<SizeRange>& range,
                   const std::function<void(const Coalition&)>& visit,
                   bool force) {
  if (n < 1 || n > kMaxPlayers) {
    throw std::invalid_argument("player count must lie in [1, 64]");
  }
  const std::uint64_t count = CountSubsets(n, range);
  if (!force && count > kDefaultEnumerationLimit) {
    throw std::length_error("refusing to enumerate " + std::to_string(count) +
                            " subsets of " + std::to_string(n) +
                            " players without force");
  }
  const unsigned lo = range ? range->min : 0;
  const unsigned hi = range ? std::min(range->max, n) : n;
  if (lo > hi) return;
  if (!range || (lo == 0 && hi == n)) {
    const std::uint64_t last = FullMask(n);
    for (std::uint64_t mask = 0;; ++mask) {
      visit(Coalition(mask, n));
      if (mask == last) break;
    }
    return;
  }
  if (lo == hi) {
    ForEachOfSize(n, lo, visit);
    return;
  }
  // Several sizes: gather and merge into numeric order.
  std::vector<std::uint64_t> masks;
  masks.reserve(count);
  for (unsigned s = lo; s <= hi; ++s) {
    ForEachOfSize(n, s, [&](const Coalition& c) { masks.push_back(c.mask()); });
  }
  std::sort(masks.begin(), masks.end());
  for (std::uint64_t m : masks) visit(Coalition(m, n));
}

std::vector<Coalition> EnumerateSubsets(unsigned n,
                                        const std::optional<SizeRange>& range,
                                        bool force) {
  std::vector<Coalition> out;
  ForEachSubset(
      n, range, [&](const Coalition& c) { out.push_back(c); }, force);
  return out;
}

std::vector<Coalition> SubsetsOfSize(unsigned n, unsigned size) {
  return EnumerateSubsets(n, SizeRange{size, size}, /*force=*/true);
}

}  // namespace kshapiq
