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

// Exact combinatorial primitives: binomials, Bernoulli numbers, the
// Bernoulli-sum interaction weights lambda(k, l), the kernel weights mu_k and
// subset enumeration.

#ifndef KSHAPIQ_COMBINATORICS_H_
#define KSHAPIQ_COMBINATORICS_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "kshapiq/coalition.h"

namespace kshapiq {

using Rational = boost::multiprecision::cpp_rational;

// Exact C(n, k) as an unsigned 64-bit integer; 0 when k > n. Throws
// std::overflow_error when the result does not fit.
std::uint64_t BinomialU64(unsigned n, unsigned k);

// C(n, k) as a double; 0 when k > n.
double Binomial(unsigned n, unsigned k);

// n! as a double (exact up to 22!).
double Factorial(unsigned n);

// Bernoulli numbers of the first kind (B_1 = -1/2), memoised up to the
// largest index requested.
class BernoulliTable {
 public:
  explicit BernoulliTable(unsigned max_index = 0);

  // B_m; extends the table on demand.
  const Rational& at(unsigned m);
  unsigned max_index() const { return static_cast<unsigned>(values_.size()) - 1; }
  const std::vector<Rational>& values() const { return values_; }

 private:
  void ExtendTo(unsigned m);
  std::vector<Rational> values_;
};

// B_m with the B_1 = -1/2 convention.
Rational Bernoulli(unsigned m);
double BernoulliDouble(unsigned m);

// lambda(k, l) = sum_{r=1}^{l} C(l, r) B_{k-r}, lambda(k, 0) = 0. Throws
// std::invalid_argument if l > k.
Rational LambdaWeight(unsigned k, unsigned l);

// Memoised table of lambda(k, l) for 0 <= l <= k <= k_max, kept exact and
// converted to double on request.
class LambdaWeights {
 public:
  explicit LambdaWeights(unsigned k_max);

  unsigned k_max() const { return k_max_; }
  const Rational& exact(unsigned k, unsigned l) const;
  double at(unsigned k, unsigned l) const;

 private:
  unsigned k_max_;
  std::vector<std::vector<Rational>> exact_;
  std::vector<std::vector<double>> approx_;
};

// mu_k(t) = 1 / C(n - 2k, t - k) for k <= t <= n - k, otherwise mu_inf. When
// n < 2k the band is empty and every size receives mu_inf.
double KernelWeightMu(unsigned k, unsigned t, unsigned n, double mu_inf);

// Inclusive range of coalition sizes.
struct SizeRange {
  unsigned min = 0;
  unsigned max = 64;
};

inline constexpr std::uint64_t kDefaultEnumerationLimit = std::uint64_t{1} << 30;

// Number of subsets of {1..n} whose size lies in `range`.
std::uint64_t CountSubsets(unsigned n, const std::optional<SizeRange>& range);

// Visits every subset of {1..n} with size in `range` exactly once, in
// ascending numeric mask order. Refuses (std::length_error) to enumerate more
// than kDefaultEnumerationLimit subsets unless `force` is set.
void ForEachSubset(unsigned n, const std::optional<SizeRange>& range,
                   const std::function<void(const Coalition&)>& visit,
                   bool force = false);

std::vector<Coalition> EnumerateSubsets(unsigned n,
                                        const std::optional<SizeRange>& range,
                                        bool force = false);

// All subsets of size exactly `size`, ascending mask order.
std::vector<Coalition> SubsetsOfSize(unsigned n, unsigned size);

// Next mask with the same popcount (Gosper's hack). `mask` must be nonzero.
inline std::uint64_t NextSameSize(std::uint64_t mask) {
  const std::uint64_t lowest = mask & (~mask + 1);
  const std::uint64_t ripple = mask + lowest;
  return (((ripple ^ mask) >> 2) / lowest) | ripple;
}

}  // namespace kshapiq

#endif  // KSHAPIQ_COMBINATORICS_H_
