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

#ifndef KSHAPIQ_RANDOM_H_
#define KSHAPIQ_RANDOM_H_

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace kshapiq {

// Seeded 64-bit generator. The engine stream is fixed by the standard; the
// draws below avoid the implementation-defined std distributions so a seed
// reproduces the same values on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound). `bound` must be positive.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  // Index drawn proportionally to the (non-negative) weights.
  std::size_t discrete(std::span<const double> weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    const double u = uniform() * total;
    double acc = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (weights[i] <= 0.0) continue;
      acc += weights[i];
      last_positive = i;
      if (u < acc) return i;
    }
    return last_positive;
  }

  // Uniformly random subset of {0..n-1} of the given size, as a bitmask.
  std::uint64_t subset_of_size(unsigned n, unsigned size) {
    std::vector<unsigned> pool(n);
    for (unsigned i = 0; i < n; ++i) pool[i] = i;
    std::uint64_t mask = 0;
    for (unsigned i = 0; i < size; ++i) {
      const auto j = i + static_cast<unsigned>(below(n - i));
      std::swap(pool[i], pool[j]);
      mask |= std::uint64_t{1} << pool[i];
    }
    return mask;
  }

  // Uniformly random permutation of {0..n-1}.
  std::vector<unsigned> permutation(unsigned n) {
    std::vector<unsigned> perm(n);
    for (unsigned i = 0; i < n; ++i) perm[i] = i;
    for (unsigned i = n; i > 1; --i) {
      const auto j = static_cast<unsigned>(below(i));
      std::swap(perm[i - 1], perm[j]);
    }
    return perm;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace kshapiq

#endif  // KSHAPIQ_RANDOM_H_
