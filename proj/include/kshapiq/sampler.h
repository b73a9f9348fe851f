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

#ifndef KSHAPIQ_SAMPLER_H_
#define KSHAPIQ_SAMPLER_H_

#include <cstdint>
#include <vector>

#include "json.hpp"
#include "kshapiq/coalition.h"

namespace kshapiq {

// Per-size sampling weights q(0..n). q(0) and q(n) are ignored because the
// empty and grand coalitions are always included deterministically.
struct SamplingWeights {
  std::vector<double> q;

  // q(t) proportional to 1 / (t (n - t)) for 1 <= t <= n-1, i.e. C(n, t) mu_1(t).
  static SamplingWeights KernelDefault(unsigned n);

  // Throws std::invalid_argument if the size is not n+1, any entry is negative
  // or non-finite, or all interior entries vanish (n >= 2).
  void Validate(unsigned n) const;
};

// Coalitions drawn under a budget with the border trick. Sizes t < q0 and
// t > n - q0 (plus the empty and grand coalitions) are enumerated with weight
// 1; the band q0 <= t <= n - q0 is sampled and every distinct coalition
// carries weight count_T / (n_samples * p(T)), where n_samples is the total
// number of draws.
struct SamplingBatch {
  unsigned n = 0;
  unsigned q0 = 0;
  std::uint64_t n_samples = 0;
  std::vector<Coalition> coalitions;
  std::vector<double> weights;
  std::vector<bool> deterministic;

  std::size_t size() const { return coalitions.size(); }
  nlohmann::json ToJson() const;
};

// Number of coalitions that are always included (empty and grand).
inline std::uint64_t ForcedCoalitionCount(unsigned n) { return n >= 1 ? 2 : 1; }

// Border-trick split: the largest q0 such that, for every t < q0, the
// expected number of draws of sizes t and n-t under q renormalised over the
// remaining band covers all C(n, t) coalitions. Returns floor(n/2) + 1 when the
// remaining budget covers every coalition.
unsigned ComputeSamplingOrder(std::uint64_t budget, const SamplingWeights& q,
                              unsigned n);

// Throws std::invalid_argument when budget < ForcedCoalitionCount(n) or the
// band cannot be sampled.
SamplingBatch SampleBatch(std::uint64_t budget, const SamplingWeights& q,
                          unsigned n, std::uint64_t seed);

}  // namespace kshapiq

#endif  // KSHAPIQ_SAMPLER_H_
