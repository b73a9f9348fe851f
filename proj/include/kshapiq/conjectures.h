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

#ifndef KSHAPIQ_CONJECTURES_H_
#define KSHAPIQ_CONJECTURES_H_

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "kshapiq/game.h"

namespace kshapiq {

inline constexpr double kConjectureMuInf = 1e7;
inline constexpr double kConjectureThreshold = 1e-10;

struct ConjectureCase {
  unsigned n = 0;
  unsigned k = 0;
  double mse = 0.0;      // decision metric
  double raw_mse = 0.0;  // at the base mu_inf, without extrapolation
  bool pass = false;
  std::string error;  // non-empty when the case could not be evaluated
};

// Outcome of a validation sweep over n_min..n_max and k = 1..floor(n/2).
// `pass` holds iff every case evaluated and max_mse < threshold.
struct ConjectureReport {
  std::string id;  // "inverse" or "sii"
  unsigned n_min = 0;
  unsigned n_max = 0;
  unsigned k_min = 1;
  unsigned k_max = 0;
  double max_mse = 0.0;
  double threshold = kConjectureThreshold;
  bool pass = false;
  std::vector<ConjectureCase> cases;

  nlohmann::json ToJson() const;
};

// Elementwise MSE between the numerically inverted X_k^T W_k X_k (all 2^n
// rows, weights mu_k) and the closed-form precision matrix.
double PrecisionMatrixMse(unsigned n, unsigned k, double mu_inf);

// Order-k SII from the split construction at full enumeration: closed-form
// SII weights on coalitions outside k <= |T| <= n-k plus the WLS fit on the
// in-band residual v - hat v_{k-1}, built from the exact lower orders.
// Values follow the analytic interaction order (ascending mask).
std::vector<double> SplitRepresentation(const SoumGame& game, unsigned k,
                                        double mu_inf);

struct SplitRepresentationError {
  double raw_mse = 0.0;    // at mu_inf
  double limit_mse = 0.0;  // at the extrapolated mu_inf -> infinity limit
};

// The finite-weight fit carries an O(1/mu_inf) bias proportional to the
// game's scale. The limit is estimated by one Richardson step,
// 2 phi(2 mu_inf) - phi(mu_inf), which cancels the first-order term.
SplitRepresentationError SplitRepresentationMse(const SoumGame& game,
                                                unsigned k, double mu_inf);

ConjectureReport ValidateConjectureInverse(unsigned n_min, unsigned n_max,
                                           double mu_inf = kConjectureMuInf);

// For each (n, k): `n_soums` random SOUMs with `m_terms` interactions of
// size uniform on 1..n; the case MSE is the average over instances of the
// extrapolated-limit MSE, raw_mse the average at mu_inf itself.
ConjectureReport ValidateConjectureSii(unsigned n_min, unsigned n_max,
                                       unsigned n_soums = 10,
                                       unsigned m_terms = 1000,
                                       std::uint64_t seed = 0,
                                       double mu_inf = kConjectureMuInf);

}  // namespace kshapiq

#endif  // KSHAPIQ_CONJECTURES_H_
