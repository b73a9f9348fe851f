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

#ifndef KSHAPIQ_EXACT_H_
#define KSHAPIQ_EXACT_H_

#include <span>
#include <vector>

#include "kshapiq/coalition.h"
#include "kshapiq/game.h"
#include "kshapiq/interaction_values.h"

namespace kshapiq {

// Brute-force ground truth. Every routine centres the game first and sweeps
// all 2^n coalitions, so n > kExactPlayerGuard is refused unless forced.
inline constexpr unsigned kExactPlayerGuard = 20;

// Delta_S(T) = sum_{L subset of S} (-1)^{|S|-|L|} v(T u L). Throws
// std::invalid_argument if S is empty or S and T overlap.
double DiscreteDerivative(const Game& game, const Coalition& s,
                          const Coalition& t);

// SII weight of a coalition T (disjoint from S, |T| = t) for an interaction
// of size s: (n-s-t)! t! / (n-s+1)!.
double SiiCoalitionWeight(unsigned n, unsigned s, unsigned t);

InteractionValues ExactSii(const Game& game, unsigned max_order,
                           bool force = false);
InteractionValues ExactSv(const Game& game, bool force = false);

// k-SII through the order recursion Phi_k = Phi_{k-1} + B_{k-|S|} * (sum of
// order-k SII over supersets of S).
InteractionValues ExactKsii(const Game& game, unsigned k, bool force = false);
InteractionValues KsiiFromSiiRecursive(const InteractionValues& sii,
                                       unsigned k);

// Full Moebius coefficients a(S) = sum_{T subset of S} (-1)^{|S|-|T|} v(T)
// for every nonempty S.
InteractionValues MoebiusTransform(const Game& game, bool force = false);

// hat v_k(T) = sum_{j<=k} sum_{|S|=j} phi(S) lambda(j, |S n T|). `sii` must
// hold every interaction of size 1..k.
double KAdditiveApprox(const InteractionValues& sii, const Coalition& t,
                       unsigned k);

// Tabulated centred values v(T) - v(empty), indexed by mask.
std::vector<double> TabulateCentered(const Game& game, bool force = false);

double PairwiseSum(std::span<const double> values);

}  // namespace kshapiq

#endif  // KSHAPIQ_EXACT_H_
