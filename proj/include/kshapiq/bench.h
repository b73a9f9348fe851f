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

// Benchmark metrics, the sweep runner and its CSV format.

#ifndef KSHAPIQ_BENCH_H_
#define KSHAPIQ_BENCH_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "kshapiq/estimators.h"
#include "kshapiq/game.h"
#include "kshapiq/interaction_values.h"

namespace kshapiq {

// Mean squared error over the interactions of order `order`. Throws
// std::invalid_argument unless both tables hold exactly the same keys there.
double Mse(const InteractionValues& estimates,
           const InteractionValues& ground_truth, unsigned order);

// The `m` entries of order `order` with the largest |value|; ties go to the
// smaller mask.
std::vector<Coalition> TopByMagnitude(const InteractionValues& values,
                                      unsigned order, std::size_t m);

// Overlap of the top-10 sets by |value|. With fewer than ten interactions
// at this order all of them are used and the overlap is divided by that
// count.
double PrecAt10(const InteractionValues& estimates,
                const InteractionValues& ground_truth, unsigned order);

inline constexpr std::string_view kBenchmarkCsvHeader =
    "method,order,budget,run_seed,mse,prec_at_10,runtime_ms,status";

struct BenchmarkRow {
  std::string method;
  unsigned order = 0;
  std::uint64_t budget = 0;
  std::uint64_t run_seed = 0;
  double mse = 0.0;  // NaN for failed rows
  double prec_at_10 = 0.0;
  double runtime_ms = 0.0;
  std::string status = "ok";

  bool ok() const { return status == "ok"; }
  bool operator==(const BenchmarkRow& other) const;
};

struct BenchmarkConfig {
  std::vector<Method> methods;
  std::vector<unsigned> orders;
  std::vector<std::uint64_t> budgets;
  unsigned n_runs = 1;
  std::uint64_t seed0 = 0;
  IndexKind index = IndexKind::kSII;
  double mu_inf = kDefaultMuInf;
  // Wall-clock estimator time; off by default so reruns are byte-identical.
  bool timing = false;

  void Validate(unsigned n) const;
};

// SII up to `max_order`: analytic for a SoumGame, brute force otherwise.
InteractionValues GroundTruthSii(const Game& game, unsigned max_order);

// One row per (method, budget, run, order), in that nesting. Each estimator
// runs once per (method, budget, run) at the largest requested order with
// seed seed0 + run; an estimator error marks that cell's rows failed.
std::vector<BenchmarkRow> RunBenchmark(const Game& game,
                                       const BenchmarkConfig& config);

// Same, against a precomputed ground truth.
std::vector<BenchmarkRow> RunBenchmark(const Game& game,
                                       const InteractionValues& ground_truth_sii,
                                       const BenchmarkConfig& config);

void WriteBenchmarkCsv(std::ostream& out, const std::vector<BenchmarkRow>& rows);
// Throws std::runtime_error on a malformed header or row.
std::vector<BenchmarkRow> ReadBenchmarkCsv(std::istream& in);

}  // namespace kshapiq

#endif  // KSHAPIQ_BENCH_H_
