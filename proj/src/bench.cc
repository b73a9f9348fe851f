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

#include "kshapiq/bench.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "kshapiq/exact.h"
#include "kshapiq/json_io.h"

namespace kshapiq {

double Mse(const InteractionValues& estimates,
           const InteractionValues& ground_truth, unsigned order) {
  const std::vector<Coalition> keys = ground_truth.keys_of_order(order);
  if (keys.empty()) {
    throw std::invalid_argument("ground truth has no interactions of order " +
                                std::to_string(order));
  }
  if (estimates.keys_of_order(order) != keys) {
    throw std::invalid_argument("estimates and ground truth differ in keys at order " +
                                std::to_string(order));
  }
  double total = 0.0;
  for (const Coalition& s : keys) {
    const double d = estimates.at(s) - ground_truth.at(s);
    total += d * d;
  }
  return total / static_cast<double>(keys.size());
}

std::vector<Coalition> TopByMagnitude(const InteractionValues& values,
                                      unsigned order, std::size_t m) {
  std::vector<std::pair<double, Coalition>> ranked;
  for (const Coalition& s : values.keys_of_order(order)) {
    ranked.emplace_back(std::abs(values.at(s)), s);
  }
  const std::size_t take = std::min(m, ranked.size());
  std::partial_sort(ranked.begin(), ranked.begin() + take, ranked.end(),
                    [](const auto& a, const auto& b) {
                      if (a.first != b.first) return a.first > b.first;
                      return a.second.mask() < b.second.mask();
                    });
  std::vector<Coalition> top;
  top.reserve(take);
  for (std::size_t i = 0; i < take; ++i) top.push_back(ranked[i].second);
  return top;
}

double PrecAt10(const InteractionValues& estimates,
                const InteractionValues& ground_truth, unsigned order) {
  const std::vector<Coalition> truth = TopByMagnitude(ground_truth, order, 10);
  if (truth.empty()) {
    throw std::invalid_argument("ground truth has no interactions of order " +
                                std::to_string(order));
  }
  const std::vector<Coalition> guess =
      TopByMagnitude(estimates, order, truth.size());
  std::unordered_set<Coalition> truth_set(truth.begin(), truth.end());
  std::size_t hits = 0;
  for (const Coalition& s : guess) hits += truth_set.count(s);
  return static_cast<double>(hits) / static_cast<double>(truth.size());
}

bool BenchmarkRow::operator==(const BenchmarkRow& o) const {
  auto same = [](double a, double b) {
    return (std::isnan(a) && std::isnan(b)) || a == b;
  };
  return method == o.method && order == o.order && budget == o.budget &&
         run_seed == o.run_seed && same(mse, o.mse) &&
         same(prec_at_10, o.prec_at_10) && same(runtime_ms, o.runtime_ms) &&
         status == o.status;
}

void BenchmarkConfig::Validate(unsigned n) const {
  if (methods.empty()) throw std::invalid_argument("no methods given");
  if (orders.empty()) throw std::invalid_argument("no orders given");
  if (budgets.empty()) throw std::invalid_argument("no budgets given");
  if (n_runs < 1) throw std::invalid_argument("need at least one run");
  for (unsigned order : orders) {
    if (order < 1 || order > n) {
      throw std::invalid_argument("order " + std::to_string(order) +
                                  " outside 1.." + std::to_string(n));
    }
  }
}

InteractionValues GroundTruthSii(const Game& game, unsigned max_order) {
  if (const auto* soum = dynamic_cast<const SoumGame*>(&game)) {
    return soum->ExactSii(max_order);
  }
  return ExactSii(game, max_order);
}

std::vector<BenchmarkRow> RunBenchmark(const Game& game,
                                       const BenchmarkConfig& config) {
  config.Validate(game.n());
  const unsigned k = *std::max_element(config.orders.begin(), config.orders.end());
  return RunBenchmark(game, GroundTruthSii(game, k), config);
}

std::vector<BenchmarkRow> RunBenchmark(const Game& game,
                                       const InteractionValues& ground_truth_sii,
                                       const BenchmarkConfig& config) {
  config.Validate(game.n());
  const unsigned k = *std::max_element(config.orders.begin(), config.orders.end());
  if (ground_truth_sii.order() < k || ground_truth_sii.n() != game.n()) {
    throw std::invalid_argument("ground truth does not cover the requested orders");
  }
  const InteractionValues truth = config.index == IndexKind::kKSII
                                      ? AggregateSiiToKsii(ground_truth_sii, k)
                                      : ground_truth_sii;
  std::vector<BenchmarkRow> rows;
  rows.reserve(config.methods.size() * config.budgets.size() * config.n_runs *
               config.orders.size());
  for (Method method : config.methods) {
    for (std::uint64_t budget : config.budgets) {
      for (unsigned run = 0; run < config.n_runs; ++run) {
        EstimatorConfig ec;
        ec.order = k;
        ec.budget = budget;
        ec.mu_inf = config.mu_inf;
        ec.seed = config.seed0 + run;
        BenchmarkRow base;
        base.method = std::string(MethodName(method));
        base.budget = budget;
        base.run_seed = ec.seed;
        std::vector<BenchmarkRow> cell;
        try {
          const auto start = std::chrono::steady_clock::now();
          const Estimate est = RunEstimator(method, game, ec);
          const auto stop = std::chrono::steady_clock::now();
          if (config.timing) {
            base.runtime_ms =
                std::chrono::duration<double, std::milli>(stop - start).count();
          }
          const InteractionValues& values =
              config.index == IndexKind::kKSII ? est.ksii : est.sii;
          for (unsigned order : config.orders) {
            BenchmarkRow row = base;
            row.order = order;
            row.mse = Mse(values, truth, order);
            row.prec_at_10 = PrecAt10(values, truth, order);
            cell.push_back(row);
          }
        } catch (const std::exception& e) {
          cell.clear();
          for (unsigned order : config.orders) {
            BenchmarkRow row = base;
            row.order = order;
            row.mse = std::numeric_limits<double>::quiet_NaN();
            row.prec_at_10 = std::numeric_limits<double>::quiet_NaN();
            row.runtime_ms = 0.0;
            row.status = std::string("failed: ") + e.what();
            cell.push_back(row);
          }
        }
        rows.insert(rows.end(), cell.begin(), cell.end());
      }
    }
  }
  return rows;
}

namespace {

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + '"';
}

std::string CsvNumber(double v) { return std::isnan(v) ? "" : FormatDouble(v); }

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  if (quoted) throw std::runtime_error("unterminated quote in CSV row");
  return fields;
}

std::uint64_t ParseU64(const std::string& s) {
  std::size_t used = 0;
  const unsigned long long v = std::stoull(s, &used);
  if (used != s.size()) throw std::invalid_argument(s);
  return v;
}

double ParseReal(const std::string& s) {
  if (s.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw std::invalid_argument(s);
  return v;
}

}  // namespace

void WriteBenchmarkCsv(std::ostream& out, const std::vector<BenchmarkRow>& rows) {
  out << kBenchmarkCsvHeader << '\n';
  for (const BenchmarkRow& r : rows) {
    out << CsvField(r.method) << ',' << r.order << ',' << r.budget << ','
        << r.run_seed << ',' << CsvNumber(r.mse) << ','
        << CsvNumber(r.prec_at_10) << ',' << CsvNumber(r.runtime_ms) << ','
        << CsvField(r.status) << '\n';
  }
}

std::vector<BenchmarkRow> ReadBenchmarkCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kBenchmarkCsvHeader) {
    throw std::runtime_error("benchmark CSV: unexpected header");
  }
  std::vector<BenchmarkRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::vector<std::string> f = SplitCsvLine(line);
    if (f.size() != 8) {
      throw std::runtime_error("benchmark CSV line " + std::to_string(line_no) +
                               ": expected 8 fields");
    }
    try {
      BenchmarkRow r;
      r.method = f[0];
      r.order = static_cast<unsigned>(ParseU64(f[1]));
      r.budget = ParseU64(f[2]);
      r.run_seed = ParseU64(f[3]);
      r.mse = ParseReal(f[4]);
      r.prec_at_10 = ParseReal(f[5]);
      r.runtime_ms = ParseReal(f[6]);
      r.status = f[7];
      rows.push_back(std::move(r));
    } catch (const std::logic_error&) {
      throw std::runtime_error("benchmark CSV line " + std::to_string(line_no) +
                               ": malformed number");
    }
  }
  return rows;
}

}  // namespace kshapiq
