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

#ifndef KSHAPIQ_GAME_H_
#define KSHAPIQ_GAME_H_

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <utility>
#include <vector>

#include "json.hpp"
#include "kshapiq/coalition.h"
#include "kshapiq/interaction_values.h"

namespace kshapiq {

// A cooperative game: a deterministic payout for every coalition of n
// players. Implementations must be safe for concurrent calls to value().
class Game {
 public:
  virtual ~Game() = default;
  virtual unsigned n() const = 0;
  virtual double value(const Coalition& coalition) const = 0;
};

// Evaluation front-end used by estimators. Each distinct coalition is
// charged once; repeated requests are served from the cache.
class GameOracle {
 public:
  explicit GameOracle(const Game& game) : game_(game) {}

  unsigned n() const { return game_.n(); }
  double evaluate(const Coalition& coalition);
  bool is_cached(const Coalition& coalition) const;
  std::uint64_t eval_counter() const { return counter_.load(); }

 private:
  const Game& game_;
  mutable std::mutex mu_;
  std::unordered_map<std::uint64_t, double> cache_;
  std::atomic<std::uint64_t> counter_{0};
};

// Sum of unanimity games: v(T) = sum_m a_m [R_m subset of T].
class SoumGame : public Game {
 public:
  struct Term {
    Coalition subset;
    double coefficient;
  };

  // Throws std::invalid_argument on an empty or out-of-range subset.
  SoumGame(unsigned n, std::vector<Term> terms);

  unsigned n() const override { return n_; }
  double value(const Coalition& coalition) const override;
  const std::vector<Term>& terms() const { return terms_; }

  // Closed-form SII for every 1 <= |S| <= max_order:
  // sum_m a_m [S subset of R_m] / (|R_m| - |S| + 1).
  InteractionValues ExactSii(unsigned max_order) const;

  nlohmann::json ToJson() const;
  static SoumGame FromJson(const nlohmann::json& j);

 private:
  unsigned n_;
  std::vector<Term> terms_;
};

struct SoumSpec {
  unsigned n = 0;
  unsigned m_terms = 1;
  unsigned max_interaction_size = 1;
  unsigned n_dummy = 0;
};

// Random SOUM: dummy players chosen uniformly, interaction sizes uniform on
// 1..max_interaction_size, members uniform among non-dummy players given the
// size, coefficients uniform on [0, 1).
SoumGame GenerateSoum(const SoumSpec& spec, std::uint64_t seed);

// A game tabulated over all 2^n coalitions, indexed by mask.
class LookupGame : public Game {
 public:
  static constexpr unsigned kMaxLookupPlayers = 30;

  // Throws std::invalid_argument when values.size() != 2^n or a value is not
  // finite.
  LookupGame(unsigned n, std::vector<double> values);

  // Evaluates `game` on every coalition. Refuses n > 20 unless forced.
  static LookupGame Tabulate(const Game& game, bool force = false);

  unsigned n() const override { return n_; }
  double value(const Coalition& coalition) const override {
    return values_[coalition.mask()];
  }
  const std::vector<double>& values() const { return values_; }

  nlohmann::json ToJson() const;
  static LookupGame FromJson(const nlohmann::json& j);

 private:
  unsigned n_;
  std::vector<double> values_;
};

// v'(T) = v(T) - v(empty). Holds a reference; the inner game must outlive it.
class CenteredGame : public Game {
 public:
  explicit CenteredGame(const Game& inner)
      : inner_(inner), offset_(inner.value(Coalition::Empty(inner.n()))) {}

  unsigned n() const override { return inner_.n(); }
  double value(const Coalition& coalition) const override {
    return coalition.empty() ? 0.0 : inner_.value(coalition) - offset_;
  }
  double offset() const { return offset_; }

 private:
  const Game& inner_;
  double offset_;
};

// Additive game v(T) = sum_{i in T} c_i.
class AdditiveGame : public Game {
 public:
  explicit AdditiveGame(std::vector<double> weights);
  unsigned n() const override { return static_cast<unsigned>(weights_.size()); }
  double value(const Coalition& coalition) const override;

 private:
  std::vector<double> weights_;
};

// File formats. Lookup: {"n": int, "values": [2^n floats]}; SOUM:
// {"n": int, "terms": [{"subset": [1-based players], "coefficient": float}]}.
LookupGame LoadLookupGame(const std::filesystem::path& path);
void StoreLookupGame(const LookupGame& game, const std::filesystem::path& path);
SoumGame LoadSoumGame(const std::filesystem::path& path);
void StoreSoumGame(const SoumGame& game, const std::filesystem::path& path);

// Loads either format, dispatching on the presence of "values" or "terms".
std::unique_ptr<Game> LoadGame(const std::filesystem::path& path);

}  // namespace kshapiq

#endif  // KSHAPIQ_GAME_H_
