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

#include "kshapiq/game.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "kshapiq/combinatorics.h"
#include "kshapiq/json_io.h"
#include "kshapiq/random.h"

namespace kshapiq {

double GameOracle::evaluate(const Coalition& coalition) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(coalition.mask());
    if (it != cache_.end()) return it->second;
  }
  const double v = game_.value(coalition);
  std::lock_guard<std::mutex> lock(mu_);
  if (cache_.emplace(coalition.mask(), v).second) ++counter_;
  return v;
}

bool GameOracle::is_cached(const Coalition& coalition) const {
  std::lock_guard<std::mutex> lock(mu_);
  return cache_.count(coalition.mask()) != 0;
}

SoumGame::SoumGame(unsigned n, std::vector<Term> terms)
    : n_(n), terms_(std::move(terms)) {
  if (n < 1 || n > kMaxPlayers) {
    throw std::invalid_argument("player count must lie in [1, 64]");
  }
  for (const Term& t : terms_) {
    if (t.subset.n() != n) {
      throw std::invalid_argument("SOUM term over a different player count");
    }
    if (t.subset.empty()) {
      throw std::invalid_argument("SOUM terms must have nonempty subsets");
    }
    if (!std::isfinite(t.coefficient)) {
      throw std::invalid_argument("SOUM coefficient is not finite");
    }
  }
}

double SoumGame::value(const Coalition& coalition) const {
  double total = 0.0;
  for (const Term& t : terms_) {
    if (t.subset.is_subset_of(coalition)) total += t.coefficient;
  }
  return total;
}

InteractionValues SoumGame::ExactSii(unsigned max_order) const {
  if (max_order < 1 || max_order > n_) {
    throw std::invalid_argument("order must lie in [1, n]");
  }
  InteractionValues out(n_, max_order, IndexKind::kSII);
  for (unsigned s = 1; s <= max_order; ++s) {
    for (const Coalition& c : SubsetsOfSize(n_, s)) out.set(c, 0.0);
  }
  // Only subsets of some R_m are nonzero; walk the submasks of each term.
  for (const Term& t : terms_) {
    const std::uint64_t r_mask = t.subset.mask();
    const unsigned r = t.subset.size();
    for (std::uint64_t sub = r_mask; sub != 0; sub = (sub - 1) & r_mask) {
      const auto s = static_cast<unsigned>(std::popcount(sub));
      if (s > max_order) continue;
      out.add(Coalition(sub, n_), t.coefficient / static_cast<double>(r - s + 1));
    }
  }
  return out;
}

nlohmann::json SoumGame::ToJson() const {
  nlohmann::json terms = nlohmann::json::array();
  for (const Term& t : terms_) {
    terms.push_back(
        {{"subset", t.subset.players()}, {"coefficient", t.coefficient}});
  }
  return {{"n", n_}, {"terms", std::move(terms)}};
}

SoumGame SoumGame::FromJson(const nlohmann::json& j) {
  try {
    const auto n = j.at("n").get<unsigned>();
    std::vector<Term> terms;
    for (const auto& t : j.at("terms")) {
      terms.push_back(
          {Coalition::FromPlayers(t.at("subset").get<std::vector<unsigned>>(), n),
           t.at("coefficient").get<double>()});
    }
    return SoumGame(n, std::move(terms));
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed SOUM file: ") + e.what());
  }
}

SoumGame GenerateSoum(const SoumSpec& spec, std::uint64_t seed) {
  if (spec.n < 1 || spec.n > kMaxPlayers) {
    throw std::invalid_argument("SOUM player count must lie in [1, 64]");
  }
  if (spec.m_terms < 1) {
    throw std::invalid_argument("SOUM needs at least one term");
  }
  if (spec.n_dummy >= spec.n) {
    throw std::invalid_argument("SOUM needs at least one informative player");
  }
  if (spec.max_interaction_size < 1 ||
      spec.max_interaction_size > spec.n - spec.n_dummy) {
    throw std::invalid_argument(
        "max interaction size must lie in [1, n - n_dummy]");
  }
  Rng rng(seed);
  const std::uint64_t dummy_positions = rng.subset_of_size(spec.n, spec.n_dummy);
  std::vector<unsigned> informative;
  for (unsigned i = 0; i < spec.n; ++i) {
    if (((dummy_positions >> i) & 1U) == 0) informative.push_back(i);
  }
  const auto pool = static_cast<unsigned>(informative.size());
  std::vector<SoumGame::Term> terms;
  terms.reserve(spec.m_terms);
  for (unsigned m = 0; m < spec.m_terms; ++m) {
    const auto size =
        1 + static_cast<unsigned>(rng.below(spec.max_interaction_size));
    const std::uint64_t picks = rng.subset_of_size(pool, size);
    std::uint64_t mask = 0;
    for (unsigned i = 0; i < pool; ++i) {
      if ((picks >> i) & 1U) mask |= std::uint64_t{1} << informative[i];
    }
    terms.push_back({Coalition(mask, spec.n), rng.uniform()});
  }
  return SoumGame(spec.n, std::move(terms));
}

LookupGame::LookupGame(unsigned n, std::vector<double> values)
    : n_(n), values_(std::move(values)) {
  if (n < 1 || n > kMaxLookupPlayers) {
    throw std::invalid_argument("lookup games support 1..30 players");
  }
  if (values_.size() != (std::size_t{1} << n)) {
    throw std::invalid_argument("lookup table has " +
                                std::to_string(values_.size()) +
                                " values, expected 2^" + std::to_string(n));
  }
  for (double v : values_) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("lookup table contains a non-finite value");
    }
  }
}

LookupGame LookupGame::Tabulate(const Game& game, bool force) {
  const unsigned n = game.n();
  if (n > kMaxLookupPlayers || (n > 20 && !force)) {
    throw std::length_error("refusing to tabulate 2^" + std::to_string(n) +
                            " coalitions");
  }
  std::vector<double> values(std::size_t{1} << n);
  for (std::uint64_t mask = 0; mask < values.size(); ++mask) {
    values[mask] = game.value(Coalition(mask, n));
  }
  return LookupGame(n, std::move(values));
}

nlohmann::json LookupGame::ToJson() const {
  return {{"n", n_}, {"values", values_}};
}

LookupGame LookupGame::FromJson(const nlohmann::json& j) {
  try {
    const auto n = j.at("n").get<unsigned>();
    const auto& raw = j.at("values");
    if (!raw.is_array()) throw std::invalid_argument("\"values\" must be an array");
    std::vector<double> values;
    values.reserve(raw.size());
    for (const auto& v : raw) {
      if (!v.is_number()) {
        throw std::invalid_argument("lookup values must be numbers");
      }
      values.push_back(v.get<double>());
    }
    return LookupGame(n, std::move(values));
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed lookup file: ") +
                                e.what());
  }
}

AdditiveGame::AdditiveGame(std::vector<double> weights)
    : weights_(std::move(weights)) {
  if (weights_.empty() || weights_.size() > kMaxPlayers) {
    throw std::invalid_argument("additive game needs 1..64 players");
  }
}

double AdditiveGame::value(const Coalition& coalition) const {
  double total = 0.0;
  for (std::uint64_t m = coalition.mask(); m != 0; m &= m - 1) {
    total += weights_[static_cast<std::size_t>(std::countr_zero(m))];
  }
  return total;
}

LookupGame LoadLookupGame(const std::filesystem::path& path) {
  return LookupGame::FromJson(ReadJsonFile(path));
}

void StoreLookupGame(const LookupGame& game, const std::filesystem::path& path) {
  WriteJsonFile(path, game.ToJson());
}

SoumGame LoadSoumGame(const std::filesystem::path& path) {
  return SoumGame::FromJson(ReadJsonFile(path));
}

void StoreSoumGame(const SoumGame& game, const std::filesystem::path& path) {
  WriteJsonFile(path, game.ToJson());
}

std::unique_ptr<Game> LoadGame(const std::filesystem::path& path) {
  const nlohmann::json j = ReadJsonFile(path);
  if (j.is_object() && j.contains("values")) {
    return std::make_unique<LookupGame>(LookupGame::FromJson(j));
  }
  if (j.is_object() && j.contains("terms")) {
    return std::make_unique<SoumGame>(SoumGame::FromJson(j));
  }
  throw std::invalid_argument(path.string() +
                              " is neither a lookup nor a SOUM game file");
}

}  // namespace kshapiq
