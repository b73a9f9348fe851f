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

#include "kshapiq/interaction_values.h"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "kshapiq/combinatorics.h"

namespace kshapiq {

std::string_view IndexKindName(IndexKind kind) {
  switch (kind) {
    case IndexKind::kSII:
      return "SII";
    case IndexKind::kKSII:
      return "kSII";
    case IndexKind::kMoebius:
      return "Moebius";
  }
  return "SII";
}

IndexKind ParseIndexKind(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "sii") return IndexKind::kSII;
  if (lower == "ksii" || lower == "k-sii") return IndexKind::kKSII;
  if (lower == "moebius" || lower == "mobius") return IndexKind::kMoebius;
  throw std::invalid_argument("unknown index '" + std::string(name) +
                              "' (expected sii, ksii or moebius)");
}

InteractionValues::InteractionValues(unsigned n, unsigned order,
                                     IndexKind kind)
    : n_(n), order_(order), kind_(kind) {
  if (n < 1 || n > kMaxPlayers) {
    throw std::invalid_argument("player count must lie in [1, 64]");
  }
  if (order < 1 || order > n) {
    throw std::invalid_argument("interaction order must lie in [1, n]");
  }
}

void InteractionValues::Check(const Coalition& s) const {
  if (s.n() != n_) {
    throw std::invalid_argument("coalition player count mismatch");
  }
  if (s.empty() || s.size() > order_) {
    throw std::invalid_argument("interaction " + s.to_string() +
                                " outside sizes 1.." + std::to_string(order_));
  }
}

void InteractionValues::set(const Coalition& s, double value) {
  Check(s);
  entries_[s] = value;
}

void InteractionValues::add(const Coalition& s, double value) {
  Check(s);
  entries_[s] += value;
}

double InteractionValues::at(const Coalition& s) const {
  auto it = entries_.find(s);
  if (it == entries_.end()) {
    throw std::out_of_range("no value for interaction " + s.to_string());
  }
  return it->second;
}

double InteractionValues::get(const Coalition& s, double fallback) const {
  auto it = entries_.find(s);
  return it == entries_.end() ? fallback : it->second;
}

std::vector<Coalition> InteractionValues::keys_of_order(unsigned l) const {
  std::vector<Coalition> out;
  for (const auto& [key, value] : entries_) {
    if (key.size() == l) out.push_back(key);
  }
  return out;
}

std::vector<double> InteractionValues::values_of_order(unsigned l) const {
  std::vector<double> out;
  for (const auto& [key, value] : entries_) {
    if (key.size() == l) out.push_back(value);
  }
  return out;
}

bool InteractionValues::has_complete_order(unsigned l) const {
  if (l > order_) return false;
  std::uint64_t expected = 0;
  for (unsigned j = 1; j <= l; ++j) expected += BinomialU64(n_, j);
  std::uint64_t present = 0;
  for (const auto& [key, value] : entries_) {
    if (key.size() <= l) ++present;
  }
  return present == expected;
}

double InteractionValues::sum() const {
  double total = 0.0;
  for (const auto& [key, value] : entries_) total += value;
  return total;
}

nlohmann::json InteractionValues::ToJson() const {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& [key, value] : entries_) {
    entries.push_back({{"subset", key.players()}, {"value", value}});
  }
  return {{"n", n_},
          {"order", order_},
          {"index", std::string(IndexKindName(kind_))},
          {"entries", std::move(entries)}};
}

InteractionValues InteractionValues::FromJson(const nlohmann::json& j) {
  try {
    InteractionValues out(j.at("n").get<unsigned>(),
                          j.at("order").get<unsigned>(),
                          ParseIndexKind(j.at("index").get<std::string>()));
    for (const auto& e : j.at("entries")) {
      out.set(Coalition::FromPlayers(e.at("subset").get<std::vector<unsigned>>(),
                                     out.n()),
              e.at("value").get<double>());
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed interaction values: ") +
                                e.what());
  }
}

}  // namespace kshapiq
