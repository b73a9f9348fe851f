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

#ifndef KSHAPIQ_INTERACTION_VALUES_H_
#define KSHAPIQ_INTERACTION_VALUES_H_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "kshapiq/coalition.h"

namespace kshapiq {

enum class IndexKind { kSII, kKSII, kMoebius };

std::string_view IndexKindName(IndexKind kind);  // "SII", "kSII", "Moebius"
IndexKind ParseIndexKind(std::string_view name);  // case-insensitive

// Scores for coalitions of size 1..order, tagged with the index they
// represent. Entries iterate by size, then by mask.
class InteractionValues {
 public:
  using Map = std::map<Coalition, double, SizeThenMask>;

  InteractionValues(unsigned n, unsigned order, IndexKind kind);

  unsigned n() const { return n_; }
  unsigned order() const { return order_; }
  IndexKind kind() const { return kind_; }
  const Map& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  // Throws std::invalid_argument unless 1 <= |S| <= order and S is over n
  // players.
  void set(const Coalition& s, double value);
  void add(const Coalition& s, double value);

  bool contains(const Coalition& s) const { return entries_.count(s) != 0; }
  // Throws std::out_of_range for a missing key.
  double at(const Coalition& s) const;
  double get(const Coalition& s, double fallback) const;

  // Keys and values of exactly size `l`, in ascending mask order.
  std::vector<Coalition> keys_of_order(unsigned l) const;
  std::vector<double> values_of_order(unsigned l) const;
  // True when every subset of size 1..l is present.
  bool has_complete_order(unsigned l) const;

  double sum() const;

  nlohmann::json ToJson() const;
  static InteractionValues FromJson(const nlohmann::json& j);

 private:
  void Check(const Coalition& s) const;

  unsigned n_;
  unsigned order_;
  IndexKind kind_;
  Map entries_;
};

}  // namespace kshapiq

#endif  // KSHAPIQ_INTERACTION_VALUES_H_
