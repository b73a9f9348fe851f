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

#ifndef KSHAPIQ_COALITION_H_
#define KSHAPIQ_COALITION_H_

#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

namespace kshapiq {

inline constexpr unsigned kMaxPlayers = 64;

// Mask with the lowest `n` bits set.
constexpr std::uint64_t FullMask(unsigned n) {
  return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

// A subset of the player set {1, ..., n}. Player i occupies bit i-1.
class Coalition {
 public:
  Coalition() = default;

  // Throws std::invalid_argument if n is outside [1, 64] or the mask has bits
  // at positions >= n.
  Coalition(std::uint64_t mask, unsigned n);

  static Coalition Empty(unsigned n) { return Coalition(0, n); }
  static Coalition Full(unsigned n) { return Coalition(FullMask(n), n); }
  // From 1-based player labels.
  static Coalition FromPlayers(std::initializer_list<unsigned> players,
                               unsigned n);
  static Coalition FromPlayers(const std::vector<unsigned>& players,
                               unsigned n);

  std::uint64_t mask() const { return mask_; }
  unsigned n() const { return n_; }
  unsigned size() const { return static_cast<unsigned>(std::popcount(mask_)); }
  bool empty() const { return mask_ == 0; }

  // 1-based player i.
  bool contains(unsigned player) const {
    return player >= 1 && player <= n_ && ((mask_ >> (player - 1)) & 1U) != 0;
  }
  bool is_subset_of(const Coalition& other) const {
    return (mask_ & ~other.mask_) == 0;
  }
  bool disjoint(const Coalition& other) const {
    return (mask_ & other.mask_) == 0;
  }

  Coalition operator|(const Coalition& o) const { return {mask_ | o.mask_, n_}; }
  Coalition operator&(const Coalition& o) const { return {mask_ & o.mask_, n_}; }
  Coalition minus(const Coalition& o) const { return {mask_ & ~o.mask_, n_}; }
  Coalition complement() const { return {FullMask(n_) & ~mask_, n_}; }

  // Ascending 1-based player labels.
  std::vector<unsigned> players() const;
  std::string to_string() const;

  bool operator==(const Coalition& o) const = default;

 private:
  std::uint64_t mask_ = 0;
  unsigned n_ = 1;
};

// Orders by size first, then numeric mask. Iterating a std::map keyed with
// this comparator visits each order in column (mask) order.
struct SizeThenMask {
  bool operator()(const Coalition& a, const Coalition& b) const {
    const unsigned sa = a.size();
    const unsigned sb = b.size();
    return sa != sb ? sa < sb : a.mask() < b.mask();
  }
};

// Cardinality of the intersection without materialising a Coalition.
inline unsigned IntersectionSize(std::uint64_t a, std::uint64_t b) {
  return static_cast<unsigned>(std::popcount(a & b));
}

}  // namespace kshapiq

template <>
struct std::hash<kshapiq::Coalition> {
  std::size_t operator()(const kshapiq::Coalition& c) const noexcept {
    return std::hash<std::uint64_t>{}(c.mask());
  }
};

#endif  // KSHAPIQ_COALITION_H_
