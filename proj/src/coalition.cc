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

#include "kshapiq/coalition.h"

#include <stdexcept>

namespace kshapiq {

Coalition::Coalition(std::uint64_t mask, unsigned n) : mask_(mask), n_(n) {
  if (n < 1 || n > kMaxPlayers) {
    throw std::invalid_argument("player count must lie in [1, 64], got " +
                                std::to_string(n));
  }
  if ((mask & ~FullMask(n)) != 0) {
    throw std::invalid_argument("coalition mask has players beyond n=" +
                                std::to_string(n));
  }
}

Coalition Coalition::FromPlayers(std::initializer_list<unsigned> players,
                                 unsigned n) {
  return FromPlayers(std::vector<unsigned>(players), n);
}

Coalition Coalition::FromPlayers(const std::vector<unsigned>& players,
                                 unsigned n) {
  std::uint64_t mask = 0;
  for (unsigned p : players) {
    if (p < 1 || p > n) {
      throw std::invalid_argument("player " + std::to_string(p) +
                                  " outside 1.." + std::to_string(n));
    }
    mask |= std::uint64_t{1} << (p - 1);
  }
  return Coalition(mask, n);
}

std::vector<unsigned> Coalition::players() const {
  std::vector<unsigned> out;
  out.reserve(size());
  for (std::uint64_t m = mask_; m != 0; m &= m - 1) {
    out.push_back(static_cast<unsigned>(std::countr_zero(m)) + 1);
  }
  return out;
}

std::string Coalition::to_string() const {
  std::string s = "{";
  bool first = true;
  for (unsigned p : players()) {
    if (!first) s += ",";
    s += std::to_string(p);
    first = false;
  }
  return s + "}";
}

}  // namespace kshapiq
