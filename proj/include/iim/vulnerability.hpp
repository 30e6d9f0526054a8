// Copyright 2026 The IIM Hardening Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// The K most vulnerable entities: an attack set of size K whose kill set is
// largest. This is the adversary model the hardening solvers take as input.

#ifndef IIM_VULNERABILITY_HPP
#define IIM_VULNERABILITY_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "iim/cascade.hpp"
#include "iim/combinatorics.hpp"
#include "iim/entity.hpp"
#include "iim/error.hpp"
#include "iim/network.hpp"

namespace iim {

struct AttackAssessment {
  EntitySet attacked;
  EntitySet killed;
  std::size_t objective = 0;  // |killed|
  bool unique = true;         // no other enumerated attack reached the same objective
};

struct SearchLimits {
  std::uint64_t max_subsets = 10'000'000;
};

/// Exhaustive search over all C(n, K) attacks. Ties go to the
/// lexicographically smallest attack and clear `unique`.
inline AttackAssessment most_vulnerable_exact(const InterdependentNetwork& net, std::size_t K,
                                              const SearchLimits& limits = {}) {
  const std::size_t n = net.size();
  if (K > n) {
    throw ValidationError("K=" + std::to_string(K) + " exceeds entity count " + std::to_string(n));
  }
  const std::uint64_t candidates = detail::binomial(n, K);
  if (candidates > limits.max_subsets) {
    throw BudgetExceeded("most vulnerable search needs " + std::to_string(candidates) +
                         " subsets (cap " + std::to_string(limits.max_subsets) +
                         "); use the greedy search instead");
  }

  const Mask none(n, 0);
  Mask attack(n, 0);
  std::vector<std::size_t> best;
  Mask best_failed;
  std::size_t best_count = 0;
  std::size_t ties = 0;
  bool first = true;
  detail::for_each_combination(n, K, [&](const std::vector<std::size_t>& idx) {
    for (std::size_t i : idx) attack[i] = 1;
    Mask failed = detail::failed_mask(net, attack, none);
    const std::size_t c = detail::count(failed);
    if (first || c > best_count) {
      first = false;
      best = idx;
      best_failed = std::move(failed);
      best_count = c;
      ties = 1;
    } else if (c == best_count) {
      ++ties;
    }
    for (std::size_t i : idx) attack[i] = 0;
  });

  AttackAssessment out;
  for (std::size_t i : best) out.attacked.insert(net.entity_at(i));
  out.killed = from_mask(net, best_failed);
  out.objective = best_count;
  out.unique = ties == 1;
  return out;
}

/// Adds, K times, the entity whose addition grows the kill set most
/// (smallest id on ties). Never beats the exact search.
inline AttackAssessment most_vulnerable_greedy(const InterdependentNetwork& net, std::size_t K) {
  const std::size_t n = net.size();
  if (K > n) {
    throw ValidationError("K=" + std::to_string(K) + " exceeds entity count " + std::to_string(n));
  }
  const Mask none(n, 0);
  Mask attack(n, 0);
  Mask failed(n, 0);
  for (std::size_t round = 0; round < K; ++round) {
    std::size_t pick = n;
    std::size_t pick_count = 0;
    Mask pick_failed;
    for (std::size_t i = 0; i < n; ++i) {
      if (attack[i]) continue;
      attack[i] = 1;
      Mask f = detail::failed_mask(net, attack, none);
      attack[i] = 0;
      const std::size_t c = detail::count(f);
      if (pick == n || c > pick_count) {
        pick = i;
        pick_count = c;
        pick_failed = std::move(f);
      }
    }
    attack[pick] = 1;
    failed = std::move(pick_failed);
  }
  AttackAssessment out;
  out.attacked = from_mask(net, attack);
  out.killed = from_mask(net, failed);
  out.objective = out.killed.size();
  out.unique = false;  // not established by a greedy search
  return out;
}

}  // namespace iim

#endif  // IIM_VULNERABILITY_HPP
