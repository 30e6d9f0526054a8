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

// Reference implementations used only by the tests. They work on entity
// names and std::set, share no code with the library's dense-index engine,
// and search the whole universe rather than the kill set.

#ifndef IIM_TESTS_ORACLE_HPP
#define IIM_TESTS_ORACLE_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "iim/network.hpp"

namespace oracle {

using Names = std::set<std::string>;

struct Rules {
  std::vector<std::string> universe;
  std::map<std::string, std::vector<Names>> idr;
};

inline Rules rules_of(const iim::InterdependentNetwork& net) {
  Rules r;
  for (const auto& e : net.entities()) r.universe.push_back(e.str());
  for (const auto& idr : net.idrs()) {
    auto& terms = r.idr[idr.target.str()];
    for (const auto& mt : idr.minterms) {
      Names t;
      for (const auto& m : mt) t.insert(m.str());
      terms.push_back(t);
    }
  }
  return r;
}

inline Names names(const iim::EntitySet& s) {
  Names out;
  for (const auto& e : s) out.insert(e.str());
  return out;
}

/// Failed set after each step; the last entry is the fixed point.
inline std::vector<Names> cascade(const Rules& r, const Names& attacked, const Names& hardened) {
  Names failed;
  for (const auto& a : attacked) {
    if (!hardened.count(a)) failed.insert(a);
  }
  std::vector<Names> steps{failed};
  while (true) {
    Names next = failed;
    for (const auto& [target, terms] : r.idr) {
      if (failed.count(target) || hardened.count(target)) continue;
      bool dead = true;
      for (const auto& t : terms) {
        bool hit = false;
        for (const auto& m : t) hit = hit || failed.count(m);
        dead = dead && hit;
      }
      if (dead) next.insert(target);
    }
    if (next == failed) return steps;
    failed = next;
    steps.push_back(failed);
  }
}

inline Names final_failed(const Rules& r, const Names& attacked, const Names& hardened = {}) {
  return cascade(r, attacked, hardened).back();
}

/// Calls fn on every subset of `items` with exactly `size` members.
template <typename Fn>
void subsets(const std::vector<std::string>& items, std::size_t size, Fn&& fn) {
  if (size > items.size()) return;
  std::vector<bool> pick(items.size(), false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(size), true);
  do {
    Names s;
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (pick[i]) s.insert(items[i]);
    }
    fn(s);
  } while (std::prev_permutation(pick.begin(), pick.end()));
}

/// Minimum failures over every hardening set of at most k entities drawn
/// from the whole universe.
inline std::size_t best_hardening(const Rules& r, const Names& attacked, std::size_t k) {
  std::size_t best = final_failed(r, attacked).size();
  for (std::size_t s = 1; s <= k; ++s) {
    subsets(r.universe, s, [&](const Names& h) {
      best = std::min(best, final_failed(r, attacked, h).size());
    });
  }
  return best;
}

/// Minterms x covers whose deletion leaves the hardened outcome unchanged.
inline std::size_t coverage_number(const Rules& r, const Names& attacked, const std::string& x) {
  const Names before = final_failed(r, attacked);
  const Names base = final_failed(r, attacked, {x});
  Names saved;
  for (const auto& e : before) {
    if (!base.count(e)) saved.insert(e);
  }
  std::size_t covered = 0;
  for (const auto& [target, terms] : r.idr) {
    for (std::size_t j = 0; j < terms.size(); ++j) {
      if (!saved.count(target) && !terms[j].count(x)) continue;
      Rules cut = r;
      auto& t = cut.idr[target];
      t.erase(t.begin() + static_cast<std::ptrdiff_t>(j));
      if (t.empty()) cut.idr.erase(target);
      if (final_failed(cut, attacked, {x}) == base) ++covered;
    }
  }
  return covered;
}

struct Vulnerable {
  std::size_t objective = 0;
  std::vector<Names> maximizers;
};

inline Vulnerable most_vulnerable(const Rules& r, std::size_t K) {
  Vulnerable v;
  subsets(r.universe, K, [&](const Names& s) {
    const std::size_t f = final_failed(r, s).size();
    if (f > v.objective) {
      v.objective = f;
      v.maximizers.clear();
    }
    if (f == v.objective) v.maximizers.push_back(s);
  });
  return v;
}

}  // namespace oracle

#endif  // IIM_TESTS_ORACLE_HPP
