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

// Entity hardening: given a fixed attack, choose at most k entities to make
// permanently operational so that as few entities as possible fail.
//
// Four solvers:
//   harden_exact         exhaustive search over subsets of the kill set
//   harden_case1         polynomial and optimal for single size-one minterms
//   harden_case3_maxcov  greedy maximum coverage over protection sets,
//                        (1 - 1/e)-approximate for size-one minterms
//   harden_greedy        general heuristic: largest protection set first,
//                        minterm coverage number as tie-break

#ifndef IIM_HARDENING_HPP
#define IIM_HARDENING_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "iim/cascade.hpp"
#include "iim/combinatorics.hpp"
#include "iim/entity.hpp"
#include "iim/error.hpp"
#include "iim/network.hpp"
#include "iim/vulnerability.hpp"

namespace iim {

enum class Method : std::uint8_t { Exact, Case1, Case3MaxCov, Greedy };

inline const char* to_string(Method m) {
  switch (m) {
    case Method::Exact: return "exact";
    case Method::Case1: return "case1";
    case Method::Case3MaxCov: return "case3";
    case Method::Greedy: return "greedy";
  }
  return "?";
}

inline std::optional<Method> method_from_string(const std::string& s) {
  if (s == "exact") return Method::Exact;
  if (s == "case1") return Method::Case1;
  if (s == "case3") return Method::Case3MaxCov;
  if (s == "greedy") return Method::Greedy;
  return std::nullopt;
}

struct HardeningResult {
  EntitySet hardened;
  EntitySet final_failed;
  std::size_t objective = 0;  // |final_failed|
  CascadeTrace trace;
  Method method = Method::Exact;
  std::vector<std::string> warnings;
};

/// Re-simulates `attacked` with `hardened` and packages the outcome.
inline HardeningResult evaluate_hardening(const InterdependentNetwork& net,
                                          const EntitySet& attacked, EntitySet hardened,
                                          Method method) {
  HardeningResult r;
  r.trace = simulate(net, attacked, hardened);
  r.final_failed = r.trace.failed_set(net);
  r.objective = r.final_failed.size();
  r.hardened = std::move(hardened);
  r.method = method;
  return r;
}

namespace detail {

inline std::vector<std::size_t> indices_of(const Mask& m) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i]) out.push_back(i);
  }
  return out;
}

inline bool strict_subset(const Mask& x, const Mask& y) {
  bool smaller = false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] && !y[i]) return false;
    if (y[i] && !x[i]) smaller = true;
  }
  return smaller;
}

}  // namespace detail

/// Minimum-failure hardening by enumeration of all subsets of the kill set
/// with at most k members. Ties go to the smaller set, then the
/// lexicographically smaller one.
inline HardeningResult harden_exact(const InterdependentNetwork& net, const EntitySet& attacked,
                                    std::size_t k, const SearchLimits& limits = {}) {
  const Mask att = to_mask(net, attacked);
  const Mask none(net.size(), 0);
  const std::vector<std::size_t> cand = detail::indices_of(detail::failed_mask(net, att, none));
  const std::size_t max_size = std::min(k, cand.size());

  const std::uint64_t work = detail::subsets_up_to(cand.size(), max_size);
  if (work > limits.max_subsets) {
    throw BudgetExceeded("exact hardening needs " + std::to_string(work) +
                         " simulations (cap " + std::to_string(limits.max_subsets) +
                         "); export the ILP with export-lp and use a MILP solver");
  }

  Mask hard(net.size(), 0);
  std::vector<std::size_t> best;
  std::size_t best_count = cand.size();
  for (std::size_t s = 1; s <= max_size && best_count > 0; ++s) {
    detail::for_each_combination(cand.size(), s, [&](const std::vector<std::size_t>& idx) {
      for (std::size_t i : idx) hard[cand[i]] = 1;
      const std::size_t c = detail::count(detail::failed_mask(net, att, hard));
      if (c < best_count) {
        best_count = c;
        best.clear();
        for (std::size_t i : idx) best.push_back(cand[i]);
      }
      for (std::size_t i : idx) hard[cand[i]] = 0;
    });
  }

  EntitySet hardened;
  for (std::size_t i : best) hardened.insert(net.entity_at(i));
  HardeningResult r = evaluate_hardening(net, attacked, std::move(hardened), Method::Exact);
  if (k >= attacked.size() && !attacked.empty()) {
    r.warnings.push_back("k >= |attacked|: hardening the whole attack set is trivially optimal");
  }
  return r;
}

/// Case I solver. For each attacked x_i take C_i = KillSet({x_i}), subtract
/// every strictly contained C_j of another attacked entity to get D_i, and
/// harden the owners of the k largest D_i (ties by entity order).
///
/// Two attacked entities on one dependency cycle have equal kill sets, so
/// neither contains the other strictly. For such a pair D_i also drops
/// KillSet({x_j}) computed with x_i hardened, which is what x_j still takes
/// down when x_i survives. On acyclic dependency graphs this never applies.
inline HardeningResult harden_case1(const InterdependentNetwork& net, const EntitySet& attacked,
                                    std::size_t k) {
  if (classify_case(net) != CaseClass::CaseI) {
    throw ValidationError("harden_case1 requires a Case I network (one size-1 minterm per IDR)");
  }
  const std::vector<EntityId> xs(attacked.begin(), attacked.end());
  net.require_known(attacked);
  const std::size_t K = xs.size();
  const std::size_t n = net.size();
  const Mask none(n, 0);

  std::vector<Mask> C(K), D(K);
  for (std::size_t i = 0; i < K; ++i) {
    Mask single(n, 0);
    single[net.dense(xs[i])] = 1;
    C[i] = detail::failed_mask(net, single, none);
  }
  for (std::size_t i = 0; i < K; ++i) {
    D[i] = C[i];
    for (std::size_t j = 0; j < K; ++j) {
      if (j == i) continue;
      Mask removed;
      if (detail::strict_subset(C[j], C[i])) {
        removed = C[j];
      } else if (C[j] == C[i]) {
        Mask single(n, 0), guard(n, 0);
        single[net.dense(xs[j])] = 1;
        guard[net.dense(xs[i])] = 1;
        removed = detail::failed_mask(net, single, guard);
      } else {
        continue;
      }
      for (std::size_t e = 0; e < n; ++e) {
        if (removed[e]) D[i][e] = 0;
      }
    }
  }

  std::vector<std::size_t> order(K);
  for (std::size_t i = 0; i < K; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return detail::count(D[x]) > detail::count(D[y]);
  });
  EntitySet hardened;
  for (std::size_t r = 0; r < std::min(k, K); ++r) hardened.insert(xs[order[r]]);
  return evaluate_hardening(net, attacked, std::move(hardened), Method::Case1);
}

/// Greedy maximum coverage over the protection sets of the kill-set
/// entities. With size-one minterms the entities saved by a hardened set are
/// exactly the union of the members' protection sets, so this keeps the
/// (1 - 1/e) coverage guarantee. Stops early once no candidate adds cover.
inline HardeningResult harden_case3_maxcov(const InterdependentNetwork& net,
                                           const EntitySet& attacked, std::size_t k) {
  const CaseClass cls = classify_case(net);
  if (cls != CaseClass::CaseI && cls != CaseClass::CaseIII) {
    throw ValidationError("harden_case3_maxcov requires every minterm to have size 1");
  }
  const Mask att = to_mask(net, attacked);
  const std::size_t n = net.size();
  const Mask none(n, 0);
  const Mask base = detail::failed_mask(net, att, none);
  const std::vector<std::size_t> cand = detail::indices_of(base);

  std::vector<Mask> cover(cand.size());
  Mask hard(n, 0);
  for (std::size_t c = 0; c < cand.size(); ++c) {
    hard[cand[c]] = 1;
    const Mask after = detail::failed_mask(net, att, hard);
    hard[cand[c]] = 0;
    cover[c].assign(n, 0);
    for (std::size_t e = 0; e < n; ++e) cover[c][e] = base[e] && !after[e];
  }

  Mask covered(n, 0);
  std::vector<bool> used(cand.size(), false);
  EntitySet hardened;
  for (std::size_t round = 0; round < k; ++round) {
    std::size_t pick = cand.size();
    std::size_t pick_gain = 0;
    for (std::size_t c = 0; c < cand.size(); ++c) {
      if (used[c]) continue;
      std::size_t gain = 0;
      for (std::size_t e = 0; e < n; ++e) gain += cover[c][e] && !covered[e];
      if (gain > pick_gain) {
        pick = c;
        pick_gain = gain;
      }
    }
    if (pick == cand.size()) break;
    used[pick] = true;
    for (std::size_t e = 0; e < n; ++e) covered[e] |= cover[pick][e];
    hardened.insert(net.entity_at(cand[pick]));
  }
  return evaluate_hardening(net, attacked, std::move(hardened), Method::Case3MaxCov);
}

/// General heuristic.
///
/// Entities that survive the attack are pinned alive and removed from the
/// network. Then, up to k times: harden the candidate with the largest
/// protection set under the remaining attack, breaking ties by the largest
/// minterm coverage number and then by entity order; pin its protection set
/// alive, shrink the candidate pool by it, and drop the chosen entity from
/// the remaining attack. All updates happen on a working copy.
inline HardeningResult harden_greedy(const InterdependentNetwork& net, const EntitySet& attacked,
                                     std::size_t k) {
  const std::size_t n = net.size();
  Mask remaining_attack = to_mask(net, attacked);
  const Mask none(n, 0);

  Mask pool = detail::failed_mask(net, remaining_attack, none);
  std::vector<bool> pinned(n);
  for (std::size_t i = 0; i < n; ++i) pinned[i] = !pool[i];
  InterdependentNetwork work = net.with_alive(pinned);

  EntitySet hardened;
  while (hardened.size() < k) {
    const Mask base = detail::failed_mask(work, remaining_attack, none);
    std::vector<std::size_t> best;
    std::vector<Mask> best_sets;
    std::size_t best_size = 0;
    Mask hard(n, 0);
    for (std::size_t x = 0; x < n; ++x) {
      if (!pool[x]) continue;
      hard[x] = 1;
      const Mask after = detail::failed_mask(work, remaining_attack, hard);
      hard[x] = 0;
      Mask saved(n, 0);
      for (std::size_t e = 0; e < n; ++e) saved[e] = base[e] && !after[e];
      const std::size_t size = detail::count(saved);
      if (size > best_size) {
        best_size = size;
        best.clear();
        best_sets.clear();
      }
      if (size == best_size && size > 0) {
        best.push_back(x);
        best_sets.push_back(std::move(saved));
      }
    }
    if (best.empty()) break;

    std::size_t choice = 0;
    if (best.size() > 1) {
      const EntitySet remaining = from_mask(net, remaining_attack);
      std::size_t best_cover = 0;
      for (std::size_t c = 0; c < best.size(); ++c) {
        const std::size_t cover =
            minterm_coverage_number(work, remaining, net.entity_at(best[c]));
        if (c == 0 || cover > best_cover) {
          best_cover = cover;
          choice = c;
        }
      }
    }

    const std::size_t x = best[choice];
    const Mask& saved = best_sets[choice];
    std::vector<bool> alive(n, false);
    for (std::size_t e = 0; e < n; ++e) {
      if (saved[e]) {
        pool[e] = 0;
        alive[e] = true;
      }
    }
    work = work.with_alive(alive);
    remaining_attack[x] = 0;
    hardened.insert(net.entity_at(x));
  }
  return evaluate_hardening(net, attacked, std::move(hardened), Method::Greedy);
}

inline HardeningResult harden(const InterdependentNetwork& net, const EntitySet& attacked,
                              std::size_t k, Method method, const SearchLimits& limits = {}) {
  switch (method) {
    case Method::Exact: return harden_exact(net, attacked, k, limits);
    case Method::Case1: return harden_case1(net, attacked, k);
    case Method::Case3MaxCov: return harden_case3_maxcov(net, attacked, k);
    case Method::Greedy: return harden_greedy(net, attacked, k);
  }
  throw ValidationError("unknown hardening method");
}

}  // namespace iim

#endif  // IIM_HARDENING_HPP
