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

// Seeded synthetic network generator.
//
// Rules, applied to a1..a<n_a> then b1..b<n_b> in order:
//   * with probability idr_density the entity receives an IDR;
//   * its minterm count is uniform on [1, max_minterms];
//   * each minterm's size is uniform on [1, max_minterm_size], members drawn
//     uniformly without replacement from the opposite layer;
//   * a minterm equal to an earlier one of the same IDR is dropped.
// The case class caps the maxima: Case I forces both to 1, Case II forces
// one minterm, Case III forces size 1.
//
// Randomness comes from std::mt19937_64 seeded with `seed`. Bounded draws use
// rejection sampling on the raw 64-bit output and probabilities compare the
// top 53 bits against the threshold, so a seed yields the same network on
// every platform.

#ifndef IIM_NETGEN_HPP
#define IIM_NETGEN_HPP

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "iim/entity.hpp"
#include "iim/error.hpp"
#include "iim/network.hpp"

namespace iim {

struct GenConfig {
  CaseClass case_class = CaseClass::CaseIV;
  std::uint32_t n_a = 4;
  std::uint32_t n_b = 4;
  double idr_density = 1.0;
  std::uint32_t max_minterms = 1;
  std::uint32_t max_minterm_size = 1;
  std::uint64_t seed = 1;

  /// The maxima after the case class caps them.
  std::uint32_t effective_max_minterms() const {
    return case_class == CaseClass::CaseI || case_class == CaseClass::CaseII ? 1 : max_minterms;
  }
  std::uint32_t effective_max_minterm_size() const {
    return case_class == CaseClass::CaseI || case_class == CaseClass::CaseIII ? 1
                                                                              : max_minterm_size;
  }
};

namespace detail {

/// Uniform integer in [0, bound) by rejection; bound > 0.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t r;
  do {
    r = rng();
  } while (r >= limit);
  return r % bound;
}

inline double unit_interval(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace detail

/// Throws ValidationError for infeasible configurations.
inline InterdependentNetwork generate(const GenConfig& cfg) {
  if (cfg.n_a == 0 || cfg.n_b == 0) throw ValidationError("n_a and n_b must be positive");
  if (!(cfg.idr_density > 0.0 && cfg.idr_density <= 1.0)) {
    throw ValidationError("idr_density must lie in (0, 1]");
  }
  if (cfg.max_minterms < 1 || cfg.max_minterm_size < 1) {
    throw ValidationError("max_minterms and max_minterm_size must be >= 1");
  }
  const std::uint32_t max_mt = cfg.effective_max_minterms();
  const std::uint32_t max_size = cfg.effective_max_minterm_size();
  if (max_size > std::min(cfg.n_a, cfg.n_b)) {
    throw ValidationError("max_minterm_size " + std::to_string(max_size) +
                          " exceeds the smaller layer (" +
                          std::to_string(std::min(cfg.n_a, cfg.n_b)) + " entities)");
  }

  std::mt19937_64 rng(cfg.seed);
  std::vector<Idr> idrs;
  auto make = [&](Layer layer, std::uint32_t count) {
    const Layer other = opposite(layer);
    const std::uint32_t pool = other == Layer::A ? cfg.n_a : cfg.n_b;
    for (std::uint32_t i = 1; i <= count; ++i) {
      if (detail::unit_interval(rng) >= cfg.idr_density) continue;
      Idr idr{EntityId{layer, i}, {}};
      const auto minterms = 1 + detail::uniform_below(rng, max_mt);
      for (std::uint64_t m = 0; m < minterms; ++m) {
        const auto size = 1 + detail::uniform_below(rng, max_size);
        // Partial Fisher-Yates over 1..pool.
        std::vector<std::uint32_t> ids(pool);
        for (std::uint32_t j = 0; j < pool; ++j) ids[j] = j + 1;
        std::vector<EntityId> members;
        for (std::uint64_t s = 0; s < size; ++s) {
          const auto pick = s + detail::uniform_below(rng, pool - s);
          std::swap(ids[s], ids[pick]);
          members.push_back(EntityId{other, ids[s]});
        }
        Minterm mt(std::move(members));
        if (std::find(idr.minterms.begin(), idr.minterms.end(), mt) == idr.minterms.end()) {
          idr.minterms.push_back(std::move(mt));
        }
      }
      idrs.push_back(std::move(idr));
    }
  };
  make(Layer::A, cfg.n_a);
  make(Layer::B, cfg.n_b);
  return InterdependentNetwork(cfg.n_a, cfg.n_b, std::move(idrs));
}

}  // namespace iim

#endif  // IIM_NETGEN_HPP
