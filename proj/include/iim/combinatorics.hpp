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

#ifndef IIM_COMBINATORICS_HPP
#define IIM_COMBINATORICS_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

namespace iim::detail {

/// C(n, k), saturating at UINT64_MAX.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    const std::uint64_t num = n - k + i;
    // r * num / i is exact at every step; guard the multiplication.
    const std::uint64_t g = std::gcd(r, i);
    const std::uint64_t rr = r / g, ii = i / g;
    const std::uint64_t nn = num / ii;
    if (nn != 0 && rr > std::numeric_limits<std::uint64_t>::max() / nn) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    r = rr * nn;
  }
  return r;
}

/// Sum of C(n, s) for s in [0, k], saturating.
inline std::uint64_t subsets_up_to(std::uint64_t n, std::uint64_t k) {
  std::uint64_t total = 0;
  for (std::uint64_t s = 0; s <= k && s <= n; ++s) {
    const std::uint64_t c = binomial(n, s);
    if (total > std::numeric_limits<std::uint64_t>::max() - c) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    total += c;
  }
  return total;
}

/// Visits every k-subset of {0..n-1} as an ascending index vector, in
/// lexicographic order.
template <typename Fn>
void for_each_combination(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  while (true) {
    fn(static_cast<const std::vector<std::size_t>&>(idx));
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace iim::detail

#endif  // IIM_COMBINATORICS_HPP
