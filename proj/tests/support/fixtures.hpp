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

#ifndef IIM_TESTS_FIXTURES_HPP
#define IIM_TESTS_FIXTURES_HPP

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "iim/iim.hpp"

namespace fixtures {

// The seven-entity sample network, one IDR per line.
inline constexpr std::string_view kTable1 =
    "a1 <- b1 b2\n"
    "a2 <- b1 + b2\n"
    "a3 <- b1 + b2 + b3\n"
    "a4 <- b1 + b3\n"
    "b1 <- a1 a3 + a2\n"
    "b2 <- a1 a2 a3\n"
    "b3 <- a1 + a2 + a3\n";

inline const iim::InterdependentNetwork& table1() {
  static const iim::InterdependentNetwork net = iim::parse_network(kTable1);
  return net;
}

/// "a2,b3" -> {a2, b3}; the empty string is the empty set.
inline iim::EntitySet ids(std::string_view csv) {
  iim::EntitySet out;
  std::size_t start = 0;
  while (start < csv.size()) {
    std::size_t comma = csv.find(',', start);
    if (comma == std::string_view::npos) comma = csv.size();
    auto id = iim::EntityId::parse(csv.substr(start, comma - start));
    if (!id) throw std::invalid_argument("bad id list");
    out.insert(*id);
    start = comma + 1;
  }
  return out;
}

inline iim::InterdependentNetwork generated(iim::CaseClass cls, std::uint32_t n_a,
                                            std::uint32_t n_b, std::uint64_t seed,
                                            std::uint32_t max_minterms = 3,
                                            std::uint32_t max_size = 3, double density = 0.8) {
  iim::GenConfig g;
  g.case_class = cls;
  g.n_a = n_a;
  g.n_b = n_b;
  g.idr_density = density;
  g.max_minterms = max_minterms;
  g.max_minterm_size = std::min({max_size, n_a, n_b});
  g.seed = seed;
  return iim::generate(g);
}

}  // namespace fixtures

#endif  // IIM_TESTS_FIXTURES_HPP
