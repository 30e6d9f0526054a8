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

#ifndef IIM_ENTITY_HPP
#define IIM_ENTITY_HPP

#include <algorithm>
#include <charconv>
#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace iim {

/// Layer A is the power network, layer B the communication network.
enum class Layer : std::uint8_t { A, B };

constexpr Layer opposite(Layer l) noexcept {
  return l == Layer::A ? Layer::B : Layer::A;
}

constexpr char layer_char(Layer l) noexcept { return l == Layer::A ? 'a' : 'b'; }

/// A network entity, written `a<index>` or `b<index>` with index >= 1.
/// Ordering is layer first (A < B), then numeric index; every tie-break in
/// the library uses this order.
struct EntityId {
  Layer layer = Layer::A;
  std::uint32_t index = 1;

  constexpr auto operator<=>(const EntityId&) const = default;

  std::string str() const {
    return std::string(1, layer_char(layer)) + std::to_string(index);
  }

  /// Parses `[ab][1-9][0-9]*`. Returns nullopt on anything else.
  static std::optional<EntityId> parse(std::string_view token) {
    if (token.size() < 2) return std::nullopt;
    Layer layer;
    if (token[0] == 'a') {
      layer = Layer::A;
    } else if (token[0] == 'b') {
      layer = Layer::B;
    } else {
      return std::nullopt;
    }
    if (token[1] < '1' || token[1] > '9') return std::nullopt;
    std::uint32_t index = 0;
    const char* first = token.data() + 1;
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, index);
    if (ec != std::errc() || ptr != last) return std::nullopt;
    return EntityId{layer, index};
  }
};

inline std::ostream& operator<<(std::ostream& os, const EntityId& id) {
  return os << id.str();
}

constexpr EntityId a(std::uint32_t i) { return {Layer::A, i}; }
constexpr EntityId b(std::uint32_t i) { return {Layer::B, i}; }

using EntitySet = std::set<EntityId>;

/// "a1,a3,b2" style rendering of a set; empty set renders as "".
inline std::string join(const EntitySet& s, std::string_view sep = ",") {
  std::string out;
  for (const EntityId& e : s) {
    if (!out.empty()) out += sep;
    out += e.str();
  }
  return out;
}

/// Lexicographic comparison of two sets viewed as sorted sequences.
inline bool lex_less(const EntitySet& x, const EntitySet& y) {
  return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
}

}  // namespace iim

#endif  // IIM_ENTITY_HPP
