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

// Domain model of a two-layer interdependent network: entities of layers A
// and B, and for some entities an implicative dependency relation (IDR), a
// disjunction of conjunctive minterms over entities of the other layer.

#ifndef IIM_NETWORK_HPP
#define IIM_NETWORK_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "iim/entity.hpp"
#include "iim/error.hpp"

namespace iim {

/// A conjunction of entities. Members are kept sorted.
class Minterm {
 public:
  Minterm() = default;
  explicit Minterm(std::vector<EntityId> members) : members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
  }
  Minterm(std::initializer_list<EntityId> members)
      : Minterm(std::vector<EntityId>(members)) {}

  const std::vector<EntityId>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  bool contains(EntityId e) const {
    return std::binary_search(members_.begin(), members_.end(), e);
  }
  auto begin() const noexcept { return members_.begin(); }
  auto end() const noexcept { return members_.end(); }

  bool operator==(const Minterm&) const = default;

 private:
  std::vector<EntityId> members_;
};

/// target <- minterms[0] + minterms[1] + ...
struct Idr {
  EntityId target;
  std::vector<Minterm> minterms;

  bool operator==(const Idr&) const = default;
};

enum class CaseClass : std::uint8_t { CaseI, CaseII, CaseIII, CaseIV };

inline const char* to_string(CaseClass c) {
  switch (c) {
    case CaseClass::CaseI: return "I";
    case CaseClass::CaseII: return "II";
    case CaseClass::CaseIII: return "III";
    case CaseClass::CaseIV: return "IV";
  }
  return "?";
}

/// Accepts "I".."IV" and "CaseI".."CaseIV" (any case of the prefix).
inline std::optional<CaseClass> case_from_string(std::string s) {
  if (s.size() > 4 && (s.rfind("Case", 0) == 0 || s.rfind("case", 0) == 0)) {
    s = s.substr(4);
  }
  if (s == "I" || s == "1") return CaseClass::CaseI;
  if (s == "II" || s == "2") return CaseClass::CaseII;
  if (s == "III" || s == "3") return CaseClass::CaseIII;
  if (s == "IV" || s == "4") return CaseClass::CaseIV;
  return std::nullopt;
}

/// True when every network of class `inner` is also of class `outer`
/// (I within II and III, everything within IV).
constexpr bool is_subcase(CaseClass inner, CaseClass outer) noexcept {
  if (inner == outer || outer == CaseClass::CaseIV) return true;
  return inner == CaseClass::CaseI;
}

/// Returns a description of the first invariant `idr` breaks in a universe
/// of `num_a` + `num_b` entities, or nullopt if it is well formed.
inline std::optional<std::string> idr_problem(const Idr& idr, std::uint32_t num_a,
                                              std::uint32_t num_b) {
  auto known = [&](EntityId e) {
    return e.index >= 1 && e.index <= (e.layer == Layer::A ? num_a : num_b);
  };
  const std::string t = idr.target.str();
  if (!known(idr.target)) return "unknown entity " + t;
  if (idr.minterms.empty()) return "IDR for " + t + " has no minterms";
  for (std::size_t i = 0; i < idr.minterms.size(); ++i) {
    const Minterm& mt = idr.minterms[i];
    if (mt.empty()) return "empty minterm in IDR for " + t;
    bool same = false, cross = false;
    for (const EntityId& e : mt) {
      if (!known(e)) return "unknown entity " + e.str();
      if (e == idr.target) return "self-dependent target " + t;
      (e.layer == idr.target.layer ? same : cross) = true;
    }
    if (same && cross) return "mixed-layer minterm in IDR for " + t;
    if (same) return "same-layer dependency in IDR for " + t;
    if (std::adjacent_find(mt.begin(), mt.end()) != mt.end()) {
      return "duplicate entity in minterm of IDR for " + t;
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (idr.minterms[j] == mt) return "duplicate minterm in IDR for " + t;
    }
  }
  return std::nullopt;
}

/// The interdependent network I(A, B, F(A,B)). Immutable once built.
///
/// The universe is a1..a<num_a> and b1..b<num_b>. Entities have a dense
/// index: A entities first, then B, each by ascending index, which is also
/// EntityId order. IDR order and minterm order are those given at
/// construction.
class InterdependentNetwork {
 public:
  /// Flattened dependency structure over dense indices, used by the
  /// propagation kernels.
  struct Flat {
    std::vector<std::uint32_t> entity_minterms;  // size n+1, offsets into minterm_members
    std::vector<std::uint32_t> minterm_members;  // size m+1, offsets into members
    std::vector<std::uint32_t> members;          // dense ids
    std::vector<bool> has_idr;                   // size n
  };

  InterdependentNetwork() { rebuild(); }

  /// Throws ValidationError on any broken invariant.
  InterdependentNetwork(std::uint32_t num_a, std::uint32_t num_b, std::vector<Idr> idrs)
      : num_a_(num_a), num_b_(num_b), idrs_(std::move(idrs)) {
    idr_slot_.assign(size(), -1);
    for (std::size_t i = 0; i < idrs_.size(); ++i) {
      if (auto problem = idr_problem(idrs_[i], num_a_, num_b_)) {
        throw ValidationError(*problem);
      }
      int& slot = idr_slot_[dense(idrs_[i].target)];
      if (slot >= 0) throw ValidationError("duplicate IDR for " + idrs_[i].target.str());
      slot = static_cast<int>(i);
    }
    rebuild();
  }

  std::uint32_t num_a() const noexcept { return num_a_; }
  std::uint32_t num_b() const noexcept { return num_b_; }
  std::size_t size() const noexcept { return std::size_t{num_a_} + num_b_; }
  std::size_t minterm_count() const noexcept { return minterm_count_; }
  const std::vector<Idr>& idrs() const noexcept { return idrs_; }

  bool contains(EntityId e) const noexcept {
    return e.index >= 1 && e.index <= (e.layer == Layer::A ? num_a_ : num_b_);
  }

  std::size_t dense(EntityId e) const noexcept {
    return e.layer == Layer::A ? e.index - 1 : std::size_t{num_a_} + e.index - 1;
  }

  EntityId entity_at(std::size_t i) const noexcept {
    return i < num_a_ ? EntityId{Layer::A, static_cast<std::uint32_t>(i + 1)}
                      : EntityId{Layer::B, static_cast<std::uint32_t>(i - num_a_ + 1)};
  }

  std::vector<EntityId> entities() const {
    std::vector<EntityId> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) out.push_back(entity_at(i));
    return out;
  }

  const Idr* idr_for(EntityId e) const noexcept {
    if (!contains(e)) return nullptr;
    int slot = idr_slot_[dense(e)];
    return slot < 0 ? nullptr : &idrs_[static_cast<std::size_t>(slot)];
  }

  const Flat& flat() const noexcept { return flat_; }

  /// Throws ValidationError naming the first entity outside the universe.
  void require_known(const EntitySet& s) const {
    for (const EntityId& e : s) {
      if (!contains(e)) throw ValidationError("unknown entity " + e.str());
    }
  }

  /// Copy with one minterm deleted. Deleting the last minterm of an IDR
  /// deletes the IDR.
  InterdependentNetwork without_minterm(std::size_t idr_pos, std::size_t minterm_pos) const {
    std::vector<Idr> idrs = idrs_;
    auto& mts = idrs[idr_pos].minterms;
    mts.erase(mts.begin() + static_cast<std::ptrdiff_t>(minterm_pos));
    if (mts.empty()) idrs.erase(idrs.begin() + static_cast<std::ptrdiff_t>(idr_pos));
    return InterdependentNetwork(num_a_, num_b_, std::move(idrs));
  }

  /// Copy in which the entities flagged in `alive` (dense-indexed) are
  /// treated as permanently operational: their IDRs are dropped and they
  /// are removed from every minterm. A minterm left empty is always
  /// satisfied, so its IDR is dropped as well; minterms that become equal
  /// are merged.
  InterdependentNetwork with_alive(const std::vector<bool>& alive) const {
    std::vector<Idr> out;
    for (const Idr& idr : idrs_) {
      if (alive[dense(idr.target)]) continue;
      Idr reduced{idr.target, {}};
      bool always_alive = false;
      for (const Minterm& mt : idr.minterms) {
        std::vector<EntityId> kept;
        for (const EntityId& e : mt) {
          if (!alive[dense(e)]) kept.push_back(e);
        }
        if (kept.empty()) {
          always_alive = true;
          break;
        }
        Minterm m(std::move(kept));
        if (std::find(reduced.minterms.begin(), reduced.minterms.end(), m) ==
            reduced.minterms.end()) {
          reduced.minterms.push_back(std::move(m));
        }
      }
      if (!always_alive) out.push_back(std::move(reduced));
    }
    return InterdependentNetwork(num_a_, num_b_, std::move(out));
  }

  bool operator==(const InterdependentNetwork& o) const {
    return num_a_ == o.num_a_ && num_b_ == o.num_b_ && idrs_ == o.idrs_;
  }

 private:
  void rebuild() {
    idr_slot_.resize(size(), -1);
    minterm_count_ = 0;
    for (const Idr& idr : idrs_) minterm_count_ += idr.minterms.size();

    flat_ = Flat{};
    flat_.has_idr.assign(size(), false);
    flat_.entity_minterms.reserve(size() + 1);
    flat_.minterm_members.reserve(minterm_count_ + 1);
    flat_.entity_minterms.push_back(0);
    flat_.minterm_members.push_back(0);
    for (std::size_t i = 0; i < size(); ++i) {
      int slot = idr_slot_[i];
      if (slot >= 0) {
        flat_.has_idr[i] = true;
        for (const Minterm& mt : idrs_[static_cast<std::size_t>(slot)].minterms) {
          for (const EntityId& e : mt) {
            flat_.members.push_back(static_cast<std::uint32_t>(dense(e)));
          }
          flat_.minterm_members.push_back(static_cast<std::uint32_t>(flat_.members.size()));
        }
      }
      flat_.entity_minterms.push_back(
          static_cast<std::uint32_t>(flat_.minterm_members.size() - 1));
    }
  }

  std::uint32_t num_a_ = 0;
  std::uint32_t num_b_ = 0;
  std::vector<Idr> idrs_;
  std::vector<int> idr_slot_;
  std::size_t minterm_count_ = 0;
  Flat flat_;
};

/// Tightest of the four structural classes the network's IDRs fit.
/// A network without IDRs is Case I.
inline CaseClass classify_case(const InterdependentNetwork& net) {
  bool single_minterm = true;  // every IDR has exactly one minterm
  bool unit_minterms = true;   // every minterm has size one
  for (const Idr& idr : net.idrs()) {
    if (idr.minterms.size() != 1) single_minterm = false;
    for (const Minterm& mt : idr.minterms) {
      if (mt.size() != 1) unit_minterms = false;
    }
  }
  if (single_minterm && unit_minterms) return CaseClass::CaseI;
  if (single_minterm) return CaseClass::CaseII;
  if (unit_minterms) return CaseClass::CaseIII;
  return CaseClass::CaseIV;
}

}  // namespace iim

#endif  // IIM_NETWORK_HPP
