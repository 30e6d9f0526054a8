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

// Time-stepped failure propagation. At step 0 the attacked entities that are
// not hardened fail. At step t+1 an alive entity with an IDR fails iff every
// one of its minterms holds an entity that is failed at step t. Hardened
// entities never fail and never count as failed. Entities without an IDR
// fail only when attacked.

#ifndef IIM_CASCADE_HPP
#define IIM_CASCADE_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "iim/entity.hpp"
#include "iim/error.hpp"
#include "iim/network.hpp"

namespace iim {

enum class EntityState : std::uint8_t { Alive, Failed, Hardened };

using StateVector = std::vector<EntityState>;
/// Dense-indexed membership flags.
using Mask = std::vector<std::uint8_t>;

namespace detail {

inline bool all_minterms_hit(const InterdependentNetwork::Flat& f, std::size_t i,
                             const StateVector& cur) {
  for (std::uint32_t mt = f.entity_minterms[i]; mt < f.entity_minterms[i + 1]; ++mt) {
    bool hit = false;
    for (std::uint32_t k = f.minterm_members[mt]; k < f.minterm_members[mt + 1]; ++k) {
      if (cur[f.members[k]] == EntityState::Failed) {
        hit = true;
        break;
      }
    }
    if (!hit) return false;
  }
  return true;
}

/// Computes state t+1 from state t. Returns whether anything changed.
inline bool advance(const InterdependentNetwork::Flat& f, const StateVector& cur,
                    StateVector& next) {
  next = cur;
  bool changed = false;
  for (std::size_t i = 0; i < cur.size(); ++i) {
    if (cur[i] != EntityState::Alive || !f.has_idr[i]) continue;
    if (all_minterms_hit(f, i, cur)) {
      next[i] = EntityState::Failed;
      changed = true;
    }
  }
  return changed;
}

inline StateVector initial_state(std::size_t n, const Mask& attacked, const Mask& hardened) {
  StateVector s(n, EntityState::Alive);
  for (std::size_t i = 0; i < n; ++i) {
    if (hardened[i]) {
      s[i] = EntityState::Hardened;
    } else if (attacked[i]) {
      s[i] = EntityState::Failed;
    }
  }
  return s;
}

/// Fixed-point failed flags for dense masks; no trace is kept.
inline Mask failed_mask(const InterdependentNetwork& net, const Mask& attacked,
                        const Mask& hardened) {
  StateVector cur = initial_state(net.size(), attacked, hardened);
  StateVector next;
  while (advance(net.flat(), cur, next)) cur.swap(next);
  Mask out(net.size(), 0);
  for (std::size_t i = 0; i < cur.size(); ++i) out[i] = cur[i] == EntityState::Failed;
  return out;
}

inline std::size_t count(const Mask& m) {
  return static_cast<std::size_t>(std::count(m.begin(), m.end(), std::uint8_t{1}));
}

}  // namespace detail

inline Mask to_mask(const InterdependentNetwork& net, const EntitySet& s) {
  net.require_known(s);
  Mask m(net.size(), 0);
  for (const EntityId& e : s) m[net.dense(e)] = 1;
  return m;
}

inline EntitySet from_mask(const InterdependentNetwork& net, const Mask& m) {
  EntitySet out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i]) out.insert(net.entity_at(i));
  }
  return out;
}

/// State vectors for steps 0..fixed_point_step, dense-indexed. Every later
/// step equals the last one.
struct CascadeTrace {
  std::vector<StateVector> steps;
  std::size_t fixed_point_step = 0;

  const StateVector& final_state() const { return steps.back(); }

  EntityState state(const InterdependentNetwork& net, EntityId e, std::size_t t) const {
    return steps[std::min(t, fixed_point_step)][net.dense(e)];
  }

  EntitySet failed_set(const InterdependentNetwork& net) const {
    EntitySet out;
    const StateVector& last = final_state();
    for (std::size_t i = 0; i < last.size(); ++i) {
      if (last[i] == EntityState::Failed) out.insert(net.entity_at(i));
    }
    return out;
  }

  /// First step at which `e` is failed, or nullopt if it never fails.
  std::optional<std::size_t> failure_time(const InterdependentNetwork& net, EntityId e) const {
    const std::size_t i = net.dense(e);
    for (std::size_t t = 0; t < steps.size(); ++t) {
      if (steps[t][i] == EntityState::Failed) return t;
    }
    return std::nullopt;
  }
};

/// Runs the cascade to its fixed point. An entity both attacked and
/// hardened survives. Throws ValidationError for entities outside the
/// universe.
inline CascadeTrace simulate(const InterdependentNetwork& net, const EntitySet& attacked,
                             const EntitySet& hardened) {
  CascadeTrace trace;
  trace.steps.push_back(
      detail::initial_state(net.size(), to_mask(net, attacked), to_mask(net, hardened)));
  StateVector next;
  while (detail::advance(net.flat(), trace.steps.back(), next)) trace.steps.push_back(next);
  trace.fixed_point_step = trace.steps.size() - 1;
  return trace;
}

/// Every entity that eventually fails when `s` fails at step 0.
inline EntitySet kill_set(const InterdependentNetwork& net, const EntitySet& s) {
  Mask none(net.size(), 0);
  return from_mask(net, detail::failed_mask(net, to_mask(net, s), none));
}

/// Entities saved from failure by hardening `x` alone under `attacked`.
inline EntitySet protection_set(const InterdependentNetwork& net, const EntitySet& attacked,
                                EntityId x) {
  net.require_known({x});
  const Mask att = to_mask(net, attacked);
  Mask hard(net.size(), 0);
  const Mask before = detail::failed_mask(net, att, hard);
  hard[net.dense(x)] = 1;
  const Mask after = detail::failed_mask(net, att, hard);
  EntitySet out;
  for (std::size_t i = 0; i < before.size(); ++i) {
    if (before[i] && !after[i]) out.insert(net.entity_at(i));
  }
  return out;
}

/// Number of minterms that can be deleted without changing the fixed-point
/// failed set once `x` is hardened, counting only minterms covered by `x`:
/// those containing `x` and those of IDRs whose target `x` protects.
/// Deleting the last minterm of an IDR deletes the IDR.
inline std::size_t minterm_coverage_number(const InterdependentNetwork& net,
                                           const EntitySet& attacked, EntityId x) {
  net.require_known({x});
  const Mask att = to_mask(net, attacked);
  Mask hard(net.size(), 0);
  hard[net.dense(x)] = 1;
  const Mask base = detail::failed_mask(net, att, hard);
  const EntitySet protected_set = protection_set(net, attacked, x);

  std::size_t covered = 0;
  for (std::size_t r = 0; r < net.idrs().size(); ++r) {
    const Idr& idr = net.idrs()[r];
    const bool target_protected = protected_set.contains(idr.target);
    for (std::size_t j = 0; j < idr.minterms.size(); ++j) {
      if (!target_protected && !idr.minterms[j].contains(x)) continue;
      if (detail::failed_mask(net.without_minterm(r, j), att, hard) == base) ++covered;
    }
  }
  return covered;
}

/// Rows are entities, columns time steps 0..max(fixed point, pad_to - 1);
/// cells are 1 (failed), 0 (alive) or * (hardened).
inline std::string trace_to_csv(const InterdependentNetwork& net, const CascadeTrace& trace,
                                std::size_t pad_to = 0) {
  const std::size_t columns = std::max(trace.fixed_point_step + 1, pad_to);
  std::string out = "entity";
  for (std::size_t t = 0; t < columns; ++t) out += "," + std::to_string(t);
  out += '\n';
  for (std::size_t i = 0; i < net.size(); ++i) {
    out += net.entity_at(i).str();
    for (std::size_t t = 0; t < columns; ++t) {
      switch (trace.steps[std::min(t, trace.fixed_point_step)][i]) {
        case EntityState::Alive: out += ",0"; break;
        case EntityState::Failed: out += ",1"; break;
        case EntityState::Hardened: out += ",*"; break;
      }
    }
    out += '\n';
  }
  return out;
}

}  // namespace iim

#endif  // IIM_CASCADE_HPP
