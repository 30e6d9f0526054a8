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

// Integer program for optimal entity hardening, written as a CPLEX-style LP
// file for an external MILP solver, plus a reader for the solver's answer.
//
// All variables are binary. For entity e and time step d in 0..T, with
// T = (#minterms) + (#entities) - 1:
//
//   x_<i>_<d>, y_<j>_<d>   entity a_i / b_j is failed at step d
//   q_a_<i>, q_b_<j>       entity is hardened
//   c_<t>_<d>              t-th conjunctive minterm (size >= 2, inside an
//                          IDR with several minterms) is broken at step d
//
// Objective: minimise the number of entities failed at step T.
//
//   budget            sum q = k
//   init_<e>          s_e0 >= g_e - q_e                  (g = attack vector)
//   persist_<e>_<d>   s_ed >= s_e(d-1)
//   aux_lo/aux_hi     c_td >= (sum members at d-1) / N,  c_td <= sum members at d-1
//   conj_lo/conj_hi   single-minterm IDR of size N:
//                     s_ed >= (sum members at d-1) / N - q_e,  s_ed <= sum members at d-1
//   disj_lo/disj_hi   otherwise, over its M minterm variables v (member or c):
//                     s_ed >= sum v(d-1) - (M - 1) - q_e,  s_ed <= sum v(d-1) / M
//
// The *_hi upper bounds are omitted for attacked targets; with them an
// attacked entity whose dependencies survive would have no feasible state.

#ifndef IIM_ILP_HPP
#define IIM_ILP_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "iim/cascade.hpp"
#include "iim/entity.hpp"
#include "iim/error.hpp"
#include "iim/idr_format.hpp"
#include "iim/network.hpp"

namespace iim {

enum class Relation : std::uint8_t { LessEqual, GreaterEqual, Equal };

struct LinearTerm {
  double coef = 1.0;
  std::size_t var = 0;
};

struct LinearConstraint {
  std::string name;
  std::vector<LinearTerm> terms;
  Relation relation = Relation::GreaterEqual;
  double rhs = 0.0;
  /// Variable this constraint bounds from below, if it is a propagation
  /// rule (used by lower-bound propagation, not written to the file).
  std::optional<std::size_t> head;
};

/// Where the hardening model's variables live. Absent for hand-built models.
struct HardeningLayout {
  std::uint32_t num_a = 0;
  std::uint32_t num_b = 0;
  std::size_t horizon = 0;  // T; steps are 0..T
  std::size_t aux_count = 0;
  EntitySet attacked;
  std::size_t k = 0;

  std::size_t entities() const { return std::size_t{num_a} + num_b; }
  std::size_t steps() const { return horizon + 1; }
  std::size_t state_var(std::size_t dense, std::size_t d) const { return dense * steps() + d; }
  std::size_t aux_var(std::size_t t, std::size_t d) const {
    return (entities() + t) * steps() + d;
  }
  std::size_t harden_var(std::size_t dense) const {
    return (entities() + aux_count) * steps() + dense;
  }
};

/// A minimisation model over binary variables.
struct IlpModel {
  std::vector<std::string> variables;
  std::vector<LinearTerm> objective;
  std::vector<LinearConstraint> constraints;
  std::optional<HardeningLayout> layout;

  std::optional<std::size_t> find(std::string_view name) const {
    if (index_.size() != variables.size()) {
      index_.clear();
      for (std::size_t i = 0; i < variables.size(); ++i) index_.emplace(variables[i], i);
    }
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

 private:
  mutable std::unordered_map<std::string, std::size_t> index_;
};

/// Builds the hardening ILP. `attack_vector` maps entities to 0/1; absent
/// entities count as 0. Throws ValidationError for unknown entities, values
/// other than 0 and 1, or k above the entity count.
inline IlpModel build_model(const InterdependentNetwork& net,
                            const std::map<EntityId, int>& attack_vector, std::size_t k) {
  HardeningLayout L;
  L.num_a = net.num_a();
  L.num_b = net.num_b();
  L.k = k;
  for (const auto& [e, v] : attack_vector) {
    if (!net.contains(e)) throw ValidationError("attack vector names unknown entity " + e.str());
    if (v != 0 && v != 1) throw ValidationError("attack vector value for " + e.str() + " is not 0/1");
    if (v == 1) L.attacked.insert(e);
  }
  const std::size_t n = net.size();
  if (k > n) throw ValidationError("k = " + std::to_string(k) + " exceeds the " +
                                   std::to_string(n) + " entities");
  L.horizon = std::max<std::size_t>(net.minterm_count() + n, 1) - 1;
  for (const Idr& idr : net.idrs()) {
    if (idr.minterms.size() < 2) continue;
    for (const Minterm& mt : idr.minterms) L.aux_count += mt.size() >= 2;
  }
  const std::size_t T = L.horizon;

  IlpModel model;
  model.variables.resize((n + L.aux_count) * L.steps() + n);
  for (std::size_t i = 0; i < n; ++i) {
    const EntityId e = net.entity_at(i);
    const std::string stem = (e.layer == Layer::A ? "x_" : "y_") + std::to_string(e.index) + "_";
    for (std::size_t d = 0; d <= T; ++d) model.variables[L.state_var(i, d)] = stem + std::to_string(d);
    model.variables[L.harden_var(i)] = std::string("q_") + layer_char(e.layer) + "_" +
                                       std::to_string(e.index);
  }
  for (std::size_t t = 0; t < L.aux_count; ++t) {
    for (std::size_t d = 0; d <= T; ++d) {
      model.variables[L.aux_var(t, d)] = "c_" + std::to_string(t + 1) + "_" + std::to_string(d);
    }
  }

  for (std::size_t i = 0; i < n; ++i) model.objective.push_back({1.0, L.state_var(i, T)});

  auto add = [&](std::string name, std::vector<LinearTerm> terms, Relation rel, double rhs,
                 std::optional<std::size_t> head) {
    model.constraints.push_back({std::move(name), std::move(terms), rel, rhs, head});
  };

  std::vector<LinearTerm> budget;
  for (std::size_t i = 0; i < n; ++i) budget.push_back({1.0, L.harden_var(i)});
  add("budget", std::move(budget), Relation::Equal, static_cast<double>(k), std::nullopt);

  for (std::size_t i = 0; i < n; ++i) {
    const EntityId e = net.entity_at(i);
    const double g = L.attacked.contains(e) ? 1.0 : 0.0;
    add("init_" + e.str(), {{1.0, L.state_var(i, 0)}, {1.0, L.harden_var(i)}},
        Relation::GreaterEqual, g, L.state_var(i, 0));
  }
  for (std::size_t i = 0; i < n; ++i) {
    const std::string es = net.entity_at(i).str();
    for (std::size_t d = 1; d <= T; ++d) {
      add("persist_" + es + "_" + std::to_string(d),
          {{1.0, L.state_var(i, d)}, {-1.0, L.state_var(i, d - 1)}}, Relation::GreaterEqual, 0.0,
          L.state_var(i, d));
    }
  }

  // Terms "-coef * member(d-1)" for every member of a minterm.
  auto members_at = [&](const Minterm& mt, std::size_t d, double coef) {
    std::vector<LinearTerm> terms;
    for (const EntityId& m : mt) terms.push_back({-coef, L.state_var(net.dense(m), d - 1)});
    return terms;
  };

  std::size_t next_aux = 0;
  for (const Idr& idr : net.idrs()) {
    const std::size_t x = net.dense(idr.target);
    const std::string es = idr.target.str();
    const bool attacked = L.attacked.contains(idr.target);
    const std::size_t M = idr.minterms.size();

    if (M == 1 && idr.minterms[0].size() >= 2) {
      const Minterm& mt = idr.minterms[0];
      const double N = static_cast<double>(mt.size());
      for (std::size_t d = 1; d <= T; ++d) {
        const std::string ds = std::to_string(d);
        auto lo = members_at(mt, d, 1.0 / N);
        lo.insert(lo.begin(), {{1.0, L.state_var(x, d)}, {1.0, L.harden_var(x)}});
        add("conj_lo_" + es + "_" + ds, std::move(lo), Relation::GreaterEqual, 0.0,
            L.state_var(x, d));
        if (!attacked) {
          auto hi = members_at(mt, d, 1.0);
          hi.insert(hi.begin(), LinearTerm{1.0, L.state_var(x, d)});
          add("conj_hi_" + es + "_" + ds, std::move(hi), Relation::LessEqual, 0.0, std::nullopt);
        }
      }
      continue;
    }

    // One variable per minterm: the member itself for size 1, else a fresh c.
    struct MintermVar {
      bool aux;
      std::size_t id;  // dense entity or aux index
    };
    std::vector<MintermVar> vars;
    for (const Minterm& mt : idr.minterms) {
      if (mt.size() == 1) {
        vars.push_back({false, net.dense(mt.members()[0])});
        continue;
      }
      const std::size_t t = next_aux++;
      const double N = static_cast<double>(mt.size());
      const std::string ts = std::to_string(t + 1);
      for (std::size_t d = 1; d <= T; ++d) {
        const std::string ds = std::to_string(d);
        auto lo = members_at(mt, d, 1.0 / N);
        lo.insert(lo.begin(), LinearTerm{1.0, L.aux_var(t, d)});
        add("aux_lo_" + ts + "_" + ds, std::move(lo), Relation::GreaterEqual, 0.0, L.aux_var(t, d));
        auto hi = members_at(mt, d, 1.0);
        hi.insert(hi.begin(), LinearTerm{1.0, L.aux_var(t, d)});
        add("aux_hi_" + ts + "_" + ds, std::move(hi), Relation::LessEqual, 0.0, std::nullopt);
      }
      vars.push_back({true, t});
    }
    auto var_at = [&](const MintermVar& v, std::size_t d) {
      return v.aux ? L.aux_var(v.id, d) : L.state_var(v.id, d);
    };
    const double Md = static_cast<double>(M);
    for (std::size_t d = 1; d <= T; ++d) {
      const std::string ds = std::to_string(d);
      std::vector<LinearTerm> lo{{1.0, L.state_var(x, d)}};
      for (const MintermVar& v : vars) lo.push_back({-1.0, var_at(v, d - 1)});
      lo.push_back({1.0, L.harden_var(x)});
      add("disj_lo_" + es + "_" + ds, std::move(lo), Relation::GreaterEqual, -(Md - 1.0),
          L.state_var(x, d));
      if (!attacked) {
        std::vector<LinearTerm> hi{{1.0, L.state_var(x, d)}};
        for (const MintermVar& v : vars) hi.push_back({-1.0 / Md, var_at(v, d - 1)});
        add("disj_hi_" + es + "_" + ds, std::move(hi), Relation::LessEqual, 0.0, std::nullopt);
      }
    }
  }

  model.layout = std::move(L);
  return model;
}

/// Convenience overload taking the attacked set directly.
inline IlpModel build_model(const InterdependentNetwork& net, const EntitySet& attacked,
                            std::size_t k) {
  std::map<EntityId, int> vec;
  for (const EntityId& e : attacked) vec[e] = 1;
  return build_model(net, vec, k);
}

namespace detail {

/// Shortest decimal with 15 significant digits; integers print without a
/// fractional part.
inline std::string format_number(double v) {
  if (v == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

inline void write_terms(std::ostream& out, const std::vector<LinearTerm>& terms,
                        const IlpModel& model) {
  constexpr std::size_t kTermsPerLine = 8;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i > 0 && i % kTermsPerLine == 0) out << "\n   ";
    const double c = terms[i].coef;
    if (i == 0) {
      out << (c < 0 ? " - " : " ");
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    const double mag = std::fabs(c);
    if (mag != 1.0) out << format_number(mag) << ' ';
    out << model.variables[terms[i].var];
  }
}

}  // namespace detail

/// Writes `Minimize`, `Subject To`, `Binaries` and `End` sections. Output
/// depends only on the model.
inline void write_lp(const IlpModel& model, std::ostream& out) {
  if (model.layout) {
    const HardeningLayout& L = *model.layout;
    out << "\\ entity hardening: " << L.entities() << " entities, horizon " << L.horizon
        << ", k " << L.k << ", attacked {" << join(L.attacked) << "}\n";
  }
  out << "Minimize\n obj:";
  if (model.objective.empty()) {
    out << " 0";
  } else {
    detail::write_terms(out, model.objective, model);
  }
  out << "\nSubject To\n";
  for (const LinearConstraint& c : model.constraints) {
    out << ' ' << c.name << ':';
    detail::write_terms(out, c.terms, model);
    switch (c.relation) {
      case Relation::LessEqual: out << " <= "; break;
      case Relation::GreaterEqual: out << " >= "; break;
      case Relation::Equal: out << " = "; break;
    }
    out << detail::format_number(c.rhs) << '\n';
  }
  out << "Binaries\n";
  for (std::size_t i = 0; i < model.variables.size(); ++i) {
    out << ' ' << model.variables[i];
    if (i % 10 == 9 || i + 1 == model.variables.size()) out << '\n';
  }
  out << "End\n";
}

inline std::string write_lp(const IlpModel& model) {
  std::ostringstream ss;
  write_lp(model, ss);
  return ss.str();
}

struct SolutionReadout {
  EntitySet hardened;
  std::size_t objective = 0;  // recomputed by simulation
  std::optional<double> reported_objective;
};

/// Reads solver output: one `name value` (or `name=value`, `name: value`)
/// per line, `#` and `\` comments. A line named `objective` or `obj` is the
/// solver's objective. Hardening variables q_* equal to 1 form the hardened
/// set (q_x_/q_y_ are accepted for q_a_/q_b_). The objective is recomputed
/// by simulating the model's attack; a disagreeing reported objective is
/// an IntegrityError. Any unparseable line is a ParseError and nothing is
/// returned.
inline SolutionReadout read_solution(const IlpModel& model, const InterdependentNetwork& net,
                                     std::string_view text) {
  if (!model.layout) throw ValidationError("model has no hardening layout");
  const HardeningLayout& L = *model.layout;
  if (L.num_a != net.num_a() || L.num_b != net.num_b()) {
    throw ValidationError("model and network describe different universes");
  }

  SolutionReadout out;
  std::size_t assignments = 0;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string line(text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos));
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (auto c = line.find_first_of("#\\"); c != std::string::npos) line.resize(c);
    for (char& ch : line) {
      if (ch == '=' || ch == ':') ch = ' ';
    }
    auto toks = detail::split_ws(detail::trim(line));
    if (toks.empty()) continue;
    if (toks.size() != 2) throw ParseError(line_no, "expected '<name> <value>'");

    double value = 0;
    {
      std::string v(toks[1]);
      char* end = nullptr;
      value = std::strtod(v.c_str(), &end);
      if (end != v.c_str() + v.size() || !std::isfinite(value)) {
        throw ParseError(line_no, "bad value '" + v + "'");
      }
    }
    std::string name(toks[0]);
    if (name == "objective" || name == "obj" || name == "Objective") {
      out.reported_objective = value;
      continue;
    }
    if (name.rfind("q_x_", 0) == 0) name = "q_a_" + name.substr(4);
    if (name.rfind("q_y_", 0) == 0) name = "q_b_" + name.substr(4);
    auto var = model.find(name);
    if (!var) throw ParseError(line_no, "unknown variable '" + name + "'");
    if (std::fabs(value) > 1e-6 && std::fabs(value - 1.0) > 1e-6) {
      throw ParseError(line_no, "non-binary value for " + name);
    }
    ++assignments;
    if (name[0] == 'q' && value > 0.5) {
      const std::size_t dense = *var - L.harden_var(0);
      out.hardened.insert(net.entity_at(dense));
    }
  }
  if (assignments == 0) throw ParseError(0, "solver output assigns no model variables");

  out.objective = simulate(net, L.attacked, out.hardened).failed_set(net).size();
  if (out.reported_objective &&
      std::fabs(*out.reported_objective - static_cast<double>(out.objective)) > 1e-6) {
    throw IntegrityError("solver reports objective " + detail::format_number(*out.reported_objective) +
                         " but simulating its hardening gives " + std::to_string(out.objective));
  }
  return out;
}

/// Minimal 0/1 assignment satisfying every propagation rule once the
/// hardening variables are fixed: all other variables start at 0 and a head
/// variable is raised to 1 whenever its rule is violated, until nothing
/// changes. Throws IntegrityError if a rule stays violated with its head at 1.
inline std::vector<std::uint8_t> propagate_lower_bounds(const IlpModel& model,
                                                        const InterdependentNetwork& net,
                                                        const EntitySet& hardened) {
  if (!model.layout) throw ValidationError("model has no hardening layout");
  const HardeningLayout& L = *model.layout;
  net.require_known(hardened);
  std::vector<std::uint8_t> val(model.variables.size(), 0);
  for (const EntityId& e : hardened) val[L.harden_var(net.dense(e))] = 1;

  bool changed = true;
  while (changed) {
    changed = false;
    for (const LinearConstraint& c : model.constraints) {
      if (!c.head || c.relation != Relation::GreaterEqual) continue;
      double activity = 0;
      for (const LinearTerm& t : c.terms) activity += t.coef * val[t.var];
      if (activity >= c.rhs - 1e-9) continue;
      if (val[*c.head]) throw IntegrityError("rule " + c.name + " cannot be satisfied");
      val[*c.head] = 1;
      changed = true;
    }
  }
  return val;
}

/// Names of constraints the assignment violates (tolerance 1e-9).
inline std::vector<std::string> violated_constraints(const IlpModel& model,
                                                     const std::vector<std::uint8_t>& val) {
  std::vector<std::string> out;
  for (const LinearConstraint& c : model.constraints) {
    double activity = 0;
    for (const LinearTerm& t : c.terms) activity += t.coef * val[t.var];
    bool ok = true;
    switch (c.relation) {
      case Relation::LessEqual: ok = activity <= c.rhs + 1e-9; break;
      case Relation::GreaterEqual: ok = activity >= c.rhs - 1e-9; break;
      case Relation::Equal: ok = std::fabs(activity - c.rhs) <= 1e-9; break;
    }
    if (!ok) out.push_back(c.name);
  }
  return out;
}

/// Entity failure flags per step, [dense entity][d], read from an assignment.
inline std::vector<std::vector<std::uint8_t>> state_matrix(const IlpModel& model,
                                                           const std::vector<std::uint8_t>& val) {
  const HardeningLayout& L = model.layout.value();
  std::vector<std::vector<std::uint8_t>> out(L.entities(), std::vector<std::uint8_t>(L.steps()));
  for (std::size_t i = 0; i < L.entities(); ++i) {
    for (std::size_t d = 0; d < L.steps(); ++d) out[i][d] = val[L.state_var(i, d)];
  }
  return out;
}

inline double objective_value(const IlpModel& model, const std::vector<std::uint8_t>& val) {
  double s = 0;
  for (const LinearTerm& t : model.objective) s += t.coef * val[t.var];
  return s;
}

}  // namespace iim

#endif  // IIM_ILP_HPP
