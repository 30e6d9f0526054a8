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

// Acceptance run: one PASS/FAIL line per criterion, exit status 0 only when
// every criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "support/fixtures.hpp"
#include "support/oracle.hpp"

namespace {

using namespace iim;
using fixtures::ids;
using fixtures::table1;
namespace fs = std::filesystem;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double ms_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path work_dir() {
  fs::path dir = fs::path(IIM_BINARY_DIR) / "acceptance_work";
  fs::create_directories(dir);
  return dir;
}

// 1 -------------------------------------------------------------------------
Outcome table2_trace() {
  const auto& net = table1();
  const auto start = std::chrono::steady_clock::now();
  const auto trace = simulate(net, ids("a2,b3"), {});
  const double ms = ms_since(start);

  // Reference matrix, rows a1..a4, b1..b3, columns t = 0..6.
  const char* rows[] = {"0011111", "1111111", "0000111", "0000111",
                        "0001111", "0111111", "1111111"};
  bool same = true;
  const auto es = net.entities();
  for (std::size_t i = 0; i < es.size(); ++i) {
    for (std::size_t t = 0; t < 7; ++t) {
      const bool failed =
          trace.state(net, es[i], std::min(t, trace.fixed_point_step)) == EntityState::Failed;
      same = same && failed == (rows[i][t] == '1');
    }
  }
  const bool times = trace.failure_time(net, *ids("b2").begin()) == 1u &&
                     trace.failure_time(net, *ids("a1").begin()) == 2u &&
                     trace.failure_time(net, *ids("b1").begin()) == 3u &&
                     trace.failure_time(net, *ids("a3").begin()) == 4u &&
                     trace.failure_time(net, *ids("a4").begin()) == 4u;
  const std::size_t failed = trace.failed_set(net).size();
  Outcome o;
  o.pass = same && times && trace.fixed_point_step == 4 && failed == 7 && ms < 1.0;
  std::ostringstream d;
  d << "matrix " << (same ? "matches" : "differs") << ", fixed point " << trace.fixed_point_step
    << ", " << failed << " failed, " << ms << " ms";
  o.detail = d.str();
  return o;
}

// 2 -------------------------------------------------------------------------
Outcome table3_goldens() {
  const auto a = simulate(table1(), ids("a2,b3"), ids("a2")).failed_set(table1());
  const auto b = simulate(table1(), ids("a2,b3"), ids("b3")).failed_set(table1());
  Outcome o;
  o.pass = a == ids("b3") && b == ids("a1,a2,b1,b2");
  o.detail = "harden a2 -> {" + join(a) + "}, harden b3 -> {" + join(b) + "}";
  return o;
}

// 3 -------------------------------------------------------------------------
Outcome narrative() {
  const auto v = most_vulnerable_exact(table1(), 2);
  const auto k1 = harden_exact(table1(), ids("a2,b3"), 1);
  const auto k2 = harden_exact(table1(), ids("a2,b3"), 2);
  const bool attack_ok = v.attacked == ids("a2,b3") && v.objective == 7;
  const bool k1_ok = k1.hardened == ids("a2") && k1.objective == 1;
  const bool k2_ok = k2.objective == 0;

  const auto ties = oracle::most_vulnerable(oracle::rules_of(table1()), 2).maximizers;
  std::ostringstream d;
  d << "K=2 -> {" << join(v.attacked) << "} objective " << v.objective
    << (v.unique ? " (unique)" : "") << " [" << ties.size() << " tied maximizers:";
  for (const auto& t : ties) {
    d << " {";
    bool first = true;
    for (const auto& n : t) {
      d << (first ? "" : ",") << n;
      first = false;
    }
    d << "}";
  }
  d << "]; k=1 -> {" << join(k1.hardened) << "} objective " << k1.objective
    << "; k=2 -> objective " << k2.objective;
  return {attack_ok && k1_ok && k2_ok, d.str()};
}

// Shared Case I suite for criteria 4 and 7.
struct Instance {
  InterdependentNetwork net;
  EntitySet attacked;
  std::size_t k = 0;
  std::uint64_t seed = 0;
};

std::vector<Instance> case1_suite() {
  std::vector<Instance> out;
  for (std::uint64_t seed = 1; seed <= 220; ++seed) {
    const std::uint32_t n = 6 + static_cast<std::uint32_t>(seed % 15);  // 6..20
    auto net = fixtures::generated(CaseClass::CaseI, (n + 1) / 2, n / 2, seed, 1, 1, 0.85);
    const std::size_t K = 2 + seed % 4;  // 2..5
    const auto attacked = most_vulnerable_exact(net, K).attacked;
    const std::size_t k = 1 + (seed / 4) % (K - 1);  // 1..K-1
    out.push_back({std::move(net), attacked, k, seed});
  }
  return out;
}

// 4 -------------------------------------------------------------------------
Outcome case1_optimality(const std::vector<Instance>& suite) {
  const auto start = std::chrono::steady_clock::now();
  std::size_t agree = 0;
  std::string first_bad;
  for (const auto& in : suite) {
    if (classify_case(in.net) != CaseClass::CaseI) {
      first_bad = "seed " + std::to_string(in.seed) + " not Case I";
      continue;
    }
    const auto c1 = harden_case1(in.net, in.attacked, in.k);
    const auto ex = harden_exact(in.net, in.attacked, in.k);
    if (c1.objective == ex.objective) {
      ++agree;
    } else if (first_bad.empty()) {
      first_bad = "seed " + std::to_string(in.seed) + ": case1 " + std::to_string(c1.objective) +
                  " vs exact " + std::to_string(ex.objective);
    }
  }
  const double ms = ms_since(start);
  std::ostringstream d;
  d << agree << "/" << suite.size() << " instances optimal, " << ms / 1000.0 << " s";
  if (!first_bad.empty()) d << "; first mismatch " << first_bad;
  return {suite.size() >= 200 && agree == suite.size() && ms < 60'000.0, d.str()};
}

// 5 -------------------------------------------------------------------------
Outcome case3_guarantee() {
  std::size_t total = 0, ok = 0, exact_better = 0;
  std::string first_bad;
  const double ratio = 1.0 - 1.0 / std::exp(1.0);
  for (std::uint64_t seed = 1; seed <= 220; ++seed) {
    const std::uint32_t n = 6 + static_cast<std::uint32_t>(seed % 11);  // 6..16
    auto net = fixtures::generated(CaseClass::CaseIII, (n + 1) / 2, n / 2, seed, 3, 1, 0.9);
    const std::size_t K = 2 + seed % 3;  // 2..4
    const auto attacked = most_vulnerable_exact(net, K).attacked;
    const std::size_t k = 1 + (seed / 3) % (K - 1);
    const std::size_t before = kill_set(net, attacked).size();
    const std::size_t opt = before - harden_exact(net, attacked, k).objective;
    const std::size_t got = before - harden_case3_maxcov(net, attacked, k).objective;
    const auto floor = static_cast<std::size_t>(std::ceil(ratio * static_cast<double>(opt)));
    ++total;
    if (got >= floor) {
      ++ok;
    } else if (first_bad.empty()) {
      first_bad = "seed " + std::to_string(seed);
    }
    if (got < opt) ++exact_better;
  }
  std::ostringstream d;
  d << ok << "/" << total << " instances meet ceil((1-1/e) * optimal); maxcov below optimal on "
    << exact_better;
  if (!first_bad.empty()) d << "; first violation " << first_bad;
  return {total >= 200 && ok == total, d.str()};
}

// 6 -------------------------------------------------------------------------
Outcome gap_study() {
  ExperimentConfig cfg;
  cfg.cases = {CaseClass::CaseIV};
  cfg.sizes = {10, 12, 14};
  cfg.K = 4;
  cfg.k_list = {1, 2, 3};
  cfg.seeds.resize(70);
  for (std::size_t i = 0; i < cfg.seeds.size(); ++i) cfg.seeds[i] = i + 1;
  cfg.jobs = std::max(1u, std::thread::hardware_concurrency());
  const auto report = run_experiment(cfg);

  std::size_t networks = report.rows.size() / cfg.k_list.size();
  std::size_t bad = report.failed_rows(), below = 0, k1 = 0, k1_match = 0;
  double gap_sum[4] = {0, 0, 0, 0};
  for (const auto& r : report.rows) {
    if (!r.ok()) continue;
    if (r.greedy < r.exact) ++below;
    gap_sum[r.k] += r.gap;
    if (r.k == 1) {
      ++k1;
      if (r.greedy == r.exact) ++k1_match;
    }
  }
  const double match = k1 == 0 ? 0.0 : static_cast<double>(k1_match) / static_cast<double>(k1);
  std::ostringstream d;
  d << networks << " networks, " << report.rows.size() << " rows, " << bad << " failed rows, "
    << below << " with greedy < exact; mean gap " << report.mean_gap() << " (k=1 "
    << gap_sum[1] / static_cast<double>(networks) << ", k=2 "
    << gap_sum[2] / static_cast<double>(networks) << ", k=3 "
    << gap_sum[3] / static_cast<double>(networks) << "); greedy = exact at k=1 on "
    << 100.0 * match << "%";
  return {networks >= 200 && bad == 0 && below == 0 && match >= 0.5, d.str()};
}

// 7 -------------------------------------------------------------------------
Outcome ilp_fidelity(const std::vector<Instance>& suite) {
  std::size_t traced = 0;
  std::string first_bad;
  for (const auto& in : suite) {
    const auto ex = harden_exact(in.net, in.attacked, in.k);
    const auto model = build_model(in.net, in.attacked, in.k);
    const auto val = propagate_lower_bounds(model, in.net, ex.hardened);
    const auto states = state_matrix(model, val);
    bool same = true;
    for (std::size_t i = 0; i < in.net.size(); ++i) {
      for (std::size_t d = 0; d <= model.layout->horizon; ++d) {
        const auto t = std::min(d, ex.trace.fixed_point_step);
        same = same && static_cast<bool>(states[i][d]) ==
                           (ex.trace.steps[t][i] == EntityState::Failed);
      }
    }
    if (same) {
      ++traced;
    } else if (first_bad.empty()) {
      first_bad = "seed " + std::to_string(in.seed);
    }
  }
  std::ostringstream d;
  d << traced << "/" << suite.size() << " propagated traces match the simulator";
  if (!first_bad.empty()) d << "; first mismatch " << first_bad;
  bool pass = traced == suite.size();

  const std::string solver = IIM_LP_SOLVER;
  if (solver.empty()) {
    d << "; solver leg skipped (no MILP solver configured)";
    return {pass, d.str()};
  }

  // Spot checks: 30 instances from the Case I suite and 30 Case IV networks,
  // which exercise the auxiliary variables.
  struct Check {
    InterdependentNetwork net;
    EntitySet attacked;
    std::size_t k;
    std::size_t expect;
    fs::path lp;
  };
  std::vector<Check> checks;
  const fs::path dir = work_dir();
  for (std::size_t i = 0; i < 30; ++i) {
    const auto& in = suite[i * (suite.size() / 30)];
    checks.push_back({in.net, in.attacked, in.k, 0, {}});
  }
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    auto net = fixtures::generated(CaseClass::CaseIV, 5, 4, 1000 + seed);
    auto att = most_vulnerable_exact(net, 3).attacked;
    checks.push_back({net, att, 1 + seed % 2, 0, {}});
  }
  std::string cmd = solver + " --batch";
  for (std::size_t i = 0; i < checks.size(); ++i) {
    auto& c = checks[i];
    c.expect = harden_exact(c.net, c.attacked, c.k).objective;
    c.lp = dir / ("spot_" + std::to_string(i) + ".lp");
    std::ofstream(c.lp) << write_lp(build_model(c.net, c.attacked, c.k));
    cmd += " '" + c.lp.string() + "'";
  }
  if (std::system(cmd.c_str()) != 0) {
    d << "; solver run failed";
    return {false, d.str()};
  }
  std::size_t equal = 0;
  for (const auto& c : checks) {
    try {
      const auto model = build_model(c.net, c.attacked, c.k);
      const auto r = read_solution(model, c.net, slurp(c.lp.string() + ".sol"));
      if (r.objective == c.expect && r.reported_objective &&
          static_cast<std::size_t>(*r.reported_objective) == c.expect) {
        ++equal;
      }
    } catch (const Error& e) {
      if (first_bad.empty()) first_bad = e.what();
    }
  }
  d << "; solver optimum = exact on " << equal << "/" << checks.size() << " spot checks";
  pass = pass && checks.size() >= 50 && equal == checks.size();
  return {pass, d.str()};
}

// 8 -------------------------------------------------------------------------
Outcome invariants() {
  constexpr std::uint64_t kInstances = 1000;
  std::size_t attack_bad = 0, harden_bad = 0, bound_bad = 0, nested_bad = 0, union_bad = 0;
  std::mt19937_64 rng(8);
  auto random_subset = [&](const std::vector<EntityId>& from, unsigned pct) {
    EntitySet s;
    for (const auto& e : from) {
      if (rng() % 100 < pct) s.insert(e);
    }
    return s;
  };

  for (std::uint64_t seed = 1; seed <= kInstances; ++seed) {
    // Monotonicity and the step bound on general networks.
    auto net = fixtures::generated(CaseClass::CaseIV, 3 + seed % 6, 3 + (seed / 6) % 6, seed);
    const auto es = net.entities();
    const EntitySet s2 = random_subset(es, 40);
    EntitySet s1;
    for (const auto& e : s2) {
      if (rng() % 2) s1.insert(e);
    }
    const auto k1 = kill_set(net, s1), k2 = kill_set(net, s2);
    if (!std::includes(k2.begin(), k2.end(), k1.begin(), k1.end())) ++attack_bad;

    const EntitySet h2 = random_subset(es, 30);
    EntitySet h1;
    for (const auto& e : h2) {
      if (rng() % 2) h1.insert(e);
    }
    const auto t1 = simulate(net, s2, h1), t2 = simulate(net, s2, h2);
    const auto f1 = t1.failed_set(net), f2 = t2.failed_set(net);
    if (!std::includes(f1.begin(), f1.end(), f2.begin(), f2.end())) ++harden_bad;
    for (const auto* t : {&t1, &t2}) {
      if (t->fixed_point_step + 1 > net.size()) ++bound_bad;
    }

    // Nested-or-disjoint single-entity kill sets on Case I.
    auto c1 = fixtures::generated(CaseClass::CaseI, 3 + seed % 8, 3 + (seed / 8) % 8, seed);
    std::vector<EntitySet> kills;
    for (const auto& e : c1.entities()) kills.push_back(kill_set(c1, EntitySet{e}));
    for (std::size_t i = 0; i < kills.size(); ++i) {
      for (std::size_t j = i + 1; j < kills.size(); ++j) {
        EntitySet both;
        std::set_intersection(kills[i].begin(), kills[i].end(), kills[j].begin(), kills[j].end(),
                              std::inserter(both, both.end()));
        if (!both.empty() && both != kills[i] && both != kills[j]) ++nested_bad;
      }
    }

    // Union of protection sets on Case III.
    auto c3 = fixtures::generated(CaseClass::CaseIII, 3 + seed % 6, 3 + (seed / 6) % 6, seed, 3,
                                  1, 0.9);
    const auto att = most_vulnerable_greedy(c3, std::min<std::size_t>(3, c3.size())).attacked;
    const auto before = kill_set(c3, att);
    const std::vector<EntityId> cand(before.begin(), before.end());
    for (std::size_t i = 0; i < cand.size(); ++i) {
      const auto pi = protection_set(c3, att, cand[i]);
      for (std::size_t j = i + 1; j < cand.size(); ++j) {
        const auto pj = protection_set(c3, att, cand[j]);
        EntitySet joined = pi;
        joined.insert(pj.begin(), pj.end());
        const auto after = simulate(c3, att, EntitySet{cand[i], cand[j]}).failed_set(c3);
        EntitySet joint;
        std::set_difference(before.begin(), before.end(), after.begin(), after.end(),
                            std::inserter(joint, joint.end()));
        if (joined != joint) ++union_bad;
      }
    }
  }
  std::ostringstream d;
  d << kInstances << " instances per property; violations: attack monotonicity " << attack_bad
    << ", hardening monotonicity " << harden_bad << ", step bound " << bound_bad
    << ", nested-or-disjoint " << nested_bad << ", protection union " << union_bad;
  return {attack_bad + harden_bad + bound_bad + nested_bad + union_bad == 0, d.str()};
}

// 9 -------------------------------------------------------------------------
Outcome determinism() {
  const fs::path dir = work_dir();
  auto run = [&](const std::string& tag, int jobs) {
    const fs::path out = dir / ("det_" + tag + ".csv");
    const std::string cmd = std::string("\"") + IIM_CLI +
                            "\" experiment --cases I,III,IV --sizes 10,12 --K 4 --k-list 1,2,3"
                            " --seeds 8 --jobs " + std::to_string(jobs) + " --out \"" +
                            out.string() + "\" > /dev/null";
    const int rc = std::system(cmd.c_str());
    return std::make_pair(rc, slurp(out) + "\n--\n" + slurp(dir / ("det_" + tag + ".plot.csv")));
  };
  const auto a = run("a", 1);
  const auto b = run("b", 4);
  const auto c = run("c", 1);
  const bool same = a.second == b.second && a.second == c.second;
  std::ostringstream d;
  d << "three CLI runs (jobs 1, 4, 1): report and plot CSV " << (same ? "byte-identical" : "differ")
    << ", " << a.second.size() << " bytes";
  return {a.first == 0 && b.first == 0 && c.first == 0 && same && a.second.size() > 100,
          d.str()};
}

}  // namespace

int main() {
  std::cout.setf(std::ios::fixed);
  std::cout.precision(3);
  const auto suite = case1_suite();
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 reference cascade trace", table2_trace},
      {"2 single-hardening outcomes", table3_goldens},
      {"3 worked example (attack, k=1, k=2)", narrative},
      {"4 Case I algorithm is optimal", [&] { return case1_optimality(suite); }},
      {"5 Case III max-coverage bound", case3_guarantee},
      {"6 greedy versus exact on Case IV", gap_study},
      {"7 ILP reproduces the simulator", [&] { return ilp_fidelity(suite); }},
      {"8 invariant fuzzing", invariants},
      {"9 experiment determinism", determinism},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
    failed += o.pass ? 0 : 1;
  }
  std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria fail")
            << std::endl;
  return failed == 0 ? 0 : 1;
}
