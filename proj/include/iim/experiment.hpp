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

// Heuristic-versus-optimal study over generated networks. For every
// (case, size, seed) a network is generated, its K most vulnerable entities
// are attacked, and each k in the list is solved by every applicable method.

#ifndef IIM_EXPERIMENT_HPP
#define IIM_EXPERIMENT_HPP

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "iim/hardening.hpp"
#include "iim/netgen.hpp"
#include "iim/network.hpp"
#include "iim/vulnerability.hpp"

namespace iim {

struct ExperimentConfig {
  std::vector<CaseClass> cases{CaseClass::CaseIV};
  std::vector<std::uint32_t> sizes{12};  // total entities; A gets the odd one
  std::size_t K = 8;
  std::vector<std::size_t> k_list{1, 3, 5, 7};
  std::vector<std::uint64_t> seeds{1};
  double density = 0.8;
  std::uint32_t max_minterms = 3;
  std::uint32_t max_minterm_size = 3;  // clipped to the smaller layer
  std::size_t jobs = 1;
  SearchLimits limits;
};

struct ExperimentRow {
  std::string network_id;
  CaseClass requested = CaseClass::CaseIV;
  CaseClass actual = CaseClass::CaseIV;
  std::uint32_t size = 0;
  std::uint64_t seed = 0;
  std::size_t K = 0;
  std::size_t k = 0;
  std::string attack_method;  // "exact" or "greedy" (exact search over budget)
  EntitySet attacked;
  bool attack_unique = false;
  std::size_t killed = 0;
  std::size_t exact = 0;
  std::size_t greedy = 0;
  std::optional<std::size_t> case1;
  std::optional<std::size_t> case3;
  EntitySet exact_hardened;
  EntitySet greedy_hardened;
  double gap = 0.0;  // (greedy - exact) / max(exact, 1)
  std::string error;  // empty when the row succeeded
  // Wall-clock milliseconds; excluded from the deterministic report.
  double exact_ms = 0, greedy_ms = 0, case1_ms = 0, case3_ms = 0;

  bool ok() const { return error.empty(); }
};

struct ExperimentReport {
  std::vector<ExperimentRow> rows;

  std::size_t failed_rows() const {
    return static_cast<std::size_t>(
        std::count_if(rows.begin(), rows.end(), [](const auto& r) { return !r.ok(); }));
  }

  double mean_gap() const {
    double sum = 0;
    std::size_t n = 0;
    for (const auto& r : rows) {
      if (!r.ok()) continue;
      sum += r.gap;
      ++n;
    }
    return n == 0 ? 0.0 : sum / static_cast<double>(n);
  }
};

namespace detail {

template <typename Fn>
double timed_ms(Fn&& fn) {
  const auto start = std::chrono::steady_clock::now();
  fn();
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(stop - start).count();
}

inline std::vector<ExperimentRow> run_unit(const ExperimentConfig& cfg, CaseClass cls,
                                           std::uint32_t size, std::uint64_t seed) {
  ExperimentRow proto;
  proto.requested = cls;
  proto.size = size;
  proto.seed = seed;
  proto.K = cfg.K;
  proto.network_id = std::string(to_string(cls)) + "-n" + std::to_string(size) + "-s" +
                     std::to_string(seed);

  std::vector<ExperimentRow> rows;
  auto fail_all = [&](const std::string& msg) {
    for (std::size_t k : cfg.k_list) {
      ExperimentRow r = proto;
      r.k = k;
      r.error = msg;
      rows.push_back(std::move(r));
    }
    return rows;
  };

  InterdependentNetwork net;
  AttackAssessment attack;
  try {
    GenConfig g;
    g.case_class = cls;
    g.n_a = (size + 1) / 2;
    g.n_b = size / 2;
    g.idr_density = cfg.density;
    g.max_minterms = cfg.max_minterms;
    g.max_minterm_size = std::min({cfg.max_minterm_size, g.n_a, g.n_b});
    g.seed = seed;
    net = generate(g);
    proto.actual = classify_case(net);
    try {
      attack = most_vulnerable_exact(net, cfg.K, cfg.limits);
      proto.attack_method = "exact";
    } catch (const BudgetExceeded&) {
      attack = most_vulnerable_greedy(net, cfg.K);
      proto.attack_method = "greedy";
    }
  } catch (const Error& e) {
    return fail_all(e.what());
  }
  proto.attacked = attack.attacked;
  proto.attack_unique = attack.unique;
  proto.killed = attack.objective;

  for (std::size_t k : cfg.k_list) {
    ExperimentRow r = proto;
    r.k = k;
    try {
      HardeningResult ex, gr;
      r.exact_ms = timed_ms([&] { ex = harden_exact(net, attack.attacked, k, cfg.limits); });
      r.greedy_ms = timed_ms([&] { gr = harden_greedy(net, attack.attacked, k); });
      r.exact = ex.objective;
      r.greedy = gr.objective;
      r.exact_hardened = ex.hardened;
      r.greedy_hardened = gr.hardened;
      if (r.actual == CaseClass::CaseI) {
        r.case1_ms = timed_ms([&] { r.case1 = harden_case1(net, attack.attacked, k).objective; });
      }
      if (r.actual == CaseClass::CaseI || r.actual == CaseClass::CaseIII) {
        r.case3_ms =
            timed_ms([&] { r.case3 = harden_case3_maxcov(net, attack.attacked, k).objective; });
      }
      r.gap = (static_cast<double>(r.greedy) - static_cast<double>(r.exact)) /
              static_cast<double>(std::max<std::size_t>(r.exact, 1));
    } catch (const Error& e) {
      r.error = e.what();
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

inline std::string csv_field(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

inline std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace detail

/// Runs the matrix case x size x seed x k. Rows come out in that order no
/// matter how many worker threads run; a failure is recorded on its rows
/// and the run continues.
inline ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  struct Unit {
    CaseClass cls;
    std::uint32_t size;
    std::uint64_t seed;
  };
  std::vector<Unit> units;
  for (CaseClass c : cfg.cases) {
    for (std::uint32_t s : cfg.sizes) {
      for (std::uint64_t seed : cfg.seeds) units.push_back({c, s, seed});
    }
  }
  std::vector<std::vector<ExperimentRow>> results(units.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < units.size(); i = next++) {
      results[i] = detail::run_unit(cfg, units[i].cls, units[i].size, units[i].seed);
    }
  };
  const std::size_t jobs = std::max<std::size_t>(1, std::min(cfg.jobs, units.size()));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }

  ExperimentReport report;
  for (auto& unit_rows : results) {
    for (auto& r : unit_rows) report.rows.push_back(std::move(r));
  }
  return report;
}

/// Deterministic report: no timings.
inline std::string report_csv(const ExperimentReport& report) {
  std::string out =
      "network_id,case,class,size,seed,K,k,attack_method,attacked,attack_unique,killed,"
      "exact,greedy,case1,case3,gap,exact_hardened,greedy_hardened,status\n";
  for (const auto& r : report.rows) {
    auto opt = [](const std::optional<std::size_t>& v) {
      return v ? std::to_string(*v) : std::string();
    };
    out += r.network_id + ',' + to_string(r.requested) + ',' + to_string(r.actual) + ',' +
           std::to_string(r.size) + ',' + std::to_string(r.seed) + ',' + std::to_string(r.K) +
           ',' + std::to_string(r.k) + ',' + r.attack_method + ',' + join(r.attacked, " ") + ',' +
           (r.attack_unique ? "1" : "0") + ',' + std::to_string(r.killed) + ',';
    if (r.ok()) {
      out += std::to_string(r.exact) + ',' + std::to_string(r.greedy) + ',' + opt(r.case1) +
             ',' + opt(r.case3) + ',' + detail::fixed6(r.gap) + ',' +
             join(r.exact_hardened, " ") + ',' + join(r.greedy_hardened, " ") + ",ok\n";
    } else {
      out += ",,,,,,," + detail::csv_field("error: " + r.error) + '\n';
    }
  }
  return out;
}

inline std::string timings_csv(const ExperimentReport& report) {
  std::string out = "network_id,k,exact_ms,greedy_ms,case1_ms,case3_ms\n";
  for (const auto& r : report.rows) {
    out += r.network_id + ',' + std::to_string(r.k) + ',' + detail::fixed6(r.exact_ms) + ',' +
           detail::fixed6(r.greedy_ms) + ',' + detail::fixed6(r.case1_ms) + ',' +
           detail::fixed6(r.case3_ms) + '\n';
  }
  return out;
}

/// Mean entities failed per (case, size, k, method): the k-vs-failures
/// series behind a heuristic-versus-optimal chart. Method "none" is the
/// unhardened kill set.
inline std::string plot_csv(const ExperimentReport& report) {
  struct Acc {
    double sum = 0;
    std::size_t n = 0;
  };
  using Key = std::tuple<int, std::uint32_t, std::size_t, std::string>;
  std::map<Key, Acc> acc;
  for (const auto& r : report.rows) {
    if (!r.ok()) continue;
    auto put = [&](const char* method, double v) {
      Acc& a = acc[Key{static_cast<int>(r.requested), r.size, r.k, method}];
      a.sum += v;
      ++a.n;
    };
    put("none", static_cast<double>(r.killed));
    put("exact", static_cast<double>(r.exact));
    put("greedy", static_cast<double>(r.greedy));
    if (r.case1) put("case1", static_cast<double>(*r.case1));
    if (r.case3) put("case3", static_cast<double>(*r.case3));
  }
  std::string out = "case,size,k,method,mean_failed,instances\n";
  for (const auto& [key, a] : acc) {
    const auto& [cls, size, k, method] = key;
    out += std::string(to_string(static_cast<CaseClass>(cls))) + ',' + std::to_string(size) +
           ',' + std::to_string(k) + ',' + method + ',' +
           detail::fixed6(a.sum / static_cast<double>(a.n)) + ',' + std::to_string(a.n) + '\n';
  }
  return out;
}

}  // namespace iim

#endif  // IIM_EXPERIMENT_HPP
