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

// iim: command-line front end.
//
//   iim simulate FILE --attack a2,b3 [--harden a2] [--csv trace.csv] [--json]
//   iim harden FILE (--attack IDS | --auto-K K) --k k [--method exact|case1|case3|greedy]
//   iim vulnerable FILE --K K [--greedy]
//   iim classify FILE
//   iim export-lp FILE (--attack IDS | --auto-K K) --k k --out model.lp
//   iim check-solution FILE (--attack IDS | --auto-K K) --k k --solution out.txt
//   iim gen --case IV --n-a 6 --n-b 6 --seed 1 [--out net.idr]
//   iim experiment --cases IV --sizes 12 --K 4 --k-list 1,2,3 --seeds 20 --out report.csv
//
// Exit codes: 0 success, 2 invalid input, 3 search budget exceeded,
// 4 integrity failure.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "iim/iim.hpp"
#include "iim/report.hpp"

namespace {

using namespace iim;
using json = nlohmann::ordered_json;

constexpr int kExitValidation = 2;
constexpr int kExitBudget = 3;
constexpr int kExitIntegrity = 4;

EntitySet parse_ids(const std::string& csv) {
  EntitySet out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    auto t = detail::trim(tok);
    if (t.empty()) continue;
    auto id = EntityId::parse(t);
    if (!id) throw ValidationError("bad entity id '" + std::string(t) + "'");
    out.insert(*id);
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw ValidationError("cannot write " + path);
}

/// "report.csv" -> "report.<tag>.csv"
std::string sibling(const std::string& path, const std::string& tag) {
  const std::string ext = ".csv";
  if (path.size() > ext.size() && path.compare(path.size() - ext.size(), ext.size(), ext) == 0) {
    return path.substr(0, path.size() - ext.size()) + "." + tag + ext;
  }
  return path + "." + tag + ext;
}

/// Shared --attack / --auto-K handling.
struct AttackArgs {
  std::string ids;
  std::optional<std::size_t> auto_K;
  std::uint64_t max_subsets = SearchLimits{}.max_subsets;

  void add_to(CLI::App* cmd) {
    auto* a = cmd->add_option("--attack", ids, "attacked entities, comma separated")
                  ->expected(0, 1);
    auto* k = cmd->add_option("--auto-K", auto_K, "attack the K most vulnerable entities");
    a->excludes(k);
    cmd->add_option("--max-subsets", max_subsets, "cap on exhaustive enumeration");
  }

  EntitySet resolve(const InterdependentNetwork& net, json* note = nullptr) const {
    if (!auto_K) {
      auto s = parse_ids(ids);
      net.require_known(s);
      return s;
    }
    auto a = most_vulnerable_exact(net, *auto_K, SearchLimits{max_subsets});
    if (note) (*note)["attack"] = to_json(a);
    return a.attacked;
  }
};

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    auto t = detail::trim(tok);
    if (!t.empty()) out.emplace_back(t);
  }
  return out;
}

template <typename T>
std::vector<T> parse_numbers(const std::string& csv, const char* what) {
  std::vector<T> out;
  for (const auto& tok : split_list(csv)) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      out.push_back(static_cast<T>(v));
    } catch (const std::exception&) {
      throw ValidationError(std::string("bad value '") + tok + "' in " + what);
    }
  }
  if (out.empty()) throw ValidationError(std::string(what) + " is empty");
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"Entity hardening for interdependent power and communication networks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "iim 1.0.0");

  // simulate
  auto* sim = app.add_subcommand("simulate", "run the failure cascade");
  std::string sim_file, sim_attack, sim_harden, sim_csv;
  bool sim_json = false;
  sim->add_option("file", sim_file, ".idr network")->required();
  sim->add_option("--attack", sim_attack, "attacked entities, comma separated")->expected(0, 1);
  sim->add_option("--harden", sim_harden, "hardened entities, comma separated")->expected(0, 1);
  sim->add_option("--csv", sim_csv, "write the step-by-step trace here");
  sim->add_flag("--json", sim_json, "print JSON");

  // harden
  auto* hard = app.add_subcommand("harden", "choose entities to harden");
  std::string hard_file, hard_method = "exact";
  std::size_t hard_k = 0;
  AttackArgs hard_attack;
  hard->add_option("file", hard_file, ".idr network")->required();
  hard_attack.add_to(hard);
  hard->add_option("--k", hard_k, "hardening budget")->required();
  hard->add_option("--method", hard_method, "exact, case1, case3 or greedy");

  // vulnerable
  auto* vul = app.add_subcommand("vulnerable", "find the K most vulnerable entities");
  std::string vul_file;
  std::size_t vul_K = 0;
  bool vul_greedy = false;
  std::uint64_t vul_max = SearchLimits{}.max_subsets;
  vul->add_option("file", vul_file, ".idr network")->required();
  vul->add_option("--K", vul_K, "attack budget")->required();
  vul->add_flag("--greedy", vul_greedy, "greedy search instead of enumeration");
  vul->add_option("--max-subsets", vul_max, "cap on exhaustive enumeration");

  // classify
  auto* cls = app.add_subcommand("classify", "print the IDR case class");
  std::string cls_file;
  cls->add_option("file", cls_file, ".idr network")->required();

  // export-lp
  auto* lp = app.add_subcommand("export-lp", "write the hardening ILP in LP format");
  std::string lp_file, lp_out;
  std::size_t lp_k = 0;
  AttackArgs lp_attack;
  lp->add_option("file", lp_file, ".idr network")->required();
  lp_attack.add_to(lp);
  lp->add_option("--k", lp_k, "hardening budget")->required();
  lp->add_option("--out", lp_out, "LP file (stdout when omitted)");

  // check-solution
  auto* chk = app.add_subcommand("check-solution", "verify a MILP solver's answer");
  std::string chk_file, chk_solution;
  std::size_t chk_k = 0;
  AttackArgs chk_attack;
  chk->add_option("file", chk_file, ".idr network")->required();
  chk_attack.add_to(chk);
  chk->add_option("--k", chk_k, "hardening budget")->required();
  chk->add_option("--solution", chk_solution, "solver output, one 'name value' per line")
      ->required();

  // gen
  auto* gen = app.add_subcommand("gen", "generate a random network");
  GenConfig gc;
  std::string gen_case = "IV", gen_out;
  gen->add_option("--case", gen_case, "I, II, III or IV");
  gen->add_option("--n-a", gc.n_a, "entities in layer a");
  gen->add_option("--n-b", gc.n_b, "entities in layer b");
  gen->add_option("--density", gc.idr_density, "fraction of entities with an IDR");
  gen->add_option("--max-minterms", gc.max_minterms, "minterms per IDR, at most");
  gen->add_option("--max-size", gc.max_minterm_size, "entities per minterm, at most");
  gen->add_option("--seed", gc.seed, "random seed");
  gen->add_option("--out", gen_out, "output file (stdout when omitted)");

  // experiment
  auto* exp = app.add_subcommand("experiment", "heuristic versus optimal study");
  ExperimentConfig ec;
  std::string exp_cases = "IV", exp_sizes = "12", exp_k = "1,3,5,7", exp_seed_list, exp_out;
  std::optional<std::uint64_t> exp_seeds;
  exp->add_option("--cases", exp_cases, "case classes, comma separated");
  exp->add_option("--sizes", exp_sizes, "total entity counts, comma separated");
  exp->add_option("--K", ec.K, "attack budget");
  exp->add_option("--k-list", exp_k, "hardening budgets, comma separated");
  auto* seeds_opt = exp->add_option("--seeds", exp_seeds, "use seeds 1..N");
  exp->add_option("--seed-list", exp_seed_list, "explicit seeds, comma separated")
      ->excludes(seeds_opt);
  exp->add_option("--density", ec.density, "fraction of entities with an IDR");
  exp->add_option("--max-minterms", ec.max_minterms, "minterms per IDR, at most");
  exp->add_option("--max-size", ec.max_minterm_size, "entities per minterm, at most");
  exp->add_option("--max-subsets", ec.limits.max_subsets, "cap on exhaustive enumeration");
  exp->add_option("--jobs", ec.jobs, "worker threads");
  exp->add_option("--out", exp_out, "report CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitValidation;
  }

  if (*sim) {
    auto net = load_network(sim_file);
    const auto attacked = parse_ids(sim_attack);
    const auto hardened = parse_ids(sim_harden);
    const auto trace = simulate(net, attacked, hardened);
    const auto failed = trace.failed_set(net);
    if (!sim_csv.empty()) write_file(sim_csv, trace_to_csv(net, trace));
    if (sim_json) {
      json j;
      j["attacked"] = ids_json(attacked);
      j["hardened"] = ids_json(hardened);
      j["failed"] = ids_json(failed);
      j["objective"] = failed.size();
      j["trace"] = trace_json(net, trace);
      std::cout << j.dump(2) << '\n';
    } else {
      std::cout << "failed " << failed.size() << " of " << net.size() << ", fixed point t="
                << trace.fixed_point_step << '\n'
                << "failed: " << join(failed) << '\n';
    }
    return 0;
  }

  if (*hard) {
    auto net = load_network(hard_file);
    auto method = method_from_string(hard_method);
    if (!method) throw ValidationError("unknown method '" + hard_method + "'");
    json j;
    const auto attacked = hard_attack.resolve(net, &j);
    auto r = harden(net, attacked, hard_k, *method, SearchLimits{hard_attack.max_subsets});
    j["attacked"] = ids_json(attacked);
    j["k"] = hard_k;
    j["result"] = to_json(net, r);
    std::cout << j.dump(2) << '\n';
    return 0;
  }

  if (*vul) {
    auto net = load_network(vul_file);
    auto a = vul_greedy ? most_vulnerable_greedy(net, vul_K)
                        : most_vulnerable_exact(net, vul_K, SearchLimits{vul_max});
    std::cout << to_json(a).dump(2) << '\n';
    return 0;
  }

  if (*cls) {
    std::cout << to_string(classify_case(load_network(cls_file))) << '\n';
    return 0;
  }

  if (*lp) {
    auto net = load_network(lp_file);
    auto model = build_model(net, lp_attack.resolve(net), lp_k);
    if (lp_out.empty()) {
      write_lp(model, std::cout);
    } else {
      write_file(lp_out, write_lp(model));
      std::cerr << "wrote " << lp_out << ": " << model.variables.size() << " variables, "
                << model.constraints.size() << " constraints\n";
    }
    return 0;
  }

  if (*chk) {
    auto net = load_network(chk_file);
    auto model = build_model(net, chk_attack.resolve(net), chk_k);
    auto r = read_solution(model, net, read_file(chk_solution));
    std::cout << to_json(r).dump(2) << '\n';
    return 0;
  }

  if (*gen) {
    auto c = case_from_string(gen_case);
    if (!c) throw ValidationError("unknown case '" + gen_case + "'");
    gc.case_class = *c;
    const std::string text = serialize_network(generate(gc));
    if (gen_out.empty()) {
      std::cout << text;
    } else {
      write_file(gen_out, text);
    }
    return 0;
  }

  if (*exp) {
    ec.cases.clear();
    for (const auto& s : split_list(exp_cases)) {
      auto c = case_from_string(s);
      if (!c) throw ValidationError("unknown case '" + s + "'");
      ec.cases.push_back(*c);
    }
    if (ec.cases.empty()) throw ValidationError("--cases is empty");
    ec.sizes = parse_numbers<std::uint32_t>(exp_sizes, "--sizes");
    ec.k_list = parse_numbers<std::size_t>(exp_k, "--k-list");
    if (!exp_seed_list.empty()) {
      ec.seeds = parse_numbers<std::uint64_t>(exp_seed_list, "--seed-list");
    } else {
      ec.seeds.resize(exp_seeds.value_or(1));
      std::iota(ec.seeds.begin(), ec.seeds.end(), std::uint64_t{1});
    }
    if (ec.seeds.empty()) throw ValidationError("no seeds");

    auto report = run_experiment(ec);
    write_file(exp_out, report_csv(report));
    write_file(sibling(exp_out, "plot"), plot_csv(report));
    write_file(sibling(exp_out, "timings"), timings_csv(report));
    std::cout << "rows " << report.rows.size() << ", failed " << report.failed_rows()
              << ", mean gap " << detail::fixed6(report.mean_gap()) << '\n';
    if (report.failed_rows() == report.rows.size()) {
      std::cerr << "error: every row failed";
      if (!report.rows.empty()) std::cerr << " (" << report.rows.front().error << ")";
      std::cerr << '\n';
      return kExitValidation;
    }
    return 0;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const iim::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const iim::BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBudget;
  } catch (const iim::IntegrityError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIntegrity;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitIntegrity;
  }
}
