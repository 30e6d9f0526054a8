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

// JSON views of results, for the CLI and for scripting.

#ifndef IIM_REPORT_HPP
#define IIM_REPORT_HPP

#include <string>
#include <vector>

#include "json.hpp"

#include "iim/cascade.hpp"
#include "iim/hardening.hpp"
#include "iim/ilp.hpp"
#include "iim/vulnerability.hpp"

namespace iim {

inline nlohmann::ordered_json ids_json(const EntitySet& s) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const EntityId& e : s) arr.push_back(e.str());
  return arr;
}

/// Failure step per failed entity; the full matrix is available as CSV.
inline nlohmann::ordered_json trace_json(const InterdependentNetwork& net,
                                         const CascadeTrace& trace) {
  nlohmann::ordered_json j;
  j["fixed_point_step"] = trace.fixed_point_step;
  nlohmann::ordered_json times = nlohmann::ordered_json::object();
  for (const EntityId& e : net.entities()) {
    if (auto t = trace.failure_time(net, e)) times[e.str()] = *t;
  }
  j["failure_times"] = std::move(times);
  return j;
}

inline nlohmann::ordered_json to_json(const InterdependentNetwork& net,
                                      const HardeningResult& r) {
  nlohmann::ordered_json j;
  j["method"] = to_string(r.method);
  j["hardened"] = ids_json(r.hardened);
  j["objective"] = r.objective;
  j["final_failed"] = ids_json(r.final_failed);
  j["trace"] = trace_json(net, r.trace);
  if (!r.warnings.empty()) j["warnings"] = r.warnings;
  return j;
}

inline nlohmann::ordered_json to_json(const AttackAssessment& a) {
  nlohmann::ordered_json j;
  j["attacked"] = ids_json(a.attacked);
  j["objective"] = a.objective;
  j["killed"] = ids_json(a.killed);
  j["unique"] = a.unique;
  return j;
}

inline nlohmann::ordered_json to_json(const SolutionReadout& s) {
  nlohmann::ordered_json j;
  j["hardened"] = ids_json(s.hardened);
  j["objective"] = s.objective;
  if (s.reported_objective) j["reported_objective"] = *s.reported_objective;
  return j;
}

}  // namespace iim

#endif  // IIM_REPORT_HPP
