// Copyright 2026 The wva Authors
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

// JSON forms of the domain types. Readers throw InvalidArgument on missing
// keys, wrong types or out-of-range values.

#pragma once

#include <string>

#include <json.hpp>

#include "wva/core.hpp"
#include "wva/correlations.hpp"
#include "wva/meter.hpp"
#include "wva/multiqubit.hpp"
#include "wva/oracle.hpp"
#include "wva/states.hpp"
#include "wva/weakvalue.hpp"

namespace wva {

using Json = nlohmann::ordered_json;

namespace detail {

inline double json_number(const Json& j, const char* key) {
  detail::require(j.is_object(), "expected a JSON object");
  const auto it = j.find(key);
  detail::require(it != j.end(), std::string("missing key '") + key + "'");
  detail::require(it->is_number(), std::string("key '") + key + "' must be a number");
  return it->get<double>();
}

inline Json nullable(const std::optional<double>& v) {
  if (v) return *v;
  return nullptr;
}

}  // namespace detail

inline Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed JSON: ") + e.what());
  }
}

// --- states ----------------------------------------------------------------

inline Json to_json(const BellDiagonalState& s) { return {{"c1", s.c1}, {"c2", s.c2}, {"c3", s.c3}}; }

inline BellDiagonalState bd_state_from_json(const Json& j) {
  BellDiagonalState s{detail::json_number(j, "c1"), detail::json_number(j, "c2"),
                      detail::json_number(j, "c3")};
  require_valid(s);
  return s;
}

inline Json to_json(const PostSelection& p) { return {{"theta", p.theta()}, {"phi", p.phi()}}; }

inline PostSelection postselection_from_json(const Json& j) {
  return PostSelection(detail::json_number(j, "theta"), detail::json_number(j, "phi"));
}

// --- meter -----------------------------------------------------------------

inline Json to_json(const MeterProfile& m) { return {{"p0", m.p0}, {"sigma", m.sigma}}; }

/// {"p0": .., "sigma": ..} or {"p0": .., "r": ..}; p0 defaults to 0.
inline MeterProfile meter_from_json(const Json& j) {
  detail::require(j.is_object(), "meter spec must be a JSON object");
  const bool has_sigma = j.contains("sigma");
  const bool has_r = j.contains("r");
  detail::require(!(has_sigma && has_r), "meter spec takes sigma or r, not both");
  const double p0 = j.contains("p0") ? detail::json_number(j, "p0") : 0.0;
  if (has_r) return MeterProfile::make(p0, sigma_from_squeeze({detail::json_number(j, "r")}));
  if (has_sigma) return MeterProfile::make(p0, detail::json_number(j, "sigma"));
  return MeterProfile::make(p0, MeterProfile{}.sigma);
}

// --- reports ---------------------------------------------------------------

inline Json to_json(const WeakValueReport& r) {
  Json j;
  j["weak_value"] = detail::nullable(r.weak_value);
  j["mean_p"] = detail::nullable(r.mean_p);
  j["probability"] = r.probability;
  j["amplified"] = r.amplified;
  j["divergent"] = r.divergent();
  j["verdict"] = std::string(to_string(r.verdict));
  j["denominator"] = r.denominator;
  return j;
}

inline Json to_json(const CorrelationReport& c) {
  Json j;
  j["concurrence"] = c.concurrence;
  j["eof"] = c.eof;
  j["mutual_information"] = c.mutual_information;
  j["classical_correlation"] = c.classical_correlation;
  j["quantum_discord"] = c.quantum_discord;
  j["units"] = "bits";
  return j;
}

inline Json to_json(const OracleResult& r) {
  Json j;
  j["mean_p"] = r.verdict == Verdict::finite ? Json(r.mean_p) : Json(nullptr);
  j["numerator"] = r.numerator;
  j["denominator"] = r.denominator;
  j["imag_residue"] = r.imag_residue;
  j["converged"] = r.converged;
  j["convergence_delta"] = r.convergence_delta;
  j["verdict"] = std::string(to_string(r.verdict));
  return j;
}

// --- three-qubit scenarios -------------------------------------------------

inline Json to_json(const ThreeQubitScenario& sc) {
  Json j;
  j["initial"] = sc.initial.tag == ThreeQubitTag::ghz ? "GHZ" : (sc.initial.tag == ThreeQubitTag::w ? "W" : "custom");
  j["ps_a"] = to_json(sc.target);
  Json controls = Json::array();
  for (const auto& c : sc.controls) {
    if (c.traced) {
      controls.push_back({{"action", "trace"}});
    } else {
      controls.push_back(
          {{"action", "project"}, {"theta", c.selection.theta()}, {"phi", c.selection.phi()}});
    }
  }
  j["controls"] = std::move(controls);
  return j;
}

inline ThreeQubitScenario scenario_from_json(const Json& j) {
  detail::require(j.is_object(), "scenario must be a JSON object");
  detail::require(j.contains("initial") && j["initial"].is_string(),
                  "scenario needs \"initial\": \"GHZ\" or \"W\"");
  const auto initial = j["initial"].get<std::string>();
  ThreeQubitScenario sc;
  if (initial == "GHZ") {
    sc.initial = ghz_state();
  } else if (initial == "W") {
    sc.initial = w_state();
  } else {
    throw InvalidArgument("unknown initial state '" + initial + "'");
  }
  detail::require(j.contains("ps_a"), "scenario needs ps_a");
  sc.target = postselection_from_json(j["ps_a"]);
  detail::require(j.contains("controls") && j["controls"].is_array() && j["controls"].size() == 2,
                  "scenario needs exactly two controls");
  for (std::size_t k = 0; k < 2; ++k) {
    const auto& c = j["controls"][k];
    detail::require(c.is_object() && c.contains("action") && c["action"].is_string(),
                    "control needs an action");
    const auto action = c["action"].get<std::string>();
    if (action == "trace") {
      sc.controls[k] = ControlAction::trace();
    } else if (action == "project") {
      sc.controls[k] = ControlAction::project(postselection_from_json(c));
    } else {
      throw InvalidArgument("unknown control action '" + action + "'");
    }
  }
  return sc;
}

}  // namespace wva
