// Copyright 2026 The pinchcert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pinchcert/report_json.hpp"

#include <cmath>

namespace pinchcert {
namespace {

// JSON has no infinities; keep them visible as strings rather than null.
Json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

}  // namespace

void to_json(Json& j, const CurvaturePoint& p) {
  j = Json::array();
  for (double v : p.values()) j.push_back(v);
}

void to_json(Json& j, const Tolerances& t) {
  j = Json{{"tau", t.tau},
           {"tau_nsd", t.tau_nsd},
           {"delta_grad", t.delta_grad},
           {"eps_umbilic", t.eps_umbilic},
           {"eps_dd", t.eps_dd},
           {"eps_boundary", t.eps_boundary}};
}

Json pieces_json(std::uint8_t failed) {
  Json out = Json::array();
  constexpr std::array<const char*, 5> kNames{"C", "E", "R", "S", "T"};
  for (std::size_t i = 0; i < kNames.size(); ++i)
    if (failed & (1u << i)) out.push_back(kNames[i]);
  return out;
}

void to_json(Json& j, const Violation& v) {
  j = Json{{"index", v.index},
           {"point", v.point},
           {"inner_margin", number(v.inner_margin)},
           {"outer_margin", number(v.outer_margin)},
           {"failed", pieces_json(v.failed)}};
}

void to_json(Json& j, const InclusionReport& r) {
  j = Json{{"inner", r.inner},
           {"outer", r.outer},
           {"sampler", to_string(r.sampler)},
           {r.sampler == SamplerKind::kGrid ? "resolution" : "count", r.parameter},
           {"seed", r.seed},
           {"samples", r.samples},
           {"inner_members", r.inner_members},
           {"indeterminate_count", r.indeterminate_count},
           {"violation_count", r.violation_count},
           {"verified", r.verified()},
           {"worst_margin", r.worst_margin ? number(*r.worst_margin) : Json()},
           {"worst_point", r.worst_point ? Json(*r.worst_point) : Json()},
           {"violations", r.violations}};
}

void to_json(Json& j, const ScanResult& r) {
  j = Json{{"max", number(r.max)},
           {"argmax", r.argmax},
           {"index", r.index},
           {"members", r.members},
           {"samples", r.samples}};
}

void to_json(Json& j, const VanishingReport& r) {
  j = Json{{"velocity", r.velocity},
           {"quantity", r.quantity},
           {"n", r.n},
           {"trials", r.trials},
           {"seed", r.seed},
           {"max_relative", number(r.max_relative)},
           {"worst_point", r.worst_point},
           {"tolerance", r.tolerance},
           {"passed", r.passed},
           {"evidence", "numerical sampling, not a proof"}};
  if (r.within_omission_bound) j["within_omission_bound"] = *r.within_omission_bound;
}

void to_json(Json& j, const PinchingSweepReport& r) {
  j = Json{{"trials", r.trials},
           {"seed", r.seed},
           {"failures", r.failures},
           {"min_relative_slack", number(r.min_relative_slack)},
           {"worst_point", r.worst_point},
           {"passed", r.passed}};
}

void to_json(Json& j, const ThresholdReport& r) {
  j = Json{{"flow", r.flow},
           {"pinch", r.pinch},
           {"raw_max", number(r.raw_max)},
           {"threshold", number(r.threshold)},
           {"rounding", "up at 4 significant digits"},
           {"witness", r.witness},
           {"witness_sampler", to_string(r.witness_sampler)},
           {"grid_resolution", r.grid_resolution},
           {"samples", r.samples},
           {"seed", r.seed}};
}

void to_json(Json& j, const FlowReport& r) {
  j = Json{{"flow", r.flow},
           {"threshold", r.threshold},
           {"threshold_source", r.threshold_source},
           {"derivation", r.derivation ? Json(*r.derivation) : Json()},
           {"chains", r.chains},
           {"vanishing", r.vanishing},
           {"pinching_bound", r.pinching},
           {"vanishing_claimed", r.vanishing_claimed},
           {"verified", r.verified}};
}

}  // namespace pinchcert
