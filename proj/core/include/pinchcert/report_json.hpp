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

#pragma once

#include <nlohmann/json.hpp>

#include "pinchcert/flow.hpp"
#include "pinchcert/region.hpp"
#include "pinchcert/tolerances.hpp"

// JSON encodings of the report types. Field order is fixed, so equal reports
// serialize to identical bytes.
namespace pinchcert {

using Json = nlohmann::ordered_json;

void to_json(Json& j, const CurvaturePoint& p);
void to_json(Json& j, const Tolerances& t);
void to_json(Json& j, const Violation& v);
void to_json(Json& j, const InclusionReport& r);
void to_json(Json& j, const ScanResult& r);
void to_json(Json& j, const VanishingReport& r);
void to_json(Json& j, const PinchingSweepReport& r);
void to_json(Json& j, const ThresholdReport& r);
void to_json(Json& j, const FlowReport& r);

/// Failed certificate pieces as a list of "C", "E", "R", "S", "T".
Json pieces_json(std::uint8_t failed);

}  // namespace pinchcert
