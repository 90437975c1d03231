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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>

#include "pinchcert/report_json.hpp"
#include "pinchcert/tolerances.hpp"

namespace pinchcert::cli {

/// Exit codes of every subcommand.
inline constexpr int kExitVerified = 0;
inline constexpr int kExitViolations = 1;
inline constexpr int kExitConfigError = 2;

enum class OutputFormat { kJson, kCsv };

/// Everything that determines a run's result. Serialized into every report,
/// except for the output path and worker count, which cannot change results.
struct RunConfig {
  std::string command;
  std::string flow;
  std::uint64_t samples = 1'000'000;
  std::optional<std::uint64_t> grid;
  std::uint64_t seed = 1;
  std::optional<double> threshold;
  Tolerances tolerances;
  OutputFormat format = OutputFormat::kJson;
  std::string out;
  unsigned workers = 1;
  bool timing = false;
};

Json config_json(const RunConfig& config);

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_export(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_derive_h(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv-style arguments (without the program name) and dispatches.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace pinchcert::cli
