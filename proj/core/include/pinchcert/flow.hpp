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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pinchcert/curvature_point.hpp"
#include "pinchcert/region.hpp"
#include "pinchcert/symmetric_function.hpp"
#include "pinchcert/tolerances.hpp"

namespace pinchcert {

/// Velocity, test quantities and pinching data of one contracting flow.
struct FlowPreset {
  std::string name;
  SymmetricFunction velocity;
  SymmetricFunction phi;
  SymmetricFunction psi;
  double pinch = 2.0;
  /// Sublevel threshold for phi when it is known in closed form; derived otherwise.
  std::optional<double> threshold;
  /// psi is a vanishing function for velocity (C_psi == 0 identically).
  bool psi_vanishing = true;
};

/// "H3", "A2" or "K"; throws InvalidArgument otherwise.
FlowPreset flow_preset(std::string_view name);
std::vector<std::string> flow_names();

/// Pair-sum quantity sum_{(i,j) in pairs} (l_i - l_j)^2 / (l_i l_j)^2 F^2.
struct VanishingSumSpec {
  std::size_t n = 3;
  std::vector<IndexPair> pairs;
  SymmetricFunction velocity;

  /// All n(n-1)/2 pairs, 0-based.
  static std::vector<IndexPair> all_pairs(std::size_t n);

  std::size_t omitted() const { return n * (n - 1) / 2 - pairs.size(); }
  /// At most n - 1 pairs left out.
  bool within_omission_bound() const { return omitted() + 1 <= n; }
  SymmetricFunction function() const;
};

inline constexpr double kVanishingTolerance = 1e-8;

struct VanishingReport {
  std::string velocity;
  std::string quantity;
  std::size_t n = 3;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  /// max |C_v| / (sum of absolute term magnitudes of C_v).
  double max_relative = 0.0;
  std::vector<double> worst_point;
  double tolerance = kVanishingTolerance;
  std::optional<bool> within_omission_bound;
  bool passed = false;
};

/// Evaluates C_v at `trials` log-uniform points in [0.1, 10]^n.
VanishingReport check_vanishing(const VanishingSumSpec& spec, std::uint64_t trials,
                                std::uint64_t seed);
/// Same check for an arbitrary quantity v.
VanishingReport check_vanishing_function(const SymmetricFunction& velocity,
                                         const SymmetricFunction& v, std::size_t n,
                                         std::uint64_t trials, std::uint64_t seed);

struct PinchingBound {
  double ratio = 1.0;
  double bound = 1.0;
  /// bound - ratio.
  double slack = 0.0;
  bool holds = true;
};

/// Checks 1 <= l_max / l_min <= 1 + C l_max / F at p.
/// Throws PreconditionFailed when psi(p) > C^2.
PinchingBound pinching_bound_check(const SymmetricFunction& velocity, const SymmetricFunction& psi,
                                   const CurvaturePoint& p, double c);

struct PinchingSweepReport {
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::uint64_t failures = 0;
  /// Smallest slack relative to the bound.
  double min_relative_slack = 0.0;
  std::vector<double> worst_point;
  bool passed = false;
};

/// pinching_bound_check with C = sqrt(psi(p)) at log-uniform points in [0.1, 10]^n.
PinchingSweepReport pinching_bound_sweep(const SymmetricFunction& velocity,
                                         const SymmetricFunction& psi, std::size_t n,
                                         std::uint64_t trials, std::uint64_t seed);

struct ThresholdConfig {
  std::uint64_t grid_resolution = 1000;
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 1;
  unsigned workers = 1;
};

struct ThresholdReport {
  std::string flow;
  double pinch = 0.0;
  /// Largest phi over sampled cone members.
  double raw_max = 0.0;
  /// raw_max rounded up at the 4th significant digit.
  double threshold = 0.0;
  CurvaturePoint witness;
  SamplerKind witness_sampler = SamplerKind::kGrid;
  std::uint64_t grid_resolution = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

/// Smallest value >= x with `digits` significant digits.
double round_up_significant(double x, int digits);

/// Threshold h for phi: maximum of phi over the pinched cone, from a grid scan
/// and a Monte-Carlo scan, rounded up at the 4th significant digit.
ThresholdReport derive_threshold(const FlowPreset& preset, const ThresholdConfig& config,
                                 const Tolerances& tol = {});

struct FlowConfig {
  std::uint64_t samples = 1'000'000;
  /// Adds grid-sampled chains when set.
  std::optional<std::uint64_t> grid;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  /// Overrides the preset or derived threshold.
  std::optional<double> threshold;
  Tolerances tolerances;
  std::uint64_t vanishing_trials = 100'000;
  std::uint64_t pinching_trials = 100'000;
  /// Used only when the threshold must be derived.
  std::uint64_t derive_grid = 1000;
};

struct FlowReport {
  std::string flow;
  double threshold = 0.0;
  /// "preset", "override" or "derived".
  std::string threshold_source;
  std::optional<ThresholdReport> derivation;
  /// cone in S_h, S_h in cert(phi), S_h in cert(psi); per sampler.
  std::vector<InclusionReport> chains;
  VanishingReport vanishing;
  /// The vanishing and pinching checks only count towards the verdict when
  /// the preset claims psi is a vanishing function.
  bool vanishing_claimed = true;
  PinchingSweepReport pinching;
  bool verified = false;
};

FlowReport verify_flow(const FlowPreset& preset, const FlowConfig& config);

}  // namespace pinchcert
