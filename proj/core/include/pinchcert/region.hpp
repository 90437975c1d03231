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
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "pinchcert/curvature_point.hpp"
#include "pinchcert/operator_decomposition.hpp"
#include "pinchcert/sampling.hpp"
#include "pinchcert/symmetric_function.hpp"
#include "pinchcert/tolerances.hpp"

namespace pinchcert {

/// {l : l_i / l_j <= pinch for all i, j}.
struct PinchedCone {
  double pinch = 2.0;
};

/// {l : 0 < q(l) <= threshold}, q homogeneous of degree 0.
struct Sublevel {
  SymmetricFunction quantity;
  double threshold = 0.0;
};

/// {l : the critical-point certificate for Lw <= 0 holds}.
struct CertificateRegion {
  SymmetricFunction velocity;
  SymmetricFunction quantity;
};

class RegionSpec {
 public:
  using Kind = std::variant<PinchedCone, Sublevel, CertificateRegion>;

  /// Throws InvalidArgument unless pinch >= 1.
  static RegionSpec pinched_cone(double pinch);
  /// Throws InvalidArgument unless threshold > 0 and q has degree 0.
  static RegionSpec sublevel(SymmetricFunction quantity, double threshold);
  static RegionSpec certificate(SymmetricFunction velocity, SymmetricFunction quantity);

  const Kind& kind() const { return kind_; }
  /// Stable label used in reports, e.g. "cone(2)", "sublevel(phi_H3<=0.125)", "cert(H3,phi_H3)".
  std::string name() const;

 private:
  explicit RegionSpec(Kind kind) : kind_(std::move(kind)) {}
  Kind kind_;
};

enum class Membership { kOut, kIn, kIndeterminate };

std::string to_string(Membership m);

struct RegionEvaluation {
  Membership membership = Membership::kOut;
  /// Relative distance to the region boundary, positive inside; 0 when indeterminate.
  double margin = 0.0;
  /// Failed certificate pieces; only set for certificate regions.
  std::uint8_t failed = 0;
};

RegionEvaluation evaluate_region(const RegionSpec& region, const CurvaturePoint& p,
                                 const Tolerances& tol = {});

struct RegionClassification {
  CurvaturePoint point;
  std::vector<Membership> memberships;
  std::vector<double> margins;
};

RegionClassification classify(const CurvaturePoint& p, std::span<const RegionSpec> regions,
                              const Tolerances& tol = {});

struct Violation {
  std::uint64_t index = 0;
  CurvaturePoint point;
  double inner_margin = 0.0;
  double outer_margin = 0.0;
  /// Failed certificate pieces of the outer region, if it is a certificate.
  std::uint8_t failed = 0;
};

/// Listed violations are capped; violation_count is always exact.
inline constexpr std::size_t kMaxListedViolations = 100;

struct InclusionReport {
  std::string inner;
  std::string outer;
  SamplerKind sampler = SamplerKind::kMonteCarlo;
  /// Sample count or grid resolution, as configured.
  std::uint64_t parameter = 0;
  std::uint64_t seed = 0;
  std::uint64_t samples = 0;
  std::uint64_t inner_members = 0;
  std::uint64_t indeterminate_count = 0;
  std::uint64_t violation_count = 0;
  std::vector<Violation> violations;
  /// Smallest outer margin among inner members; empty when there are none.
  std::optional<double> worst_margin;
  std::optional<CurvaturePoint> worst_point;

  bool verified() const { return violation_count == 0; }
};

/// Samples the simplex and records every point inside `inner` but outside
/// `outer`. Points indeterminate for either region are counted, never flagged.
InclusionReport verify_inclusion(const RegionSpec& inner, const RegionSpec& outer,
                                 const SamplerConfig& sampler, const Tolerances& tol = {});

struct ScanResult {
  double max = 0.0;
  CurvaturePoint argmax;
  std::uint64_t index = 0;
  std::uint64_t members = 0;
  std::uint64_t samples = 0;
};

/// Empirical maximum of q over sampled members of `region`. Ties keep the
/// earliest sample. Throws EmptyRegion when no sample is a member.
ScanResult scan_max(const SymmetricFunction& quantity, const RegionSpec& region,
                    const SamplerConfig& sampler, const Tolerances& tol = {});

}  // namespace pinchcert
