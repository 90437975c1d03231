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

#include "pinchcert/flow.hpp"

#include <array>
#include <cmath>
#include <random>

#include "pinchcert/errors.hpp"
#include "pinchcert/operator_decomposition.hpp"

namespace pinchcert {
namespace {

// Log-uniform coordinates in [0.1, 10]^n.
CurvaturePoint log_uniform_point(std::mt19937_64& rng, std::size_t n) {
  std::array<double, kMaxDim> coords{};
  for (std::size_t i = 0; i < n; ++i) {
    const double u = static_cast<double>(rng() >> 11) * 0x1p-53;
    coords[i] = 0.1 * std::pow(100.0, u);
  }
  return CurvaturePoint(std::span<const double>(coords.data(), n));
}

std::vector<double> to_vector(const CurvaturePoint& p) {
  return {p.values().begin(), p.values().end()};
}

}  // namespace

FlowPreset flow_preset(std::string_view name) {
  using SF = SymmetricFunction;
  if (name == "H3") {
    return {"H3", SF::mean_curvature_power(3.0), SF::phi_h3(), SF::psi_h3(), 2.0, 0.125, true};
  }
  if (name == "A2") {
    return {"A2", SF::norm_squared(), SF::phi_a2(), SF::psi_a2(), 3.0, std::nullopt, false};
  }
  if (name == "K") {
    return {"K", SF::gauss_curvature(), SF::phi_k(), SF::psi_k(), 2.0, std::nullopt, true};
  }
  throw InvalidArgument("unknown flow '" + std::string(name) + "' (expected H3, A2 or K)");
}

std::vector<std::string> flow_names() { return {"H3", "A2", "K"}; }

std::vector<IndexPair> VanishingSumSpec::all_pairs(std::size_t n) {
  std::vector<IndexPair> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  return pairs;
}

SymmetricFunction VanishingSumSpec::function() const {
  return SymmetricFunction::vanishing_sum(n, pairs, velocity);
}

VanishingReport check_vanishing(const VanishingSumSpec& spec, std::uint64_t trials,
                                std::uint64_t seed) {
  VanishingReport report =
      check_vanishing_function(spec.velocity, spec.function(), spec.n, trials, seed);
  report.within_omission_bound = spec.within_omission_bound();
  return report;
}

VanishingReport check_vanishing_function(const SymmetricFunction& velocity,
                                         const SymmetricFunction& v, std::size_t n,
                                         std::uint64_t trials, std::uint64_t seed) {
  VanishingReport report;
  report.velocity = velocity.name();
  report.quantity = v.name();
  report.n = n;
  report.trials = trials;
  report.seed = seed;
  std::mt19937_64 rng(seed);
  for (std::uint64_t t = 0; t < trials; ++t) {
    const CurvaturePoint p = log_uniform_point(rng, n);
    const ScaledTerm c = constant_terms_scaled(velocity, v, p);
    const double rel = c.scale > 0.0 ? std::abs(c.value) / c.scale : std::abs(c.value);
    if (t == 0 || rel > report.max_relative) {
      report.max_relative = rel;
      report.worst_point = to_vector(p);
    }
  }
  report.passed = report.max_relative < report.tolerance;
  return report;
}

PinchingBound pinching_bound_check(const SymmetricFunction& velocity, const SymmetricFunction& psi,
                                   const CurvaturePoint& p, double c) {
  const double value = psi.value(p);
  if (!(c >= 0.0) || value > c * c * (1.0 + 1e-12)) {
    throw PreconditionFailed("pinching bound needs psi(p) <= C^2");
  }
  PinchingBound out;
  out.ratio = p.max() / p.min();
  out.bound = 1.0 + c * p.max() / velocity.value(p);
  out.slack = out.bound - out.ratio;
  out.holds = out.ratio >= 1.0 && out.ratio <= out.bound * (1.0 + 1e-12);
  return out;
}

PinchingSweepReport pinching_bound_sweep(const SymmetricFunction& velocity,
                                         const SymmetricFunction& psi, std::size_t n,
                                         std::uint64_t trials, std::uint64_t seed) {
  PinchingSweepReport report;
  report.trials = trials;
  report.seed = seed;
  std::mt19937_64 rng(seed);
  for (std::uint64_t t = 0; t < trials; ++t) {
    const CurvaturePoint p = log_uniform_point(rng, n);
    const PinchingBound b = pinching_bound_check(velocity, psi, p, std::sqrt(psi.value(p)));
    if (!b.holds) ++report.failures;
    const double rel = b.slack / b.bound;
    if (t == 0 || rel < report.min_relative_slack) {
      report.min_relative_slack = rel;
      report.worst_point = to_vector(p);
    }
  }
  report.passed = report.failures == 0;
  return report;
}

double round_up_significant(double x, int digits) {
  if (!(x > 0.0) || !std::isfinite(x)) throw InvalidArgument("can only round positive values");
  const int exponent = static_cast<int>(std::floor(std::log10(x)));
  const int shift = digits - 1 - exponent;
  // Dividing by an exact power of ten rounds correctly; multiplying by 1e-4 does not.
  auto at = [shift](double k) {
    return shift >= 0 ? k / std::pow(10.0, shift) : k * std::pow(10.0, -shift);
  };
  double k = std::ceil(shift >= 0 ? x * std::pow(10.0, shift) : x / std::pow(10.0, -shift));
  while (at(k - 1.0) >= x) k -= 1.0;
  while (at(k) < x) k += 1.0;
  return at(k);
}

ThresholdReport derive_threshold(const FlowPreset& preset, const ThresholdConfig& config,
                                 const Tolerances& tol) {
  const RegionSpec cone = RegionSpec::pinched_cone(preset.pinch);
  const ScanResult grid = scan_max(
      preset.phi, cone, {SamplerKind::kGrid, config.grid_resolution, config.seed, config.workers},
      tol);
  const ScanResult mc = scan_max(
      preset.phi, cone, {SamplerKind::kMonteCarlo, config.samples, config.seed, config.workers},
      tol);
  const bool use_mc = mc.max > grid.max;
  const ScanResult& best = use_mc ? mc : grid;
  return ThresholdReport{preset.name,
                         preset.pinch,
                         best.max,
                         round_up_significant(best.max, 4),
                         best.argmax,
                         use_mc ? SamplerKind::kMonteCarlo : SamplerKind::kGrid,
                         config.grid_resolution,
                         config.samples,
                         config.seed};
}

FlowReport verify_flow(const FlowPreset& preset, const FlowConfig& config) {
  FlowReport report;
  report.flow = preset.name;
  if (config.threshold) {
    report.threshold = *config.threshold;
    report.threshold_source = "override";
  } else if (preset.threshold) {
    report.threshold = *preset.threshold;
    report.threshold_source = "preset";
  } else {
    report.derivation = derive_threshold(
        preset, {config.derive_grid, config.samples, config.seed, config.workers},
        config.tolerances);
    report.threshold = report.derivation->threshold;
    report.threshold_source = "derived";
  }

  const RegionSpec cone = RegionSpec::pinched_cone(preset.pinch);
  const RegionSpec sublevel = RegionSpec::sublevel(preset.phi, report.threshold);
  const RegionSpec cert_phi = RegionSpec::certificate(preset.velocity, preset.phi);
  const RegionSpec cert_psi = RegionSpec::certificate(preset.velocity, preset.psi);

  std::vector<SamplerConfig> samplers{
      {SamplerKind::kMonteCarlo, config.samples, config.seed, config.workers}};
  if (config.grid) samplers.push_back({SamplerKind::kGrid, *config.grid, config.seed, config.workers});
  for (const auto& sampler : samplers) {
    report.chains.push_back(verify_inclusion(cone, sublevel, sampler, config.tolerances));
    report.chains.push_back(verify_inclusion(sublevel, cert_phi, sampler, config.tolerances));
    report.chains.push_back(verify_inclusion(sublevel, cert_psi, sampler, config.tolerances));
  }

  const std::size_t n = 3;
  report.vanishing = check_vanishing_function(preset.velocity, preset.psi, n,
                                              config.vanishing_trials, config.seed);
  report.pinching = pinching_bound_sweep(preset.velocity, preset.psi, n, config.pinching_trials,
                                         config.seed);
  report.vanishing_claimed = preset.psi_vanishing;

  bool ok = true;
  for (const auto& chain : report.chains) ok = ok && chain.verified();
  if (report.vanishing_claimed) ok = ok && report.vanishing.passed && report.pinching.passed;
  report.verified = ok;
  return report;
}

}  // namespace pinchcert
