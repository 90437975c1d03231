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

#include "pinchcert/region.hpp"

#include <charconv>
#include <cmath>

#include "pinchcert/errors.hpp"

namespace pinchcert {
namespace {

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

struct InclusionAccumulator {
  std::uint64_t samples = 0;
  std::uint64_t inner_members = 0;
  std::uint64_t indeterminate = 0;
  std::uint64_t violations = 0;
  std::vector<Violation> listed;
  std::optional<double> worst_margin;
  std::optional<CurvaturePoint> worst_point;
};

struct ScanAccumulator {
  std::uint64_t samples = 0;
  std::uint64_t members = 0;
  std::optional<double> max;
  std::optional<CurvaturePoint> argmax;
  std::uint64_t index = 0;
};

}  // namespace

std::string to_string(Membership m) {
  switch (m) {
    case Membership::kIn:
      return "1";
    case Membership::kOut:
      return "0";
    case Membership::kIndeterminate:
      return "indeterminate";
  }
  return "?";
}

RegionSpec RegionSpec::pinched_cone(double pinch) {
  if (!(pinch >= 1.0) || !std::isfinite(pinch)) throw InvalidArgument("pinch must be >= 1");
  return RegionSpec(PinchedCone{pinch});
}

RegionSpec RegionSpec::sublevel(SymmetricFunction quantity, double threshold) {
  if (!(threshold > 0.0) || !std::isfinite(threshold)) {
    throw InvalidArgument("sublevel threshold must be positive");
  }
  const std::size_t n = quantity.required_dim().value_or(3);
  if (quantity.degree(n) != 0.0) {
    throw InvalidArgument("sublevel quantity " + quantity.name() + " must have degree 0");
  }
  return RegionSpec(Sublevel{std::move(quantity), threshold});
}

RegionSpec RegionSpec::certificate(SymmetricFunction velocity, SymmetricFunction quantity) {
  return RegionSpec(CertificateRegion{std::move(velocity), std::move(quantity)});
}

std::string RegionSpec::name() const {
  return std::visit(
      Overloaded{
          [](const PinchedCone& c) { return "cone(" + format_number(c.pinch) + ")"; },
          [](const Sublevel& s) {
            return "sublevel(" + s.quantity.name() + "<=" + format_number(s.threshold) + ")";
          },
          [](const CertificateRegion& c) {
            return "cert(" + c.velocity.name() + "," + c.quantity.name() + ")";
          },
      },
      kind_);
}

RegionEvaluation evaluate_region(const RegionSpec& region, const CurvaturePoint& p,
                                 const Tolerances& tol) {
  return std::visit(
      Overloaded{
          [&](const PinchedCone& c) {
            const double ratio = p.max() / p.min();
            RegionEvaluation out;
            out.margin = (c.pinch - ratio) / c.pinch;
            out.membership = ratio <= c.pinch * (1.0 + tol.eps_boundary) ? Membership::kIn
                                                                          : Membership::kOut;
            return out;
          },
          [&](const Sublevel& s) {
            const double q = s.quantity.value(p);
            RegionEvaluation out;
            if (q <= tol.eps_umbilic) {
              out.membership = Membership::kIndeterminate;
              return out;
            }
            out.margin = (s.threshold - q) / s.threshold;
            out.membership = q <= s.threshold * (1.0 + tol.eps_boundary) ? Membership::kIn
                                                                          : Membership::kOut;
            return out;
          },
          [&](const CertificateRegion& c) {
            const CertificateResult cert = lw_nonpositive(c.velocity, c.quantity, p, tol);
            RegionEvaluation out;
            out.margin = cert.worst_margin;
            out.failed = cert.failed;
            switch (cert.verdict) {
              case CertificateVerdict::kNonpositive:
                out.membership = Membership::kIn;
                break;
              case CertificateVerdict::kNotCertified:
                out.membership = Membership::kOut;
                break;
              case CertificateVerdict::kIndeterminate:
                out.membership = Membership::kIndeterminate;
                break;
            }
            return out;
          },
      },
      region.kind());
}

RegionClassification classify(const CurvaturePoint& p, std::span<const RegionSpec> regions,
                              const Tolerances& tol) {
  RegionClassification out{p, {}, {}};
  out.memberships.reserve(regions.size());
  out.margins.reserve(regions.size());
  for (const auto& region : regions) {
    const RegionEvaluation e = evaluate_region(region, p, tol);
    out.memberships.push_back(e.membership);
    out.margins.push_back(e.margin);
  }
  return out;
}

InclusionReport verify_inclusion(const RegionSpec& inner, const RegionSpec& outer,
                                 const SamplerConfig& sampler, const Tolerances& tol) {
  const SampleStream stream(sampler);
  auto blocks = map_blocks<InclusionAccumulator>(
      stream, sampler.workers,
      [&](std::uint64_t first, std::span<const CurvaturePoint> points, InclusionAccumulator& acc) {
        for (std::size_t k = 0; k < points.size(); ++k) {
          const CurvaturePoint& p = points[k];
          ++acc.samples;
          const RegionEvaluation in = evaluate_region(inner, p, tol);
          if (in.membership == Membership::kOut) continue;
          if (in.membership == Membership::kIndeterminate) {
            ++acc.indeterminate;
            continue;
          }
          ++acc.inner_members;
          const RegionEvaluation out = evaluate_region(outer, p, tol);
          if (out.membership == Membership::kIndeterminate) {
            ++acc.indeterminate;
            continue;
          }
          if (!acc.worst_margin || out.margin < *acc.worst_margin) {
            acc.worst_margin = out.margin;
            acc.worst_point = p;
          }
          if (out.membership == Membership::kOut) {
            ++acc.violations;
            if (acc.listed.size() < kMaxListedViolations) {
              acc.listed.push_back({first + k, p, in.margin, out.margin, out.failed});
            }
          }
        }
      });

  InclusionReport report;
  report.inner = inner.name();
  report.outer = outer.name();
  report.sampler = sampler.kind;
  report.parameter = sampler.count;
  report.seed = sampler.seed;
  for (auto& acc : blocks) {
    report.samples += acc.samples;
    report.inner_members += acc.inner_members;
    report.indeterminate_count += acc.indeterminate;
    report.violation_count += acc.violations;
    for (auto& v : acc.listed) {
      if (report.violations.size() >= kMaxListedViolations) break;
      report.violations.push_back(std::move(v));
    }
    if (acc.worst_margin && (!report.worst_margin || *acc.worst_margin < *report.worst_margin)) {
      report.worst_margin = acc.worst_margin;
      report.worst_point = acc.worst_point;
    }
  }
  return report;
}

ScanResult scan_max(const SymmetricFunction& quantity, const RegionSpec& region,
                    const SamplerConfig& sampler, const Tolerances& tol) {
  const SampleStream stream(sampler);
  auto blocks = map_blocks<ScanAccumulator>(
      stream, sampler.workers,
      [&](std::uint64_t first, std::span<const CurvaturePoint> points, ScanAccumulator& acc) {
        for (std::size_t k = 0; k < points.size(); ++k) {
          ++acc.samples;
          if (evaluate_region(region, points[k], tol).membership != Membership::kIn) continue;
          ++acc.members;
          const double v = quantity.value(points[k]);
          if (!acc.max || v > *acc.max) {
            acc.max = v;
            acc.argmax = points[k];
            acc.index = first + k;
          }
        }
      });

  ScanAccumulator total;
  for (auto& acc : blocks) {
    total.samples += acc.samples;
    total.members += acc.members;
    if (acc.max && (!total.max || *acc.max > *total.max)) {
      total.max = acc.max;
      total.argmax = acc.argmax;
      total.index = acc.index;
    }
  }
  if (!total.max) {
    throw EmptyRegion("no sampled point lies in " + region.name());
  }
  return ScanResult{*total.max, *total.argmax, total.index, total.members, total.samples};
}

}  // namespace pinchcert
