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

#include <gtest/gtest.h>

#include <random>

#include "pinchcert/errors.hpp"
#include "pinchcert/flow.hpp"
#include "test_support.hpp"

namespace pinchcert {
namespace {

using testing::random_point;

const SymmetricFunction& h3() {
  static const SymmetricFunction f = SymmetricFunction::mean_curvature_power(3.0);
  return f;
}

std::vector<RegionSpec> h3_regions() {
  return {RegionSpec::pinched_cone(2.0), RegionSpec::sublevel(SymmetricFunction::phi_h3(), 0.125),
          RegionSpec::certificate(h3(), SymmetricFunction::phi_h3()),
          RegionSpec::certificate(h3(), SymmetricFunction::psi_h3())};
}

TEST(RegionSpec, Validation) {
  EXPECT_THROW(RegionSpec::pinched_cone(0.5), InvalidArgument);
  EXPECT_THROW(RegionSpec::sublevel(SymmetricFunction::phi_h3(), 0.0), InvalidArgument);
  EXPECT_THROW(RegionSpec::sublevel(SymmetricFunction::psi_h3(), 1.0), InvalidArgument);
  EXPECT_EQ(RegionSpec::pinched_cone(2.0).name(), "cone(2)");
  EXPECT_EQ(RegionSpec::sublevel(SymmetricFunction::phi_h3(), 0.125).name(),
            "sublevel(phi_H3<=0.125)");
  EXPECT_EQ(RegionSpec::certificate(h3(), SymmetricFunction::phi_h3()).name(), "cert(H3,phi_H3)");
}

TEST(Classify, Umbilic) {
  const auto regions = h3_regions();
  const auto cls = classify(CurvaturePoint{1.0, 1.0, 1.0}.projected(), regions);
  EXPECT_EQ(cls.memberships[0], Membership::kIn);
  EXPECT_EQ(cls.memberships[1], Membership::kIndeterminate);
  EXPECT_EQ(cls.memberships[2], Membership::kIndeterminate);
  EXPECT_EQ(cls.memberships[3], Membership::kIndeterminate);
}

TEST(Classify, BoundaryPointIsInside) {
  const auto regions = h3_regions();
  const CurvaturePoint p{0.5, 0.25, 0.25};
  EXPECT_EQ(SymmetricFunction::phi_h3().value(p), 0.125);
  const auto cls = classify(p, regions);
  EXPECT_EQ(cls.memberships[0], Membership::kIn);
  EXPECT_EQ(cls.memberships[1], Membership::kIn);
  EXPECT_EQ(cls.margins[0], 0.0);
  EXPECT_EQ(cls.margins[1], 0.0);
}

TEST(Classify, SublevelIsLargerThanCone) {
  const auto regions = h3_regions();
  const auto cls = classify(CurvaturePoint{4.3, 2.3, 2.1}.projected(), regions);
  EXPECT_EQ(cls.memberships[0], Membership::kOut);
  EXPECT_EQ(cls.memberships[1], Membership::kIn);
  EXPECT_NEAR(SymmetricFunction::phi_h3().value({4.3, 2.3, 2.1}), 0.1173, 1e-4);
}

TEST(Classify, FarPointIsOutside) {
  const auto regions = h3_regions();
  EXPECT_DOUBLE_EQ(SymmetricFunction::phi_h3().value({5.0, 1.0, 1.0}), 32.0 / 49.0);
  const auto cls = classify(CurvaturePoint{5.0, 1.0, 1.0}.projected(), regions);
  EXPECT_EQ(cls.memberships[0], Membership::kOut);
  EXPECT_EQ(cls.memberships[1], Membership::kOut);
  EXPECT_LT(cls.margins[1], 0.0);
}

TEST(Classify, MarginsAgreeWithMemberships) {
  std::mt19937_64 rng(41);
  const auto regions = h3_regions();
  for (int t = 0; t < 2000; ++t) {
    const auto cls = classify(random_point(rng, 3, 0.5, 2.0), regions);
    for (std::size_t r = 0; r < regions.size(); ++r) {
      if (cls.memberships[r] == Membership::kOut) {
        EXPECT_LT(cls.margins[r], 0.0);
      } else if (cls.memberships[r] == Membership::kIn) {
        EXPECT_GE(cls.margins[r], -1e-9);
      }
    }
  }
}

std::vector<RegionSpec> all_flow_regions() {
  std::vector<RegionSpec> out;
  for (const auto& name : flow_names()) {
    const FlowPreset pr = flow_preset(name);
    out.push_back(RegionSpec::pinched_cone(pr.pinch));
    out.push_back(RegionSpec::sublevel(pr.phi, pr.threshold.value_or(name == "K" ? 0.3334 : 59.89)));
    out.push_back(RegionSpec::certificate(pr.velocity, pr.phi));
    out.push_back(RegionSpec::certificate(pr.velocity, pr.psi));
  }
  return out;
}

// Compares memberships away from the boundary, where rounding cannot flip them.
void expect_same(const RegionClassification& a, const RegionClassification& b) {
  for (std::size_t r = 0; r < a.memberships.size(); ++r) {
    if (std::abs(a.margins[r]) < 1e-9 || std::abs(b.margins[r]) < 1e-9) continue;
    EXPECT_EQ(a.memberships[r], b.memberships[r]) << "region " << r;
  }
}

TEST(Classify, ScaleInvariance) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> s(0.1, 10.0);
  const auto regions = all_flow_regions();
  for (int t = 0; t < 1000; ++t) {
    const CurvaturePoint p = random_point(rng, 3, 0.3, 3.0);
    expect_same(classify(p, regions), classify(p.scaled(s(rng)), regions));
  }
}

TEST(Classify, PermutationInvariance) {
  std::mt19937_64 rng(43);
  const auto regions = all_flow_regions();
  for (int t = 0; t < 300; ++t) {
    const CurvaturePoint p = random_point(rng, 3, 0.3, 3.0);
    const auto base = classify(p, regions);
    for (const auto& perm : testing::permutations3()) expect_same(base, classify(p.permuted(perm), regions));
  }
}

TEST(VerifyInclusion, Reflexive) {
  const auto s = RegionSpec::sublevel(SymmetricFunction::phi_h3(), 0.125);
  const auto r = verify_inclusion(s, s, {SamplerKind::kMonteCarlo, 20000, 3, 2});
  EXPECT_TRUE(r.verified());
  EXPECT_EQ(r.violation_count, 0u);
}

TEST(VerifyInclusion, SublevelsAreNested) {
  const auto small = RegionSpec::sublevel(SymmetricFunction::phi_h3(), 0.1);
  const auto large = RegionSpec::sublevel(SymmetricFunction::phi_h3(), 0.2);
  EXPECT_TRUE(verify_inclusion(small, large, {SamplerKind::kMonteCarlo, 50000, 3, 1}).verified());
  const auto reverse = verify_inclusion(large, small, {SamplerKind::kMonteCarlo, 50000, 3, 1});
  EXPECT_FALSE(reverse.verified());
  EXPECT_LE(reverse.violations.size(), kMaxListedViolations);
  EXPECT_GT(reverse.violation_count, reverse.violations.size());
}

TEST(VerifyInclusion, ConeInSublevel) {
  const auto r = verify_inclusion(RegionSpec::pinched_cone(2.0),
                                  RegionSpec::sublevel(SymmetricFunction::phi_h3(), 0.125),
                                  {SamplerKind::kMonteCarlo, 200000, 1, 4});
  EXPECT_TRUE(r.verified());
  EXPECT_GT(r.inner_members, 0u);
  ASSERT_TRUE(r.worst_margin.has_value());
  EXPECT_GE(*r.worst_margin, 0.0);
}

TEST(VerifyInclusion, ReproducibleAcrossWorkers) {
  const auto inner = RegionSpec::sublevel(SymmetricFunction::phi_h3(), 0.2);
  const auto outer = RegionSpec::certificate(h3(), SymmetricFunction::psi_h3());
  const auto a = verify_inclusion(inner, outer, {SamplerKind::kMonteCarlo, 30000, 8, 1});
  const auto b = verify_inclusion(inner, outer, {SamplerKind::kMonteCarlo, 30000, 8, 5});
  EXPECT_EQ(a.violation_count, b.violation_count);
  EXPECT_EQ(a.inner_members, b.inner_members);
  ASSERT_EQ(a.violations.size(), b.violations.size());
  for (std::size_t i = 0; i < a.violations.size(); ++i) {
    EXPECT_EQ(a.violations[i].index, b.violations[i].index);
    EXPECT_EQ(a.violations[i].point, b.violations[i].point);
  }
  EXPECT_EQ(a.worst_margin, b.worst_margin);
  EXPECT_EQ(a.worst_point, b.worst_point);
}

TEST(ScanMax, ConeMaximumOfPhiH3) {
  const auto r = scan_max(SymmetricFunction::phi_h3(), RegionSpec::pinched_cone(2.0),
                          {SamplerKind::kMonteCarlo, 1'000'000, 1, 4});
  EXPECT_NEAR(r.max, 0.125, 1e-3);
  EXPECT_LE(r.max, 0.125 + 1e-15);
  // Near a permutation of (0.5, 0.25, 0.25).
  double best = 1.0;
  for (const auto& perm : testing::permutations3()) {
    const CurvaturePoint q = CurvaturePoint{0.5, 0.25, 0.25}.permuted(perm);
    best = std::min(best, std::max({std::abs(q.a() - r.argmax.a()), std::abs(q.b() - r.argmax.b()),
                                    std::abs(q.c() - r.argmax.c())}));
  }
  EXPECT_LT(best, 1e-2);
}

TEST(ScanMax, UmbilicOnly) {
  const auto r = scan_max(SymmetricFunction::phi_h3(), RegionSpec::pinched_cone(2.0),
                          {SamplerKind::kGrid, 3, 1, 1});
  EXPECT_EQ(r.max, 0.0);
  EXPECT_EQ(r.samples, 1u);
}

TEST(ScanMax, ConeMaximumOfPhiK) {
  const auto r = scan_max(SymmetricFunction::phi_k(), RegionSpec::pinched_cone(2.0),
                          {SamplerKind::kMonteCarlo, 1'000'000, 1, 4});
  // The maximum sits on a corner of the cone, which Monte-Carlo approaches slowly.
  EXPECT_NEAR(r.max, 1.0 / 3.0, 2e-3);
  EXPECT_LE(r.max, 1.0 / 3.0 + 1e-15);
  const auto g = scan_max(SymmetricFunction::phi_k(), RegionSpec::pinched_cone(2.0),
                          {SamplerKind::kGrid, 1000, 1, 4});
  EXPECT_NEAR(g.max, 1.0 / 3.0, 1e-15);
}

TEST(ScanMax, EmptyRegionThrows) {
  EXPECT_THROW(scan_max(SymmetricFunction::phi_h3(),
                        RegionSpec::sublevel(SymmetricFunction::phi_h3(), 1e-12),
                        {SamplerKind::kGrid, 4, 1, 1}),
               EmptyRegion);
}

}  // namespace
}  // namespace pinchcert
