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

#include "pinchcert/operator_decomposition.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "pinchcert/errors.hpp"
#include "pinchcert/flow.hpp"
#include "closed_forms.hpp"
#include "test_support.hpp"

namespace pinchcert {
namespace {

using testing::random_point;
using testing::rel_err;

using testing::Partials;

struct Pairing {
  std::string label;
  SymmetricFunction velocity;
  SymmetricFunction quantity;
};

std::vector<Pairing> flow_pairings() {
  std::vector<Pairing> out;
  for (const auto& name : flow_names()) {
    const FlowPreset preset = flow_preset(name);
    out.push_back({name + "/phi", preset.velocity, preset.phi});
    out.push_back({name + "/psi", preset.velocity, preset.psi});
  }
  return out;
}

GradientVector random_gradient(std::mt19937_64& rng) {
  std::normal_distribution<double> n01;
  GradientVector g;
  g.x0 = n01(rng);
  for (auto& row : g.diag)
    for (auto& v : row) v = n01(rng);
  return g;
}

TEST(ConstantTerms, Examples) {
  const auto h3 = SymmetricFunction::mean_curvature_power(3.0);
  EXPECT_NEAR(constant_terms(h3, SymmetricFunction::psi_h3(), {1.0, 2.0, 3.0}), 0.0, 1e-6);
  EXPECT_EQ(constant_terms(h3, SymmetricFunction::phi_h3(), {1.0, 1.0, 1.0}), 0.0);
  EXPECT_DOUBLE_EQ(constant_terms(h3, SymmetricFunction::mean_curvature(), {1.0, 1.0, 1.0}), 81.0);
}

TEST(ConstantTerms, MatchesDirectTranscription) {
  std::mt19937_64 rng(21);
  for (const auto& pr : flow_pairings()) {
    for (int t = 0; t < 1000; ++t) {
      const CurvaturePoint p = random_point(rng);
      const ScaledTerm c = constant_terms_scaled(pr.velocity, pr.quantity, p);
      EXPECT_LE(std::abs(c.value - Partials(pr.velocity, pr.quantity, p).c_term()),
                1e-12 * c.scale)
          << pr.label;
    }
  }
}

TEST(ConstantTerms, DegreeZeroIdentity) {
  // For degree-0 w and degree-s F: C = (1 - s) F sum l_i^2 w_i.
  const auto f = SymmetricFunction::mean_curvature_power(3.0);
  const auto w = SymmetricFunction::phi_h3();
  std::mt19937_64 rng(22);
  for (int t = 0; t < 1000; ++t) {
    const CurvaturePoint p = random_point(rng);
    const Jet2 wj = w.jet(p);
    double s = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
      s += p[i] * p[i] * wj.gradient(i);
      scale += std::abs(p[i] * p[i] * wj.gradient(i));
    }
    const double expected = -2.0 * f.value(p) * s;
    const ScaledTerm c = constant_terms_scaled(f, w, p);
    EXPECT_LE(std::abs(c.value - expected), 1e-9 * std::max(c.scale, 2.0 * f.value(p) * scale));
  }
}

TEST(ConstantTerms, GeneralDimension) {
  // Both sides of the vanishing identity in n = 4 and n = 5.
  const auto h = SymmetricFunction::mean_curvature();
  for (std::size_t n : {4u, 5u}) {
    const auto v = SymmetricFunction::vanishing_sum(n, VanishingSumSpec::all_pairs(n), h);
    std::mt19937_64 rng(23);
    for (int t = 0; t < 100; ++t) {
      const CurvaturePoint p = random_point(rng, n);
      const ScaledTerm c = constant_terms_scaled(h, v, p);
      EXPECT_LE(std::abs(c.value), 1e-12 * c.scale);
    }
  }
}

TEST(ETerm, VanishesWhenQuantityIsVelocity) {
  std::mt19937_64 rng(24);
  for (const auto& [name, f] : testing::builtins3()) {
    for (int t = 0; t < 50; ++t) {
      EXPECT_EQ(e_term(f, f, random_point(rng)), 0.0) << name;
    }
  }
}

TEST(ETerm, MatchesDirectTranscription) {
  EXPECT_LT(rel_err(e_term(SymmetricFunction::mean_curvature_power(3.0), SymmetricFunction::phi_h3(),
                           {1.0, 2.0, 3.0}),
                    Partials(SymmetricFunction::mean_curvature_power(3.0),
                             SymmetricFunction::phi_h3(), {1.0, 2.0, 3.0})
                        .e_term()),
            1e-12);
  std::mt19937_64 rng(25);
  for (const auto& pr : flow_pairings()) {
    for (int t = 0; t < 1000; ++t) {
      const CurvaturePoint p = random_point(rng);
      const Partials d(pr.velocity, pr.quantity, p);
      const double scale = std::abs(d.F * d.w) / (p.max() * p.max()) + std::abs(d.e_term());
      EXPECT_LE(std::abs(e_term(pr.velocity, pr.quantity, p) - d.e_term()), 1e-9 * scale)
          << pr.label;
    }
  }
}

TEST(ETerm, LimitBranchIsContinuous) {
  const auto f = SymmetricFunction::gauss_curvature();
  const auto w = SymmetricFunction::phi_k();
  const double at_limit = e_term(f, w, {2.0, 2.0, 3.0});
  const double nearby = e_term(f, w, {2.0, 2.0 + 1e-6, 3.0});
  EXPECT_TRUE(std::isfinite(at_limit));
  EXPECT_LT(rel_err(at_limit, nearby), 1e-5);
}

TEST(RestrictedForm, MatchesClosedFormsWithFixedPivot) {
  std::mt19937_64 rng(26);
  std::vector<CurvaturePoint> points{{1.2, 1.0, 0.9}};
  for (int t = 0; t < 1000; ++t) points.push_back(random_point(rng));
  for (const auto& pr : flow_pairings()) {
    for (const auto& p : points) {
      const Partials d(pr.velocity, pr.quantity, p);
      const std::array<Sym2, 3> expected{d.m_r(), d.m_s(), d.m_t()};
      for (std::size_t dir = 0; dir < 3; ++dir) {
        const RestrictedForm form =
            restricted_form(pr.velocity, pr.quantity, p, dir, Tolerances{}, dir);
        const Sym2& e = expected[dir];
        const double scale = std::max({e.max_abs(), form.matrix.max_abs()});
        EXPECT_LE(std::abs(form.matrix.m11 - e.m11), 1e-9 * scale) << pr.label << " dir " << dir;
        EXPECT_LE(std::abs(form.matrix.m12 - e.m12), 1e-9 * scale) << pr.label << " dir " << dir;
        EXPECT_LE(std::abs(form.matrix.m22 - e.m22), 1e-9 * scale) << pr.label << " dir " << dir;
      }
    }
  }
}

TEST(FullLw, MatchesUnreducedTranscription) {
  std::mt19937_64 rng(27);
  for (const auto& pr : flow_pairings()) {
    for (int t = 0; t < 300; ++t) {
      const CurvaturePoint p = random_point(rng);
      const GradientVector g = random_gradient(rng);
      const Partials d(pr.velocity, pr.quantity, p);
      const auto& h = g.diag;
      const double terms[] = {d.c_term(), d.e_term() * g.x0 * g.x0,
                              d.r_form(h[0][0], h[0][1], h[0][2]),
                              d.s_form(h[1][0], h[1][1], h[1][2]),
                              d.t_form(h[2][0], h[2][1], h[2][2])};
      double expected = 0.0, scale = 0.0;
      for (double v : terms) {
        expected += v;
        scale += std::abs(v);
      }
      EXPECT_LE(std::abs(full_lw(pr.velocity, pr.quantity, p, g) - expected), 1e-9 * scale)
          << pr.label;
    }
  }
}

TEST(FullLw, TrivialGradients) {
  const auto f = SymmetricFunction::mean_curvature_power(3.0);
  const auto w = SymmetricFunction::psi_h3();
  const CurvaturePoint p{1.0, 2.0, 3.0};
  const double c = constant_terms(f, w, p);
  EXPECT_EQ(full_lw(f, w, p, GradientVector{}), c);
  GradientVector g;
  g.x0 = 1.0;
  EXPECT_LT(rel_err(full_lw(f, w, p, g), c + e_term(f, w, p)), 1e-12);
}

TEST(Decomposition, ReconstructsFullOperator) {
  std::mt19937_64 rng(28);
  for (const auto& pr : flow_pairings()) {
    int checked = 0;
    for (int t = 0; t < 1000; ++t) {
      const CurvaturePoint p = random_point(rng);
      OperatorDecomposition dec;
      try {
        dec = decompose(pr.velocity, pr.quantity, p);
      } catch (const GradientTooSmall&) {
        continue;
      }
      GradientVector g = random_gradient(rng);
      const Jet2 wj = pr.quantity.jet(p);
      g.project_critical(wj.gradient(), dec.pivots());
      const double full = full_lw(pr.velocity, pr.quantity, p, g);
      const double reduced = dec.reduced_lw(g);
      double scale = dec.c_scale + std::abs(dec.e_term) * g.x0 * g.x0;
      for (const auto& form : dec.forms) {
        const double x1 = g.diag[form.direction][form.free[0]];
        const double x2 = g.diag[form.direction][form.free[1]];
        scale += form.matrix.max_abs() * (x1 * x1 + x2 * x2) * 2.0;
      }
      EXPECT_LE(std::abs(full - reduced), 1e-9 * scale) << pr.label;
      ++checked;
    }
    EXPECT_GT(checked, 990) << pr.label;
  }
}

TEST(Decomposition, ReconstructsAtSpecPoint) {
  const auto f = SymmetricFunction::mean_curvature_power(3.0);
  const auto w = SymmetricFunction::psi_h3();
  const CurvaturePoint p{1.0, 2.0, 3.0};
  const OperatorDecomposition dec = decompose(f, w, p);
  std::mt19937_64 rng(29);
  for (int t = 0; t < 1000; ++t) {
    GradientVector g = random_gradient(rng);
    g.project_critical(w.jet(p).gradient(), dec.pivots());
    const double full = full_lw(f, w, p, g);
    EXPECT_LT(rel_err(dec.reduced_lw(g), full, dec.c_scale + std::abs(full)), 1e-9);
  }
}

TEST(RestrictedForm, VerdictIsPivotInvariant) {
  std::mt19937_64 rng(30);
  for (const auto& pr : flow_pairings()) {
    for (int t = 0; t < 1000; ++t) {
      const CurvaturePoint p = random_point(rng);
      const Jet2 wj = pr.quantity.jet(p);
      double wmax = 0.0;
      for (std::size_t k = 0; k < 3; ++k) wmax = std::max(wmax, std::abs(wj.gradient(k)));
      for (std::size_t dir = 0; dir < 3; ++dir) {
        std::optional<bool> verdict;
        for (std::size_t pivot = 0; pivot < 3; ++pivot) {
          if (std::abs(wj.gradient(pivot)) < 1e-3 * wmax) continue;
          const RestrictedForm form =
              restricted_form(pr.velocity, pr.quantity, p, dir, Tolerances{}, pivot);
          const NsdVerdict v = nsd_check(form.matrix);
          if (std::abs(v.margin) < 1e-6) continue;  // too close to call either way
          if (!verdict) verdict = v.is_nsd;
          EXPECT_EQ(*verdict, v.is_nsd) << pr.label << " dir " << dir << " pivot " << pivot;
        }
      }
    }
  }
}

TEST(RestrictedForm, PermutationEquivariance) {
  std::mt19937_64 rng(31);
  const auto& perms = testing::permutations3();
  for (const auto& pr : flow_pairings()) {
    for (int t = 0; t < 200; ++t) {
      const CurvaturePoint p = random_point(rng);
      const OperatorDecomposition base = decompose(pr.velocity, pr.quantity, p);
      for (const auto& perm : perms) {
        const OperatorDecomposition moved = decompose(pr.velocity, pr.quantity, p.permuted(perm));
        EXPECT_LE(std::abs(moved.c_term - base.c_term), 1e-12 * base.c_scale);
        for (std::size_t dir = 0; dir < 3; ++dir) {
          const Sym2& m = moved.forms[dir].matrix;
          const Sym2& b = base.forms[perm[dir]].matrix;
          const double scale = std::max(m.max_abs(), b.max_abs());
          EXPECT_LE(std::abs(m.trace() - b.trace()), 1e-9 * scale) << pr.label;
          EXPECT_LE(std::abs(m.det() - b.det()), 1e-9 * scale * scale) << pr.label;
        }
      }
    }
  }
}

TEST(RestrictedForm, DegenerateGradientThrows) {
  const auto f = SymmetricFunction::mean_curvature_power(3.0);
  EXPECT_THROW(restricted_form(f, SymmetricFunction::phi_h3(), {1.0, 1.0, 1.0}, 0), GradientTooSmall);
}

TEST(NsdCheck, Examples) {
  const NsdVerdict a = nsd_check({-1.0, 0.0, -1.0});
  EXPECT_TRUE(a.is_nsd);
  EXPECT_DOUBLE_EQ(a.trace, -2.0);
  EXPECT_DOUBLE_EQ(a.det, 1.0);
  const NsdVerdict b = nsd_check({0.0, 1.0, 0.0});
  EXPECT_FALSE(b.is_nsd);
  EXPECT_DOUBLE_EQ(b.det, -1.0);
  EXPECT_LT(b.margin, 0.0);
  const NsdVerdict c = nsd_check({-2.0, 1.0, -1.0});
  EXPECT_TRUE(c.is_nsd);
  EXPECT_DOUBLE_EQ(c.trace, -3.0);
  EXPECT_DOUBLE_EQ(c.det, 1.0);
  EXPECT_TRUE(nsd_check({0.0, 0.0, 0.0}).is_nsd);
  EXPECT_FALSE(nsd_check({1.0, 0.0, 0.0}).is_nsd);
  EXPECT_TRUE(nsd_check({-1.0, 0.0, 0.0}).is_nsd);
}

TEST(NsdCheck, AgreesWithEigenvalues) {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 10000; ++t) {
    const Sym2 m{u(rng), u(rng), u(rng)};
    const double mid = 0.5 * m.trace();
    const double rad = std::hypot(0.5 * (m.m11 - m.m22), m.m12);
    const double top = mid + rad;
    if (std::abs(top) < 1e-6) continue;
    EXPECT_EQ(nsd_check(m).is_nsd, top <= 0.0);
  }
}

TEST(LwNonpositive, Examples) {
  const auto f = SymmetricFunction::mean_curvature_power(3.0);
  EXPECT_EQ(lw_nonpositive(f, SymmetricFunction::phi_h3(), {1.1, 1.0, 0.95}).verdict,
            CertificateVerdict::kNonpositive);
  EXPECT_EQ(lw_nonpositive(f, SymmetricFunction::psi_h3(), {1.1, 1.0, 0.95}).verdict,
            CertificateVerdict::kNonpositive);
  const CertificateResult umbilic = lw_nonpositive(f, SymmetricFunction::psi_h3(), {1.0, 1.0, 1.0});
  EXPECT_EQ(umbilic.verdict, CertificateVerdict::kIndeterminate);
  EXPECT_EQ(umbilic.describe(), "gradient");
}

TEST(LwNonpositive, FarOutsideTheConeOnSymmetrySlice) {
  // On the slice b = c the psi certificate still holds far outside the cone;
  // only the phi certificate fails there.
  const auto f = SymmetricFunction::mean_curvature_power(3.0);
  const CertificateResult psi = lw_nonpositive(f, SymmetricFunction::psi_h3(), {10.0, 1.0, 1.0});
  EXPECT_EQ(psi.verdict, CertificateVerdict::kNonpositive);
  const CertificateResult phi = lw_nonpositive(f, SymmetricFunction::phi_h3(), {10.0, 1.0, 1.0});
  EXPECT_EQ(phi.verdict, CertificateVerdict::kNotCertified);
  EXPECT_EQ(phi.describe(), "R");
}

TEST(LwNonpositive, NotCertifiedAwayFromSlices) {
  const CertificateResult r = lw_nonpositive(SymmetricFunction::mean_curvature_power(3.0),
                                             SymmetricFunction::psi_h3(), {0.37, 0.49, 0.14});
  EXPECT_EQ(r.verdict, CertificateVerdict::kNotCertified);
  EXPECT_NE(r.failed, 0);
  EXPECT_LT(r.worst_margin, 0.0);
}

TEST(LwNonpositive, RejectsOtherDimensions) {
  const auto h = SymmetricFunction::mean_curvature();
  EXPECT_THROW(decompose(h, SymmetricFunction::vanishing_sum(4, VanishingSumSpec::all_pairs(4), h),
                         {1.0, 2.0, 3.0, 4.0}),
               DomainError);
}

}  // namespace
}  // namespace pinchcert
