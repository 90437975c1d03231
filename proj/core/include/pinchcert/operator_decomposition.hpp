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

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "pinchcert/curvature_point.hpp"
#include "pinchcert/symmetric_function.hpp"
#include "pinchcert/tolerances.hpp"

namespace pinchcert {

/// Symmetric 2x2 matrix [[m11, m12], [m12, m22]].
struct Sym2 {
  double m11 = 0.0;
  double m12 = 0.0;
  double m22 = 0.0;

  double trace() const { return m11 + m22; }
  double det() const { return m11 * m22 - m12 * m12; }
  double max_abs() const;
  /// x^T M x.
  double quadratic(double x1, double x2) const { return m11 * x1 * x1 + 2.0 * m12 * x1 * x2 + m22 * x2 * x2; }
};

/// Second-fundamental-form derivatives h_{ij;k} at a point in normal
/// coordinates (n = 3). By Codazzi the tensor is fully symmetric, leaving ten
/// independent entries: h_{12;3} and the nine h_{kk;i}.
///
/// Indices are 0-based: diag[i][k] holds h_{(k+1)(k+1);(i+1)}, so the
/// x1 = (h_{22;1}, h_{33;1}) block is {diag[0][1], diag[0][2]}.
struct GradientVector {
  double x0 = 0.0;
  std::array<std::array<double, 3>, 3> diag{};

  /// Fully symmetric tensor entry h_{ij;k}, 0-based.
  double h(std::size_t i, std::size_t j, std::size_t k) const;

  /// Solves w_1 h_{11;i} + w_2 h_{22;i} + w_3 h_{33;i} = 0 for the entry
  /// diag[i][pivot[i]] in each direction i, leaving the others untouched.
  void project_critical(std::span<const double> grad_w, const std::array<std::size_t, 3>& pivots);
};

/// One of the three hyperplane-restricted quadratic forms (M^R, M^S, M^T).
struct RestrictedForm {
  Sym2 matrix;
  std::size_t direction = 0;
  /// Entry h_{pp;direction} eliminated through the critical-point identity.
  std::size_t pivot = 0;
  /// Remaining variables h_{kk;direction}, in increasing k; the basis of `matrix`.
  std::array<std::size_t, 2> free{};
};

/// Critical-point decomposition
///   Lw = C_w + E_w x0^2 + x1^T M^R x1 + x2^T M^S x2 + x3^T M^T x3.
struct OperatorDecomposition {
  double c_term = 0.0;
  /// Sum of absolute term magnitudes of C_w; the scale of its roundoff.
  double c_scale = 0.0;
  double e_term = 0.0;
  double e_scale = 0.0;
  std::array<RestrictedForm, 3> forms{};

  /// Reduced sum for a gradient that satisfies the critical-point identities
  /// with this decomposition's pivots.
  double reduced_lw(const GradientVector& g) const;
  std::array<std::size_t, 3> pivots() const;
};

struct NsdVerdict {
  bool is_nsd = true;
  double trace = 0.0;
  double det = 0.0;
  /// min(-trace / |M|, det / |M|^2); non-negative exactly when M is NSD.
  double margin = 0.0;
};

enum class CertificateVerdict { kNonpositive, kNotCertified, kIndeterminate };

/// Bit flags naming the pieces that failed a certificate.
enum CertificatePiece : std::uint8_t {
  kPieceC = 1u << 0,
  kPieceE = 1u << 1,
  kPieceR = 1u << 2,
  kPieceS = 1u << 3,
  kPieceT = 1u << 4,
};

struct CertificateResult {
  CertificateVerdict verdict = CertificateVerdict::kIndeterminate;
  std::uint8_t failed = 0;
  double c_margin = 0.0;
  double e_margin = 0.0;
  std::array<double, 3> nsd_margins{};
  /// Minimum over the five margins; 0 for indeterminate points.
  double worst_margin = 0.0;

  /// "C,E,R" style list of failing pieces, or "gradient" for indeterminate points.
  std::string describe() const;
};

/// A computed quantity with the sum of the absolute values of its terms,
/// which bounds its floating-point cancellation error.
struct ScaledTerm {
  double value = 0.0;
  double scale = 0.0;
};

/// C_w = sum_i l_i w_i (sum_k l_k^2 F_k + l_i (F - sum_k l_k F_k)), any n.
ScaledTerm constant_terms_scaled(const SymmetricFunction& velocity, const SymmetricFunction& w,
                                 const CurvaturePoint& p);

/// Value of constant_terms_scaled.
double constant_terms(const SymmetricFunction& velocity, const SymmetricFunction& w,
                      const CurvaturePoint& p);

/// E_w, twice the sum of the three pair brackets (n = 3).
double e_term(const SymmetricFunction& velocity, const SymmetricFunction& w,
              const CurvaturePoint& p, double eps_dd = Tolerances{}.eps_dd);

/// Gradient quadratic form of `direction` (0, 1, 2 for R, S, T) restricted to
/// the critical-point hyperplane. The pivot defaults to the largest |w_k|.
/// Throws GradientTooSmall when grad w is degenerate or the forced pivot has w_p = 0.
RestrictedForm restricted_form(const SymmetricFunction& velocity, const SymmetricFunction& w,
                               const CurvaturePoint& p, std::size_t direction,
                               const Tolerances& tol = {},
                               std::optional<std::size_t> pivot = std::nullopt);

/// Full decomposition; same pivot rule and errors as restricted_form.
OperatorDecomposition decompose(const SymmetricFunction& velocity, const SymmetricFunction& w,
                                const CurvaturePoint& p, const Tolerances& tol = {});

NsdVerdict nsd_check(const Sym2& m, double tau_nsd = Tolerances{}.tau_nsd);

/// Unreduced Lw from the tensor form of the operator, with every h_{ij;k} free.
double full_lw(const SymmetricFunction& velocity, const SymmetricFunction& w,
               const CurvaturePoint& p, const GradientVector& g,
               double eps_dd = Tolerances{}.eps_dd);

/// Sufficient test for Lw <= 0 at a critical point of w. A kNotCertified
/// verdict only means the certificate fails, not that Lw > 0.
CertificateResult lw_nonpositive(const SymmetricFunction& velocity, const SymmetricFunction& w,
                                 const CurvaturePoint& p, const Tolerances& tol = {});

}  // namespace pinchcert
