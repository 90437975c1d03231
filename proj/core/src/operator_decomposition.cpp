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

#include <algorithm>
#include <cmath>
#include <limits>

#include "pinchcert/divided_difference.hpp"
#include "pinchcert/errors.hpp"
#include "pinchcert/jet.hpp"

namespace pinchcert {
namespace {

using Mat3 = std::array<std::array<double, 3>, 3>;

void require_three(const CurvaturePoint& p) {
  if (p.size() != 3) {
    throw DomainError("critical-point decomposition is defined for n = 3, got n = " +
                      std::to_string(p.size()));
  }
}

// Jets of F and w at p plus all pairwise divided differences.
struct Ingredients {
  Jet2 f;
  Jet2 w;
  Mat3 dd_f{};
  Mat3 dd_w{};
};

Ingredients gather(const SymmetricFunction& velocity, const SymmetricFunction& w,
                   const CurvaturePoint& p, double eps_dd) {
  require_three(p);
  Ingredients in{velocity.jet(p), w.jet(p)};
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i + 1; j < 3; ++j) {
      in.dd_f[i][j] = in.dd_f[j][i] = divided_difference(velocity, p, in.f, i, j, eps_dd);
      in.dd_w[i][j] = in.dd_w[j][i] = divided_difference(w, p, in.w, i, j, eps_dd);
    }
  }
  return in;
}

ScaledTerm constant_terms_from_jets(const Jet2& f, const Jet2& w, const CurvaturePoint& p) {
  const std::size_t n = p.size();
  double weighted = 0.0;      // sum l_k^2 F_k
  double weighted_abs = 0.0;
  double euler = 0.0;         // sum l_k F_k
  double euler_abs = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    weighted += p[k] * p[k] * f.gradient(k);
    weighted_abs += p[k] * p[k] * std::abs(f.gradient(k));
    euler += p[k] * f.gradient(k);
    euler_abs += p[k] * std::abs(f.gradient(k));
  }
  const double defect = f.value() - euler;
  const double defect_abs = std::abs(f.value()) + euler_abs;
  ScaledTerm out;
  for (std::size_t i = 0; i < n; ++i) {
    const double lw = p[i] * w.gradient(i);
    out.value += lw * (weighted + p[i] * defect);
    out.scale += std::abs(lw) * (weighted_abs + p[i] * defect_abs);
  }
  return out;
}

ScaledTerm e_term_from(const Ingredients& in) {
  // (i, j) pair with k the remaining index.
  constexpr std::array<std::array<std::size_t, 3>, 3> kTriples{{{0, 1, 2}, {0, 2, 1}, {1, 2, 0}}};
  ScaledTerm out;
  for (const auto& [i, j, k] : kTriples) {
    const double gain = in.w.gradient(k) * in.dd_f[i][j];
    const double loss = in.f.gradient(k) * in.dd_w[i][j];
    out.value += 2.0 * (gain - loss);
    out.scale += 2.0 * (std::abs(gain) + std::abs(loss));
  }
  return out;
}

// Unreduced 3x3 form in the variables h_{kk;d}.
Mat3 direction_form(const Ingredients& in, std::size_t d) {
  Mat3 q{};
  const double wd = in.w.gradient(d);
  const double fd = in.f.gradient(d);
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t l = 0; l < 3; ++l) q[k][l] = wd * in.f.hessian(k, l) - fd * in.w.hessian(k, l);
  for (std::size_t k = 0; k < 3; ++k) {
    if (k == d) continue;
    q[k][k] += 2.0 * (in.w.gradient(k) * in.dd_f[d][k] - in.f.gradient(k) * in.dd_w[d][k]);
  }
  return q;
}

double gradient_scale(const Jet2& w, const CurvaturePoint& p) {
  double hess = 0.0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) hess = std::max(hess, std::abs(w.hessian(i, j)));
  const double norm = p.max_norm();
  return std::abs(w.value()) + norm * norm * hess;
}

std::size_t choose_pivot(const Jet2& w, const CurvaturePoint& p, const Tolerances& tol,
                         std::optional<std::size_t> forced) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < 3; ++k)
    if (std::abs(w.gradient(k)) > std::abs(w.gradient(best))) best = k;
  const double threshold = tol.delta_grad * gradient_scale(w, p);
  if (!(p.max_norm() * std::abs(w.gradient(best)) > threshold)) {
    throw GradientTooSmall("grad w vanishes to tolerance; critical hyperplane undefined");
  }
  if (!forced) return best;
  if (*forced >= 3) throw InvalidArgument("pivot index out of range");
  if (!(p.max_norm() * std::abs(w.gradient(*forced)) > threshold)) {
    throw GradientTooSmall("w partial at the requested pivot vanishes");
  }
  return *forced;
}

RestrictedForm restrict_form(const Ingredients& in, std::size_t d, std::size_t pivot) {
  const Mat3 q = direction_form(in, d);
  RestrictedForm out;
  out.direction = d;
  out.pivot = pivot;
  std::size_t t = 0;
  for (std::size_t k = 0; k < 3; ++k)
    if (k != pivot) out.free[t++] = k;
  // Basis vectors of {y : sum_k w_k y_k = 0}: e_f - (w_f / w_p) e_p.
  std::array<std::array<double, 3>, 2> basis{};
  for (std::size_t s = 0; s < 2; ++s) {
    basis[s][out.free[s]] = 1.0;
    basis[s][pivot] = -in.w.gradient(out.free[s]) / in.w.gradient(pivot);
  }
  auto bilinear = [&](const std::array<double, 3>& u, const std::array<double, 3>& v) {
    double acc = 0.0;
    for (std::size_t k = 0; k < 3; ++k)
      for (std::size_t l = 0; l < 3; ++l) acc += u[k] * q[k][l] * v[l];
    return acc;
  };
  out.matrix.m11 = bilinear(basis[0], basis[0]);
  out.matrix.m12 = 0.5 * (bilinear(basis[0], basis[1]) + bilinear(basis[1], basis[0]));
  out.matrix.m22 = bilinear(basis[1], basis[1]);
  return out;
}

// f^{kl,rs} eta_kl eta_rs for eta_kl = h_{kl;i}.
double second_derivative_form(const Jet2& f, const Mat3& dd, const GradientVector& g,
                              std::size_t i) {
  double acc = 0.0;
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t l = 0; l < 3; ++l) acc += f.hessian(k, l) * g.h(k, k, i) * g.h(l, l, i);
  for (std::size_t k = 0; k < 3; ++k) {
    for (std::size_t l = 0; l < 3; ++l) {
      if (k == l) continue;
      const double eta = g.h(k, l, i);
      acc += dd[k][l] * eta * eta;
    }
  }
  return acc;
}

double relative_margin(const ScaledTerm& v) { return v.scale > 0.0 ? -v.value / v.scale : 0.0; }

}  // namespace

double Sym2::max_abs() const { return std::max({std::abs(m11), std::abs(m12), std::abs(m22)}); }

double GradientVector::h(std::size_t i, std::size_t j, std::size_t k) const {
  if (i == j && j == k) return diag[i][i];
  if (i != j && j != k && i != k) return x0;
  // Exactly two indices agree: h_{rr;s} with r repeated.
  const std::size_t r = (i == j || i == k) ? i : j;
  const std::size_t s = i + j + k - 2 * r;
  return diag[s][r];
}

void GradientVector::project_critical(std::span<const double> grad_w,
                                      const std::array<std::size_t, 3>& pivots) {
  if (grad_w.size() != 3) throw InvalidArgument("gradient must have three entries");
  for (std::size_t i = 0; i < 3; ++i) {
    const std::size_t p = pivots[i];
    if (grad_w[p] == 0.0) throw GradientTooSmall("cannot project with a zero pivot partial");
    double acc = 0.0;
    for (std::size_t k = 0; k < 3; ++k)
      if (k != p) acc += grad_w[k] * diag[i][k];
    diag[i][p] = -acc / grad_w[p];
  }
}

double OperatorDecomposition::reduced_lw(const GradientVector& g) const {
  double total = c_term + e_term * g.x0 * g.x0;
  for (const auto& form : forms) {
    const auto& row = g.diag[form.direction];
    total += form.matrix.quadratic(row[form.free[0]], row[form.free[1]]);
  }
  return total;
}

std::array<std::size_t, 3> OperatorDecomposition::pivots() const {
  return {forms[0].pivot, forms[1].pivot, forms[2].pivot};
}

std::string CertificateResult::describe() const {
  if (verdict == CertificateVerdict::kIndeterminate) return "gradient";
  std::string out;
  constexpr std::array<std::pair<CertificatePiece, const char*>, 5> kNames{
      {{kPieceC, "C"}, {kPieceE, "E"}, {kPieceR, "R"}, {kPieceS, "S"}, {kPieceT, "T"}}};
  for (const auto& [bit, name] : kNames) {
    if (failed & bit) {
      if (!out.empty()) out += ",";
      out += name;
    }
  }
  return out;
}

ScaledTerm constant_terms_scaled(const SymmetricFunction& velocity, const SymmetricFunction& w,
                                 const CurvaturePoint& p) {
  return constant_terms_from_jets(velocity.jet(p), w.jet(p), p);
}

double constant_terms(const SymmetricFunction& velocity, const SymmetricFunction& w,
                      const CurvaturePoint& p) {
  return constant_terms_scaled(velocity, w, p).value;
}

double e_term(const SymmetricFunction& velocity, const SymmetricFunction& w,
              const CurvaturePoint& p, double eps_dd) {
  return e_term_from(gather(velocity, w, p, eps_dd)).value;
}

RestrictedForm restricted_form(const SymmetricFunction& velocity, const SymmetricFunction& w,
                               const CurvaturePoint& p, std::size_t direction,
                               const Tolerances& tol, std::optional<std::size_t> pivot) {
  if (direction >= 3) throw InvalidArgument("direction must be 0, 1 or 2");
  const Ingredients in = gather(velocity, w, p, tol.eps_dd);
  return restrict_form(in, direction, choose_pivot(in.w, p, tol, pivot));
}

OperatorDecomposition decompose(const SymmetricFunction& velocity, const SymmetricFunction& w,
                                const CurvaturePoint& p, const Tolerances& tol) {
  const Ingredients in = gather(velocity, w, p, tol.eps_dd);
  const std::size_t pivot = choose_pivot(in.w, p, tol, std::nullopt);
  OperatorDecomposition out;
  const ScaledTerm c = constant_terms_from_jets(in.f, in.w, p);
  const ScaledTerm e = e_term_from(in);
  out.c_term = c.value;
  out.c_scale = c.scale;
  out.e_term = e.value;
  out.e_scale = e.scale;
  for (std::size_t d = 0; d < 3; ++d) out.forms[d] = restrict_form(in, d, pivot);
  return out;
}

NsdVerdict nsd_check(const Sym2& m, double tau_nsd) {
  NsdVerdict out;
  out.trace = m.trace();
  out.det = m.det();
  const double norm = m.max_abs();
  if (norm == 0.0) return out;
  out.is_nsd = out.trace <= tau_nsd * norm && out.det >= -tau_nsd * norm * norm;
  out.margin = std::min(-out.trace / norm, out.det / (norm * norm));
  return out;
}

double full_lw(const SymmetricFunction& velocity, const SymmetricFunction& w,
               const CurvaturePoint& p, const GradientVector& g, double eps_dd) {
  const Ingredients in = gather(velocity, w, p, eps_dd);
  double total = constant_terms_from_jets(in.f, in.w, p).value;
  for (std::size_t i = 0; i < 3; ++i) {
    total += in.w.gradient(i) * second_derivative_form(in.f, in.dd_f, g, i);
    total -= in.f.gradient(i) * second_derivative_form(in.w, in.dd_w, g, i);
  }
  return total;
}

CertificateResult lw_nonpositive(const SymmetricFunction& velocity, const SymmetricFunction& w,
                                 const CurvaturePoint& p, const Tolerances& tol) {
  CertificateResult out;
  const Ingredients in = gather(velocity, w, p, tol.eps_dd);
  std::size_t pivot = 0;
  try {
    pivot = choose_pivot(in.w, p, tol, std::nullopt);
  } catch (const GradientTooSmall&) {
    return out;
  }
  const ScaledTerm c = constant_terms_from_jets(in.f, in.w, p);
  const ScaledTerm e = e_term_from(in);
  out.c_margin = relative_margin(c);
  out.e_margin = relative_margin(e);
  if (c.value > tol.tau * c.scale) out.failed |= kPieceC;
  if (e.value > tol.tau * e.scale) out.failed |= kPieceE;
  out.worst_margin = std::min(out.c_margin, out.e_margin);
  for (std::size_t d = 0; d < 3; ++d) {
    const NsdVerdict v = nsd_check(restrict_form(in, d, pivot).matrix, tol.tau_nsd);
    out.nsd_margins[d] = v.margin;
    out.worst_margin = std::min(out.worst_margin, v.margin);
    if (!v.is_nsd) out.failed |= static_cast<std::uint8_t>(kPieceR << d);
  }
  out.verdict = out.failed == 0 ? CertificateVerdict::kNonpositive : CertificateVerdict::kNotCertified;
  return out;
}

}  // namespace pinchcert
