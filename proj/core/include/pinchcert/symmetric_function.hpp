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
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pinchcert/curvature_point.hpp"
#include "pinchcert/jet.hpp"

namespace pinchcert {

/// Homogeneity degree as an affine function of the dimension n.
///
/// Most quantities have a fixed degree; K = prod(lambda) has degree n.
struct Degree {
  double constant = 0.0;
  double per_dim = 0.0;

  double at(std::size_t n) const { return constant + per_dim * static_cast<double>(n); }
  bool same_as(const Degree& other) const;
};

/// Index pair (i, j), i < j, of a (lambda_i - lambda_j)^2 / (lambda_i lambda_j)^2 term.
using IndexPair = std::pair<std::size_t, std::size_t>;

/// Homogeneous function of principal curvatures with exact 2-jet evaluation.
///
/// Instances are immutable, cheap to copy and safe to share across threads.
/// Composition through +, -, *, / and pow derives the degree structurally;
/// adding or subtracting expressions of different degree throws
/// NonHomogeneousError at construction.
class SymmetricFunction {
 public:
  // Velocities.
  static SymmetricFunction mean_curvature();
  static SymmetricFunction mean_curvature_power(double sigma);
  static SymmetricFunction norm_squared();
  static SymmetricFunction gauss_curvature();
  static SymmetricFunction trace_power(double sigma);

  // Test quantities of the three flows.
  static SymmetricFunction phi_h3();
  static SymmetricFunction psi_h3();
  /// n = 3 only.
  static SymmetricFunction phi_a2();
  /// n = 3 only.
  static SymmetricFunction psi_a2();
  static SymmetricFunction phi_k();
  static SymmetricFunction psi_k();

  /// sum over `pairs` of (l_i - l_j)^2 / (l_i l_j)^2 * F^2 in dimension n.
  /// Only the full pair set gives a permutation-invariant function.
  static SymmetricFunction vanishing_sum(std::size_t n, std::vector<IndexPair> pairs,
                                         const SymmetricFunction& velocity);

  static SymmetricFunction constant(double value);

  /// Resolves a stable identifier: H, H3, H^s, A2, K, trA^s, phi_H3, psi_H3,
  /// phi_A2, psi_A2, phi_K, psi_K. Throws InvalidArgument on unknown names.
  static SymmetricFunction from_name(std::string_view name);

  std::string name() const;
  Degree degree() const;
  double degree(std::size_t n) const { return degree().at(n); }
  /// False only for vanishing sums over a strict subset of pairs.
  bool symmetric() const;
  /// Dimension the function is tied to, if any.
  std::optional<std::size_t> required_dim() const;

  /// Value, gradient and Hessian at p.
  Jet2 jet(const CurvaturePoint& p) const;
  /// Value only; skips derivative propagation.
  double value(const CurvaturePoint& p) const;

  friend SymmetricFunction operator+(const SymmetricFunction& lhs, const SymmetricFunction& rhs);
  friend SymmetricFunction operator-(const SymmetricFunction& lhs, const SymmetricFunction& rhs);
  friend SymmetricFunction operator*(const SymmetricFunction& lhs, const SymmetricFunction& rhs);
  friend SymmetricFunction operator/(const SymmetricFunction& lhs, const SymmetricFunction& rhs);
  friend SymmetricFunction operator*(double lhs, const SymmetricFunction& rhs);
  friend SymmetricFunction pow(const SymmetricFunction& base, double exponent);

  struct Node;

 private:
  explicit SymmetricFunction(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

/// Value, gradient and Hessian of f at p.
///
/// Throws DomainError when p has the wrong dimension for f and
/// EvaluationError when a composed expression divides by zero at p.
Jet2 eval_jet2(const SymmetricFunction& f, const CurvaturePoint& p);

}  // namespace pinchcert
