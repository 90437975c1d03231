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
#include <span>

#include "pinchcert/curvature_point.hpp"

namespace pinchcert {

/// Truncated second-order Taylor number: value, gradient and symmetric Hessian
/// with respect to up to kMaxDim independent variables.
///
/// Arithmetic propagates all three orders exactly (up to roundoff), so any
/// expression built from these operations yields its own 2-jet.
class Jet2 {
 public:
  Jet2() = default;

  static Jet2 constant(std::size_t dim, double value);
  static Jet2 variable(std::size_t dim, std::size_t index, double value);
  /// The dim independent variables seeded at the point's coordinates.
  static std::array<Jet2, kMaxDim> variables(const CurvaturePoint& p);

  std::size_t dim() const { return dim_; }
  double value() const { return value_; }
  double gradient(std::size_t i) const { return grad_[i]; }
  std::span<const double> gradient() const { return {grad_.data(), dim_}; }
  double hessian(std::size_t i, std::size_t j) const { return hess_[i * kMaxDim + j]; }

  /// Composes a scalar function g with this jet, given g, g' and g'' at value().
  Jet2 compose(double g0, double g1, double g2) const;

  Jet2& operator+=(const Jet2& rhs);
  Jet2& operator-=(const Jet2& rhs);
  Jet2& operator*=(const Jet2& rhs);
  Jet2& operator/=(const Jet2& rhs);
  Jet2& operator+=(double rhs);
  Jet2& operator-=(double rhs);
  Jet2& operator*=(double rhs);
  Jet2& operator/=(double rhs);

  Jet2 operator-() const;

  friend Jet2 operator+(Jet2 lhs, const Jet2& rhs) { return lhs += rhs; }
  friend Jet2 operator-(Jet2 lhs, const Jet2& rhs) { return lhs -= rhs; }
  friend Jet2 operator*(Jet2 lhs, const Jet2& rhs) { return lhs *= rhs; }
  friend Jet2 operator/(Jet2 lhs, const Jet2& rhs) { return lhs /= rhs; }
  friend Jet2 operator+(Jet2 lhs, double rhs) { return lhs += rhs; }
  friend Jet2 operator+(double lhs, Jet2 rhs) { return rhs += lhs; }
  friend Jet2 operator-(Jet2 lhs, double rhs) { return lhs -= rhs; }
  friend Jet2 operator-(double lhs, const Jet2& rhs) { return -rhs + lhs; }
  friend Jet2 operator*(Jet2 lhs, double rhs) { return lhs *= rhs; }
  friend Jet2 operator*(double lhs, Jet2 rhs) { return rhs *= lhs; }
  friend Jet2 operator/(Jet2 lhs, double rhs) { return lhs /= rhs; }
  friend Jet2 operator/(double lhs, const Jet2& rhs);

 private:
  void check_dim(const Jet2& rhs) const;

  std::size_t dim_ = 0;
  double value_ = 0.0;
  std::array<double, kMaxDim> grad_{};
  std::array<double, kMaxDim * kMaxDim> hess_{};
};

Jet2 square(const Jet2& x);
/// x^exponent. Non-integer exponents require a positive base.
Jet2 pow(const Jet2& x, double exponent);

inline double square(double x) { return x * x; }

}  // namespace pinchcert
