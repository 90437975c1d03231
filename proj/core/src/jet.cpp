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

#include "pinchcert/jet.hpp"

#include <cmath>

#include "pinchcert/errors.hpp"

namespace pinchcert {

Jet2 Jet2::constant(std::size_t dim, double value) {
  Jet2 out;
  out.dim_ = dim;
  out.value_ = value;
  return out;
}

Jet2 Jet2::variable(std::size_t dim, std::size_t index, double value) {
  Jet2 out = constant(dim, value);
  out.grad_[index] = 1.0;
  return out;
}

std::array<Jet2, kMaxDim> Jet2::variables(const CurvaturePoint& p) {
  std::array<Jet2, kMaxDim> vars;
  for (std::size_t i = 0; i < p.size(); ++i) vars[i] = variable(p.size(), i, p[i]);
  return vars;
}

void Jet2::check_dim(const Jet2& rhs) const {
  if (dim_ != rhs.dim_) throw EvaluationError("jet dimension mismatch");
}

Jet2 Jet2::compose(double g0, double g1, double g2) const {
  Jet2 out;
  out.dim_ = dim_;
  out.value_ = g0;
  for (std::size_t i = 0; i < dim_; ++i) out.grad_[i] = g1 * grad_[i];
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      const std::size_t k = i * kMaxDim + j;
      out.hess_[k] = g1 * hess_[k] + g2 * grad_[i] * grad_[j];
    }
  }
  return out;
}

Jet2& Jet2::operator+=(const Jet2& rhs) {
  check_dim(rhs);
  value_ += rhs.value_;
  for (std::size_t i = 0; i < dim_; ++i) grad_[i] += rhs.grad_[i];
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) hess_[i * kMaxDim + j] += rhs.hess_[i * kMaxDim + j];
  return *this;
}

Jet2& Jet2::operator-=(const Jet2& rhs) {
  check_dim(rhs);
  value_ -= rhs.value_;
  for (std::size_t i = 0; i < dim_; ++i) grad_[i] -= rhs.grad_[i];
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) hess_[i * kMaxDim + j] -= rhs.hess_[i * kMaxDim + j];
  return *this;
}

Jet2& Jet2::operator*=(const Jet2& rhs) {
  check_dim(rhs);
  // (uv)'' = u v'' + v u'' + u' v'^T + v' u'^T
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      const std::size_t k = i * kMaxDim + j;
      hess_[k] = value_ * rhs.hess_[k] + rhs.value_ * hess_[k] + grad_[i] * rhs.grad_[j] +
                 rhs.grad_[i] * grad_[j];
    }
  }
  for (std::size_t i = 0; i < dim_; ++i) grad_[i] = value_ * rhs.grad_[i] + rhs.value_ * grad_[i];
  value_ *= rhs.value_;
  return *this;
}

Jet2& Jet2::operator/=(const Jet2& rhs) {
  check_dim(rhs);
  const double v = rhs.value_;
  if (v == 0.0 || !std::isfinite(v)) throw EvaluationError("division by zero in jet arithmetic");
  return *this *= rhs.compose(1.0 / v, -1.0 / (v * v), 2.0 / (v * v * v));
}

Jet2& Jet2::operator+=(double rhs) {
  value_ += rhs;
  return *this;
}

Jet2& Jet2::operator-=(double rhs) {
  value_ -= rhs;
  return *this;
}

Jet2& Jet2::operator*=(double rhs) {
  value_ *= rhs;
  for (std::size_t i = 0; i < dim_; ++i) grad_[i] *= rhs;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) hess_[i * kMaxDim + j] *= rhs;
  return *this;
}

Jet2& Jet2::operator/=(double rhs) {
  if (rhs == 0.0) throw EvaluationError("division by zero in jet arithmetic");
  return *this *= 1.0 / rhs;
}

Jet2 Jet2::operator-() const {
  Jet2 out = *this;
  return out *= -1.0;
}

Jet2 operator/(double lhs, const Jet2& rhs) {
  const double v = rhs.value();
  if (v == 0.0 || !std::isfinite(v)) throw EvaluationError("division by zero in jet arithmetic");
  return rhs.compose(lhs / v, -lhs / (v * v), 2.0 * lhs / (v * v * v));
}

Jet2 square(const Jet2& x) { return x * x; }

Jet2 pow(const Jet2& x, double exponent) {
  const double v = x.value();
  const bool integral = std::floor(exponent) == exponent;
  if (!integral && v <= 0.0) {
    throw EvaluationError("non-integer power of a non-positive value");
  }
  if (v == 0.0 && exponent < 2.0) {
    throw EvaluationError("power is not twice differentiable at zero");
  }
  const double g0 = std::pow(v, exponent);
  const double g1 = exponent * std::pow(v, exponent - 1.0);
  const double g2 = exponent * (exponent - 1.0) * std::pow(v, exponent - 2.0);
  return x.compose(g0, g1, g2);
}

}  // namespace pinchcert
