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
#include <initializer_list>
#include <span>

namespace pinchcert {

/// Largest number of principal curvatures supported by the fixed-capacity types.
inline constexpr std::size_t kMaxDim = 8;

/// Ordered principal curvatures of a strictly convex hypersurface.
///
/// Construction validates 2 <= n <= kMaxDim and that every entry is finite and
/// strictly positive; a DomainError is thrown otherwise.
class CurvaturePoint {
 public:
  CurvaturePoint(std::initializer_list<double> lambdas);
  explicit CurvaturePoint(std::span<const double> lambdas);

  std::size_t size() const { return size_; }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const { return {values_.data(), size_}; }

  // n = 3 names.
  double a() const { return values_[0]; }
  double b() const { return values_[1]; }
  double c() const { return values_[2]; }

  double min() const;
  double max() const;
  double sum() const;
  /// max |lambda_i|, which equals max() for a valid point.
  double max_norm() const { return max(); }

  CurvaturePoint scaled(double factor) const;
  /// Radial projection onto the simplex sum(lambda) = 1.
  CurvaturePoint projected() const;
  /// Entry i of the result is entry perm[i] of this point.
  CurvaturePoint permuted(std::span<const std::size_t> perm) const;
  /// Copy with entries i and j both replaced by their mean.
  CurvaturePoint symmetrized(std::size_t i, std::size_t j) const;

  friend bool operator==(const CurvaturePoint& lhs, const CurvaturePoint& rhs);

 private:
  std::array<double, kMaxDim> values_{};
  std::size_t size_ = 0;
};

}  // namespace pinchcert
