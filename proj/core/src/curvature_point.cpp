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

#include "pinchcert/curvature_point.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "pinchcert/errors.hpp"

namespace pinchcert {

CurvaturePoint::CurvaturePoint(std::initializer_list<double> lambdas)
    : CurvaturePoint(std::span<const double>(lambdas.begin(), lambdas.size())) {}

CurvaturePoint::CurvaturePoint(std::span<const double> lambdas) : size_(lambdas.size()) {
  if (size_ < 2 || size_ > kMaxDim) {
    throw DomainError("curvature point needs between 2 and " + std::to_string(kMaxDim) +
                      " entries, got " + std::to_string(size_));
  }
  for (std::size_t i = 0; i < size_; ++i) {
    const double v = lambdas[i];
    if (!std::isfinite(v) || v <= 0.0) {
      throw DomainError("principal curvature " + std::to_string(i) +
                        " must be finite and strictly positive");
    }
    values_[i] = v;
  }
}

double CurvaturePoint::min() const {
  return *std::min_element(values_.begin(), values_.begin() + size_);
}

double CurvaturePoint::max() const {
  return *std::max_element(values_.begin(), values_.begin() + size_);
}

double CurvaturePoint::sum() const {
  return std::accumulate(values_.begin(), values_.begin() + size_, 0.0);
}

CurvaturePoint CurvaturePoint::scaled(double factor) const {
  std::array<double, kMaxDim> out{};
  for (std::size_t i = 0; i < size_; ++i) out[i] = values_[i] * factor;
  return CurvaturePoint(std::span<const double>(out.data(), size_));
}

CurvaturePoint CurvaturePoint::projected() const {
  const double total = sum();
  std::array<double, kMaxDim> out{};
  for (std::size_t i = 0; i < size_; ++i) out[i] = values_[i] / total;
  return CurvaturePoint(std::span<const double>(out.data(), size_));
}

CurvaturePoint CurvaturePoint::permuted(std::span<const std::size_t> perm) const {
  if (perm.size() != size_) throw DomainError("permutation size does not match point");
  std::array<double, kMaxDim> out{};
  for (std::size_t i = 0; i < size_; ++i) out[i] = values_[perm[i]];
  return CurvaturePoint(std::span<const double>(out.data(), size_));
}

CurvaturePoint CurvaturePoint::symmetrized(std::size_t i, std::size_t j) const {
  CurvaturePoint out = *this;
  const double mean = 0.5 * (values_[i] + values_[j]);
  out.values_[i] = mean;
  out.values_[j] = mean;
  return out;
}

bool operator==(const CurvaturePoint& lhs, const CurvaturePoint& rhs) {
  return lhs.size_ == rhs.size_ &&
         std::equal(lhs.values_.begin(), lhs.values_.begin() + lhs.size_, rhs.values_.begin());
}

}  // namespace pinchcert
