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

#include "pinchcert/curvature_point.hpp"
#include "pinchcert/jet.hpp"
#include "pinchcert/symmetric_function.hpp"
#include "pinchcert/tolerances.hpp"

namespace pinchcert {

inline constexpr double kDefaultEpsDd = Tolerances{}.eps_dd;

/// (df/dl_i - df/dl_j) / (l_i - l_j), continued by its limit on the diagonal.
///
/// For |l_i - l_j| > eps_dd * |p| the quotient is formed literally. Closer to
/// the diagonal, f is re-evaluated at p with l_i and l_j replaced by their
/// mean and f_ii - f_ij is returned. The quotient is even in (l_i - l_j)
/// around the mean, so the switch is continuous up to O(eps_dd^2).
double divided_difference(const SymmetricFunction& f, const CurvaturePoint& p, std::size_t i,
                          std::size_t j, double eps_dd = kDefaultEpsDd);

/// Same, reusing an already computed jet of f at p for the quotient branch.
double divided_difference(const SymmetricFunction& f, const CurvaturePoint& p,
                          const Jet2& jet_at_p, std::size_t i, std::size_t j,
                          double eps_dd = kDefaultEpsDd);

}  // namespace pinchcert
