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

#include "pinchcert/divided_difference.hpp"

#include <cmath>

#include "pinchcert/errors.hpp"

namespace pinchcert {

double divided_difference(const SymmetricFunction& f, const CurvaturePoint& p, std::size_t i,
                          std::size_t j, double eps_dd) {
  return divided_difference(f, p, f.jet(p), i, j, eps_dd);
}

double divided_difference(const SymmetricFunction& f, const CurvaturePoint& p,
                          const Jet2& jet_at_p, std::size_t i, std::size_t j, double eps_dd) {
  if (i == j || i >= p.size() || j >= p.size()) {
    throw InvalidArgument("divided difference needs two distinct valid indices");
  }
  const double gap = p[i] - p[j];
  if (std::abs(gap) > eps_dd * p.max_norm()) {
    return (jet_at_p.gradient(i) - jet_at_p.gradient(j)) / gap;
  }
  if (!f.symmetric()) {
    throw EvaluationError("diagonal limit of a divided difference needs a symmetric function, got " +
                          f.name());
  }
  const Jet2 mid = f.jet(p.symmetrized(i, j));
  return mid.hessian(i, i) - mid.hessian(i, j);
}

}  // namespace pinchcert
