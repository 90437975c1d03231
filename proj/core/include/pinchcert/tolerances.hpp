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

namespace pinchcert {

/// Numerical tolerances shared by the certificate and region checks.
///
/// All values are relative. Each check documents the scale it multiplies.
struct Tolerances {
  /// C_w, E_w <= tau * (sum of absolute term magnitudes).
  double tau = 1e-9;
  /// tr M <= tau_nsd * |M|, det M >= -tau_nsd * |M|^2 with |M| the max-entry norm.
  double tau_nsd = 1e-9;
  /// |p| * |grad w| <= delta_grad * (|w| + |p|^2 |hess w|) marks the point indeterminate.
  double delta_grad = 1e-8;
  /// Sublevel quantity at or below this value lies in the umbilic band.
  double eps_umbilic = 1e-10;
  /// |l_i - l_j| <= eps_dd * |p| switches divided differences to the diagonal limit.
  double eps_dd = 1e-7;
  /// Relative slack on cone and sublevel comparisons so exact boundary points count as inside.
  double eps_boundary = 1e-12;

  friend bool operator==(const Tolerances&, const Tolerances&) = default;
};

}  // namespace pinchcert
