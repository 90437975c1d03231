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

#include "pinchcert/curvature_point.hpp"
#include "pinchcert/operator_decomposition.hpp"
#include "pinchcert/symmetric_function.hpp"

namespace pinchcert::testing {

// Hand transcriptions of the n = 3 displays, written against raw partials so
// they share nothing with the library beyond the jets.
struct Partials {
  double a, b, c;
  double F, Fa, Fb, Fc, Faa, Fbb, Fcc, Fab, Fac, Fbc;
  double w, wa, wb, wc, waa, wbb, wcc, wab, wac, wbc;

  Partials(const SymmetricFunction& vel, const SymmetricFunction& q, const CurvaturePoint& p)
      : a(p.a()), b(p.b()), c(p.c()) {
    const Jet2 f = vel.jet(p), v = q.jet(p);
    F = f.value();
    Fa = f.gradient(0), Fb = f.gradient(1), Fc = f.gradient(2);
    Faa = f.hessian(0, 0), Fbb = f.hessian(1, 1), Fcc = f.hessian(2, 2);
    Fab = f.hessian(0, 1), Fac = f.hessian(0, 2), Fbc = f.hessian(1, 2);
    w = v.value();
    wa = v.gradient(0), wb = v.gradient(1), wc = v.gradient(2);
    waa = v.hessian(0, 0), wbb = v.hessian(1, 1), wcc = v.hessian(2, 2);
    wab = v.hessian(0, 1), wac = v.hessian(0, 2), wbc = v.hessian(1, 2);
  }

  double c_term() const {
    const double s = a * a * Fa + b * b * Fb + c * c * Fc;
    const double r = F - a * Fa - b * Fb - c * Fc;
    return a * wa * (s + a * r) + b * wb * (s + b * r) + c * wc * (s + c * r);
  }

  double e_term() const {
    return 2.0 * ((wc * (Fa - Fb) - Fc * (wa - wb)) / (a - b) +
                  (wb * (Fa - Fc) - Fb * (wa - wc)) / (a - c) +
                  (wa * (Fb - Fc) - Fa * (wb - wc)) / (b - c));
  }

  double fquad(double h1, double h2, double h3) const {
    return Faa * h1 * h1 + Fbb * h2 * h2 + Fcc * h3 * h3 +
           2.0 * (Fab * h1 * h2 + Fac * h1 * h3 + Fbc * h2 * h3);
  }
  double wquad(double h1, double h2, double h3) const {
    return waa * h1 * h1 + wbb * h2 * h2 + wcc * h3 * h3 +
           2.0 * (wab * h1 * h2 + wac * h1 * h3 + wbc * h2 * h3);
  }

  double r_form(double h1, double h2, double h3) const {
    return wa * fquad(h1, h2, h3) + wb * (2.0 * (Fa - Fb) / (a - b) * h2 * h2) +
           wc * (2.0 * (Fa - Fc) / (a - c) * h3 * h3) - Fa * wquad(h1, h2, h3) -
           Fb * (2.0 * (wa - wb) / (a - b) * h2 * h2) - Fc * (2.0 * (wa - wc) / (a - c) * h3 * h3);
  }
  double s_form(double h1, double h2, double h3) const {
    return wa * (2.0 * (Fa - Fb) / (a - b) * h1 * h1) + wb * fquad(h1, h2, h3) +
           wc * (2.0 * (Fb - Fc) / (b - c) * h3 * h3) - Fa * (2.0 * (wa - wb) / (a - b) * h1 * h1) -
           Fb * wquad(h1, h2, h3) - Fc * (2.0 * (wb - wc) / (b - c) * h3 * h3);
  }
  double t_form(double h1, double h2, double h3) const {
    return wa * (2.0 * (Fa - Fc) / (a - c) * h1 * h1) + wb * (2.0 * (Fb - Fc) / (b - c) * h2 * h2) +
           wc * fquad(h1, h2, h3) - Fa * (2.0 * (wa - wc) / (a - c) * h1 * h1) -
           Fb * (2.0 * (wb - wc) / (b - c) * h2 * h2) - Fc * wquad(h1, h2, h3);
  }

  Sym2 m_r() const {
    return {2.0 * (Fa * wb - Fb * wa) / (a - b) + Faa * wb * wb / wa - 2.0 * Fab * wb + Fbb * wa -
                Fa * (waa * wb * wb / (wa * wa) - 2.0 * wab * wb / wa + wbb),
            Faa * wb * wc / wa - Fab * wc - Fac * wb + Fbc * wa -
                Fa * (waa * wb * wc / (wa * wa) - wab * wc / wa - wac * wb / wa + wbc),
            2.0 * (Fa * wc - Fc * wa) / (a - c) + Faa * wc * wc / wa - 2.0 * Fac * wc + Fcc * wa -
                Fa * (waa * wc * wc / (wa * wa) - 2.0 * wac * wc / wa + wcc)};
  }
  Sym2 m_s() const {
    return {2.0 * (Fa * wb - Fb * wa) / (a - b) + Faa * wb - 2.0 * Fab * wa + Fbb * wa * wa / wb -
                Fb * (waa - 2.0 * wab * wa / wb + wbb * wa * wa / (wb * wb)),
            -Fab * wc + Fac * wb + Fbb * wa * wc / wb - Fbc * wa -
                Fb * (-wab * wc / wb + wac + wbb * wa * wc / (wb * wb) - wbc * wa / wb),
            2.0 * (Fb * wc - Fc * wb) / (b - c) + Fbb * wc * wc / wb - 2.0 * Fbc * wc + Fcc * wb -
                Fb * (wbb * wc * wc / (wb * wb) - 2.0 * wbc * wc / wb + wcc)};
  }
  Sym2 m_t() const {
    return {2.0 * (Fa * wc - Fc * wa) / (a - c) + Faa * wc - 2.0 * Fac * wa + Fcc * wa * wa / wc -
                Fc * (waa - 2.0 * wac * wa / wc + wcc * wa * wa / (wc * wc)),
            Fab * wc - Fac * wb - Fbc * wa + Fcc * wa * wb / wc -
                Fc * (wab - wac * wb / wc - wbc * wa / wc + wcc * wa * wb / (wc * wc)),
            2.0 * (Fb * wc - Fc * wb) / (b - c) + Fbb * wc - 2.0 * Fbc * wb + Fcc * wb * wb / wc -
                Fc * (wbb - 2.0 * wbc * wb / wc + wcc * wb * wb / (wc * wc))};
  }
};

}  // namespace pinchcert::testing
