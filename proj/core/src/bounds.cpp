/*
 *            Copyright 2026 The gaplab Developers
 *
 *      Licensed under the Apache License, Version 2.0 (the "License")
 *
 * You may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *              http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 */


#include "gaplab/bounds.hpp"

#include <algorithm>
#include <cmath>

namespace gaplab {

double f_sum(const DecayFunction& zeta, const Box& box, const SiteSet& x, const SiteSet& y) {
  double s = 0.0;
  for (const Point& p : x) {
    for (const Point& q : y) s += f_zeta(zeta, box.distance(p, q), box.dim());
  }
  return s;
}

double lr_general_bound(const LrInput& in, double tau) {
  return 2.0 * in.norm_a * in.norm_b / in.c_zeta * std::expm1(2.0 * in.c_zeta * std::abs(tau) * in.phi_norm) *
         in.f_sum;
}

double lr_velocity(double a, double c_zeta, double phi_norm) { return 2.0 * c_zeta * phi_norm / a; }

double lr_exponential_bound(const LrInput& in, double a, double f1_norm, int min_size, int dist, double tau) {
  const double v = lr_velocity(a, in.c_zeta, in.phi_norm);
  return 2.0 * in.norm_a * in.norm_b * f1_norm / in.c_zeta * min_size * std::exp(a * (v * std::abs(tau) - dist));
}

double comparison_bound_restricted(double norm_a, double phi_norm, double deficit, double f_sum_m, double tau) {
  tau = std::abs(tau);
  return 2.0 * norm_a * std::exp(4.0 * tau * phi_norm) * tau * deficit * f_sum_m;
}

double comparison_bound_cut(double norm_a, double phi_norm, double f_sum_outside, double tau) {
  tau = std::abs(tau);
  return 2.0 * norm_a * std::exp(4.0 * tau * phi_norm) * tau * phi_norm * f_sum_outside;
}

}  // namespace gaplab
