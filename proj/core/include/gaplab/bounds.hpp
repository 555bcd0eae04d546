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


#pragma once
#ifndef GAPLAB_BOUNDS_HPP
#define GAPLAB_BOUNDS_HPP

#include "gaplab/interaction.hpp"

namespace gaplab {

// sum_{x in X, y in Y} F_zeta(d(x, y)) with the metric of the box
double f_sum(const DecayFunction& zeta, const Box& box, const SiteSet& x, const SiteSet& y);

// Inputs shared by the propagation bounds.  tau is the elapsed time in
// units of the generator, |t - s| / eta for the scaled dynamics.
struct LrInput {
  double norm_a = 1.0;
  double norm_b = 1.0;
  double phi_norm = 0.0;  // sup_t ||Phi_H0(t)||_{zeta,0}
  double c_zeta = 1.0;    // convolution constant
  double f_sum = 0.0;     // sum over X x Y
};

double lr_general_bound(const LrInput& in, double tau);

// Exponential decay exp(-a r): velocity 2 a^-1 C ||Phi|| and the bound
// 2 ||A|| ||B|| ||F_1|| C^-1 min(|X|, |Y|) exp(a (v tau - dist))
double lr_velocity(double a, double c_zeta, double phi_norm);
double lr_exponential_bound(const LrInput& in, double a, double f1_norm, int min_size, int dist, double tau);

// Restricted dynamics on Lambda_l versus Lambda_k, both cut to Lambda_M
double comparison_bound_restricted(double norm_a, double phi_norm, double deficit, double f_sum_m, double tau);
// Full dynamics on Lambda_k versus the same dynamics cut to Lambda_M
double comparison_bound_cut(double norm_a, double phi_norm, double f_sum_outside, double tau);

}  // namespace gaplab

#endif
