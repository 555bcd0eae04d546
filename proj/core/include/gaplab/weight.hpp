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
#ifndef GAPLAB_WEIGHT_HPP
#define GAPLAB_WEIGHT_HPP

#include <iosfwd>
#include <utility>
#include <vector>

#include "gaplab/types.hpp"

namespace gaplab {

// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n);

// Odd filter W with Fourier transform
//   What(w) = chi(w) * (-i / (sqrt(2 pi) w)),
// chi a smooth step that vanishes on [-g_tilde, g_tilde] and equals one for
// |w| >= g.  Fourier convention What(w) = (2 pi)^{-1/2} int W(s) e^{-i w s} ds.
class WeightFunction {
 public:
  WeightFunction(double g, double g_tilde);

  double g() const { return g_; }
  double g_tilde() const { return g_tilde_; }

  double chi(double w) const;
  cplx what(double w) const;
  // int W(s) e^{i s w} ds = i chi(w) / w, and 0 at w = 0.  This is the factor
  // the inverse Liouvillian applies to an eigenbasis element with Bohr
  // frequency w.
  cplx symbol(double w) const;

  // W(s) = sign(s)/2 - (1/pi) int_0^g (1 - chi(w)) sin(w s) / w dw
  double operator()(double s) const;

  // ||d^n/dw^n (chi(w)/w)||_{L1(0, inf)}, n = 1..Jet::order
  double derivative_l1(int n) const;
  // |W(s)| <= derivative_l1(n) / (pi s^n), minimised over n
  double decay_bound(double s) const;
  // upper bound on int_T^infinity |W(s)| ds from the same estimate
  double tail_bound(double t) const;
  // smallest T with 2 * tail_bound(T) <= tol
  double truncation_for(double tol) const;

  struct Table {
    std::vector<double> s, w;
  };
  // W on the uniform grid s = -smax, ..., smax with spacing h
  Table time_table(double smax, double h) const;

 private:
  double g_;
  double g_tilde_;
  std::vector<double> gl_x_, gl_w_;
  std::vector<double> dnorm_;
};

WeightFunction build_weight(double g, double g_tilde);

// CSV export: "s,W" rows, then a blank line and "omega,re_What,im_What" rows
void write_weight_csv(std::ostream& os, const WeightFunction& w, double smax, double h, double wmax, int nw);

}  // namespace gaplab

#endif
