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
#ifndef GAPLAB_INVLIOU_HPP
#define GAPLAB_INVLIOU_HPP

#include <vector>

#include "gaplab/interaction.hpp"
#include "gaplab/spectral.hpp"
#include "gaplab/weight.hpp"

namespace gaplab {

// I(A) = int W(s) e^{isH} A e^{-isH} ds evaluated in the eigenbasis of H:
// element (m, n) is multiplied by w.symbol(E_m - E_n).
Mat inv_liouvillian_spectral(const EigenSystem& es, const Mat& a, const WeightFunction& w);
FockOperator inv_liouvillian_spectral(const EigenSystem& es, const FockOperator& a, const WeightFunction& w);

struct QuadratureOptions {
  double tail_tol = 1e-6;  // relative to ||A||; picks T when truncation <= 0
  double truncation = 0.0;
  int nodes_per_panel = 12;
};

struct TimeQuadrature {
  Mat value;
  double truncation = 0.0;
  std::size_t nodes = 0;
  double tail = 0.0;        // 2 ||A|| int_{|s|>T} |W| (upper bound)
  double quadrature = 0.0;  // difference to the rule with half the nodes
  double budget() const { return tail + quadrature; }
};

// Gauss-Legendre quadrature of the defining integral on [-T, T].
TimeQuadrature inv_liouvillian_time(const EigenSystem& es, const Mat& a, const WeightFunction& w,
                                    const QuadratureOptions& opt = {});

// Delta_0 = E_{Y}(I(A)), Delta_m = (E_{Y_m} - E_{Y_{m-1}})(I(A)) with Y_m the
// m-fattening of Y inside the box.  The conditional expectations are linear,
// so they are applied to the time-quadrature value of I(A).
struct LocalDecomposition {
  std::vector<Mat> deltas;
  std::vector<SiteSet> regions;  // Y_m
  std::vector<double> norms;     // ||Delta_m||
  TimeQuadrature inverse;
};

LocalDecomposition local_decomposition(const EigenSystem& es, const FockOperator& a, const SiteSet& y,
                                       const FockSpace& space, const WeightFunction& w,
                                       const QuadratureOptions& opt = {});
// Same decomposition applied to a precomputed I(A).
LocalDecomposition decompose_inverse(const Mat& inverse, const SiteSet& y, const FockSpace& space);

// Interaction with terms Phi(Z) = sum_m sum_{Y : Y_m = Z} Delta_m(Phi_B(Y)) on
// box k.  I is evaluated spectrally per term.
Interaction interaction_of_inverse(const Interaction& phi_b, int k, const EigenSystem& es, const WeightFunction& w);

}  // namespace gaplab

#endif
