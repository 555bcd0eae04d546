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
#ifndef GAPLAB_LOCALITY_HPP
#define GAPLAB_LOCALITY_HPP

#include <functional>
#include <vector>

#include "gaplab/fock.hpp"

namespace gaplab {

// {x in Z^d : max_i |x_i| <= k}, the centred sub-box Lambda_k
SiteSet centred_sites(int k, int d);

// c_mu A c_mu for the Majorana operator c_mu of the given space (c_mu is a
// Hermitian signed permutation).
Mat majorana_conjugate(const Mat& a, int mu);

// Conditional expectation onto the even algebra of the modes in `keep`.
// For even A this is the Hilbert-Schmidt projection onto the Majorana
// monomials built from `keep`, evaluated as the average over conjugation by
// {1, c_2m, c_2m+1, c_2m c_2m+1} for every other mode m.
Mat conditional_expectation(const Mat& a, const std::vector<int>& keep, int modes);
FockOperator conditional_expectation(const FockOperator& a, const SiteSet& x, const FockSpace& space);
// Same map through the explicit Majorana expansion; exponential in the
// number of modes, kept as a reference.
FockOperator conditional_expectation_expanded(const FockOperator& a, const SiteSet& x, const FockSpace& space);

struct FNorm {
  double value = 0.0;
  double norm = 0.0;
  int argmax_k = -1;
  std::vector<double> deviations;  // ||A - E_k(A)|| per k in the range
};

using LocalityProfile = std::function<double(int)>;

FNorm f_norm(const FockOperator& a, const FockSpace& space, const LocalityProfile& f, const std::vector<int>& k_range);

struct Certificate {
  double eta = 0.0;
  double deviation = 0.0;  // ||A - E_X(A)||
  double norm = 0.0;
};

// eta = max ||[A, B]|| / (||A|| ||B||) over the Majorana monomials B of the
// complement of X.  Throws BoundViolation if ||A - E_X(A)|| > eta ||A||.
Certificate quasilocality_certificate(const FockOperator& a, const SiteSet& x, const FockSpace& space);

// 2 sum_{j>=1} f(j) |Lambda_{j+1}|^b + |Lambda_1|^b, summed until the terms
// fall below 1e-17 of the partial sum or jmax is reached.
double extension_constant(int b, const LocalityProfile& f, int d, int jmax = 10000);

}  // namespace gaplab

#endif
