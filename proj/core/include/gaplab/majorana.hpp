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
#ifndef GAPLAB_MAJORANA_HPP
#define GAPLAB_MAJORANA_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "gaplab/fock.hpp"

namespace gaplab {

// Majorana operators c_{2m} = a_m + a_m^dagger and c_{2m+1} = i(a_m^dagger - a_m).
// A monomial is the ordered product of the c_mu with mu set in `mask`,
// lowest index leftmost.  It acts as c|s> = phase[s] |s ^ flip>.
struct MajoranaMonomial {
  std::uint64_t mask = 0;
  std::uint64_t flip = 0;
  std::vector<cplx> phase;

  int degree() const;
};

MajoranaMonomial majorana_monomial(const FockSpace& space, std::uint64_t mask);
// c|s> = phase |s'>, returns (s', phase)
std::pair<std::uint64_t, cplx> apply_monomial(std::uint64_t mask, std::uint64_t s);
FockOperator to_operator(const FockSpace& space, const MajoranaMonomial& m);

// normalised Hilbert-Schmidt coefficient tr(c^dagger A) / dim
cplx hs_coefficient(const MajoranaMonomial& m, const Mat& a);
void add_scaled(Mat& out, const MajoranaMonomial& m, cplx c);

// All monomial masks built from the given modes.
std::vector<std::uint64_t> monomial_masks(const std::vector<int>& modes, bool even_only);

using MajoranaExpansion = std::vector<std::pair<std::uint64_t, cplx>>;

// Coefficients of A on the monomials supported on the given modes; entries
// below `cutoff` in modulus are dropped.  This is the Hilbert-Schmidt
// projection onto the subalgebra of those modes.
MajoranaExpansion majorana_expand(const FockSpace& space, const Mat& a, const std::vector<int>& modes,
                                  bool even_only, double cutoff = 0.0);
// Same coefficients for an A already supported on `modes`, read off from the
// block where every other mode is empty.  Cheaper and independent of the
// size of the surrounding space.
MajoranaExpansion majorana_expand_supported(const Mat& a, const std::vector<int>& modes, double cutoff = 0.0);
Mat majorana_sum(const FockSpace& space, const MajoranaExpansion& terms);

// Re-express an operator supported on `support` of space `from` on space
// `to`, which must contain the same sites.  Works through the Majorana
// expansion, so fermionic signs are handled by the algebra itself.
FockOperator transplant(const FockOperator& a, const SiteSet& support, const FockSpace& from,
                        const FockSpace& to);

}  // namespace gaplab

#endif
