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


#include "testing.hpp"

#include "gaplab/majorana.hpp"

namespace gaplab::testing {

FockOperator random_even(const FockSpace& space, const SiteSet& sites, std::mt19937_64& rng, bool hermitian) {
  std::normal_distribution<double> g;
  MajoranaExpansion terms;
  for (std::uint64_t mask : monomial_masks(space.modes_of(sites), true)) terms.emplace_back(mask, cplx(g(rng), g(rng)));
  Mat m = majorana_sum(space, terms);
  if (hermitian) m = Mat(0.5 * (m + m.adjoint()));
  return FockOperator(m, sites);
}

Mat random_matrix(Eigen::Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Mat m(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    for (Eigen::Index i = 0; i < dim; ++i) m(i, j) = cplx(g(rng), g(rng));
  }
  return m;
}

GappedSystem random_gapped(Eigen::Index dim, int kappa, double gap, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  RVec e(dim);
  for (Eigen::Index i = 0; i < dim; ++i) e(i) = i < kappa ? 0.2 * u(rng) : 0.2 + gap + 3.0 * u(rng);
  Eigen::HouseholderQR<Mat> qr(random_matrix(dim, rng));
  const Mat q = qr.householderQ();
  GappedSystem s;
  s.h = q * e.cast<cplx>().asDiagonal() * q.adjoint();
  s.h = Mat(0.5 * (s.h + s.h.adjoint()));
  s.es = diagonalize(s.h);
  s.kappa = kappa;
  s.gap = gap;
  return s;
}

Mat partial_trace_low(const Mat& a, int low_modes, int modes) {
  const Eigen::Index lo = Eigen::Index{1} << low_modes;
  const Eigen::Index hi = Eigen::Index{1} << (modes - low_modes);
  Mat red = Mat::Zero(lo, lo);
  for (Eigen::Index h = 0; h < hi; ++h) red += a.block(h * lo, h * lo, lo, lo);
  red /= static_cast<double>(hi);
  Mat out = Mat::Zero(a.rows(), a.cols());
  for (Eigen::Index h = 0; h < hi; ++h) out.block(h * lo, h * lo, lo, lo) = red;
  return out;
}

}  // namespace gaplab::testing
