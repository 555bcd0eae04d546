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


#include "gaplab/locality.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gaplab/majorana.hpp"

namespace gaplab {

SiteSet centred_sites(int k, int d) {
  SiteSet out;
  Point p(d, -k);
  while (true) {
    out.insert(p);
    int i = d - 1;
    while (i >= 0 && p[i] == k) p[i--] = -k;
    if (i < 0) break;
    ++p[i];
  }
  return out;
}

namespace {

void check_even(const Mat& a) {
  double amax = a.cwiseAbs().maxCoeff();
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if ((popcount(static_cast<std::uint64_t>(i ^ j)) & 1) && std::abs(a(i, j)) > 1e-12 * amax)
        throw std::invalid_argument("conditional expectation is defined on even observables only");
    }
  }
}

}  // namespace

Mat majorana_conjugate(const Mat& a, int mu) {
  const Eigen::Index dim = a.rows();
  const int mode = mu / 2;
  const std::uint64_t bit = std::uint64_t{1} << mode;
  std::vector<cplx> ph(dim);
  for (Eigen::Index s = 0; s < dim; ++s) ph[s] = apply_monomial(std::uint64_t{1} << mu, s).second;
  Mat out(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    const cplx cj = std::conj(ph[j]);
    const auto jj = static_cast<Eigen::Index>(j ^ bit);
    for (Eigen::Index i = 0; i < dim; ++i) out(i ^ bit, jj) = ph[i] * a(i, j) * cj;
  }
  return out;
}

Mat conditional_expectation(const Mat& a, const std::vector<int>& keep, int modes) {
  if (a.rows() != (Eigen::Index{1} << modes)) throw std::invalid_argument("dimension does not match mode count");
  check_even(a);
  std::vector<bool> kept(modes, false);
  for (int m : keep) kept.at(m) = true;
  Mat cur = a;
  for (int m = 0; m < modes; ++m) {
    if (kept[m]) continue;
    // conjugation by c_2m c_2m+1 = i(1 - 2 n_m) is the diagonal sign (1 - 2 n_m)
    Mat both = cur;
    const std::uint64_t bit = std::uint64_t{1} << m;
    for (Eigen::Index j = 0; j < cur.cols(); ++j) {
      for (Eigen::Index i = 0; i < cur.rows(); ++i) {
        if (((i ^ j) & bit) != 0) both(i, j) = -both(i, j);
      }
    }
    cur = 0.25 * (cur + majorana_conjugate(cur, 2 * m) + majorana_conjugate(cur, 2 * m + 1) + both);
  }
  return cur;
}

FockOperator conditional_expectation(const FockOperator& a, const SiteSet& x, const FockSpace& space) {
  if (a.parity() == Parity::odd || a.parity() == Parity::mixed)
    throw std::invalid_argument("conditional expectation is defined on even observables only");
  if (!space.box().contains(x)) throw std::out_of_range("conditional expectation region outside box");
  return FockOperator(conditional_expectation(a.dense(), space.modes_of(x), space.modes()), x);
}

FockOperator conditional_expectation_expanded(const FockOperator& a, const SiteSet& x, const FockSpace& space) {
  if (a.parity() == Parity::odd || a.parity() == Parity::mixed)
    throw std::invalid_argument("conditional expectation is defined on even observables only");
  Mat m = a.dense();
  MajoranaExpansion terms = majorana_expand(space, m, space.modes_of(x), true);
  return FockOperator(majorana_sum(space, terms), x);
}

FNorm f_norm(const FockOperator& a, const FockSpace& space, const LocalityProfile& f, const std::vector<int>& k_range) {
  FNorm out;
  out.norm = norm(a);
  double best = 0.0;
  const int d = space.box().dim();
  for (int k : k_range) {
    SiteSet region = set_intersection(centred_sites(k, d), space.box().all());
    double dev = norm(a - conditional_expectation(a, region, space));
    out.deviations.push_back(dev);
    double ratio = dev / f(k);
    if (ratio > best || out.argmax_k < 0) {
      best = ratio;
      out.argmax_k = k;
    }
  }
  out.value = out.norm + best;
  return out;
}

Certificate quasilocality_certificate(const FockOperator& a, const SiteSet& x, const FockSpace& space) {
  Certificate c;
  c.norm = norm(a);
  if (c.norm == 0.0) throw std::invalid_argument("quasilocality certificate of the zero operator");
  const Mat m = a.dense();
  SiteSet rest = set_difference(space.box().all(), x);
  for (std::uint64_t mask : monomial_masks(space.modes_of(rest), false)) {
    if (mask == 0) continue;
    const MajoranaMonomial mono = majorana_monomial(space, mask);
    // monomials are unitary, so ||B|| = 1
    Mat b = Mat::Zero(m.rows(), m.cols());
    add_scaled(b, mono, 1.0);
    c.eta = std::max(c.eta, opnorm(commutator(m, b)) / c.norm);
  }
  c.deviation = norm(a - conditional_expectation(a, x, space));
  if (c.deviation > c.eta * c.norm + 1e-10) {
    std::ostringstream os;
    os << "certificate violated: ||A - E(A)|| = " << c.deviation << " > eta ||A|| = " << c.eta * c.norm;
    throw BoundViolation(os.str());
  }
  return c;
}

double extension_constant(int b, const LocalityProfile& f, int d, int jmax) {
  auto vol = [d](int j) { return std::pow(2.0 * j + 1.0, d); };
  double sum = std::pow(vol(1), b);
  for (int j = 1; j <= jmax; ++j) {
    double term = 2.0 * f(j) * std::pow(vol(j + 1), b);
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum;
}

}  // namespace gaplab
