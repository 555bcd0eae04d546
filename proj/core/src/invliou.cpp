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


#include "gaplab/invliou.hpp"

#include <algorithm>
#include <cmath>

#include "gaplab/locality.hpp"

namespace gaplab {

Mat inv_liouvillian_spectral(const EigenSystem& es, const Mat& a, const WeightFunction& w) {
  if (a.rows() != es.vectors.rows() || a.cols() != es.vectors.rows())
    throw std::invalid_argument("inverse Liouvillian: dimension mismatch");
  Mat t = es.vectors.adjoint() * a * es.vectors;
  for (Eigen::Index n = 0; n < t.cols(); ++n) {
    for (Eigen::Index m = 0; m < t.rows(); ++m) t(m, n) *= w.symbol(es.values[m] - es.values[n]);
  }
  return es.vectors * t * es.vectors.adjoint();
}

FockOperator inv_liouvillian_spectral(const EigenSystem& es, const FockOperator& a, const WeightFunction& w) {
  return FockOperator(inv_liouvillian_spectral(es, a.dense(), w));
}

namespace {

// 2i int_0^T W(s) sin(s omega) ds for every Bohr frequency, composite rule
// with `per_panel` nodes on panels of the given width
Eigen::ArrayXd sine_transform(const WeightFunction& w, const Eigen::ArrayXd& omega, double t, double width,
                              int per_panel) {
  auto [gx, gw] = gauss_legendre(per_panel);
  const int panels = std::max(1, static_cast<int>(std::ceil(t / width)));
  const double h = t / panels;
  Eigen::ArrayXd acc = Eigen::ArrayXd::Zero(omega.size());
  for (int p = 0; p < panels; ++p) {
    for (int k = 0; k < per_panel; ++k) {
      const double s = h * (p + 0.5 * (gx[k] + 1.0));
      acc += (0.5 * h * gw[k] * w(s)) * (s * omega).sin();
    }
  }
  return 2.0 * acc;
}

}  // namespace

TimeQuadrature inv_liouvillian_time(const EigenSystem& es, const Mat& a, const WeightFunction& w,
                                    const QuadratureOptions& opt) {
  const Eigen::Index dim = a.rows();
  if (dim != es.vectors.rows()) throw std::invalid_argument("inverse Liouvillian: dimension mismatch");
  TimeQuadrature out;
  const double anorm = opnorm(a);
  if (anorm == 0.0) {
    out.value = Mat::Zero(dim, dim);
    return out;
  }
  out.truncation = opt.truncation > 0.0 ? opt.truncation : w.truncation_for(opt.tail_tol);
  out.tail = 2.0 * anorm * w.tail_bound(out.truncation);

  Eigen::ArrayXd omega(dim * dim);
  for (Eigen::Index n = 0; n < dim; ++n) {
    for (Eigen::Index m = 0; m < dim; ++m) omega[n * dim + m] = es.values[m] - es.values[n];
  }
  const double wmax = std::max(omega.abs().maxCoeff(), w.g());
  // a panel spans at most a quarter period of the fastest oscillation
  const double width = std::min(1.0, 1.5 / wmax);
  Eigen::ArrayXd fine = sine_transform(w, omega, out.truncation, width, opt.nodes_per_panel);
  Eigen::ArrayXd coarse = sine_transform(w, omega, out.truncation, width, opt.nodes_per_panel / 2);
  out.nodes = static_cast<std::size_t>(std::ceil(out.truncation / width)) * opt.nodes_per_panel;

  Mat t = es.vectors.adjoint() * a * es.vectors;
  Mat diff = t;
  for (Eigen::Index n = 0; n < dim; ++n) {
    for (Eigen::Index m = 0; m < dim; ++m) {
      const double f = fine[n * dim + m];
      diff(m, n) *= cplx(0.0, f - coarse[n * dim + m]);
      t(m, n) *= cplx(0.0, f);
    }
  }
  out.value = es.vectors * t * es.vectors.adjoint();
  out.quadrature = opnorm(diff);
  return out;
}

LocalDecomposition decompose_inverse(const Mat& inverse, const SiteSet& y, const FockSpace& space) {
  LocalDecomposition out;
  const SiteSet all = space.box().all();
  Mat prev;
  for (int m = 0;; ++m) {
    SiteSet ym = set_intersection(fatten(y, m), all);
    Mat cur = conditional_expectation(inverse, space.modes_of(ym), space.modes());
    Mat delta = m == 0 ? cur : Mat(cur - prev);
    out.norms.push_back(opnorm(delta));
    out.deltas.push_back(std::move(delta));
    out.regions.push_back(ym);
    prev = std::move(cur);
    if (ym == all) break;
  }
  return out;
}

LocalDecomposition local_decomposition(const EigenSystem& es, const FockOperator& a, const SiteSet& y,
                                       const FockSpace& space, const WeightFunction& w,
                                       const QuadratureOptions& opt) {
  if (a.parity() == Parity::odd || a.parity() == Parity::mixed)
    throw std::invalid_argument("local decomposition needs an even operator");
  if (!space.box().contains(y)) throw std::out_of_range("support outside box");
  TimeQuadrature inv = inv_liouvillian_time(es, a.dense(), w, opt);
  LocalDecomposition out = decompose_inverse(inv.value, y, space);
  out.inverse = std::move(inv);
  return out;
}

Interaction interaction_of_inverse(const Interaction& phi_b, int k, const EigenSystem& es, const WeightFunction& w) {
  Interaction out(phi_b.r());
  if (!phi_b.has_box(k)) return out;
  const FockSpace& space = phi_b.space(k);
  out.add_box(space.box());
  for (const auto& [y, op] : phi_b.terms(k)) {
    Mat inv = inv_liouvillian_spectral(es, op.dense(), w);
    LocalDecomposition dec = decompose_inverse(inv, y, space);
    for (std::size_t m = 0; m < dec.deltas.size(); ++m) {
      if (dec.norms[m] == 0.0) continue;
      out.add_unchecked(k, dec.regions[m], FockOperator(std::move(dec.deltas[m]), dec.regions[m]));
    }
  }
  return out;
}

}  // namespace gaplab
