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


#include "gaplab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

namespace gaplab {

EigenSystem diagonalize(const Mat& h) {
  if (h.rows() != h.cols()) throw std::invalid_argument("diagonalize: matrix must be square");
  EigenSystem out;
  if (h.rows() == 0) return out;
  Mat herm = 0.5 * (h + h.adjoint());
  if ((h - herm).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, h.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("diagonalize: operator is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Mat> solver(herm);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
  out.values = solver.eigenvalues();
  out.vectors = solver.eigenvectors();
  Mat r = herm * out.vectors - out.vectors * out.values.cast<cplx>().asDiagonal();
  out.residual = r.colwise().norm().maxCoeff();
  return out;
}

EigenSystem diagonalize(const FockOperator& h) {
  if (!h.hermitian()) throw std::invalid_argument("diagonalize: operator is not Hermitian");
  return diagonalize(h.dense());
}

std::vector<SectorSpectrum> diagonalize_sectors(const FockOperator& h, const FockSpace& space) {
  if (!h.hermitian()) throw std::invalid_argument("diagonalize: operator is not Hermitian");
  if (!is_number_conserving(h)) throw std::invalid_argument("sector diagonalization needs a number-conserving operator");
  std::vector<SectorSpectrum> out;
  for (int n = 0; n <= space.modes(); ++n) {
    SectorSpectrum s;
    s.particles = n;
    s.basis = sector_basis(space, n);
    s.es = diagonalize(restrict_to(h, s.basis));
    out.push_back(std::move(s));
  }
  return out;
}

RVec merged_values(const std::vector<SectorSpectrum>& sectors) {
  std::vector<double> v;
  for (const auto& s : sectors) v.insert(v.end(), s.es.values.data(), s.es.values.data() + s.es.values.size());
  std::sort(v.begin(), v.end());
  return Eigen::Map<RVec>(v.data(), static_cast<Eigen::Index>(v.size()));
}

namespace {

GappedPatch bottom_patch(const RVec& e, const PatchRequest& req) {
  const auto n = static_cast<std::size_t>(e.size());
  for (std::size_t kappa = 1; kappa <= n; ++kappa) {
    if (e[kappa - 1] - e[0] > req.g_tilde) break;
    const double sep = kappa == n ? std::numeric_limits<double>::infinity() : e[kappa] - e[kappa - 1];
    if (sep <= degeneracy_tol) continue;
    if (sep >= req.g_min) {
      GappedPatch p;
      p.first = 0;
      p.kappa = static_cast<int>(kappa);
      p.f_minus = e[0];
      p.f_plus = e[kappa - 1];
      p.g = sep;
      p.g_tilde = req.g_tilde;
      return p;
    }
  }
  std::ostringstream os;
  os << "no initial cluster of width <= " << req.g_tilde << " separated by >= " << req.g_min;
  throw NoGap(os.str());
}

GappedPatch window_patch(const RVec& e, const PatchRequest& req) {
  const auto n = static_cast<std::size_t>(e.size());
  std::size_t lo = n, hi = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (e[i] >= req.f_minus - degeneracy_tol && e[i] <= req.f_plus + degeneracy_tol) {
      lo = std::min(lo, i);
      hi = std::max(hi, i + 1);
    }
  }
  if (lo >= hi) throw NoGap("no eigenvalue inside the requested window");
  if (e[hi - 1] - e[lo] > req.g_tilde) throw NoGap("window contents wider than g_tilde");
  double sep = std::numeric_limits<double>::infinity();
  if (lo > 0) sep = std::min(sep, e[lo] - e[lo - 1]);
  if (hi < n) sep = std::min(sep, e[hi] - e[hi - 1]);
  if (sep < req.g_min) {
    std::ostringstream os;
    os << "window separated by " << sep << " < " << req.g_min;
    throw NoGap(os.str());
  }
  GappedPatch p;
  p.first = lo;
  p.kappa = static_cast<int>(hi - lo);
  p.f_minus = e[lo];
  p.f_plus = e[hi - 1];
  p.g = sep;
  p.g_tilde = req.g_tilde;
  return p;
}

}  // namespace

GappedPatch find_gapped_patch(const RVec& sorted, const PatchRequest& req) {
  if (!(req.g_min > req.g_tilde && req.g_tilde > 0.0))
    throw std::invalid_argument("gap request needs g_min > g_tilde > 0");
  if (sorted.size() == 0) throw NoGap("empty spectrum");
  GappedPatch p = req.mode == PatchMode::bottom ? bottom_patch(sorted, req) : window_patch(sorted, req);
  if (p.kappa > req.kappa_max)
    throw MultiplicityExceeded("patch multiplicity " + std::to_string(p.kappa) + " exceeds " +
                               std::to_string(req.kappa_max));
  return p;
}

Mat spectral_projection(const EigenSystem& es, std::size_t first, std::size_t count) {
  const Mat v = es.vectors.middleCols(static_cast<Eigen::Index>(first), static_cast<Eigen::Index>(count));
  return v * v.adjoint();
}

GappedPatch find_gapped_patch(const EigenSystem& es, const PatchRequest& req) {
  GappedPatch p = find_gapped_patch(es.values, req);
  p.projection = spectral_projection(es, p.first, static_cast<std::size_t>(p.kappa));
  return p;
}

SectorPatch find_gapped_patch(const std::vector<SectorSpectrum>& sectors, const PatchRequest& req) {
  SectorPatch out;
  out.patch = find_gapped_patch(merged_values(sectors), req);
  const double lo = out.patch.f_minus - degeneracy_tol;
  const double hi = out.patch.f_plus + degeneracy_tol;
  int holder = -1;
  for (std::size_t s = 0; s < sectors.size(); ++s) {
    const RVec& v = sectors[s].es.values;
    std::size_t first = v.size(), count = 0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if (v[i] >= lo && v[i] <= hi) {
        first = std::min(first, static_cast<std::size_t>(i));
        ++count;
      }
    }
    if (count == 0) continue;
    if (holder >= 0) {
      out.sector = -1;
      out.local_projection.resize(0, 0);
      return out;
    }
    holder = static_cast<int>(s);
    out.local_projection = spectral_projection(sectors[s].es, first, count);
  }
  out.sector = holder;
  return out;
}

void write_spectrum_csv_header(std::ostream& os) { os << "k,t,index,eigenvalue,in_patch\r\n"; }

void write_spectrum_csv(std::ostream& os, int k, double t, const RVec& sorted, const GappedPatch& patch) {
  os.precision(17);
  for (Eigen::Index i = 0; i < sorted.size(); ++i) {
    const auto idx = static_cast<std::size_t>(i);
    const bool in = idx >= patch.first && idx < patch.first + static_cast<std::size_t>(patch.kappa);
    os << k << ',' << t << ',' << i << ',' << sorted[i] << ',' << (in ? 1 : 0) << "\r\n";
  }
}

}  // namespace gaplab
