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


#include "gaplab/sapt.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "gaplab/evolve.hpp"

namespace gaplab {

namespace {

const cplx I1(0.0, 1.0);

Mat hermitian_part(const Mat& a) { return 0.5 * (a + a.adjoint()); }

}  // namespace

BiSeries::BiSeries(int max_degree, Eigen::Index dim) : n_(max_degree), dim_(dim) {
  c_.resize(static_cast<std::size_t>(n_ + 1));
  for (int j = 0; j <= n_; ++j) c_[j].resize(static_cast<std::size_t>(j + 1));
}

bool BiSeries::has(int j, int i) const {
  return j >= 0 && j <= n_ && i >= 0 && i <= j && c_[j][i].size() > 0;
}

const Mat& BiSeries::at(int j, int i) const {
  if (j < 0 || j > n_ || i < 0 || i > j) throw std::out_of_range("series index out of range");
  return c_[j][i];
}

void BiSeries::add(int j, int i, const Mat& m) {
  if (j > n_) return;
  if (i < 0 || i > j) throw std::out_of_range("series index out of range");
  Mat& slot = c_[j][i];
  if (slot.size() == 0) {
    slot = m;
  } else {
    slot += m;
  }
}

void BiSeries::set(int j, int i, Mat m) {
  if (j < 0 || j > n_ || i < 0 || i > j) throw std::out_of_range("series index out of range");
  c_[j][i] = std::move(m);
}

BiSeries BiSeries::ad(const BiSeries& t, const BiSeries& y) {
  BiSeries out(std::min(t.n_, y.n_), y.dim_);
  for (int j1 = 0; j1 <= t.n_; ++j1) {
    for (int i1 = 0; i1 <= j1; ++i1) {
      if (!t.has(j1, i1)) continue;
      for (int j2 = 0; j1 + j2 <= out.n_; ++j2) {
        for (int i2 = 0; i2 <= j2; ++i2) {
          if (!y.has(j2, i2)) continue;
          out.add(j1 + j2, i1 + i2, -I1 * commutator(t.at(j1, i1), y.at(j2, i2)));
        }
      }
    }
  }
  return out;
}

BiSeries& BiSeries::operator+=(const BiSeries& o) {
  for (int j = 0; j <= std::min(n_, o.n_); ++j) {
    for (int i = 0; i <= j; ++i) {
      if (o.has(j, i)) add(j, i, o.at(j, i));
    }
  }
  return *this;
}

BiSeries& BiSeries::operator*=(double s) {
  for (auto& row : c_) {
    for (auto& m : row) {
      if (m.size() > 0) m *= s;
    }
  }
  return *this;
}

Mat BiSeries::degree(int j, double eps, double eta) const {
  Mat out = Mat::Zero(dim_, dim_);
  if (j < 0 || j > n_) return out;
  for (int i = 0; i <= j; ++i) {
    if (has(j, i)) out += std::pow(eps, i) * std::pow(eta, j - i) * c_[j][i];
  }
  return out;
}

Mat BiSeries::evaluate(double eps, double eta, int up_to) const {
  Mat out = Mat::Zero(dim_, dim_);
  for (int j = 0; j <= std::min(up_to, n_); ++j) out += degree(j, eps, eta);
  return out;
}

Mat SaptCoefficients::s_n(double eps, double eta, int n) const {
  if (n > order) throw std::out_of_range("generator requested beyond the constructed order");
  Mat out = Mat::Zero(h0.rows(), h0.cols());
  for (int j = 1; j <= n; ++j) out += a.degree(j, eps, eta);
  return out;
}

Mat SaptCoefficients::h_eff(double eps, double eta, int n) const {
  if (n > order) throw std::out_of_range("generator requested beyond the constructed order");
  Mat out = Mat::Zero(h0.rows(), h0.cols());
  for (int j = 1; j <= n; ++j) out += h.degree(j, eps, eta);
  return out;
}

struct SaptBuilder::Grid {
  double centre = 0.0;
  std::map<int, SaptCoefficients> points;
};

SaptBuilder::SaptBuilder(SaptProblem problem, WeightFunction w) : p_(std::move(problem)), w_(std::move(w)) {
  if (!p_.h0 || !p_.v) throw std::invalid_argument("problem needs H0 and V");
  if (!(p_.fd_step > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
}

SaptCoefficients SaptBuilder::construct(double t, int n) {
  if (n < 0 || n > sapt_max_order) throw std::out_of_range("order must lie in [0, " + std::to_string(sapt_max_order) + "]");
  Grid grid;
  grid.centre = t;
  return at(grid, 0, n);
}

const SaptCoefficients& SaptBuilder::at(Grid& grid, int m, int n) {
  auto it = grid.points.find(m);
  if (it == grid.points.end()) {
    SaptCoefficients c;
    c.t = grid.centre + m * p_.fd_step;
    c.h0 = hermitian_part(p_.h0(c.t, 0));
    c.v = hermitian_part(p_.v(c.t));
    c.es = diagonalize(c.h0);
    c.patch = find_gapped_patch(c.es, p_.gap);
    const Eigen::Index dim = c.h0.rows();
    if (p_.stationary) {
      c.k = Mat::Zero(dim, dim);
    } else {
      c.k = -hermitian_part(inv_liouvillian_spectral(c.es, p_.h0(c.t, 1), w_));
    }
    c.a = BiSeries(sapt_max_order, dim);
    c.h = BiSeries(sapt_max_order, dim);
    c.a_dot = BiSeries(sapt_max_order, dim);
    it = grid.points.emplace(m, std::move(c)).first;
  }
  if (it->second.order < n) extend(grid, m, it->second, n);
  return it->second;
}

void SaptBuilder::extend(Grid& grid, int m, SaptCoefficients& c, int n) {
  const Eigen::Index dim = c.h0.rows();
  for (int j = c.order + 1; j <= n; ++j) {
    // time derivatives of the lower orders
    if (!p_.stationary) {
      for (int l = 1; l < j; ++l) {
        if (c.a_dot.has(l, 0) || c.a_dot.has(l, l)) continue;
        const double h = p_.fd_step;
        for (int i = 0; i <= l; ++i) {
          auto term = [&](int off) -> Mat {
            const SaptCoefficients& o = at(grid, m + off, l);
            return o.a.has(l, i) ? o.a.at(l, i) : Mat::Zero(dim, dim);
          };
          Mat d = (-term(2) + 8.0 * term(1) - 8.0 * term(-1) + term(-2)) / (12.0 * h);
          c.a_dot.set(l, i, std::move(d));
        }
      }
    }

    BiSeries t(j, dim);
    for (int l = 1; l < j; ++l) {
      for (int i = 0; i <= l; ++i) {
        if (c.a.has(l, i)) t.set(l, i, c.a.at(l, i));
      }
    }
    BiSeries y(j, dim);
    y.set(0, 0, c.h0);
    y.set(1, 1, c.v);
    BiSeries ydot(j, dim);
    for (int l = 1; l < j; ++l) {
      for (int i = 0; i <= l; ++i) {
        if (c.a_dot.has(l, i)) ydot.set(l + 1, i, c.a_dot.at(l, i));
      }
    }

    BiSeries r = y;
    BiSeries term = y;
    for (int k = 1; k <= j; ++k) {
      term = BiSeries::ad(t, term);
      term *= 1.0 / k;
      r += term;
    }
    BiSeries dterm = ydot;
    r += ydot;
    for (int k = 1; k <= j; ++k) {
      dterm = BiSeries::ad(t, dterm);
      dterm *= 1.0 / (k + 1);
      r += dterm;
    }

    for (int i = 0; i <= j; ++i) {
      Mat x = r.has(j, i) ? r.at(j, i) : Mat::Zero(dim, dim);
      if (j == 1 && i == 0) x -= c.k;
      x = hermitian_part(x);
      Mat aj = hermitian_part(inv_liouvillian_spectral(c.es, x, w_));
      Mat hj = hermitian_part(x + I1 * commutator(c.h0, aj));
      c.a.set(j, i, std::move(aj));
      c.h.set(j, i, std::move(hj));
    }
    c.order = j;
  }
}

SaptCoefficients construct_sapt(const SaptProblem& problem, const WeightFunction& w, double t, int n) {
  SaptBuilder b(problem, w);
  return b.construct(t, n);
}

int ResummedGenerator::active_terms(double eps, double eta) const {
  int count = 0;
  for (int j = 1; j <= j_max(); ++j) {
    if (eps <= delta[j - 1] && eta <= delta[j - 1]) count = j;
  }
  return count;
}

double ResummedGenerator::constant(int n) const {
  double c = 2.0;
  for (int j = 1; j <= std::min(n, j_max()); ++j) c += std::pow(delta[j - 1], -n) * (j + 1) * amax[j - 1];
  return c;
}

ResummedGenerator build_resummation(const SaptCoefficients& c) {
  ResummedGenerator r;
  const int jmax = std::min(4, c.order);
  double prev = 1.0;
  for (int j = 1; j <= jmax; ++j) {
    double amax = 0.0;
    for (int i = 0; i <= j; ++i) {
      if (c.a.has(j, i)) amax = std::max(amax, opnorm(c.a.at(j, i)));
    }
    double d = std::min(std::pow(0.5, j), prev);
    if (amax > 0.0) d = std::min(d, std::pow(0.5, j) / amax);
    r.delta.push_back(d);
    r.amax.push_back(amax);
    prev = d;
  }
  return r;
}

Mat resummed_s(const SaptCoefficients& c, const ResummedGenerator& r, double eps, double eta) {
  const int active = r.active_terms(eps, eta);
  Mat out = Mat::Zero(c.h0.rows(), c.h0.cols());
  for (int j = 1; j <= active; ++j) out += c.a.degree(j, eps, eta);
  return out;
}

Mat unitary_exp(const Mat& x) {
  Mat u = expm_hermitian(x, I1);
  const double defect = (u.adjoint() * u - Mat::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
  if (defect > 1e-12) throw BoundViolation("exponential of the generator is not unitary");
  return u;
}

Mat neass(const Mat& rho, const Mat& eps_s) {
  const Mat u = unitary_exp(eps_s);
  return u * rho * u.adjoint();
}

std::vector<cplx> expansion_expectation(const SaptCoefficients& c, const Mat& a, int j) {
  if (j > c.order) throw std::out_of_range("expansion requested beyond the constructed order");
  const Eigen::Index dim = c.h0.rows();
  BiSeries t(j, dim);
  for (int l = 1; l <= j; ++l) {
    for (int i = 0; i <= l; ++i) {
      if (c.a.has(l, i)) t.set(l, i, c.a.at(l, i));
    }
  }
  BiSeries sum(j, dim);
  sum.set(0, 0, a);
  BiSeries term = sum;
  for (int k = 1; k <= j; ++k) {
    term = BiSeries::ad(t, term);
    term *= 1.0 / k;
    sum += term;
  }
  const Mat& p = c.patch.projection;
  std::vector<cplx> out(static_cast<std::size_t>(j + 1), 0.0);
  for (int i = 0; i <= j; ++i) {
    if (sum.has(j, i)) out[i] = (p * sum.at(j, i)).trace() / static_cast<double>(c.patch.kappa);
  }
  return out;
}

Mat parallel_transport(SaptBuilder& builder, int n, const Mat& rho0, double eps, double eta, double t0, double t,
                       const TransportOptions& opt) {
  const SaptCoefficients c0 = builder.construct(t0, n);
  const Mat& p0 = c0.patch.projection;
  if ((rho0 - p0 * rho0 * p0).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("initial state is not supported in the spectral patch");
  }
  TimeOperator gen = [&](double s) {
    const SaptCoefficients c = builder.construct(s, n);
    return Mat(eta * c.k + c.h0 + c.h_eff(eps, eta, n));
  };
  PropagationOptions po;
  po.tol = opt.tol;
  po.max_step = opt.max_step;
  const Propagator v = propagate(gen, eta, t0, t, po);
  return v.u * rho0 * v.u.adjoint();
}

void write_coefficient_csv(std::ostream& os, const SaptCoefficients& c) {
  os << "t,j,i,norm_A,norm_h\r\n";
  for (int j = 1; j <= c.order; ++j) {
    for (int i = 0; i <= j; ++i) {
      const double na = c.a.has(j, i) ? opnorm(c.a.at(j, i)) : 0.0;
      const double nh = c.h.has(j, i) ? opnorm(c.h.at(j, i)) : 0.0;
      os << c.t << ',' << j << ',' << i << ',' << na << ',' << nh << "\r\n";
    }
  }
}

}  // namespace gaplab
