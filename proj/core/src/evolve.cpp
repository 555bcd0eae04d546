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


#include "gaplab/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gaplab/spectral.hpp"

namespace gaplab {

Mat expm_hermitian(const Mat& h, cplx z) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (h + h.adjoint()));
  Vec d = (z * es.eigenvalues().cast<cplx>()).array().exp();
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

Vec expmv(const Mat& h, const Vec& v, cplx z) {
  // infinity-norm bound on ||z H|| sets the number of substeps
  const double scale = std::abs(z) * h.cwiseAbs().rowwise().sum().maxCoeff();
  const int sub = std::max(1, static_cast<int>(std::ceil(scale)));
  const cplx zs = z / static_cast<double>(sub);
  Vec out = v;
  for (int s = 0; s < sub; ++s) {
    Vec term = out;
    Vec acc = out;
    const double vn = out.norm();
    for (int k = 1; k < 60; ++k) {
      term = (zs / static_cast<double>(k)) * (h * term);
      acc += term;
      if (term.norm() <= 1e-17 * vn) break;
    }
    out = std::move(acc);
  }
  return out;
}

namespace {

constexpr double sqrt3 = 1.7320508075688772;
constexpr double c1 = 0.5 - sqrt3 / 6.0;
constexpr double c2 = 0.5 + sqrt3 / 6.0;
constexpr double a1 = 0.25 + sqrt3 / 6.0;
constexpr double a2 = 0.25 - sqrt3 / 6.0;

// one CF4 step applied to the columns of x
template <typename Apply>
void cf4_step(const TimeOperator& h, double eta, double t, double dt, Apply&& apply) {
  const Mat h1 = h(t + c1 * dt);
  const Mat h2 = h(t + c2 * dt);
  const cplx z(0.0, -dt / eta);
  // the factor weighted towards the earlier node acts first
  apply(Mat(a1 * h1 + a2 * h2), z);
  apply(Mat(a2 * h1 + a1 * h2), z);
}

// generic adaptive driver; State is Mat (unitary) or Vec (state vector)
template <typename State, typename Exp>
State integrate(const TimeOperator& h, double eta, double t0, double t1, State x, const PropagationOptions& opt,
                double& dt, std::size_t& steps, Exp&& expo) {
  if (t1 == t0) return x;
  const double span = t1 - t0;
  const double dir = span > 0 ? 1.0 : -1.0;
  double t = t0;
  if (dt <= 0.0) dt = std::min(opt.max_step, std::abs(span)) / 4.0;
  while (dir * (t1 - t) > 1e-15 * std::abs(span)) {
    dt = std::min({dt, opt.max_step, std::abs(t1 - t)});
    auto step = [&](State y, double from, double len) {
      cf4_step(h, eta, from, dir * len, [&](const Mat& gen, cplx z) { y = expo(gen, y, z); });
      return y;
    };
    State big = step(x, t, dt);
    State half = step(step(x, t, 0.5 * dt), t + dir * 0.5 * dt, 0.5 * dt);
    const double err = (big - half).norm() / 15.0;
    // rounding floor of the step-doubling difference
    const double allowed = opt.tol * dt + 64.0 * std::numeric_limits<double>::epsilon() * x.norm();
    if (err <= allowed || dt <= opt.min_step * std::abs(span)) {
      if (err > allowed) throw StepUnderflow("step size underflow in time propagation");
      x = std::move(half);
      t += dir * dt;
      ++steps;
      const double grow = err == 0.0 ? 2.0 : std::min(2.0, 0.9 * std::pow(allowed / err, 0.2));
      dt *= std::max(grow, 0.2);
    } else {
      dt *= std::max(0.2, 0.9 * std::pow(allowed / err, 0.2));
    }
  }
  return x;
}

}  // namespace

Propagator propagate(const TimeOperator& h, double eta, double t0, double t1, const PropagationOptions& opt) {
  if (!(eta > 0.0)) throw std::invalid_argument("propagate: eta must be positive");
  Propagator p;
  p.eta = eta;
  p.t0 = t0;
  p.t1 = t1;
  const Mat h0 = h(t0);
  double dt = opt.initial_step;
  p.u = integrate(h, eta, t0, t1, Mat(Mat::Identity(h0.rows(), h0.cols())), opt, dt, p.steps,
                  [](const Mat& gen, const Mat& y, cplx z) { return Mat(expm_hermitian(gen, z) * y); });
  p.unitarity_defect = (p.u.adjoint() * p.u - Mat::Identity(p.u.rows(), p.u.cols())).cwiseAbs().maxCoeff();
  return p;
}

std::vector<Vec> propagate_state(const TimeOperator& h, const Vec& psi0, double eta, double t0,
                                 const std::vector<double>& times, const PropagationOptions& opt,
                                 std::size_t* steps) {
  if (!(eta > 0.0)) throw std::invalid_argument("propagate: eta must be positive");
  std::vector<Vec> out;
  Vec x = psi0;
  double t = t0;
  double dt = opt.initial_step;
  std::size_t count = 0;
  for (double target : times) {
    if (target < t) throw std::invalid_argument("propagate_state: times must be ascending and >= t0");
    x = integrate(h, eta, t, target, x, opt, dt, count,
                  [](const Mat& gen, const Vec& y, cplx z) { return expmv(gen, y, z); });
    t = target;
    out.push_back(x);
  }
  if (steps) *steps = count;
  return out;
}

Mat heisenberg(const Propagator& u, const Mat& a) { return u.u.adjoint() * a * u.u; }

FockOperator heisenberg(const Propagator& u, const FockOperator& a) {
  return FockOperator(heisenberg(u, a.dense()), a.support());
}

namespace {

// Calls visit(basis, k, block) with the evolved block of A on every
// particle-number sector where A is non-zero, for each requested time k.
using SectorVisitor = std::function<void(const std::vector<std::size_t>&, std::size_t, const Mat&)>;

void evolve_sectors(const std::function<FockOperator(double)>& h, bool stationary, const FockOperator& a,
                    const FockSpace& space, double eta, double t0, const std::vector<double>& times,
                    const PropagationOptions& opt, const SectorVisitor& visit) {
  if (!is_number_conserving(a)) throw std::invalid_argument("sector evolution needs a number-conserving observable");
  const FockOperator h_fixed = stationary ? h(t0) : FockOperator();
  for (int n = 0; n <= space.modes(); ++n) {
    const std::vector<std::size_t> basis = sector_basis(space, n);
    const Mat ablk = restrict_to(a, basis);
    if (ablk.cwiseAbs().maxCoeff() == 0.0) continue;
    if (stationary) {
      const EigenSystem es = diagonalize(restrict_to(h_fixed, basis));
      const Mat ae = es.vectors.adjoint() * ablk * es.vectors;
      for (std::size_t k = 0; k < times.size(); ++k) {
        // U^dagger A U in the eigenbasis: element (m, n) picks up e^{i (E_m - E_n) tau}
        const double tau = (times[k] - t0) / eta;
        Mat ph = ae;
        for (Eigen::Index j = 0; j < ph.cols(); ++j) {
          for (Eigen::Index i = 0; i < ph.rows(); ++i) ph(i, j) *= std::polar(1.0, (es.values[i] - es.values[j]) * tau);
        }
        visit(basis, k, Mat(es.vectors * ph * es.vectors.adjoint()));
      }
      continue;
    }
    TimeOperator hb = [&](double t) { return restrict_to(h(t), basis); };
    Mat u = Mat::Identity(ablk.rows(), ablk.cols());
    double t = t0;
    for (std::size_t k = 0; k < times.size(); ++k) {
      if (times[k] != t) {
        u = propagate(hb, eta, t, times[k], opt).u * u;
        t = times[k];
      }
      visit(basis, k, Mat(u.adjoint() * ablk * u));
    }
  }
}

std::vector<Mat> assemble(const std::function<FockOperator(double)>& h, bool stationary, const FockOperator& a,
                          const FockSpace& space, double eta, double t0, const std::vector<double>& times,
                          const PropagationOptions& opt) {
  const auto dim = static_cast<Eigen::Index>(space.dim());
  std::vector<Mat> out(times.size(), Mat::Zero(dim, dim));
  evolve_sectors(h, stationary, a, space, eta, t0, times, opt,
                 [&](const std::vector<std::size_t>& basis, std::size_t k, const Mat& ev) {
                   for (Eigen::Index j = 0; j < ev.cols(); ++j) {
                     for (Eigen::Index i = 0; i < ev.rows(); ++i) out[k](basis[i], basis[j]) = ev(i, j);
                   }
                 });
  return out;
}

}  // namespace

std::vector<Mat> heisenberg_sectors(const std::function<FockOperator(double)>& h, const FockOperator& a,
                                    const FockSpace& space, double eta, double t0,
                                    const std::vector<double>& times, const PropagationOptions& opt) {
  return assemble(h, false, a, space, eta, t0, times, opt);
}

std::vector<Mat> heisenberg_sectors_static(const FockOperator& h, const FockOperator& a, const FockSpace& space,
                                           double eta, double t0, const std::vector<double>& times) {
  return assemble([&](double) { return h; }, true, a, space, eta, t0, times, {});
}

std::vector<double> tracking_error(SaptBuilder& builder, int n, double eps, double eta, const Mat& a, double t0,
                                   const std::vector<double>& times, const TrackingOptions& opt) {
  const SaptProblem& p = builder.problem();
  const SaptCoefficients c0 = builder.construct(t0, n);
  const int kappa = c0.patch.kappa;
  const Mat u0 = unitary_exp(c0.s_n(eps, eta, n));
  TimeOperator h = [&](double t) { return Mat(p.h0(t, 0) + eps * p.v(t)); };

  std::vector<double> ordered = times;
  std::sort(ordered.begin(), ordered.end());
  std::vector<cplx> exact;
  if (kappa == 1) {
    const Vec psi0 = u0 * c0.es.vectors.col(static_cast<Eigen::Index>(c0.patch.first));
    for (const Vec& psi : propagate_state(h, psi0, eta, t0, ordered, opt.propagation)) exact.push_back(psi.dot(a * psi));
  } else {
    const Mat rho0 = u0 * c0.patch.projection * u0.adjoint() / static_cast<double>(kappa);
    double from = t0;
    Mat u = Mat::Identity(rho0.rows(), rho0.cols());
    for (double t : ordered) {
      u = propagate(h, eta, from, t, opt.propagation).u * u;
      from = t;
      exact.push_back((u * rho0 * u.adjoint() * a).trace());
    }
  }
  std::vector<double> out;
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    const SaptCoefficients c = builder.construct(ordered[i], n);
    const Mat pi = neass(c.patch.projection / static_cast<double>(c.patch.kappa), c.s_n(eps, eta, n));
    out.push_back(std::abs(exact[i] - (pi * a).trace()));
  }
  return out;
}

std::vector<LrRow> lr_data(const std::function<FockOperator(double)>& h, const FockSpace& space, const LrSetup& setup,
                           const std::vector<double>& times, const PropagationOptions& opt) {
  if (!set_intersection(setup.x, setup.y).empty()) throw std::invalid_argument("supports of A and B overlap");
  const Box& box = space.box();
  LrInput in;
  in.norm_a = norm(setup.a);
  in.norm_b = norm(setup.b);
  in.phi_norm = setup.phi_norm;
  in.c_zeta = convolution_constant(setup.zeta, box);
  in.f_sum = f_sum(setup.zeta, box, setup.x, setup.y);
  const bool exponential = setup.zeta.kind() == DecayFunction::Kind::exponential;
  const double a = setup.zeta.rate();
  const double f1 = gamma_norm(DecayFunction::constant(), box);
  int dist = box.size();
  for (const Point& p : setup.x) {
    for (const Point& q : setup.y) dist = std::min(dist, box.distance(p, q));
  }
  const int min_size = static_cast<int>(std::min(setup.x.size(), setup.y.size()));
  const double v = exponential ? lr_velocity(a, in.c_zeta, in.phi_norm) : 0.0;

  if (!is_number_conserving(setup.b)) throw std::invalid_argument("B must conserve the particle number");
  // both operators conserve the particle number, so the norm is a maximum over blocks
  std::vector<double> lhs(times.size(), 0.0);
  evolve_sectors(h, setup.stationary, setup.a, space, setup.eta, setup.s, times, opt,
                 [&](const std::vector<std::size_t>& basis, std::size_t k, const Mat& ev) {
                   const Mat c = I_unit * commutator(ev, restrict_to(setup.b, basis));
                   lhs[k] = std::max(lhs[k], opnorm_hermitian(Mat(0.5 * (c + c.adjoint()))));
                 });
  std::vector<LrRow> out;
  for (std::size_t i = 0; i < times.size(); ++i) {
    LrRow r;
    r.t = times[i];
    const double tau = std::abs(times[i] - setup.s) / setup.eta;
    r.lhs = lhs[i];
    r.rhs_general = lr_general_bound(in, tau);
    r.rhs_exponential = exponential ? lr_exponential_bound(in, a, f1, min_size, dist, tau)
                                    : std::numeric_limits<double>::quiet_NaN();
    r.velocity = v;
    r.inside_cone = exponential && v * tau <= (1.0 - setup.margin) * dist;
    const double bound = exponential ? std::min(r.rhs_general, r.rhs_exponential) : r.rhs_general;
    if (r.lhs > bound * (1.0 + 1e-12) + 1e-12) {
      throw BoundViolation("Lieb-Robinson bound violated at t = " + std::to_string(r.t));
    }
    out.push_back(r);
  }
  return out;
}

}  // namespace gaplab
