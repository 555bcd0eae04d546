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
#ifndef GAPLAB_EVOLVE_HPP
#define GAPLAB_EVOLVE_HPP

#include <functional>
#include <vector>

#include "gaplab/bounds.hpp"
#include "gaplab/fock.hpp"
#include "gaplab/sapt.hpp"

namespace gaplab {

using TimeOperator = std::function<Mat(double t)>;

// exp(z H) for Hermitian H and complex z, through the eigendecomposition
Mat expm_hermitian(const Mat& h, cplx z);
// exp(z H) v by a Taylor series with substeps of unit scaled norm
Vec expmv(const Mat& h, const Vec& v, cplx z);

struct PropagationOptions {
  double tol = 1e-10;       // error per unit of t
  double max_step = 0.25;   // in t
  double min_step = 1e-12;  // relative to the interval, below this the step underflows
  double initial_step = 0.0;
};

// U(t1, t0) for i eta dU/dt = H(t) U in scaled time.
struct Propagator {
  Mat u;
  double eta = 1.0;
  double t0 = 0.0, t1 = 0.0;
  std::size_t steps = 0;
  double unitarity_defect = 0.0;
};

class StepUnderflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Fourth-order commutator-free exponential integrator, two exponentials per
// step at the Gauss nodes, step size from step-doubling error estimates.
Propagator propagate(const TimeOperator& h, double eta, double t0, double t1, const PropagationOptions& opt = {});
// Same scheme on a state vector; returns the state at every requested time
// (ascending, all >= t0).
std::vector<Vec> propagate_state(const TimeOperator& h, const Vec& psi0, double eta, double t0,
                                 const std::vector<double>& times, const PropagationOptions& opt = {},
                                 std::size_t* steps = nullptr);

// U^dagger A U
Mat heisenberg(const Propagator& u, const Mat& a);
FockOperator heisenberg(const Propagator& u, const FockOperator& a);

// Heisenberg evolution of a number-conserving A under a number-conserving
// H(t), computed block by block on the particle-number sectors.  Returns the
// evolved operator at every requested time.
std::vector<Mat> heisenberg_sectors(const std::function<FockOperator(double)>& h, const FockOperator& a,
                                    const FockSpace& space, double eta, double t0,
                                    const std::vector<double>& times, const PropagationOptions& opt = {});
// Same for a time-independent H, through one diagonalisation per sector.
std::vector<Mat> heisenberg_sectors_static(const FockOperator& h, const FockOperator& a, const FockSpace& space,
                                           double eta, double t0, const std::vector<double>& times);

// |tr((rho(t) - Pi_n(t)) A)| at every requested time.  rho is the true
// evolution under H0 + eps V of Pi_n(t0) = e^{i eps S_n} P rho_0 e^{-i eps S_n}
// with rho_0 = P(t0) / kappa.  For that initial state the effective transport
// returns P(t) / kappa exactly, so Pi_n(t) is built from the spectral
// projection.  kappa = 1 runs on a state vector, otherwise on the propagator.
struct TrackingOptions {
  PropagationOptions propagation{1e-11, 0.25, 1e-12, 0.0};
};
std::vector<double> tracking_error(SaptBuilder& builder, int n, double eps, double eta, const Mat& a, double t0,
                                   const std::vector<double>& times, const TrackingOptions& opt = {});

struct LrRow {
  double t = 0.0;
  double lhs = 0.0;
  double rhs_general = 0.0;
  double rhs_exponential = 0.0;  // NaN unless the decay is exponential
  double velocity = 0.0;
  bool inside_cone = false;      // v tau <= (1 - margin) dist
};

struct LrSetup {
  FockOperator a, b;
  SiteSet x, y;
  DecayFunction zeta = DecayFunction::exponential(1.0);
  double phi_norm = 0.0;  // sup_t ||Phi_H0(t)||_{zeta,0}
  double eta = 1.0;
  double s = 0.0;         // start time
  double margin = 0.2;
  bool stationary = false;  // H(t) = H(s), evolved with exact exponentials
};

// Exact ||[U(t,s)^* A U(t,s), B]|| on every sector against both bounds.
// Throws BoundViolation if the exact value exceeds the smaller bound.
std::vector<LrRow> lr_data(const std::function<FockOperator(double)>& h, const FockSpace& space, const LrSetup& setup,
                           const std::vector<double>& times, const PropagationOptions& opt = {});

}  // namespace gaplab

#endif
