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
#ifndef GAPLAB_SAPT_HPP
#define GAPLAB_SAPT_HPP

#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <vector>

#include "gaplab/invliou.hpp"
#include "gaplab/spectral.hpp"
#include "gaplab/weight.hpp"

namespace gaplab {

// Truncated series in (eps, eta) with operator coefficients; term (j, i)
// multiplies eps^i eta^(j-i).  Empty matrices stand for zero.
class BiSeries {
 public:
  BiSeries() = default;
  BiSeries(int max_degree, Eigen::Index dim);

  int max_degree() const { return n_; }
  Eigen::Index dim() const { return dim_; }
  bool has(int j, int i) const;
  const Mat& at(int j, int i) const;
  void add(int j, int i, const Mat& m);
  void set(int j, int i, Mat m);

  // -i[T, Y] truncated at max_degree
  static BiSeries ad(const BiSeries& t, const BiSeries& y);
  BiSeries& operator+=(const BiSeries& o);
  BiSeries& operator*=(double s);

  // homogeneous part of degree j evaluated at (eps, eta)
  Mat degree(int j, double eps, double eta) const;
  Mat evaluate(double eps, double eta, int up_to) const;

 private:
  int n_ = 0;
  Eigen::Index dim_ = 0;
  std::vector<std::vector<Mat>> c_;
};

// Time-dependent problem H^eps(t) = H0(t) + eps V(t) on a working space
// (typically one particle-number block).
struct SaptProblem {
  std::function<Mat(double t, int derivative)> h0;
  std::function<Mat(double t)> v;
  PatchRequest gap;
  bool stationary = false;  // H0 and V independent of t
  double fd_step = 2e-3;    // stencil spacing for time derivatives of the generators
};

// Everything the elimination produces at one time.
struct SaptCoefficients {
  double t = 0.0;
  int order = 0;
  EigenSystem es;
  GappedPatch patch;  // with projection
  Mat h0, v;
  Mat k;        // transport generator -I(dH0/dt)
  BiSeries a;   // A_{j,i}
  BiSeries h;   // diagonal parts h_{j,i}
  BiSeries a_dot;  // d/dt A_{j,i} for j < order

  // eps S_n = sum_{j<=n} sum_i eps^i eta^(j-i) A_{j,i}
  Mat s_n(double eps, double eta, int n) const;
  Mat h_eff(double eps, double eta, int n) const;  // sum_j h_j
};

// Builds coefficients at arbitrary times.  Orders j need the time
// derivatives of A_{l,i}, l < j, which come from a five-point central
// difference of coefficients rebuilt at t + m * fd_step; rebuilt points are
// cached per centre time.
class SaptBuilder {
 public:
  SaptBuilder(SaptProblem problem, WeightFunction w);

  const SaptProblem& problem() const { return p_; }
  const WeightFunction& weight() const { return w_; }

  SaptCoefficients construct(double t, int n);

 private:
  struct Grid;
  const SaptCoefficients& at(Grid& grid, int m, int n);
  void extend(Grid& grid, int m, SaptCoefficients& c, int n);

  SaptProblem p_;
  WeightFunction w_;
};

constexpr int sapt_max_order = 6;

// Convenience wrapper, one construction at one time.
SaptCoefficients construct_sapt(const SaptProblem& problem, const WeightFunction& w, double t, int n);

// delta_j <= min{ (1/2)^j / max_i ||A_{j,i}||, (1/2)^j, delta_{j-1} }
struct ResummedGenerator {
  std::vector<double> delta;  // delta[j-1] for j = 1..J_max
  std::vector<double> amax;   // max_i ||A_{j,i}||
  int j_max() const { return static_cast<int>(delta.size()); }
  int active_terms(double eps, double eta) const;
  // C_n = sum_{j<=n} delta_j^{-n} (j+1) max_i ||A_{j,i}|| + 2
  double constant(int n) const;
};

ResummedGenerator build_resummation(const SaptCoefficients& c);
Mat resummed_s(const SaptCoefficients& c, const ResummedGenerator& r, double eps, double eta);

// e^{i X} for Hermitian X, unitarity checked to 1e-12
Mat unitary_exp(const Mat& x);

// e^{i eps S} rho e^{-i eps S}, with eps S passed as one operator
Mat neass(const Mat& rho, const Mat& eps_s);

// Coefficients c_i with tr(P K_j(A)) / kappa = sum_i eps^i eta^(j-i) c_i, where
// sum_j K_j(A) is the expansion of e^{-i eps S} A e^{i eps S}.
std::vector<cplx> expansion_expectation(const SaptCoefficients& c, const Mat& a, int j);

// Solves i eta dV/dt = (eta K + sum_{j<=n} h_j) V from t0 to t and returns
// V rho0 V^dagger.  rho0 must be supported in the patch at t0.
struct TransportOptions {
  double tol = 1e-10;
  double max_step = 0.05;
};
Mat parallel_transport(SaptBuilder& builder, int n, const Mat& rho0, double eps, double eta, double t0, double t,
                       const TransportOptions& opt = {});

// CSV rows t,j,i,norm_A,norm_h
void write_coefficient_csv(std::ostream& os, const SaptCoefficients& c);

}  // namespace gaplab

#endif
