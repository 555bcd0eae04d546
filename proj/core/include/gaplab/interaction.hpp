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
#ifndef GAPLAB_INTERACTION_HPP
#define GAPLAB_INTERACTION_HPP

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "gaplab/envelope.hpp"
#include "gaplab/fock.hpp"

namespace gaplab {

// zeta(r): constant 1, exp(-a r), or the sub-exponential exp(-a r^beta)
class DecayFunction {
 public:
  enum class Kind { constant, exponential, subexponential };

  static DecayFunction constant() { return DecayFunction(Kind::constant, 0.0, 1.0); }
  static DecayFunction exponential(double a) { return DecayFunction(Kind::exponential, a, 1.0); }
  static DecayFunction subexponential(double a, double beta) {
    return DecayFunction(Kind::subexponential, a, beta);
  }

  double operator()(double r) const;
  Kind kind() const { return kind_; }
  double rate() const { return a_; }
  double beta() const { return beta_; }
  std::string name() const;

  bool claims_log_superadditive() const { return true; }
  bool claims_class_s() const { return kind_ != Kind::constant; }

 private:
  DecayFunction(Kind k, double a, double beta);
  Kind kind_;
  double a_;
  double beta_;
};

DecayFunction parse_decay(const std::string& spec);

// F_zeta(r) = zeta(r) / (1 + r)^(d + 1)
double f_zeta(const DecayFunction& zeta, double r, int d);

// zeta(r+s) >= zeta(r) zeta(s) on {0..rmax}^2
bool check_log_superadditive(const DecayFunction& zeta, int rmax);
// r^n zeta(r) peaks strictly inside [0, rmax] for every n <= nmax
bool check_class_s(const DecayFunction& zeta, int rmax, int nmax = 8);

// sup_y sum_x F(d(x,y)) on the box
double gamma_norm(const DecayFunction& zeta, const Box& box);
// sup_{x,y} sum_z F(d(x,z)) F(d(z,y)) / F(d(x,y)) on the box
double convolution_constant(const DecayFunction& zeta, const Box& box);

// Interaction terms on a family of boxes.  Every term lives on the Fock
// space of its own box.
class Interaction {
 public:
  Interaction() = default;
  explicit Interaction(int r) : r_(r) {}

  int r() const { return r_; }
  std::vector<int> radii() const;
  bool has_box(int k) const { return spaces_.count(k) > 0; }
  const FockSpace& space(int k) const;
  const std::map<SiteSet, FockOperator>& terms(int k) const;
  double term_norm(int k, const SiteSet& x) const;

  void add_box(const Box& box);
  // Terms with equal support accumulate.  Validation checks the term is
  // Hermitian, even and number conserving.
  void add(int k, const SiteSet& x, const FockOperator& op);
  void add_unchecked(int k, const SiteSet& x, const FockOperator& op);

  Interaction scaled(cplx s) const;

 private:
  void insert(int k, const SiteSet& x, const FockOperator& op);

  int r_ = 1;
  std::map<int, FockSpace> spaces_;
  std::map<int, std::map<SiteSet, FockOperator>> terms_;
  mutable std::map<int, std::map<SiteSet, double>> norms_;
};

// sum_f envelope_f(t) Phi_f
struct TimedInteraction {
  struct Family {
    std::string name;
    Envelope envelope;
    Interaction phi;
  };
  std::vector<Family> families;

  // d^i/dt^i of the interaction at time t on box k
  Interaction at(double t, int k, int derivative = 0) const;
  bool stationary() const;
};

// Site potential v^{Lambda_k}(x), optional envelope.
struct LipschitzPotential {
  std::string name;
  std::function<double(int k, const Point& x)> v;
  Envelope envelope = Envelope::constant(1.0);

  double operator()(int k, const Point& x) const { return v(k, x); }
};

LipschitzPotential linear_potential(double slope, int axis = 0);
LipschitzPotential constant_potential(double c);

double interaction_norm(const Interaction& phi, const DecayFunction& zeta, int n, const std::vector<int>& k_range);
// norm of Phi^{Lambda_l} restricted to subsets of Lambda_M with the l1 metric
double restricted_norm(const Interaction& phi, int l, const DecayFunction& zeta, int n, int m);

FockOperator assemble(const Interaction& phi, int k);
FockOperator assemble(const TimedInteraction& phi, int k, double t, int derivative = 0);
FockOperator assemble_potential(const LipschitzPotential& v, const FockSpace& space, double t = 0.0,
                                int derivative = 0);

double lipschitz_constant(const LipschitzPotential& v, const std::vector<Box>& boxes);

Interaction commutator_interaction(const Interaction& a, const Interaction& b);

// Norm of a term supported on x, evaluated on a minimal Fock space.
double local_norm(const FockOperator& op, const SiteSet& x, const FockSpace& space);

// sup_t || d^i/dt^i (Phi^{Lambda_l} - Phi^{Lambda_k})(t) ||_{zeta,n,Lambda_M}
double cauchy_deficit(const TimedInteraction& phi, int k, int l, int m, const DecayFunction& zeta, int n,
                      int derivative, const std::vector<double>& times);

}  // namespace gaplab

#endif
