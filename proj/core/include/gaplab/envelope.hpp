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
#ifndef GAPLAB_ENVELOPE_HPP
#define GAPLAB_ENVELOPE_HPP

#include <array>
#include <string>
#include <vector>

namespace gaplab {

// Truncated Taylor series f(t0 + h) = sum_k c[k] h^k.  Arithmetic on jets
// gives exact derivatives of closed-form envelopes.
class Jet {
 public:
  static constexpr int order = 8;

  Jet() { c_.fill(0.0); }
  Jet(double v) {  // NOLINT: implicit from scalar is intended
    c_.fill(0.0);
    c_[0] = v;
  }
  static Jet variable(double t0) {
    Jet j(t0);
    j.c_[1] = 1.0;
    return j;
  }

  double operator[](int k) const { return c_[k]; }
  double& operator[](int k) { return c_[k]; }
  double value() const { return c_[0]; }
  // k-th derivative at the expansion point
  double derivative(int k) const;

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(double s);

 private:
  std::array<double, order + 1> c_;
};

Jet operator+(Jet a, const Jet& b);
Jet operator-(Jet a, const Jet& b);
Jet operator-(const Jet& a);
Jet operator*(const Jet& a, const Jet& b);
Jet operator*(double s, Jet a);
Jet operator/(const Jet& a, const Jet& b);
Jet exp(const Jet& a);
Jet sin(const Jet& a);
Jet cos(const Jet& a);

// exp(-1/x) for x > 0, 0 otherwise, with its jet
Jet bump_b(const Jet& x);
// smooth step h(x) = B(x)/(B(x)+B(1-x)): 0 for x <= 0, 1 for x >= 1
Jet smooth_step(const Jet& x);
double smooth_step(double x);

// Scalar time envelope with exact derivatives.
//   constant  {c}                   c
//   linear    {a, b}                a + b t
//   cosine    {a, b, omega, phase}  a + b cos(omega t + phase)
//   switch    {t0, t1, a, b}        a + b h((t - t0)/(t1 - t0))
struct Envelope {
  std::string kind = "constant";
  std::vector<double> params{1.0};

  static Envelope constant(double c) { return {"constant", {c}}; }
  static Envelope linear(double a, double b) { return {"linear", {a, b}}; }
  static Envelope cosine(double a, double b, double omega, double phase = 0.0) {
    return {"cosine", {a, b, omega, phase}};
  }
  static Envelope smooth_switch(double t0 = -1.0, double t1 = 0.0, double a = 0.0, double b = 1.0) {
    return {"switch", {t0, t1, a, b}};
  }

  Jet jet(double t) const;
  double operator()(double t, int derivative = 0) const { return jet(t).derivative(derivative); }
  // true when all derivatives of order >= 1 vanish identically
  bool stationary() const { return kind == "constant"; }
};

Envelope make_envelope(const std::string& kind, const std::vector<double>& params);

}  // namespace gaplab

#endif
