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

#include "gaplab/envelope.hpp"

#include <cmath>
#include <stdexcept>

namespace gaplab {

double Jet::derivative(int k) const {
  if (k < 0 || k > order) throw std::out_of_range("jet derivative order out of range");
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return c_[k] * f;
}

Jet& Jet::operator+=(const Jet& o) {
  for (int k = 0; k <= order; ++k) c_[k] += o.c_[k];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  for (int k = 0; k <= order; ++k) c_[k] -= o.c_[k];
  return *this;
}

Jet& Jet::operator*=(double s) {
  for (auto& v : c_) v *= s;
  return *this;
}

Jet operator+(Jet a, const Jet& b) { return a += b; }
Jet operator-(Jet a, const Jet& b) { return a -= b; }
Jet operator-(const Jet& a) { return -1.0 * a; }
Jet operator*(double s, Jet a) { return a *= s; }

Jet operator*(const Jet& a, const Jet& b) {
  Jet out;
  for (int i = 0; i <= Jet::order; ++i) {
    for (int j = 0; i + j <= Jet::order; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

Jet operator/(const Jet& a, const Jet& b) {
  if (b[0] == 0.0) throw std::domain_error("jet division by zero");
  Jet q;
  for (int k = 0; k <= Jet::order; ++k) {
    double s = a[k];
    for (int j = 1; j <= k; ++j) s -= b[j] * q[k - j];
    q[k] = s / b[0];
  }
  return q;
}

Jet exp(const Jet& a) {
  // e' = a' e, solved order by order
  Jet e;
  e[0] = std::exp(a[0]);
  for (int k = 1; k <= Jet::order; ++k) {
    double s = 0.0;
    for (int j = 1; j <= k; ++j) s += j * a[j] * e[k - j];
    e[k] = s / k;
  }
  return e;
}

namespace {

void sincos_jet(const Jet& a, Jet& s, Jet& c) {
  s = Jet();
  c = Jet();
  s[0] = std::sin(a[0]);
  c[0] = std::cos(a[0]);
  for (int k = 1; k <= Jet::order; ++k) {
    double ss = 0.0;
    double cc = 0.0;
    for (int j = 1; j <= k; ++j) {
      ss += j * a[j] * c[k - j];
      cc -= j * a[j] * s[k - j];
    }
    s[k] = ss / k;
    c[k] = cc / k;
  }
}

}  // namespace

Jet sin(const Jet& a) {
  Jet s, c;
  sincos_jet(a, s, c);
  return s;
}

Jet cos(const Jet& a) {
  Jet s, c;
  sincos_jet(a, s, c);
  return c;
}

Jet bump_b(const Jet& x) {
  if (x[0] <= 0.0) return Jet();
  return exp(-(Jet(1.0) / x));
}

Jet smooth_step(const Jet& x) {
  if (x[0] <= 0.0) return Jet();
  if (x[0] >= 1.0) return Jet(1.0);
  Jet b0 = bump_b(x);
  Jet b1 = bump_b(Jet(1.0) - x);
  return b0 / (b0 + b1);
}

double smooth_step(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double b0 = std::exp(-1.0 / x);
  const double b1 = std::exp(-1.0 / (1.0 - x));
  return b0 / (b0 + b1);
}

Jet Envelope::jet(double t) const {
  Jet tt = Jet::variable(t);
  auto need = [&](std::size_t n) {
    if (params.size() < n) throw std::invalid_argument("envelope '" + kind + "' needs " + std::to_string(n) + " parameters");
  };
  if (kind == "constant") {
    need(1);
    return Jet(params[0]);
  }
  if (kind == "linear") {
    need(2);
    return Jet(params[0]) + params[1] * tt;
  }
  if (kind == "cosine") {
    need(4);
    return Jet(params[0]) + params[1] * cos(params[2] * tt + Jet(params[3]));
  }
  if (kind == "switch") {
    need(4);
    const double t0 = params[0];
    const double t1 = params[1];
    if (!(t1 > t0)) throw std::invalid_argument("switch envelope needs t1 > t0");
    Jet x = (1.0 / (t1 - t0)) * (tt - Jet(t0));
    return Jet(params[2]) + params[3] * smooth_step(x);
  }
  throw std::invalid_argument("unknown envelope kind: " + kind);
}

Envelope make_envelope(const std::string& kind, const std::vector<double>& params) {
  Envelope e{kind, params};
  (void)e.jet(0.0);
  return e;
}

}  // namespace gaplab
