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


#include "gaplab/weight.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include "gaplab/envelope.hpp"

namespace gaplab {

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("Gauss-Legendre rule needs n >= 1");
  std::vector<double> x(n), w(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 1; j <= n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return {x, w};
}

WeightFunction::WeightFunction(double g, double g_tilde) : g_(g), g_tilde_(g_tilde) {
  if (!(g_tilde > 0.0 && g > g_tilde)) throw std::invalid_argument("weight function needs 0 < g_tilde < g");
  auto [x, w] = gauss_legendre(24);
  gl_x_ = x;
  gl_w_ = w;
  // derivatives of chi(w)/w: Jet arithmetic on the transition [g_tilde, g],
  // closed form (-1)^n n! / w^{n+1} beyond g
  dnorm_.assign(Jet::order + 1, 0.0);
  constexpr int panels = 400;
  const double width = (g_ - g_tilde_) / panels;
  for (int p = 0; p < panels; ++p) {
    for (std::size_t k = 0; k < gl_x_.size(); ++k) {
      const double om = g_tilde_ + width * (p + 0.5 * (gl_x_[k] + 1.0));
      Jet jw = Jet::variable(om);
      Jet phi = smooth_step((1.0 / (g_ - g_tilde_)) * (jw - Jet(g_tilde_))) / jw;
      for (int n = 1; n <= Jet::order; ++n) dnorm_[n] += 0.5 * width * gl_w_[k] * std::abs(phi.derivative(n));
    }
  }
  double fact = 1.0;
  for (int n = 1; n <= Jet::order; ++n) {
    dnorm_[n] += fact / std::pow(g_, n);  // (n-1)! / g^n
    fact *= n;
  }
}

double WeightFunction::chi(double w) const {
  return smooth_step((std::abs(w) - g_tilde_) / (g_ - g_tilde_));
}

cplx WeightFunction::what(double w) const {
  if (w == 0.0) return 0.0;
  return chi(w) * cplx(0.0, -1.0 / (std::sqrt(2.0 * std::numbers::pi) * w));
}

cplx WeightFunction::symbol(double w) const {
  if (w == 0.0) return 0.0;
  return cplx(0.0, chi(w) / w);
}

double WeightFunction::operator()(double s) const {
  if (s == 0.0) return 0.0;
  const double as = std::abs(s);
  // panels short enough to resolve sin(w s) on [0, g]
  const int panels = std::max(4, static_cast<int>(std::ceil(2.0 * g_ * as / std::numbers::pi)));
  const double width = g_ / panels;
  double acc = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double a = p * width;
    for (std::size_t k = 0; k < gl_x_.size(); ++k) {
      const double w = a + 0.5 * width * (gl_x_[k] + 1.0);
      const double ws = w * as;
      const double sinc = ws < 1e-8 ? as : std::sin(ws) / w;
      acc += 0.5 * width * gl_w_[k] * (1.0 - chi(w)) * sinc;
    }
  }
  const double val = 0.5 - acc / std::numbers::pi;
  return s > 0.0 ? val : -val;
}

double WeightFunction::derivative_l1(int n) const {
  if (n < 1 || n > Jet::order) throw std::out_of_range("derivative order out of range");
  return dnorm_[n];
}

double WeightFunction::decay_bound(double s) const {
  const double as = std::abs(s);
  double best = std::numeric_limits<double>::infinity();
  for (int n = 1; n <= Jet::order; ++n) best = std::min(best, dnorm_[n] / (std::numbers::pi * std::pow(as, n)));
  return best;
}

double WeightFunction::tail_bound(double t) const {
  if (!(t > 0.0)) throw std::invalid_argument("tail bound needs T > 0");
  double best = std::numeric_limits<double>::infinity();
  for (int n = 2; n <= Jet::order; ++n)
    best = std::min(best, dnorm_[n] * std::pow(t, 1 - n) / (std::numbers::pi * (n - 1)));
  return best;
}

double WeightFunction::truncation_for(double tol) const {
  // tail_bound is decreasing in T
  double lo = 1.0 / g_, hi = lo;
  while (2.0 * tail_bound(hi) > tol) {
    hi *= 2.0;
    if (hi > 1e9) throw BoundViolation("filter tail does not fall below the requested tolerance");
  }
  for (int i = 0; i < 60 && hi - lo > 1e-6 * hi; ++i) {
    double mid = 0.5 * (lo + hi);
    (2.0 * tail_bound(mid) > tol ? lo : hi) = mid;
  }
  return hi;
}

WeightFunction::Table WeightFunction::time_table(double smax, double h) const {
  Table tab;
  const int n = static_cast<int>(std::floor(smax / h + 0.5));
  for (int i = -n; i <= n; ++i) {
    tab.s.push_back(i * h);
    tab.w.push_back((*this)(i * h));
  }
  return tab;
}

WeightFunction build_weight(double g, double g_tilde) { return WeightFunction(g, g_tilde); }

void write_weight_csv(std::ostream& os, const WeightFunction& w, double smax, double h, double wmax, int nw) {
  os.precision(17);
  os << "s,W\r\n";
  auto tab = w.time_table(smax, h);
  for (std::size_t i = 0; i < tab.s.size(); ++i) os << tab.s[i] << ',' << tab.w[i] << "\r\n";
  os << "\r\nomega,re_What,im_What\r\n";
  for (int i = 0; i <= nw; ++i) {
    double om = -wmax + 2.0 * wmax * i / nw;
    cplx v = w.what(om);
    os << om << ',' << v.real() << ',' << v.imag() << "\r\n";
  }
}

}  // namespace gaplab
