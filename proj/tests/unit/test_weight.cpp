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

#include <gtest/gtest.h>

#include <cmath>

#include "gaplab/weight.hpp"

using namespace gaplab;

TEST(GaussLegendre, ExactOnPolynomials) {
  auto [x, w] = gauss_legendre(5);
  double s0 = 0, s8 = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    s0 += w[i];
    s8 += w[i] * std::pow(x[i], 8);
  }
  EXPECT_NEAR(s0, 2.0, 1e-14);
  EXPECT_NEAR(s8, 2.0 / 9.0, 1e-14);
}

TEST(Weight, FourierTransformOutsideAndInsideTheGap) {
  const WeightFunction w(1.0, 0.5);
  const double c = 1.0 / std::sqrt(2.0 * M_PI);
  for (double om : {1.0, 1.5, 3.0, -2.0, 10.0}) {
    EXPECT_LT(std::abs(w.what(om) + cplx(0.0, c / om)), 1e-10) << om;
    EXPECT_NEAR(std::abs(w.symbol(om) - cplx(0.0, 1.0 / om)), 0.0, 1e-12);
  }
  for (double om : {0.0, 0.1, -0.3, 0.5, -0.5}) EXPECT_EQ(std::abs(w.what(om)), 0.0) << om;
  EXPECT_EQ(w.chi(0.2), 0.0);
  EXPECT_EQ(w.chi(1.2), 1.0);
}

TEST(Weight, OddAndDecaying) {
  const WeightFunction w(1.0, 0.5);
  for (double s : {0.3, 1.0, 4.0, 12.0}) EXPECT_NEAR(w(-s), -w(s), 1e-13);
  for (double s : {5.0, 10.0, 20.0}) EXPECT_LE(std::abs(w(s)), w.decay_bound(s) + 1e-15);
}

TEST(Weight, TimeDomainReproducesTheSymbol) {
  // int W(s) e^{i s w} ds = 2 i int_0^inf W(s) sin(w s) ds, trapezoid on a fine grid
  const WeightFunction w(1.0, 0.5);
  const double h = 0.01, smax = 80.0;
  for (double om : {0.3, 1.2, 2.5}) {
    double acc = 0.0;
    for (int i = 1; i * h <= smax; ++i) acc += w(i * h) * std::sin(om * i * h);
    acc *= h;
    const cplx value(0.0, 2.0 * acc);
    EXPECT_LT(std::abs(value - w.symbol(om)), 1e-3) << om;
  }
}

TEST(Weight, TruncationMeetsTolerance) {
  const WeightFunction w(1.0, 0.5);
  const double t = w.truncation_for(1e-6);
  EXPECT_LE(2.0 * w.tail_bound(t), 1e-6 * (1 + 1e-12));
  EXPECT_THROW(WeightFunction(0.5, 1.0), std::invalid_argument);
}
