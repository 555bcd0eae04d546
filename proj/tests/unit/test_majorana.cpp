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

#include <bit>
#include <random>

#include "gaplab/majorana.hpp"
#include "testing.hpp"

using namespace gaplab;

TEST(Majorana, MonomialsAreHermitianUpToPhaseAndSquareToOne) {
  FockSpace space(Box(1, 1, Boundary::open), 1);
  for (std::uint64_t mask : {0b1ull, 0b10ull, 0b1100ull, 0b101010ull}) {
    Mat c = to_operator(space, majorana_monomial(space, mask)).dense();
    Mat sq = c * c;
    // c^2 = +-1 for a monomial
    EXPECT_NEAR(std::abs(sq(0, 0)), 1.0, 1e-14);
    EXPECT_LT((sq - sq(0, 0) * Mat::Identity(c.rows(), c.cols())).cwiseAbs().maxCoeff(), 1e-14);
  }
  // single Majorana operators are Hermitian and anticommute
  Mat c0 = to_operator(space, majorana_monomial(space, 0b1)).dense();
  Mat c3 = to_operator(space, majorana_monomial(space, 0b1000)).dense();
  EXPECT_LT((c0 - c0.adjoint()).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LT((c0 * c3 + c3 * c0).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Majorana, ExpansionRoundTrip) {
  std::mt19937_64 rng(7);
  FockSpace space(Box(1, 1, Boundary::open), 1);
  const auto a = gaplab::testing::random_even(space, space.box().all(), rng);
  std::vector<int> modes{0, 1, 2};
  const auto terms = majorana_expand(space, a.dense(), modes, false);
  EXPECT_LT((majorana_sum(space, terms) - a.dense()).cwiseAbs().maxCoeff(), 1e-12);
  for (const auto& [mask, c] : terms) EXPECT_EQ(std::popcount(mask) % 2, 0) << "odd monomial in an even operator";
}

TEST(Majorana, TransplantKeepsTheAlgebra) {
  FockSpace small(Box(1, 1, Boundary::open), 1);
  FockSpace big(Box(2, 1, Boundary::open), 1);
  SiteSet x{{0}, {1}};
  const auto hs = creation(small, Point{0}) * annihilation(small, Point{1});
  const auto hb = creation(big, Point{0}) * annihilation(big, Point{1});
  const auto moved = transplant(hs + hs.adjoint(), x, small, big);
  EXPECT_LT((moved.dense() - (hb + hb.adjoint()).dense()).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_THROW(transplant(hs, SiteSet{{3}}, small, big), std::exception);
}
