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

#include <sstream>

#include "gaplab/fock.hpp"

using namespace gaplab;

namespace {

double diff(const FockOperator& a, const FockOperator& b) { return (a.dense() - b.dense()).cwiseAbs().maxCoeff(); }

}  // namespace

TEST(Fock, CanonicalAnticommutationRelations) {
  FockSpace space(Box(1, 1, Boundary::open), 2);
  const auto id = FockOperator::identity(space.dim());
  for (int m = 0; m < space.modes(); ++m) {
    for (int n = 0; n < space.modes(); ++n) {
      const auto am = annihilation_mode(space, m);
      const auto an = annihilation_mode(space, n);
      const auto cn = creation_mode(space, n);
      EXPECT_LT(diff(anticommutator(am, cn), m == n ? id : FockOperator::zero(space.dim())), 1e-14);
      EXPECT_LT(max_abs(anticommutator(am, an)), 1e-14);
    }
  }
}

TEST(Fock, NumberOperatorAndParity) {
  FockSpace space(Box(1, 1, Boundary::open), 1);
  const auto n = number_operator(space);
  for (std::size_t s = 0; s < space.dim(); ++s) EXPECT_NEAR(n.element(s, s).real(), popcount(s), 1e-15);
  const auto p = parity_operator(space);
  EXPECT_LT(diff(p * p, FockOperator::identity(space.dim())), 1e-15);
  const auto a = annihilation(space, Point{0});
  EXPECT_EQ(a.parity(), Parity::odd);
  EXPECT_LT(diff(sigma(a), -1.0 * a), 1e-15);
  const auto hop = creation(space, Point{-1}) * a;
  EXPECT_EQ(hop.parity(), Parity::even);
  EXPECT_TRUE(is_number_conserving(hop));
  EXPECT_FALSE(is_number_conserving(a));
  EXPECT_LT(max_abs(even_part(a)), 1e-15);
  EXPECT_LT(diff(odd_part(a), a), 1e-15);
}

TEST(Fock, DisjointSupportsCommuteForEvenOperators) {
  FockSpace space(Box(2, 1, Boundary::open), 1);
  const auto a = creation(space, Point{-2}) * annihilation(space, Point{-1});
  const auto b = creation(space, Point{1}) * annihilation(space, Point{2});
  EXPECT_LT(max_abs(commutator(a, b)), 1e-14);
  // odd operators on disjoint sites anticommute
  EXPECT_LT(max_abs(anticommutator(annihilation(space, Point{-2}), annihilation(space, Point{2}))), 1e-14);
}

TEST(Fock, SectorBasisCounts) {
  FockSpace space(Box(2, 1, Boundary::open), 1);
  const std::size_t binom[] = {1, 5, 10, 10, 5, 1};
  for (int n = 0; n <= 5; ++n) {
    auto b = sector_basis(space, n);
    EXPECT_EQ(b.size(), binom[n]);
    EXPECT_TRUE(std::is_sorted(b.begin(), b.end()));
  }
}

TEST(Fock, JordanWignerSign) {
  EXPECT_EQ(jw_sign(0b000, 2), 1);
  EXPECT_EQ(jw_sign(0b011, 2), 1);
  EXPECT_EQ(jw_sign(0b001, 2), -1);
  EXPECT_EQ(jw_sign(0b100, 2), 1);
}

TEST(Fock, DumpLoadRoundTrip) {
  FockSpace space(Box(1, 1, Boundary::open), 1);
  const auto h = creation(space, Point{0}) * annihilation(space, Point{1});
  const auto op = h + h.adjoint() + cplx(0.0, 0.5) * number_operator(space, SiteSet{Point{-1}});
  std::stringstream ss;
  dump(ss, op);
  const auto back = load(ss);
  EXPECT_EQ(diff(op, back), 0.0);
}

TEST(Fock, SparseAboveDenseLimit) {
  FockSpace small(Box(2, 1, Boundary::open), 1);
  FockSpace big(Box(5, 1, Boundary::open), 1);
  EXPECT_FALSE(number_operator(small).is_sparse());
  EXPECT_TRUE(number_operator(big).is_sparse());
  EXPECT_NEAR(number_operator(big).trace().real(), 11.0 * 1024.0, 1e-9);
}
