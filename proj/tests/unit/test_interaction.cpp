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

#include "gaplab/interaction.hpp"

using namespace gaplab;

namespace {

Interaction single_hop(int k) {
  Box box(k, 1, Boundary::open);
  FockSpace space(box, 1);
  Interaction phi(1);
  phi.add_box(box);
  auto h = creation(space, Point{0}) * annihilation(space, Point{1});
  phi.add(k, SiteSet{{0}, {1}}, h + h.adjoint());
  return phi;
}

}  // namespace

TEST(Decay, ValuesAndProperties) {
  const auto e = DecayFunction::exponential(1.0);
  EXPECT_NEAR(e(2.0), std::exp(-2.0), 1e-15);
  EXPECT_NEAR(f_zeta(e, 1.0, 1), std::exp(-1.0) / 4.0, 1e-15);
  EXPECT_NEAR(f_zeta(DecayFunction::constant(), 2.0, 2), 1.0 / 27.0, 1e-15);
  EXPECT_TRUE(check_log_superadditive(e, 20));
  EXPECT_TRUE(check_log_superadditive(DecayFunction::subexponential(1.0, 0.5), 20));
  EXPECT_TRUE(check_class_s(e, 60));
  EXPECT_FALSE(check_class_s(DecayFunction::constant(), 60));
  EXPECT_EQ(parse_decay("exp:2").rate(), 2.0);
  EXPECT_THROW(parse_decay("gauss:1"), std::exception);
}

TEST(Decay, BoxSums) {
  const auto e = DecayFunction::exponential(1.0);
  Box box(1, 1, Boundary::open);
  // the centre site sees F(0) + 2 F(1), the largest row sum
  EXPECT_NEAR(gamma_norm(e, box), 1.0 + 2.0 * f_zeta(e, 1, 1), 1e-14);
  EXPECT_GE(convolution_constant(e, box), 1.0);
}

TEST(Interaction, NormOfOneHoppingTerm) {
  const auto e = DecayFunction::exponential(1.0);
  const Interaction phi = single_hop(2);
  EXPECT_NEAR(phi.term_norm(2, SiteSet{{0}, {1}}), 1.0, 1e-12);
  // the pair (0, 1) dominates: 1 / F(1) = 4 e
  EXPECT_NEAR(interaction_norm(phi, e, 0, {2}), 4.0 * std::exp(1.0), 1e-10);
  EXPECT_NEAR(interaction_norm(phi, e, 3, {2}), 4.0 * std::exp(1.0), 1e-10);
  EXPECT_LE(restricted_norm(phi, 2, e, 0, 1), interaction_norm(phi, e, 0, {2}) + 1e-12);
  EXPECT_EQ(restricted_norm(phi, 2, e, 0, 0), 0.0);
}

TEST(Interaction, RejectsOddOrNonHermitianTerms) {
  Box box(1, 1, Boundary::open);
  FockSpace space(box, 1);
  Interaction phi(1);
  phi.add_box(box);
  EXPECT_THROW(phi.add(1, SiteSet{{0}}, annihilation(space, Point{0})), std::exception);
  EXPECT_THROW(phi.add(1, SiteSet{{0}, {1}}, creation(space, Point{0}) * annihilation(space, Point{1})),
               std::exception);
}

TEST(Interaction, AssembleSumsTerms) {
  const Interaction phi = single_hop(1);
  FockSpace space(Box(1, 1, Boundary::open), 1);
  auto h = creation(space, Point{0}) * annihilation(space, Point{1});
  EXPECT_LT((assemble(phi, 1).dense() - (h + h.adjoint()).dense()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Interaction, TimedFamiliesAndCauchyDeficit) {
  TimedInteraction ti;
  Interaction phi(1);
  for (int k : {1, 2, 3}) {
    Box box(k, 1, Boundary::open);
    FockSpace space(box, 1);
    phi.add_box(box);
    for (int x = -k; x < k; ++x) {
      auto h = creation(space, Point{x}) * annihilation(space, Point{x + 1});
      phi.add(k, SiteSet{{x}, {x + 1}}, h + h.adjoint());
    }
  }
  ti.families.push_back({"hop", Envelope::cosine(1.0, 0.5, 1.0), phi});
  const auto e = DecayFunction::exponential(1.0);
  // restriction of one translation-invariant chain: no deficit
  EXPECT_EQ(cauchy_deficit(ti, 1, 3, 1, e, 0, 0, {0.0, 0.5, 1.0}), 0.0);
  const Interaction d1 = ti.at(0.3, 2, 1);
  EXPECT_NEAR(d1.term_norm(2, SiteSet{{0}, {1}}), 0.5 * std::sin(0.3), 1e-12);
}

TEST(Potential, LinearIsLipschitz) {
  const auto v = linear_potential(0.25);
  EXPECT_NEAR(lipschitz_constant(v, {Box(3, 1, Boundary::open)}), 0.25, 1e-15);
  FockSpace space(Box(1, 1, Boundary::open), 1);
  const auto op = assemble_potential(v, space);
  // diagonal: 0.25 * sum of occupied coordinates
  EXPECT_NEAR(op.element(0b101, 0b101).real(), 0.25 * (-1 + 1), 1e-15);
  EXPECT_NEAR(op.element(0b100, 0b100).real(), 0.25, 1e-15);
}
