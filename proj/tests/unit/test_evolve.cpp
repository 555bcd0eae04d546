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
#include <random>

#include "gaplab/evolve.hpp"
#include "gaplab/experiments.hpp"
#include "gaplab/models.hpp"
#include "testing.hpp"

using namespace gaplab;

namespace {

Mat pauli(char c) {
  Mat m(2, 2);
  if (c == 'x') m << 0, 1, 1, 0;
  if (c == 'y') m << 0, -I_unit, I_unit, 0;
  if (c == 'z') m << 1, 0, 0, -1;
  return m;
}

TimeOperator driven() {
  return [](double t) { return Mat(std::cos(3.0 * t) * pauli('x') + t * pauli('z') + 0.4 * pauli('y')); };
}

}  // namespace

TEST(Exponential, MatchesSeriesAndSpectralForms) {
  std::mt19937_64 rng(1);
  Mat h = gaplab::testing::random_matrix(6, rng);
  h = Mat(0.5 * (h + h.adjoint()));
  const Mat u = expm_hermitian(h, cplx(0.0, -0.7));
  EXPECT_LT((u * u.adjoint() - Mat::Identity(6, 6)).cwiseAbs().maxCoeff(), 1e-13);
  const Vec v = Vec::Random(6);
  EXPECT_LT((expmv(h, v, cplx(0.0, -0.7)) - u * v).norm(), 1e-12);
  EXPECT_LT((expmv(h, v, cplx(-1.5, 0.0)) - expm_hermitian(h, -1.5) * v).norm(), 1e-11);
}

TEST(Propagate, ZeroHamiltonianIsIdentity) {
  const Propagator p = propagate([](double) { return Mat(Mat::Zero(3, 3)); }, 1.0, 0.0, 2.0);
  EXPECT_LT((p.u - Mat::Identity(3, 3)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Propagate, ConstantHamiltonianOracle) {
  std::mt19937_64 rng(2);
  Mat h = gaplab::testing::random_matrix(5, rng);
  h = Mat(0.5 * (h + h.adjoint()));
  for (double eta : {1.0, 0.1}) {
    const Propagator p = propagate([&](double) { return h; }, eta, 0.3, 1.1);
    EXPECT_LT(opnorm(p.u - expm_hermitian(h, cplx(0.0, -0.8 / eta))), 1e-9);
    EXPECT_LT(p.unitarity_defect, 1e-12);
  }
}

TEST(Propagate, FourthOrderConvergence) {
  PropagationOptions ref;
  ref.tol = 1e-14;
  const Mat exact = propagate(driven(), 1.0, 0.0, 1.0, ref).u;
  double prev = 0.0;
  for (double h : {0.2, 0.1, 0.05}) {
    PropagationOptions opt;
    opt.tol = 1e6;
    opt.max_step = h;
    opt.initial_step = h;
    const double err = opnorm(propagate(driven(), 1.0, 0.0, 1.0, opt).u - exact);
    if (prev > 0.0) EXPECT_GE(prev / err, 12.8);
    prev = err;
  }
}

TEST(Propagate, Cocycle) {
  const Propagator a = propagate(driven(), 0.5, 0.0, 0.4);
  const Propagator b = propagate(driven(), 0.5, 0.4, 1.0);
  const Propagator c = propagate(driven(), 0.5, 0.0, 1.0);
  EXPECT_LT(opnorm(b.u * a.u - c.u), 1e-8);
  const Propagator back = propagate(driven(), 0.5, 1.0, 0.0);
  EXPECT_LT(opnorm(back.u * c.u - Mat::Identity(2, 2)), 1e-8);
}

TEST(Propagate, StateMatchesPropagatorAndConservesEnergy) {
  std::mt19937_64 rng(5);
  Mat h = gaplab::testing::random_matrix(4, rng);
  h = Mat(0.5 * (h + h.adjoint()));
  Vec psi = Vec::Random(4);
  psi.normalize();
  const std::vector<double> times{0.5, 1.0, 3.0};
  const auto states = propagate_state([&](double) { return h; }, psi, 1.0, 0.0, times);
  ASSERT_EQ(states.size(), times.size());
  const double e0 = (psi.adjoint() * h * psi)(0).real();
  for (std::size_t i = 0; i < times.size(); ++i) {
    EXPECT_NEAR((states[i].adjoint() * h * states[i])(0).real(), e0, 1e-9);
    EXPECT_NEAR(states[i].norm(), 1.0, 1e-10);
  }
  const Propagator p = propagate(driven(), 1.0, 0.0, 1.0);
  const Vec e1 = Vec::Unit(2, 0);
  EXPECT_LT((propagate_state(driven(), e1, 1.0, 0.0, {1.0})[0] - p.u * e1).norm(), 1e-8);
  EXPECT_THROW(propagate_state(driven(), e1, 1.0, 0.5, {0.2}), std::invalid_argument);
}

TEST(Propagate, HeisenbergPreservesNorm) {
  const Propagator p = propagate(driven(), 1.0, 0.0, 1.0);
  const Mat a = pauli('z');
  EXPECT_NEAR(opnorm(heisenberg(p, a)), 1.0, 1e-9);
}

TEST(Propagate, StepUnderflow) {
  PropagationOptions opt;
  opt.tol = 1e-300;
  opt.min_step = 0.1;
  EXPECT_THROW(propagate(driven(), 1.0, 0.0, 1.0, opt), StepUnderflow);
  EXPECT_THROW(propagate(driven(), 0.0, 0.0, 1.0), std::invalid_argument);
}

TEST(Propagate, SectorEvolutionMatchesFullEvolution) {
  const Model m(frozen_config(builtin_model("M1"), 0.5), 1);
  const FockSpace& space = m.space();
  auto h = [&](double t) { return m.h0(t); };
  const FockOperator a = number_operator(space, SiteSet{Point{0}});
  const auto sec = heisenberg_sectors(h, a, space, 1.0, 0.0, {0.3});
  const Propagator p = propagate([&](double t) { return m.h0(t).dense(); }, 1.0, 0.0, 0.3);
  EXPECT_LT(opnorm(sec[0] - heisenberg(p, a.dense())), 1e-8);
}

TEST(LiebRobinson, TrivialCases) {
  const Model m(frozen_config(builtin_model("M1"), 0.5), 2);
  const FockSpace& space = m.space();
  LrSetup s;
  s.x = SiteSet{Point{-2}};
  s.y = SiteSet{Point{2}};
  s.a = number_operator(space, s.x);
  s.b = number_operator(space, s.y);
  s.phi_norm = 10.0;
  auto h = [&](double t) { return m.h0(t); };
  const auto rows = lr_data(h, space, s, {0.0, 0.01});
  EXPECT_LT(rows[0].lhs, 1e-12);
  EXPECT_LE(rows[1].lhs, rows[1].rhs_general);
  EXPECT_TRUE(rows[0].inside_cone);
  // no dynamics, no spreading
  auto zero = [&](double) { return FockOperator::zero(space.dim()); };
  EXPECT_LT(lr_data(zero, space, s, {1.0})[0].lhs, 1e-12);
  s.y = s.x;
  EXPECT_THROW(lr_data(h, space, s, {0.1}), std::invalid_argument);
}

TEST(Tracking, ExactAtTheStartTime) {
  Model m(builtin_model("M1"), 2);
  SaptBuilder b(m.sapt_problem(), m.weight());
  const Mat a = m.block(number_operator(m.space(), SiteSet{Point{0}}));
  const auto err = tracking_error(b, 1, 0.05, 0.05, a, 0.0, {0.0, 0.05});
  EXPECT_LT(err[0], 1e-10);
  EXPECT_TRUE(std::isfinite(err[1]));
}
