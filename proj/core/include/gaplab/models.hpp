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
#ifndef GAPLAB_MODELS_HPP
#define GAPLAB_MODELS_HPP

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "gaplab/interaction.hpp"
#include "gaplab/sapt.hpp"
#include "gaplab/spectral.hpp"

namespace gaplab {

// One family of terms with a common time envelope.
//   hopping          amplitude * s(x) (a_x^dag a_{x+e} + h.c.) on every bond
//   onsite           amplitude * s(x) n_x
//   density_density  amplitude * s(x) n_x n_{x+e}
// s(x) = (-1)^{x_1 + ... + x_d} when staggered, otherwise 1.
struct TermFamily {
  std::string name;
  std::string kind = "hopping";
  double amplitude = 1.0;
  bool stagger = false;
  Envelope envelope;
};

struct PotentialSpec {
  std::string kind = "none";  // none | linear
  double slope = 0.0;
  int axis = 0;
  Envelope envelope;
};

struct ModelConfig {
  int version = 1;
  std::string name = "model";
  int d = 1;
  int r = 1;
  Boundary bc = Boundary::open;
  std::vector<int> k{2, 3, 4};
  std::vector<TermFamily> h0;
  std::vector<TermFamily> h1;  // perturbation, multiplied by eps together with the potential
  PotentialSpec potential;
  PatchRequest gap;
  // particle number of the working block: an integer, "half" for
  // floor(modes / 2), or "sublattice" for r times the number of sites with
  // odd coordinate sum (the low sublattice of a staggered potential)
  std::string particles = "half";
  double t0 = 0.0;
  double t1 = 1.0;
  int time_points = 5;
  std::string decay = "exp:1";

  std::vector<double> time_grid() const;
};

constexpr int config_version = 1;

// Throws ConfigError carrying the JSON pointer of the offending entry.
ModelConfig parse_config(const nlohmann::json& j);
ModelConfig parse_config_text(const std::string& text);
nlohmann::json to_json(const ModelConfig& c);

// M1 dimerized chain with staggered on-site energy and a smooth dimerization
// ramp, M2 adds a nearest-neighbour density interaction, M3 perturbs M1 by a
// linear potential and a short-range density term.
ModelConfig builtin_model(const std::string& name);
std::vector<std::string> builtin_names();

Interaction family_interaction(const TermFamily& f, const std::vector<Box>& boxes, int r);

// A configuration realised on the box of radius k, restricted to a fixed
// particle-number block for the spectral work.
class Model {
 public:
  Model(ModelConfig cfg, int k);

  const ModelConfig& config() const { return cfg_; }
  int k() const { return k_; }
  const FockSpace& space() const { return space_; }
  int particles() const { return particles_; }
  const std::vector<std::size_t>& basis() const { return basis_; }
  bool stationary() const;

  // H0 and its families on the given radii
  TimedInteraction h0_interaction(const std::vector<int>& ks) const;
  TimedInteraction h1_interaction(const std::vector<int>& ks) const;
  LipschitzPotential potential() const;

  FockOperator h0(double t, int derivative = 0) const;
  FockOperator perturbation(double t, int derivative = 0) const;
  Mat h0_block(double t, int derivative = 0) const;
  Mat perturbation_block(double t, int derivative = 0) const;
  Mat block(const FockOperator& a) const;

  SaptProblem sapt_problem() const;
  WeightFunction weight() const;

 private:
  struct Piece {
    Envelope envelope;
    FockOperator full;
    Mat block;
  };

  ModelConfig cfg_;
  int k_;
  FockSpace space_;
  int particles_;
  std::vector<std::size_t> basis_;
  std::vector<Piece> h0_;
  std::vector<Piece> v_;
};

struct GapReport {
  int k = 0;
  double t = 0.0;
  GappedPatch patch;
  RVec spectrum;
};

// Gap condition on every configured box and grid time; throws NoGap or
// MultiplicityExceeded.
std::vector<GapReport> verify_gap(const ModelConfig& cfg);

}  // namespace gaplab

#endif
