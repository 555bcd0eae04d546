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
#ifndef GAPLAB_EXPERIMENTS_HPP
#define GAPLAB_EXPERIMENTS_HPP

#include <chrono>
#include <stdexcept>
#include <string>
#include <vector>

#include "gaplab/evolve.hpp"
#include "gaplab/models.hpp"
#include "gaplab/report.hpp"

namespace gaplab {

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Wall-clock budget, checked between trajectories.  Zero means unlimited.
class Budget {
 public:
  explicit Budget(double seconds = 0.0);
  double elapsed() const;
  void check(const std::string& stage) const;

 private:
  double seconds_;
  std::chrono::steady_clock::time_point start_;
};

// Observables by name: "identity", "density:x" (n_x) and "current:x"
// (i (a_x^dag a_y - a_y^dag a_x) with y = x + e_1).  Coordinates are comma
// separated, one per lattice axis.
FockOperator make_observable(const std::string& spec, const FockSpace& space);

// Copy of the configuration with every envelope frozen at time t.
ModelConfig frozen_config(const ModelConfig& cfg, double t);
ModelConfig with_radii(const ModelConfig& cfg, std::vector<int> ks);

// Common tidy layout of every experiment table.
const std::vector<std::string>& tidy_columns();

// Rows whose metric ends in "_ok" and whose value is not 1.
int count_failed_flags(const ResultTable& table);

struct SweepRequest {
  int n = 1;
  int k = 0;  // 0 picks the largest configured radius
  std::vector<double> eps{0.1, 0.03, 0.01};
  std::vector<double> eta{1e-3};
  std::string observable = "density:0";
  // C in  error <= C (eps^(n+1) + eta^(n+1)) / eta^(d+1).  Zero calibrates C
  // on this run as the largest observed ratio.
  double bound_constant = 0.0;
  TrackingOptions tracking;
};

// Tracking error at the configured grid times after t0 for every (eps, eta),
// the sup over times, log-log slopes in eps (per eta) and in eta (eps = 0),
// and bound ratios with their flags.
ResultTable run_adiabatic_sweep(const ModelConfig& cfg, const SweepRequest& req, const Budget& budget = Budget());

struct ResponseRequest {
  int n = 1;
  int k = 0;
  std::vector<double> eps{0.1, 0.03, 0.01};
  double eta_power = 0.75;  // eta = eps^power
  std::vector<double> times{0.0, 0.5, 1.0, 1.5, 2.0};
  std::string observable = "density:0";
  double frozen_at = 0.0;  // H0, V taken at this time of the configured envelopes
  PropagationOptions propagation{1e-11, 0.25, 1e-12, 0.0};
};

// sigma(t) = tr(P U(t,-1)^* A U(t,-1)) / kappa - tr(P A) / kappa under
// H0 + eps f(t) V with the smooth switch f, the response coefficients
// sigma_j from the expansion of the dressed state, the residual
// |sigma - sum_{j<=n} eps^j sigma_j| and its slope in eps.
ResultTable run_response(const ModelConfig& cfg, const ResponseRequest& req, const Budget& budget = Budget());

// sigma_1 = -i tr(P [A_{1,1}, A]) / kappa for the frozen model on radius k.
double first_order_response(const ModelConfig& frozen, int k, const std::string& observable);

struct ComparisonTriple {
  int m = 1, k = 2, l = 3;
};

struct ComparisonRequest {
  ComparisonTriple boxes;
  std::string observable = "density:0";
  double eta = 1.0;
  double s = 0.0;
  std::vector<double> times{0.05, 0.1, 0.2, 0.4};
  PropagationOptions propagation{1e-11, 0.25, 1e-12, 0.0};
};

struct ComparisonRow {
  double t = 0.0;
  double diff_restricted = 0.0;   // ||(U^l|_M - U^k|_M)(A)||
  double bound_restricted = 0.0;
  double diff_cut = 0.0;          // ||(U^k - U^k|_M)(A)||
  double bound_cut = 0.0;
};

// Dynamics of H0 on nested boxes.  Throws BoundViolation if a difference
// exceeds its bound and invalid_argument unless M <= k <= l.
std::vector<ComparisonRow> dynamics_comparison(const ModelConfig& cfg, const ComparisonRequest& req);

struct TdlRequest {
  std::vector<int> ks{2, 3, 4, 5};
  std::vector<std::string> observables{"identity", "density:0"};
  double t = 0.0;
  std::vector<ComparisonTriple> triples;
  ComparisonRequest comparison;  // boxes overridden per triple
};

// omega_k(A) = tr(P^k A) / kappa, successive differences and their monotone
// flag, Cauchy deficits of Phi_H0 between consecutive radii and the
// dynamics-comparison rows.
ResultTable run_tdl(const ModelConfig& cfg, const TdlRequest& req, const Budget& budget = Budget());

struct LrRequest {
  int k = 5;
  std::string a_site = "0";
  std::vector<std::string> b_sites;  // empty: the far end of the box along axis 0
  double eta = 1.0;
  double s = 0.0;
  std::vector<double> times{0.25, 0.5, 1.0, 1.5, 2.0, 3.0};
  double margin = 0.2;
  PropagationOptions propagation{1e-11, 0.25, 1e-12, 0.0};
};

// Exact commutator norms against both propagation bounds.  LHS is the
// evolved density at the A site against the density at each B site.
ResultTable run_lr(const ModelConfig& cfg, const LrRequest& req, const Budget& budget = Budget());

// Interaction norms, Lipschitz constant, box sums and Cauchy deficits per
// configured radius.
ResultTable run_norms(const ModelConfig& cfg);

// Spectrum rows (k, t, index, eigenvalue, in_patch) plus the achieved gap.
ResultTable run_check_gap(const ModelConfig& cfg);

struct ResummationRequest {
  int k = 0;
  double t = 0.0;
  int n = 2;
  std::vector<double> eps{0.2, 0.1, 0.05, 0.025, 0.0125};
  std::vector<double> eta{0.2, 0.1, 0.05, 0.025, 0.0125};
};

// ||eps S - eps S_n|| against C_n max(eps, eta)^n on the grid, with the
// number of active terms of the resummed generator.
ResultTable run_resummation(const ModelConfig& cfg, const ResummationRequest& req);

struct StationarityRequest {
  int k = 0;
  double frozen_at = 0.0;
  std::vector<int> orders{1, 2};
  std::vector<double> eps{0.1, 0.03, 0.01, 0.003, 0.001};
};

// ||[H0 + eps V, Pi_n]|| for the frozen model and its slope in eps.
ResultTable run_stationarity(const ModelConfig& cfg, const StationarityRequest& req);

}  // namespace gaplab

#endif
