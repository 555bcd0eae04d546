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

// Acceptance driver: one PASS/FAIL line per criterion.  Tolerances and
// grids are fixed here; `--criterion N` runs a single one.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "gaplab/bounds.hpp"
#include "gaplab/evolve.hpp"
#include "gaplab/experiments.hpp"
#include "gaplab/invliou.hpp"
#include "gaplab/locality.hpp"
#include "gaplab/majorana.hpp"
#include "gaplab/models.hpp"
#include "gaplab/sapt.hpp"
#include "testing.hpp"

using namespace gaplab;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [fail: " << what << "]";
    }
  }
};

std::string num(double v) { return format_number(v); }

// rows of a tidy table, filtered by metric and optional columns
struct Rows {
  ResultTable t;
  std::map<std::string, std::size_t> col;

  explicit Rows(const ResultTable& table) : t(table) {
    for (std::size_t i = 0; i < t.columns().size(); ++i) col[t.columns()[i]] = i;
  }

  std::vector<double> values(const std::string& metric, const std::map<std::string, std::string>& where = {}) const {
    std::vector<double> out;
    for (const auto& row : t.rows()) {
      if (row[col.at("metric")] != metric) continue;
      bool keep = true;
      for (const auto& [c, v] : where) keep = keep && row[col.at(c)] == v;
      if (keep) out.push_back(std::stod(row[col.at("value")]));
    }
    return out;
  }

  double one(const std::string& metric, const std::map<std::string, std::string>& where = {}) const {
    const auto v = values(metric, where);
    if (v.size() != 1) throw std::runtime_error("expected one '" + metric + "' row, found " + std::to_string(v.size()));
    return v[0];
  }
};

double max_abs_mat(const Mat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

// a few random even Majorana monomials on the given sites, kept sparse
FockOperator sparse_even(const FockSpace& space, const SiteSet& sites, std::mt19937_64& rng) {
  const auto masks = monomial_masks(space.modes_of(sites), true);
  std::uniform_int_distribution<std::size_t> pick(1, masks.size() - 1);
  std::normal_distribution<double> g;
  FockOperator out = to_operator(space, majorana_monomial(space, 0));
  for (int i = 0; i < 6; ++i) out += cplx(g(rng), g(rng)) * to_operator(space, majorana_monomial(space, masks[pick(rng)]));
  return out;
}

// ---------------------------------------------------------------- 1
constexpr double algebra_tol = 1e-12;

Outcome algebra() {
  Outcome o;
  std::mt19937_64 rng(101);
  const std::vector<FockSpace> spaces{
      FockSpace(Box(1, 1, Boundary::open), 1), FockSpace(Box(1, 1, Boundary::open), 3),
      FockSpace(Box(2, 1, Boundary::open), 1), FockSpace(Box(3, 1, Boundary::open), 1),
      FockSpace(Box(4, 1, Boundary::open), 1), FockSpace(Box(5, 1, Boundary::open), 1),
      FockSpace(Box(1, 1, Boundary::open), 4), FockSpace(Box(1, 2, Boundary::open), 1),
      FockSpace(Box(1, 1, Boundary::periodic), 2)};
  double worst = 0.0;
  for (const FockSpace& space : spaces) {
    const int m = space.modes();
    // generators as sparse matrices, whatever the storage of the space
    const SpMat theta = parity_operator(space).sparse();
    SpMat id(space.dim(), space.dim());
    id.setIdentity();
    std::vector<SpMat> a, ad;
    for (int i = 0; i < m; ++i) {
      a.push_back(annihilation_mode(space, i).sparse());
      ad.push_back(creation_mode(space, i).sparse());
    }
    auto sup = [](const SpMat& x) {
      double v = 0.0;
      for (int k = 0; k < x.outerSize(); ++k) {
        for (SpMat::InnerIterator it(x, k); it; ++it) v = std::max(v, std::abs(it.value()));
      }
      return v;
    };
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        SpMat car = SpMat(a[i] * ad[j]) + SpMat(ad[j] * a[i]);
        if (i == j) car -= id;
        worst = std::max(worst, sup(car));
        worst = std::max(worst, sup(SpMat(SpMat(a[i] * a[j]) + SpMat(a[j] * a[i]))));
      }
      // parity automorphism: odd generators change sign
      worst = std::max(worst, sup(SpMat(SpMat(SpMat(theta * a[i]) * theta) + a[i])));
    }
    worst = std::max(worst, sup(SpMat(SpMat(theta * theta) - id)));
    // disjoint supports: even commutes with everything, odd anticommutes with odd
    const std::vector<Point> sites = space.box().sites();
    const std::size_t half = sites.size() / 2;
    SiteSet x(sites.begin(), sites.begin() + static_cast<long>(std::max<std::size_t>(half, 1)));
    SiteSet y(sites.begin() + static_cast<long>(std::max<std::size_t>(half, 1)), sites.end());
    if (y.empty()) continue;
    const auto ex = sparse_even(space, x, rng);
    const auto ey = sparse_even(space, y, rng);
    const auto ox = creation(space, *x.begin()) + 0.3 * annihilation(space, *x.rbegin());
    const auto oy = annihilation(space, *y.begin());
    worst = std::max(worst, max_abs(commutator(ex, ey)) / (norm(ex) * norm(ey)));
    worst = std::max(worst, max_abs(commutator(ex, oy)) / norm(ex));
    worst = std::max(worst, max_abs(anticommutator(ox, oy)));
    const FockOperator th = parity_operator(space);
    worst = std::max(worst, max_abs(th * ex * th - ex) / norm(ex));
  }
  o.detail << "max violation " << num(worst) << " over " << spaces.size() << " spaces up to 12 modes";
  o.require(worst <= algebra_tol, "violation above " + num(algebra_tol));
  return o;
}

// ---------------------------------------------------------------- 2
constexpr double expectation_tol = 1e-10;

Outcome conditional_expectations() {
  Outcome o;
  std::mt19937_64 rng(202);
  struct Setup {
    FockSpace space;
    SiteSet x, y, low;
    int low_modes;
  };
  const std::vector<Setup> setups{
      {FockSpace(Box(2, 1, Boundary::open), 1), {{-1}, {0}, {1}}, {{0}, {1}, {2}}, {{-2}, {-1}}, 2},
      {FockSpace(Box(1, 1, Boundary::open), 2), {{-1}, {0}}, {{0}, {1}}, {{-1}}, 2},
      {FockSpace(Box(1, 1, Boundary::open), 1), {{0}}, {{0}, {1}}, {{-1}, {0}}, 2}};
  double worst = 0.0, oracle = 0.0;
  int certificates = 0;
  auto dist = [](const FockOperator& a, const FockOperator& b) { return max_abs(a - b); };
  for (int rep = 0; rep < 100; ++rep) {
    const Setup& s = setups[rep % setups.size()];
    auto e = [&](const FockOperator& a, const SiteSet& z) { return conditional_expectation(a, z, s.space); };
    const auto a = gaplab::testing::random_even(s.space, s.space.box().all(), rng);
    const auto b = gaplab::testing::random_even(s.space, s.x, rng);
    const auto c = gaplab::testing::random_even(s.space, s.x, rng);
    const auto ea = e(a, s.x);
    const double scale = 1.0 + norm(a);
    worst = std::max(worst, dist(e(FockOperator::identity(s.space.dim()), s.x), FockOperator::identity(s.space.dim())));
    worst = std::max(worst, dist(e(ea, s.x), ea) / scale);                                       // idempotent
    worst = std::max(worst, dist(e(e(a, s.y), s.x), e(a, set_intersection(s.x, s.y))) / scale);  // tower
    worst = std::max(worst, dist(e(b * a * c, s.x), b * ea * c) / (scale * norm(b) * norm(c)));  // bimodule
    worst = std::max(worst, dist(e(a.adjoint(), s.x), ea.adjoint()) / scale);                    // star
    worst = std::max(worst, std::max(0.0, norm(ea) - norm(a)));                                  // contraction
    worst = std::max(worst, dist(e(b, s.x), b) / (1.0 + norm(b)));                               // fixes A_X
    // positivity: E(A* A) >= 0
    const Mat pos = e(a.adjoint() * a, s.x).dense();
    const double low_eig = Eigen::SelfAdjointEigenSolver<Mat>(Mat(0.5 * (pos + pos.adjoint()))).eigenvalues().minCoeff();
    worst = std::max(worst, std::max(0.0, -low_eig) / (scale * scale));
    // compatibility: same result computed on the box Y alone
    const FockSpace inner(Box(1, 1, Boundary::open), s.space.r());
    SiteSet yy;
    for (const Point& p : s.y) {
      if (inner.box().contains(SiteSet{p})) yy.insert(p);
    }
    if (yy.size() == s.y.size()) {
      const auto ay = gaplab::testing::random_even(s.space, s.y, rng);
      const auto small = transplant(ay, s.y, s.space, inner);
      const auto ex_small = conditional_expectation(small, set_intersection(s.x, s.y), inner);
      const auto back = transplant(ex_small, set_intersection(s.x, s.y), inner, s.space);
      worst = std::max(worst, dist(back, e(ay, set_intersection(s.x, s.y))) / (1.0 + norm(ay)));
    }
    // certificate inequality
    const Certificate cert = quasilocality_certificate(a, s.x, s.space);
    ++certificates;
    worst = std::max(worst, std::max(0.0, cert.deviation - cert.eta * cert.norm) / scale);
    // Majorana projection against the normalised partial trace
    const Mat pt = gaplab::testing::partial_trace_low(a.dense(), s.low_modes, s.space.modes());
    oracle = std::max(oracle, max_abs_mat(e(a, s.low).dense() - pt) / scale);
  }
  o.detail << "max violation " << num(worst) << ", partial-trace oracle " << num(oracle) << ", " << certificates
           << " certificates";
  o.require(worst <= expectation_tol, "property violation above " + num(expectation_tol));
  o.require(oracle <= expectation_tol, "partial-trace disagreement above " + num(expectation_tol));
  return o;
}

// ---------------------------------------------------------------- 3
constexpr double weight_tol = 1e-10;

Outcome weight() {
  Outcome o;
  const double g = 1.0, gt = 0.5;
  const WeightFunction w(g, gt);
  const double c = 1.0 / std::sqrt(2.0 * M_PI);
  double outside = 0.0, inside = 0.0;
  for (int i = 0; i <= 400; ++i) {
    const double om = g + 0.05 * i;
    for (double s : {om, -om}) outside = std::max(outside, std::abs(w.what(s) + cplx(0.0, c / s)));
  }
  for (int i = 0; i <= 200; ++i) inside = std::max(inside, std::abs(w.what(-gt + gt * i / 100.0)));
  // |W(s)| <= 1/2 everywhere and |W(s)| <= D_6 / (pi s^6), so (1+|s|)^6 |W| <= max(2^5, 2^6 D_6 / pi)
  const double cap = std::max(32.0, 64.0 * w.derivative_l1(6) / M_PI);
  const auto table = w.time_table(60.0, 0.05);
  double weighted = 0.0;
  for (std::size_t i = 0; i < table.s.size(); ++i) {
    weighted = std::max(weighted, std::abs(table.w[i]) * std::pow(1.0 + std::abs(table.s[i]), 6));
  }
  o.detail << "outside gap " << num(outside) << ", inside " << num(inside) << ", sup (1+|s|)^6|W| " << num(weighted)
           << " <= " << num(cap);
  o.require(outside <= weight_tol, "transform off the gap");
  o.require(inside == 0.0, "transform not zero on [-g_tilde, g_tilde]");
  o.require(std::isfinite(weighted) && weighted <= cap, "weighted decay");
  return o;
}

// ---------------------------------------------------------------- 4
constexpr double inversion_tol = 1e-8;
constexpr double telescoping_tol = 1e-10;

Outcome inverse_liouvillian() {
  Outcome o;
  std::mt19937_64 rng(404);
  const WeightFunction w(1.0, 0.5);
  double inv = 0.0, budget_excess = 0.0;
  for (int rep = 0; rep < 50; ++rep) {
    const int modes = 2 + rep % 7;  // 2..8 modes
    const Eigen::Index dim = Eigen::Index{1} << modes;
    const auto sys = gaplab::testing::random_gapped(dim, 1 + rep % 3, 1.0, rng);
    const GappedPatch p = find_gapped_patch(sys.es, PatchRequest{1.0, 0.5});
    const Mat q = Mat::Identity(dim, dim) - p.projection;
    const Mat a = gaplab::testing::random_matrix(dim, rng);
    const Mat ia = inv_liouvillian_spectral(sys.es, commutator(sys.h, a), w);
    inv = std::max(inv, opnorm(Mat(p.projection * ia * q - I_unit * p.projection * a * q)) / opnorm(a));
    if (modes <= 6) {
      const TimeQuadrature tq = inv_liouvillian_time(sys.es, a, w);
      budget_excess = std::max(budget_excess, opnorm(Mat(tq.value - inv_liouvillian_spectral(sys.es, a, w))) - tq.budget());
    }
  }
  // local decomposition of I(n_0) for the chain at the end of its
  // dimerisation ramp, 7 sites
  const Model m(frozen_config(builtin_model("M1"), 1.5), 3);
  const EigenSystem es = diagonalize(m.h0(0.0));
  const FockOperator n0 = number_operator(m.space(), SiteSet{Point{0}});
  QuadratureOptions qo;
  qo.tail_tol = 1e-10;
  const LocalDecomposition d = local_decomposition(es, n0, SiteSet{Point{0}}, m.space(), w, qo);
  Mat sum = Mat::Zero(d.inverse.value.rows(), d.inverse.value.cols());
  for (const Mat& x : d.deltas) sum += x;
  const double tele = opnorm(Mat(sum - d.inverse.value));
  bool decaying = true;
  std::ostringstream norms;
  for (std::size_t i = 0; i < d.norms.size(); ++i) {
    norms << (i ? "," : "") << num(d.norms[i]);
    if (i >= 2 && d.norms[i] > d.norms[i - 1]) decaying = false;
  }
  o.detail << "inversion " << num(inv) << ", quadrature excess over budget " << num(budget_excess)
           << ", telescoping " << num(tele) << ", |Delta_m| = " << norms.str();
  o.require(inv <= inversion_tol, "inversion identity");
  o.require(budget_excess <= 0.0, "time quadrature outside its budget");
  o.require(tele <= telescoping_tol * (1.0 + opnorm(d.inverse.value)), "telescoping");
  o.require(decaying, "|Delta_m| not decreasing for m >= 1");
  return o;
}

// ---------------------------------------------------------------- 5
constexpr double pin_tol = 1e-9;

Outcome first_order_pin() {
  Outcome o;
  double worst = 0.0;
  int points = 0;
  for (const std::string& name : {"M1", "M2", "M3"}) {
    const ModelConfig cfg = builtin_model(name);
    Model model(cfg, cfg.k.front());
    SaptBuilder builder(model.sapt_problem(), model.weight());
    const WeightFunction& w = builder.weight();
    for (double t : cfg.time_grid()) {
      const SaptCoefficients c = builder.construct(t, 1);
      // library sign: I([H, A]) = i A off the island, so the generator reads
      // eps A_1 = eta I(I(dH0/dt)) + eps I(V)
      const Mat eta_part = inv_liouvillian_spectral(c.es, Mat(inv_liouvillian_spectral(c.es, builder.problem().h0(t, 1), w)), w);
      const Mat eps_part = inv_liouvillian_spectral(c.es, c.v, w);
      const Mat a10 = c.a.has(1, 0) ? c.a.at(1, 0) : Mat::Zero(c.v.rows(), c.v.cols());
      const Mat a11 = c.a.has(1, 1) ? c.a.at(1, 1) : Mat::Zero(c.v.rows(), c.v.cols());
      worst = std::max({worst, opnorm(Mat(a10 - eta_part)), opnorm(Mat(a11 - eps_part))});
      ++points;
    }
  }
  o.detail << "max deviation " << num(worst) << " over " << points << " grid times";
  o.require(worst <= pin_tol, "first-order generator");
  return o;
}

// ---------------------------------------------------------------- 6
constexpr double stationarity_margin = 0.7;
constexpr double unperturbed_tol = 1e-10;

Outcome stationarity() {
  Outcome o;
  StationarityRequest r;
  r.k = 4;  // 9 sites
  r.frozen_at = 0.5;
  r.orders = {1, 2};
  r.eps = {0.1, 0.03, 0.01, 0.003, 0.001};
  const ResultTable t = run_stationarity(builtin_model("M2"), r);
  const Rows rows(t);
  for (int n : r.orders) {
    const double s = rows.one("slope_eps", {{"n", std::to_string(n)}});
    o.detail << "n=" << n << " slope " << num(s) << "; ";
    o.require(s >= n + stationarity_margin, "slope for n=" + std::to_string(n));
  }
  ModelConfig bare = builtin_model("M2");
  bare.h1.clear();
  bare.potential.kind = "none";
  const Rows b(run_stationarity(bare, r));
  double dev = 0.0;
  for (double v : b.values("projection_deviation")) dev = std::max(dev, v);
  o.detail << "V=0 deviation " << num(dev);
  o.require(dev <= unperturbed_tol, "dressed state differs from P without perturbation");
  return o;
}

// ---------------------------------------------------------------- 7
constexpr double tracking_margin = 0.7;

Outcome tracking() {
  Outcome o;
  const ModelConfig cfg = builtin_model("M1");
  SweepRequest slope;
  slope.n = 1;
  slope.k = 4;
  slope.eps = {0.1, 0.03, 0.01};
  slope.eta = {1e-3};
  const Rows s(run_adiabatic_sweep(cfg, slope));
  const double se = s.one("slope_eps");
  o.detail << "n=1 eps slope " << num(se) << "; ";
  o.require(se >= slope.n + tracking_margin, "eps slope");

  // eps = 0: monotone in eta, constant calibrated on the smallest box
  SweepRequest drive;
  drive.n = 2;
  drive.eps = {0.0};
  drive.eta = {0.4, 0.2, 0.1, 0.05};
  double constant = 0.0;
  for (int k : cfg.k) {
    drive.k = k;
    drive.bound_constant = constant;
    const Rows d(run_adiabatic_sweep(cfg, drive));
    const bool mono = d.one("monotone_eta_ok") == 1.0;
    const auto ok = d.values("bound_ok");
    const bool bounded = std::all_of(ok.begin(), ok.end(), [](double v) { return v == 1.0; });
    if (constant == 0.0) constant = d.one("bound_constant");
    o.detail << "k=" << k << " eta slope " << num(d.one("slope_eta")) << (mono ? " monotone" : " NOT monotone")
             << (bounded ? "" : " BOUND EXCEEDED") << "; ";
    o.require(mono, "monotone in eta at k=" + std::to_string(k));
    o.require(bounded, "calibrated bound at k=" + std::to_string(k));
  }
  o.detail << "C_2 = " << num(constant);
  return o;
}

// ---------------------------------------------------------------- 8
Outcome resummation() {
  Outcome o;
  ResummationRequest r;
  r.k = 2;
  r.t = 0.5;
  r.n = 2;
  const Rows rows(run_resummation(builtin_model("M1"), r));
  const auto ok = rows.values("bound_ok");
  const int failed = static_cast<int>(std::count(ok.begin(), ok.end(), 0.0));
  o.detail << "C_n " << num(rows.one("constant")) << ", " << ok.size() - failed << "/" << ok.size()
           << " grid points within the bound";
  o.require(ok.size() == 25 && failed == 0, "bound on the 5x5 grid");
  const auto fin = rows.values("finite_ok");
  o.require(fin.size() == 25 && std::count(fin.begin(), fin.end(), 1.0) == 25, "finite");
  o.require(rows.one("monotone_ok") == 1.0, "monotone truncation");
  return o;
}

// ---------------------------------------------------------------- 9
constexpr double cone_tol = 1e-6;

Outcome lieb_robinson() {
  Outcome o;
  // frozen Hamiltonians on 11 sites, exact sector exponentials
  const std::vector<std::pair<std::string, int>> cases{{"M1", 5}, {"M2", 5}};
  for (const auto& [name, k] : cases) {
    LrRequest r;
    r.k = k;
    r.times = {0.005, 0.01, 0.02, 0.03, 0.05, 0.1, 0.25, 0.5, 1.0, 2.0};
    r.margin = 0.2;
    const ResultTable t = run_lr(frozen_config(builtin_model(name), 0.5), r);
    const Rows rows(t);
    const auto lhs = rows.values("lhs");
    const auto inside = rows.values("inside_cone");
    double cone_max = 0.0;
    int in_cone = 0;
    for (std::size_t i = 0; i < lhs.size(); ++i) {
      if (inside[i] == 1.0) cone_max = std::max(cone_max, lhs[i]), ++in_cone;
    }
    o.detail << name << " " << 2 * k + 1 << " sites: " << lhs.size() << " times, " << in_cone
             << " inside the cone, max LHS there " << num(cone_max) << "; ";
    o.require(count_failed_flags(t) == 0, name + " flags");
    o.require(in_cone > 0 && cone_max <= cone_tol, name + " light cone");
  }
  return o;
}

// ---------------------------------------------------------------- 10
Outcome thermodynamic_limit() {
  Outcome o;
  TdlRequest r;
  r.ks = {2, 3, 4, 5, 6};
  r.t = 0.5;
  r.observables = {"identity", "density:0", "density:1"};
  r.triples = {{2, 4, 6}};
  const ResultTable t = run_tdl(builtin_model("M1"), r);
  const Rows rows(t);
  double deficit = 0.0;
  for (double v : rows.values("cauchy_deficit")) deficit = std::max(deficit, v);
  const auto diffs = rows.values("difference", {{"observable", "density:0"}});
  o.detail << "density:0 differences";
  for (double v : diffs) o.detail << " " << num(v);
  o.detail << "; max cauchy deficit " << num(deficit) << "; failed flags " << count_failed_flags(t);
  o.require(count_failed_flags(t) == 0, "monotone or comparison flag");
  o.require(deficit == 0.0, "cauchy deficit");
  return o;
}

// ---------------------------------------------------------------- 11
constexpr double response_slope = 1.7;

Outcome response() {
  Outcome o;
  ResponseRequest r;
  r.k = 4;
  r.eps = {0.1, 0.03, 0.01, 0.003, 0.001};
  r.eta_power = 0.75;
  const ModelConfig cfg = builtin_model("M1");
  const Rows rows(run_response(cfg, r));
  const double s = rows.one("slope_residual");
  o.detail << "residual slope " << num(s) << "; sigma_1 by k:";
  std::vector<double> sigma;
  for (int k : {3, 4, 5}) {
    sigma.push_back(first_order_response(frozen_config(cfg, r.frozen_at), k, r.observable));
    o.detail << " " << num(sigma.back());
  }
  const double d1 = std::abs(sigma[1] - sigma[0]), d2 = std::abs(sigma[2] - sigma[1]);
  o.require(s >= response_slope, "residual slope");
  o.require(d2 <= d1, "sigma_1 changes grow with k");
  return o;
}

// ---------------------------------------------------------------- 12
Outcome extension() {
  Outcome o;
  const ModelConfig frozen = frozen_config(builtin_model("M1"), 0.5);
  Model m(frozen, 3);
  SaptBuilder builder(m.sapt_problem(), m.weight());
  const SaptCoefficients c = builder.construct(0.0, 1);
  const Mat& p = c.patch.projection;
  const double kappa = c.patch.kappa;
  const Mat& a11 = c.a.at(1, 1);
  const LocalityProfile f = [](int k) { return std::pow(2.0, -k); };
  const std::vector<int> ks{0, 1, 2, 3};
  std::mt19937_64 rng(1212);
  std::normal_distribution<double> gauss;
  // omega(A) = tr(P A) / kappa is a state; omega(K_1(A)) = -i tr(P [A_11, A]) / kappa
  // is bounded by 2 ||A_11|| ||A|| on every strictly local A
  struct Functional {
    std::string name;
    double c;
    std::function<double(const Mat&)> value;
  };
  const std::vector<Functional> fs{
      {"identity", 1.0, [&](const Mat& a) { return std::abs((p * a).trace()) / kappa; }},
      {"K1", 2.0 * opnorm(a11),
       [&](const Mat& a) { return std::abs((p * commutator(a11, a)).trace()) / kappa; }}};
  double worst = -1e300;
  for (int sample = 0; sample < 20; ++sample) {
    // A = sum_j 2^-j R_j with R_j even, Hermitian, supported on Lambda_j
    FockOperator a = FockOperator::zero(m.space().dim());
    for (int j : ks) {
      FockOperator rj = gaplab::testing::random_even(m.space(), centred_sites(j, 1), rng, true);
      a += (std::pow(2.0, -j) * (1.0 + 0.1 * gauss(rng)) / norm(rj)) * rj;
    }
    const double fa = f_norm(a, m.space(), f, ks).value;
    const Mat blk = m.block(a);
    for (const Functional& fn : fs) {
      for (int b : {0, 1}) {
        const double rhs = fn.c * extension_constant(b, f, 1) * fa;
        worst = std::max(worst, fn.value(blk) / rhs);
      }
    }
  }
  o.detail << "max |omega(T(A))| / (C C_bf ||A||_f) = " << num(worst) << " over 20 samples, b = 0, 1";
  o.require(worst <= 1.0, "extension inequality");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  int only = 0;
  app.add_option("--criterion", only, "run one criterion (1-12)")->check(CLI::Range(1, 12));
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> checks{
      {"algebra", algebra},
      {"conditional expectation", conditional_expectations},
      {"weight function", weight},
      {"inverse Liouvillian", inverse_liouvillian},
      {"first-order generator", first_order_pin},
      {"stationarity", stationarity},
      {"adiabatic tracking", tracking},
      {"resummation", resummation},
      {"Lieb-Robinson", lieb_robinson},
      {"finite volume and limit", thermodynamic_limit},
      {"response", response},
      {"extension bound", extension}};

  int failures = 0;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (only != 0 && id != only) continue;
    const auto start = std::chrono::steady_clock::now();
    bool pass = false;
    std::string detail;
    try {
      Outcome out = checks[i].second();
      pass = out.pass;
      detail = out.detail.str();
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %2d %-24s %s  (%.1fs) %s\n", id, checks[i].first.c_str(), pass ? "PASS" : "FAIL", secs,
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
