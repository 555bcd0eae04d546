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


#include "gaplab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "gaplab/bounds.hpp"
#include "gaplab/locality.hpp"
#include "gaplab/majorana.hpp"
#include "gaplab/parallel.hpp"

namespace gaplab {

Budget::Budget(double seconds) : seconds_(seconds), start_(std::chrono::steady_clock::now()) {}

double Budget::elapsed() const {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
}

void Budget::check(const std::string& stage) const {
  if (seconds_ > 0.0 && elapsed() > seconds_) {
    throw BudgetExceeded("time budget of " + format_number(seconds_) + " s exceeded before " + stage);
  }
}

namespace {

Point parse_point(const std::string& text, int d) {
  Point p;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      p.push_back(std::stoi(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("bad site coordinate '" + item + "'", "/observable");
    }
  }
  if (static_cast<int>(p.size()) != d) throw ConfigError("site '" + text + "' has the wrong dimension", "/observable");
  return p;
}

int largest(const std::vector<int>& ks) { return *std::max_element(ks.begin(), ks.end()); }

std::string fmt_or_blank(double v) { return std::isnan(v) ? std::string() : format_number(v); }

constexpr double na = std::numeric_limits<double>::quiet_NaN();

struct Row {
  std::string experiment;
  int k = -1;
  int n = -1;
  double eps = na, eta = na, t = na;
  std::string observable, param, metric;
  double value = na;

  std::vector<std::string> cells() const {
    return {experiment,       k < 0 ? "" : std::to_string(k), n < 0 ? "" : std::to_string(n),
            fmt_or_blank(eps), fmt_or_blank(eta),             fmt_or_blank(t),
            observable,       param,                          metric,
            format_number(value)};
  }
};

ResultTable make_table(const ModelConfig& cfg, const std::string& experiment) {
  ResultTable t(tidy_columns());
  t.provenance = make_provenance(to_json(cfg), 0, experiment);
  return t;
}

// restrict to the times after t0
std::vector<double> later_times(const ModelConfig& cfg) {
  std::vector<double> out;
  for (double t : cfg.time_grid()) {
    if (t > cfg.t0) out.push_back(t);
  }
  return out;
}

bool monotone_decreasing(const std::vector<double>& v, double floor = 1e-12) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] <= floor && v[i - 1] <= floor) continue;
    if (!(v[i] < v[i - 1])) return false;
  }
  return true;
}

double sup_norm_over(const TimedInteraction& phi, const DecayFunction& zeta, int n, int k,
                     const std::vector<double>& times) {
  double out = 0.0;
  for (double t : times) out = std::max(out, interaction_norm(phi.at(t, k), zeta, n, {k}));
  return out;
}

std::vector<double> sample_window(double s, const std::vector<double>& times, int extra = 8) {
  std::vector<double> out{s};
  double hi = s;
  for (double t : times) {
    out.push_back(t);
    hi = std::max(hi, t);
  }
  for (int i = 1; i < extra; ++i) out.push_back(s + (hi - s) * i / extra);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// sum of the terms of box k supported inside the region, on the target space
FockOperator assemble_within(const Interaction& phi, int k, const SiteSet& region, const FockSpace& target) {
  FockOperator out = FockOperator::zero(target.dim());
  const FockSpace& from = phi.space(k);
  const bool same = from.box().k() == target.box().k() && from.box().dim() == target.box().dim();
  for (const auto& [x, op] : phi.terms(k)) {
    if (!is_subset(x, region)) continue;
    out += same ? op : transplant(op, x, from, target);
  }
  return out;
}

struct FamilyOps {
  std::vector<Envelope> envelopes;
  std::vector<FockOperator> ops;
  FockOperator at(double t, std::size_t dim) const {
    FockOperator out = FockOperator::zero(dim);
    for (std::size_t i = 0; i < ops.size(); ++i) {
      const double w = envelopes[i](t);
      if (w != 0.0) out += w * ops[i];
    }
    return out;
  }
};

double sector_diff_norm(const Mat& a, const Mat& b, const FockSpace& space) {
  double out = 0.0;
  for (int nn = 0; nn <= space.modes(); ++nn) {
    const auto basis = sector_basis(space, nn);
    const Mat d = restrict_to(Mat(a - b), basis);
    out = std::max(out, opnorm_hermitian(Mat(0.5 * (d + d.adjoint()))));
  }
  return out;
}

}  // namespace

const std::vector<std::string>& tidy_columns() {
  static const std::vector<std::string> cols{"experiment", "k",          "n",     "eps",    "eta",
                                             "t",          "observable", "param", "metric", "value"};
  return cols;
}

int count_failed_flags(const ResultTable& table) {
  const auto& cols = table.columns();
  const auto mc = std::find(cols.begin(), cols.end(), "metric") - cols.begin();
  const auto vc = std::find(cols.begin(), cols.end(), "value") - cols.begin();
  if (mc >= static_cast<long>(cols.size()) || vc >= static_cast<long>(cols.size())) return 0;
  int failed = 0;
  for (const auto& r : table.rows()) {
    const std::string& m = r[mc];
    if (m.size() > 3 && m.compare(m.size() - 3, 3, "_ok") == 0 && r[vc] != "1") ++failed;
  }
  return failed;
}

FockOperator make_observable(const std::string& spec, const FockSpace& space) {
  const int d = space.box().dim();
  if (spec == "identity") return FockOperator::identity(space.dim());
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw ConfigError("unknown observable '" + spec + "'", "/observable");
  const std::string kind = spec.substr(0, colon);
  const Point x = parse_point(spec.substr(colon + 1), d);
  if (!space.box().contains(x)) throw ConfigError("site " + to_string(x) + " outside the box", "/observable");
  if (kind == "density") {
    FockOperator n = number_operator(space, SiteSet{x});
    n.set_support(SiteSet{x});
    return n;
  }
  if (kind == "current") {
    Point y = x;
    y[0] += 1;
    if (!space.box().contains(y)) throw ConfigError("current bond leaves the box", "/observable");
    FockOperator hop = creation(space, x) * annihilation(space, y);
    FockOperator j = cplx(0.0, 1.0) * (hop - hop.adjoint());
    j.set_support(SiteSet{x, y});
    return j;
  }
  throw ConfigError("unknown observable kind '" + kind + "'", "/observable");
}

ModelConfig frozen_config(const ModelConfig& cfg, double t) {
  ModelConfig out = cfg;
  for (auto& f : out.h0) f.envelope = Envelope::constant(f.envelope(t));
  for (auto& f : out.h1) f.envelope = Envelope::constant(f.envelope(t));
  out.potential.envelope = Envelope::constant(out.potential.envelope(t));
  return out;
}

ModelConfig with_radii(const ModelConfig& cfg, std::vector<int> ks) {
  ModelConfig out = cfg;
  out.k = std::move(ks);
  return out;
}

ResultTable run_adiabatic_sweep(const ModelConfig& cfg, const SweepRequest& req, const Budget& budget) {
  const int k = req.k > 0 ? req.k : largest(cfg.k);
  verify_gap(with_radii(cfg, {k}));
  budget.check("sweep");
  Model model(cfg, k);
  const Mat a = model.block(make_observable(req.observable, model.space()));
  const std::vector<double> times = later_times(cfg);

  struct Point2 {
    double eps, eta;
  };
  std::vector<Point2> grid;
  for (double eta : req.eta) {
    for (double eps : req.eps) grid.push_back({eps, eta});
  }
  std::vector<std::vector<double>> errors(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    budget.check("tracking trajectory");
    SaptBuilder builder(model.sapt_problem(), model.weight());
    errors[i] = tracking_error(builder, req.n, grid[i].eps, grid[i].eta, a, cfg.t0, times, req.tracking);
  });

  ResultTable table = make_table(cfg, "sweep");
  Row base;
  base.experiment = "sweep";
  base.k = k;
  base.n = req.n;
  base.observable = req.observable;
  std::vector<double> sup(grid.size()), ratio(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    Row r = base;
    r.eps = grid[i].eps;
    r.eta = grid[i].eta;
    for (std::size_t j = 0; j < times.size(); ++j) {
      r.t = times[j];
      r.metric = "error";
      r.value = errors[i][j];
      table.add(r.cells());
    }
    sup[i] = *std::max_element(errors[i].begin(), errors[i].end());
    const double scale = (std::pow(grid[i].eps, req.n + 1) + std::pow(grid[i].eta, req.n + 1)) /
                         std::pow(grid[i].eta, cfg.d + 1);
    ratio[i] = sup[i] / scale;
    r.t = na;
    r.metric = "sup_error";
    r.value = sup[i];
    table.add(r.cells());
    r.metric = "bound_ratio";
    r.value = ratio[i];
    table.add(r.cells());
  }
  const double c = req.bound_constant > 0.0 ? req.bound_constant : *std::max_element(ratio.begin(), ratio.end());
  {
    Row r = base;
    r.param = req.bound_constant > 0.0 ? "supplied" : "calibrated";
    r.metric = "bound_constant";
    r.value = c;
    table.add(r.cells());
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    Row r = base;
    r.eps = grid[i].eps;
    r.eta = grid[i].eta;
    r.metric = "bound_ok";
    r.value = ratio[i] <= c * (1.0 + 1e-12) ? 1.0 : 0.0;
    table.add(r.cells());
  }
  // slopes in eps at fixed eta
  for (double eta : req.eta) {
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (grid[i].eta == eta && grid[i].eps > 0.0) xs.push_back(grid[i].eps), ys.push_back(sup[i]);
    }
    if (xs.size() < 2) continue;
    Row r = base;
    r.eta = eta;
    r.metric = "slope_eps";
    r.value = loglog_slope(xs, ys);
    table.add(r.cells());
  }
  // eps = 0: slope in eta and monotonicity
  std::vector<std::pair<double, double>> zero;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i].eps == 0.0) zero.emplace_back(grid[i].eta, sup[i]);
  }
  if (zero.size() >= 2) {
    std::sort(zero.begin(), zero.end(), [](auto& p, auto& q) { return p.first > q.first; });
    std::vector<double> xs, ys;
    for (auto& [e, v] : zero) xs.push_back(e), ys.push_back(v);
    Row r = base;
    r.eps = 0.0;
    r.metric = "slope_eta";
    r.value = loglog_slope(xs, ys);
    table.add(r.cells());
    r.metric = "monotone_eta_ok";
    r.value = monotone_decreasing(ys, 0.0) ? 1.0 : 0.0;
    table.add(r.cells());
  }
  return table;
}

double first_order_response(const ModelConfig& frozen, int k, const std::string& observable) {
  Model model(frozen, k);
  SaptBuilder builder(model.sapt_problem(), model.weight());
  const SaptCoefficients c = builder.construct(0.0, 1);
  const Mat a = model.block(make_observable(observable, model.space()));
  const Mat& a11 = c.a.at(1, 1);
  const Mat comm = a11 * a - a * a11;
  const cplx v = cplx(0.0, -1.0) * (c.patch.projection * comm).trace() / static_cast<double>(c.patch.kappa);
  return v.real();
}

ResultTable run_response(const ModelConfig& cfg, const ResponseRequest& req, const Budget& budget) {
  const int k = req.k > 0 ? req.k : largest(cfg.k);
  const ModelConfig frozen = frozen_config(cfg, req.frozen_at);
  ModelConfig check = with_radii(frozen, {k});
  check.time_points = 1;
  verify_gap(check);
  budget.check("response");
  Model model(frozen, k);
  const Mat h0 = model.h0_block(0.0);
  const Mat v = model.perturbation_block(0.0);
  const Mat a = model.block(make_observable(req.observable, model.space()));

  SaptBuilder builder(model.sapt_problem(), model.weight());
  const SaptCoefficients c = builder.construct(0.0, req.n);
  const int kappa = c.patch.kappa;
  const Mat& p = c.patch.projection;
  const double base = (p * a).trace().real() / kappa;
  std::vector<double> sigma_j(req.n + 1, 0.0);
  for (int j = 1; j <= req.n; ++j) sigma_j[j] = expansion_expectation(c, a, j)[j].real();

  ResultTable table = make_table(cfg, "response");
  Row r0;
  r0.experiment = "response";
  r0.k = k;
  r0.n = req.n;
  r0.observable = req.observable;
  for (int j = 1; j <= req.n; ++j) {
    Row r = r0;
    r.metric = "sigma_" + std::to_string(j);
    r.value = sigma_j[j];
    table.add(r.cells());
  }
  {
    Row r = r0;
    r.metric = "kubo";
    r.value = first_order_response(frozen, k, req.observable);
    table.add(r.cells());
  }

  std::vector<double> times = req.times;
  std::sort(times.begin(), times.end());
  std::vector<std::vector<double>> sigma(req.eps.size());
  parallel_for(req.eps.size(), [&](std::size_t e) {
    budget.check("response trajectory");
    const double eps = req.eps[e];
    const double eta = std::pow(eps, req.eta_power);
    std::vector<double> values(times.size(), -base);
    if (eps == 0.0) {
      // nothing is switched on, the state stays put
      for (auto& x : values) x = 0.0;
      sigma[e] = values;
      return;
    }
    TimeOperator h = [&](double t) { return Mat(h0 + eps * smooth_step(t + 1.0) * v); };
    std::vector<double> early;
    for (double t : times) {
      if (t < 0.0) early.push_back(t);
    }
    early.push_back(0.0);
    const EigenSystem hs = diagonalize(Mat(h0 + eps * v));
    for (int m = 0; m < kappa; ++m) {
      const Vec psi0 = c.es.vectors.col(static_cast<Eigen::Index>(c.patch.first) + m);
      const std::vector<Vec> psis = propagate_state(h, psi0, eta, -1.0, early, req.propagation);
      // f = 1 from t = 0 on: exact exponential of the constant Hamiltonian
      const Vec coeff = hs.vectors.adjoint() * psis.back();
      std::size_t ei = 0;
      for (std::size_t i = 0; i < times.size(); ++i) {
        Vec psi;
        if (times[i] < 0.0) {
          psi = psis[ei++];
        } else {
          Vec phase(coeff.size());
          for (Eigen::Index q = 0; q < coeff.size(); ++q)
            phase(q) = std::exp(cplx(0.0, -times[i] * hs.values(q) / eta)) * coeff(q);
          psi = hs.vectors * phase;
        }
        values[i] += psi.dot(a * psi).real() / kappa;
      }
    }
    sigma[e] = values;
  });

  std::vector<double> xs, sups;
  for (std::size_t e = 0; e < req.eps.size(); ++e) {
    const double eps = req.eps[e];
    Row r = r0;
    r.eps = eps;
    r.eta = std::pow(eps, req.eta_power);
    double expansion = 0.0;
    for (int j = 1; j <= req.n; ++j) expansion += std::pow(eps, j) * sigma_j[j];
    double sup = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
      r.t = times[i];
      r.metric = "sigma";
      r.value = sigma[e][i];
      table.add(r.cells());
      r.metric = "expansion";
      r.value = expansion;
      table.add(r.cells());
      r.metric = "residual";
      r.value = std::abs(sigma[e][i] - expansion);
      table.add(r.cells());
      sup = std::max(sup, r.value);
    }
    r.t = na;
    r.metric = "sup_residual";
    r.value = sup;
    table.add(r.cells());
    if (eps > 0.0) xs.push_back(eps), sups.push_back(sup);
  }
  if (xs.size() >= 2) {
    Row r = r0;
    r.metric = "slope_residual";
    r.value = loglog_slope(xs, sups);
    table.add(r.cells());
  }
  return table;
}

std::vector<ComparisonRow> dynamics_comparison(const ModelConfig& cfg, const ComparisonRequest& req) {
  const int m = req.boxes.m, k = req.boxes.k, l = req.boxes.l;
  if (!(1 <= m && m <= k && k <= l)) throw std::invalid_argument("comparison needs 1 <= M <= k <= l");
  const DecayFunction zeta = parse_decay(cfg.decay);
  Model model(cfg, k);
  const TimedInteraction phi = model.h0_interaction(l == k ? std::vector<int>{k} : std::vector<int>{k, l});
  const Box box_m = build_box(m, cfg.d, Boundary::open);
  const FockSpace space_m(box_m, cfg.r);
  const FockSpace& space_k = phi.families.front().phi.space(k);
  const SiteSet lam_m = centred_sites(m, cfg.d);

  FamilyOps rl, rk, full, cut;
  for (const auto& f : phi.families) {
    rl.envelopes.push_back(f.envelope);
    rk.envelopes.push_back(f.envelope);
    full.envelopes.push_back(f.envelope);
    cut.envelopes.push_back(f.envelope);
    rl.ops.push_back(assemble_within(f.phi, l, lam_m, space_m));
    rk.ops.push_back(assemble_within(f.phi, k, lam_m, space_m));
    full.ops.push_back(assemble(f.phi, k));
    cut.ops.push_back(assemble_within(f.phi, k, lam_m, space_k));
  }

  const FockOperator a_m = make_observable(req.observable, space_m);
  const FockOperator a_k = make_observable(req.observable, space_k);
  if (!is_subset(a_m.support(), lam_m)) throw std::invalid_argument("observable must live in the inner box");

  std::vector<double> times = req.times;
  std::sort(times.begin(), times.end());
  auto evolve = [&](const FamilyOps& ops, const FockOperator& a, const FockSpace& space) {
    return heisenberg_sectors([&](double t) { return ops.at(t, space.dim()); }, a, space, req.eta, req.s, times,
                              req.propagation);
  };
  const auto ev_l = evolve(rl, a_m, space_m);
  const auto ev_k = evolve(rk, a_m, space_m);
  const auto ev_full = evolve(full, a_k, space_k);
  const auto ev_cut = evolve(cut, a_k, space_k);

  const std::vector<double> window = sample_window(req.s, times);
  double phi_norm = 0.0;
  for (int kk : {k, l}) phi_norm = std::max(phi_norm, sup_norm_over(phi, zeta, 0, kk, window));
  const double deficit = l == k ? 0.0 : cauchy_deficit(phi, k, l, m, zeta, 0, 0, window);
  const SiteSet x = a_m.support();
  const double fs_m = f_sum(zeta, box_m, x, lam_m);
  const double fs_out = f_sum(zeta, space_k.box(), x, set_difference(space_k.box().all(), lam_m));
  const double na_norm = norm(a_m);

  std::vector<ComparisonRow> out;
  for (std::size_t i = 0; i < times.size(); ++i) {
    ComparisonRow r;
    r.t = times[i];
    const double tau = std::abs(times[i] - req.s) / req.eta;
    r.diff_restricted = sector_diff_norm(ev_l[i], ev_k[i], space_m);
    r.diff_cut = sector_diff_norm(ev_full[i], ev_cut[i], space_k);
    r.bound_restricted = comparison_bound_restricted(na_norm, phi_norm, deficit, fs_m, tau);
    r.bound_cut = comparison_bound_cut(na_norm, phi_norm, fs_out, tau);
    // identical generators still leave the integrator's rounding
    constexpr double slack = 1e-8;
    if (r.diff_restricted > r.bound_restricted * (1.0 + 1e-12) + slack ||
        r.diff_cut > r.bound_cut * (1.0 + 1e-12) + slack) {
      throw BoundViolation("dynamics comparison bound violated at t = " + format_number(r.t));
    }
    out.push_back(r);
  }
  return out;
}

ResultTable run_tdl(const ModelConfig& cfg, const TdlRequest& req, const Budget& budget) {
  if (req.ks.size() < 3) throw ConfigError("the limit needs at least three radii", "/k");
  ModelConfig check = with_radii(cfg, req.ks);
  check.t0 = req.t;
  check.time_points = 1;
  verify_gap(check);
  ResultTable table = make_table(cfg, "tdl");
  Row r0;
  r0.experiment = "tdl";
  r0.t = req.t;

  std::vector<std::vector<double>> omega(req.observables.size(), std::vector<double>(req.ks.size()));
  parallel_for(req.ks.size(), [&](std::size_t i) {
    budget.check("tdl radius");
    Model model(cfg, req.ks[i]);
    const EigenSystem es = diagonalize(model.h0_block(req.t));
    const GappedPatch patch = find_gapped_patch(es, cfg.gap);
    for (std::size_t o = 0; o < req.observables.size(); ++o) {
      const Mat a = model.block(make_observable(req.observables[o], model.space()));
      omega[o][i] = (patch.projection * a).trace().real() / patch.kappa;
    }
  });
  for (std::size_t o = 0; o < req.observables.size(); ++o) {
    std::vector<double> diffs;
    for (std::size_t i = 0; i < req.ks.size(); ++i) {
      Row r = r0;
      r.k = req.ks[i];
      r.observable = req.observables[o];
      r.metric = "omega";
      r.value = omega[o][i];
      table.add(r.cells());
      if (i + 1 < req.ks.size()) {
        r.param = "next=" + std::to_string(req.ks[i + 1]);
        r.metric = "difference";
        r.value = std::abs(omega[o][i + 1] - omega[o][i]);
        diffs.push_back(r.value);
        table.add(r.cells());
      }
    }
    Row r = r0;
    r.observable = req.observables[o];
    r.metric = "monotone_ok";
    r.value = monotone_decreasing(diffs) ? 1.0 : 0.0;
    table.add(r.cells());
  }

  budget.check("cauchy deficits");
  const DecayFunction zeta = parse_decay(cfg.decay);
  const std::vector<int> ks_sorted = [&] {
    auto v = req.ks;
    std::sort(v.begin(), v.end());
    return v;
  }();
  const TimedInteraction phi = Model(cfg, ks_sorted.front()).h0_interaction(ks_sorted);
  for (std::size_t i = 0; i + 1 < ks_sorted.size(); ++i) {
    const int k = ks_sorted[i], l = ks_sorted[i + 1];
    Row r = r0;
    r.t = na;
    r.k = k;
    r.param = "l=" + std::to_string(l) + ";M=" + std::to_string(k);
    r.metric = "cauchy_deficit";
    r.value = cauchy_deficit(phi, k, l, k, zeta, 0, 0, cfg.time_grid());
    table.add(r.cells());
  }

  for (const auto& tr : req.triples) {
    budget.check("dynamics comparison");
    ComparisonRequest creq = req.comparison;
    creq.boxes = tr;
    Row r = r0;
    r.k = tr.k;
    r.eta = creq.eta;
    r.observable = creq.observable;
    r.param = "M=" + std::to_string(tr.m) + ";k=" + std::to_string(tr.k) + ";l=" + std::to_string(tr.l) +
              ";s=" + format_number(creq.s);
    for (const ComparisonRow& c : dynamics_comparison(cfg, creq)) {
      r.t = c.t;
      for (auto [name, v] : {std::pair<const char*, double>{"diff_restricted", c.diff_restricted},
                             {"bound_restricted", c.bound_restricted},
                             {"diff_cut", c.diff_cut},
                             {"bound_cut", c.bound_cut}}) {
        r.metric = name;
        r.value = v;
        table.add(r.cells());
      }
    }
  }
  return table;
}

ResultTable run_lr(const ModelConfig& cfg, const LrRequest& req, const Budget& budget) {
  ModelConfig check = with_radii(cfg, {req.k});
  verify_gap(check);
  budget.check("lieb-robinson");
  const DecayFunction zeta = parse_decay(cfg.decay);
  Model model(cfg, req.k);
  const FockSpace& space = model.space();
  const TimedInteraction phi = model.h0_interaction({req.k});
  std::vector<double> times = req.times;
  std::sort(times.begin(), times.end());

  LrSetup setup;
  setup.a = make_observable("density:" + req.a_site, space);
  setup.x = setup.a.support();
  setup.zeta = zeta;
  setup.phi_norm = sup_norm_over(phi, zeta, 0, req.k, sample_window(req.s, times));
  setup.eta = req.eta;
  setup.s = req.s;
  setup.margin = req.margin;
  setup.stationary = model.stationary();

  std::vector<std::string> bs = req.b_sites;
  if (bs.empty()) {
    std::string far = std::to_string(req.k);
    for (int i = 1; i < cfg.d; ++i) far += ",0";
    bs.push_back(far);
  }
  ResultTable table = make_table(cfg, "lr");
  Row r0;
  r0.experiment = "lr";
  r0.k = req.k;
  r0.eta = req.eta;
  r0.observable = "density:" + req.a_site;
  auto h = [&](double t) { return model.h0(t); };
  for (const std::string& b : bs) {
    budget.check("lieb-robinson pair");
    LrSetup s = setup;
    s.b = make_observable("density:" + b, space);
    s.y = s.b.support();
    const int dist = set_distance(s.x, s.y);
    Row r = r0;
    r.param = "y=" + b + ";dist=" + std::to_string(dist);
    for (const LrRow& row : lr_data(h, space, s, times, req.propagation)) {
      r.t = row.t;
      for (auto [name, v] : {std::pair<const char*, double>{"lhs", row.lhs},
                             {"rhs_general", row.rhs_general},
                             {"rhs_exponential", row.rhs_exponential},
                             {"velocity", row.velocity},
                             {"inside_cone", row.inside_cone ? 1.0 : 0.0}}) {
        r.metric = name;
        r.value = v;
        table.add(r.cells());
      }
      r.metric = "cone_ok";
      r.value = (!row.inside_cone || row.lhs <= 1e-6) ? 1.0 : 0.0;
      table.add(r.cells());
    }
  }
  return table;
}

ResultTable run_norms(const ModelConfig& cfg) {
  const DecayFunction zeta = parse_decay(cfg.decay);
  std::vector<int> ks = cfg.k;
  std::sort(ks.begin(), ks.end());
  Model model(cfg, ks.front());
  const TimedInteraction h0 = model.h0_interaction(ks);
  const bool has_h1 = !cfg.h1.empty();
  const TimedInteraction h1 = has_h1 ? model.h1_interaction(ks) : TimedInteraction{};
  const std::vector<double> grid = cfg.time_grid();
  ResultTable table = make_table(cfg, "norms");
  Row r0;
  r0.experiment = "norms";
  for (int k : ks) {
    const Box box = build_box(k, cfg.d, cfg.bc);
    Row r = r0;
    r.k = k;
    for (int n = 0; n <= 2; ++n) {
      r.n = n;
      r.param = "H0";
      r.metric = "interaction_norm";
      r.value = sup_norm_over(h0, zeta, n, k, grid);
      table.add(r.cells());
      if (has_h1) {
        r.param = "H1";
        r.value = sup_norm_over(h1, zeta, n, k, grid);
        table.add(r.cells());
      }
    }
    r.n = -1;
    r.param = "";
    r.metric = "gamma_norm";
    r.value = gamma_norm(zeta, box);
    table.add(r.cells());
    r.metric = "convolution_constant";
    r.value = convolution_constant(zeta, box);
    table.add(r.cells());
    r.metric = "lipschitz_constant";
    r.value = lipschitz_constant(model.potential(), {box});
    table.add(r.cells());
  }
  for (std::size_t i = 0; i + 1 < ks.size(); ++i) {
    Row r = r0;
    r.k = ks[i];
    r.n = 0;
    r.param = "l=" + std::to_string(ks[i + 1]) + ";M=" + std::to_string(ks[i]);
    r.metric = "cauchy_deficit";
    r.value = cauchy_deficit(h0, ks[i], ks[i + 1], ks[i], zeta, 0, 0, grid);
    table.add(r.cells());
  }
  return table;
}

ResultTable run_check_gap(const ModelConfig& cfg) {
  const std::vector<GapReport> reports = verify_gap(cfg);
  ResultTable table = make_table(cfg, "check-gap");
  Row r0;
  r0.experiment = "check-gap";
  for (const GapReport& g : reports) {
    Row r = r0;
    r.k = g.k;
    r.t = g.t;
    for (auto [name, v] : {std::pair<const char*, double>{"gap", g.patch.g},
                           {"kappa", static_cast<double>(g.patch.kappa)},
                           {"patch_low", g.patch.f_minus},
                           {"patch_high", g.patch.f_plus}}) {
      r.metric = name;
      r.value = v;
      table.add(r.cells());
    }
    for (Eigen::Index i = 0; i < g.spectrum.size(); ++i) {
      const bool in = static_cast<std::size_t>(i) >= g.patch.first &&
                      static_cast<std::size_t>(i) < g.patch.first + static_cast<std::size_t>(g.patch.kappa);
      r.param = "index=" + std::to_string(i) + ";in_patch=" + (in ? "1" : "0");
      r.metric = "eigenvalue";
      r.value = g.spectrum(i);
      table.add(r.cells());
    }
  }
  return table;
}

ResultTable run_resummation(const ModelConfig& cfg, const ResummationRequest& req) {
  const int k = req.k > 0 ? req.k : largest(cfg.k);
  ModelConfig check = with_radii(cfg, {k});
  check.t0 = req.t;
  check.time_points = 1;
  verify_gap(check);
  Model model(cfg, k);
  SaptBuilder builder(model.sapt_problem(), model.weight());
  const int order = std::max(req.n, 4);
  const SaptCoefficients c = builder.construct(req.t, order);
  const ResummedGenerator gen = build_resummation(c);
  const double cn = gen.constant(req.n);

  ResultTable table = make_table(cfg, "resummation");
  Row r0;
  r0.experiment = "resummation";
  r0.k = k;
  r0.n = req.n;
  r0.t = req.t;
  {
    Row r = r0;
    r.metric = "constant";
    r.value = cn;
    table.add(r.cells());
    for (int j = 1; j <= gen.j_max(); ++j) {
      r.param = "j=" + std::to_string(j);
      r.metric = "delta";
      r.value = gen.delta[j - 1];
      table.add(r.cells());
    }
  }
  std::vector<double> eps = req.eps, eta = req.eta;
  std::sort(eps.begin(), eps.end());
  std::sort(eta.begin(), eta.end());
  std::vector<std::vector<int>> active(eps.size(), std::vector<int>(eta.size()));
  for (std::size_t i = 0; i < eps.size(); ++i) {
    for (std::size_t j = 0; j < eta.size(); ++j) {
      const Mat s = resummed_s(c, gen, eps[i], eta[j]);
      const double diff = opnorm(Mat(s - c.s_n(eps[i], eta[j], req.n)));
      const double bound = cn * std::pow(std::max(eps[i], eta[j]), req.n);
      active[i][j] = gen.active_terms(eps[i], eta[j]);
      Row r = r0;
      r.eps = eps[i];
      r.eta = eta[j];
      r.metric = "difference";
      r.value = diff;
      table.add(r.cells());
      r.metric = "bound";
      r.value = bound;
      table.add(r.cells());
      r.metric = "active_terms";
      r.value = active[i][j];
      table.add(r.cells());
      r.metric = "finite_ok";
      r.value = std::isfinite(s.norm()) ? 1.0 : 0.0;
      table.add(r.cells());
      r.metric = "bound_ok";
      r.value = diff <= bound ? 1.0 : 0.0;
      table.add(r.cells());
    }
  }
  // fewer active terms as either parameter grows
  bool mono = true;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    for (std::size_t j = 0; j < eta.size(); ++j) {
      if (i + 1 < eps.size() && active[i + 1][j] > active[i][j]) mono = false;
      if (j + 1 < eta.size() && active[i][j + 1] > active[i][j]) mono = false;
    }
  }
  Row r = r0;
  r.metric = "monotone_ok";
  r.value = mono ? 1.0 : 0.0;
  table.add(r.cells());
  return table;
}

ResultTable run_stationarity(const ModelConfig& cfg, const StationarityRequest& req) {
  const int k = req.k > 0 ? req.k : largest(cfg.k);
  const ModelConfig frozen = frozen_config(cfg, req.frozen_at);
  ModelConfig check = with_radii(frozen, {k});
  check.time_points = 1;
  verify_gap(check);
  Model model(frozen, k);
  SaptBuilder builder(model.sapt_problem(), model.weight());
  const int top = *std::max_element(req.orders.begin(), req.orders.end());
  const SaptCoefficients c = builder.construct(0.0, top);
  const Mat& p = c.patch.projection;

  ResultTable table = make_table(cfg, "stationarity");
  Row r0;
  r0.experiment = "stationarity";
  r0.k = k;
  r0.eta = 0.0;
  for (int n : req.orders) {
    std::vector<double> xs, ys;
    for (double eps : req.eps) {
      const Mat pi = neass(p, c.s_n(eps, 0.0, n));
      const Mat h = c.h0 + eps * c.v;
      Row r = r0;
      r.n = n;
      r.eps = eps;
      r.metric = "commutator";
      r.value = opnorm(Mat(h * pi - pi * h));
      table.add(r.cells());
      if (eps > 0.0) xs.push_back(eps), ys.push_back(r.value);
      r.metric = "projection_deviation";
      r.value = opnorm(Mat(pi - p));
      table.add(r.cells());
    }
    Row r = r0;
    r.n = n;
    r.metric = "slope_eps";
    r.value = loglog_slope(xs, ys);
    table.add(r.cells());
  }
  return table;
}

}  // namespace gaplab
