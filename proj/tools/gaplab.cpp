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


#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <limits>
#include <map>
#include <sstream>

#include "gaplab/experiments.hpp"
#include "gaplab/weight.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace gaplab;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_other = 1;
constexpr int exit_violation = 2;
constexpr int exit_config = 3;

struct Common {
  std::string config = "-";
  std::string builtin;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  double budget = 0.0;
  bool svg = false;
};

void fail(const std::string& kind, const std::string& message, const std::string& pointer = "") {
  json e{{"error", kind}, {"message", message}};
  if (kind == "config") e["pointer"] = pointer;
  std::cerr << e.dump() << '\n';
}

ModelConfig load_config(const Common& c) {
  if (!c.builtin.empty()) return builtin_model(c.builtin);
  std::string text;
  if (c.config == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  } else {
    std::ifstream in(c.config, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file '" + c.config + "'", "");
    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  return parse_config_text(text);
}

fs::path out_file(const Common& c, const std::string& name) {
  fs::create_directories(c.out_dir);
  return fs::path(c.out_dir) / name;
}

// writes <stem>.csv and <stem>.json, returns the number of failed flags
int emit(const Common& c, const std::string& stem, ResultTable& table) {
  table.provenance["seed"] = c.seed;
  {
    std::ofstream os(out_file(c, stem + ".csv"), std::ios::binary);
    table.write_csv(os);
  }
  const int failed = count_failed_flags(table);
  json meta = table.provenance;
  meta["rows"] = table.size();
  meta["failed_flags"] = failed;
  {
    std::ofstream os(out_file(c, stem + ".json"), std::ios::binary);
    os << meta.dump(2) << '\n';
  }
  std::cout << json{{"experiment", stem}, {"rows", table.size()}, {"failed_flags", failed}}.dump() << '\n';
  return failed;
}

// metric values keyed by a grouping column, x from another
std::map<std::string, Series> series_by(const ResultTable& t, const std::string& metric, const std::string& group,
                                        const std::string& x) {
  const auto& cols = t.columns();
  auto idx = [&](const std::string& name) {
    return static_cast<std::size_t>(std::find(cols.begin(), cols.end(), name) - cols.begin());
  };
  const std::size_t mc = idx("metric"), vc = idx("value"), gc = idx(group), xc = idx(x);
  std::map<std::string, Series> out;
  for (const auto& r : t.rows()) {
    if (r[mc] != metric) continue;
    Series& s = out[r[gc]];
    s.label = group + "=" + r[gc];
    s.x.push_back(std::stod(r[xc]));
    s.y.push_back(std::stod(r[vc]));
  }
  return out;
}

void loglog(const Common& c, const std::string& stem, const ResultTable& t, const std::string& metric,
            const std::string& group, const std::string& x, const std::string& title) {
  if (!c.svg) return;
  std::vector<Series> series;
  for (auto& [key, s] : series_by(t, metric, group, x)) series.push_back(std::move(s));
  std::ofstream os(out_file(c, stem + ".svg"), std::ios::binary);
  write_loglog_svg(os, title, x, metric, series);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gaplab: adiabatic and response experiments on gapped lattice fermions"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-c,--config", common.config, "JSON config path, '-' for stdin")->capture_default_str();
    sub->add_option("--builtin", common.builtin, "built-in model (M1, M2, M3) instead of a config");
    sub->add_option("-o,--out-dir", common.out_dir, "output directory")->capture_default_str();
    sub->add_option("--seed", common.seed, "seed recorded in the provenance block")->capture_default_str();
    sub->add_option("--budget-seconds", common.budget, "wall-clock budget, 0 for none")->capture_default_str();
    sub->add_flag("--svg", common.svg, "also write SVG plots");
  };

  auto* gap = app.add_subcommand("check-gap", "spectrum and achieved gap per radius and time");
  add_common(gap);

  SweepRequest sweep;
  auto* sw = app.add_subcommand("sweep", "adiabatic tracking error over an (eps, eta) grid");
  add_common(sw);
  sw->add_option("-n,--order", sweep.n)->capture_default_str();
  sw->add_option("-k,--radius", sweep.k, "box radius, 0 for the largest configured")->capture_default_str();
  sw->add_option("--eps", sweep.eps)->delimiter(',');
  sw->add_option("--eta", sweep.eta)->delimiter(',');
  sw->add_option("--observable", sweep.observable)->capture_default_str();
  sw->add_option("--bound-constant", sweep.bound_constant, "fixed constant, 0 calibrates")->capture_default_str();

  ResponseRequest resp;
  auto* rs = app.add_subcommand("response", "switched-on response against its expansion");
  add_common(rs);
  rs->add_option("-n,--order", resp.n)->capture_default_str();
  rs->add_option("-k,--radius", resp.k)->capture_default_str();
  rs->add_option("--eps", resp.eps)->delimiter(',');
  rs->add_option("--eta-power", resp.eta_power)->capture_default_str();
  rs->add_option("--times", resp.times)->delimiter(',');
  rs->add_option("--observable", resp.observable)->capture_default_str();
  rs->add_option("--frozen-at", resp.frozen_at)->capture_default_str();

  TdlRequest tdl;
  std::vector<std::string> triples;
  auto* td = app.add_subcommand("tdl", "expectations and dynamics on growing boxes");
  add_common(td);
  td->add_option("-k,--radii", tdl.ks)->delimiter(',');
  td->add_option("--observable", tdl.observables)->delimiter(';');
  td->add_option("-t,--time", tdl.t)->capture_default_str();
  td->add_option("--triple", triples, "M,k,l for the dynamics comparison");
  td->add_option("--eta", tdl.comparison.eta)->capture_default_str();
  td->add_option("--start", tdl.comparison.s)->capture_default_str();
  td->add_option("--times", tdl.comparison.times)->delimiter(',');

  LrRequest lr;
  bool all_sites = false;
  auto* lrc = app.add_subcommand("lr", "commutator growth against the propagation bounds");
  add_common(lrc);
  lrc->add_option("-k,--radius", lr.k)->capture_default_str();
  lrc->add_option("--a-site", lr.a_site)->capture_default_str();
  lrc->add_option("--b-site", lr.b_sites);
  lrc->add_flag("--all-sites", all_sites, "every B site at distance >= 1 (light-cone map)");
  lrc->add_option("--eta", lr.eta)->capture_default_str();
  lrc->add_option("--start", lr.s)->capture_default_str();
  lrc->add_option("--times", lr.times)->delimiter(',');
  lrc->add_option("--margin", lr.margin)->capture_default_str();
  double lr_frozen = std::numeric_limits<double>::quiet_NaN();
  lrc->add_option("--frozen-at", lr_frozen, "freeze every envelope at this time (exact sector exponentials)");

  auto* nm = app.add_subcommand("norms", "interaction norms, box sums and Cauchy deficits");
  add_common(nm);

  double wg = 0.0, wgt = 0.0, smax = 40.0, sh = 0.05, wmax = 5.0;
  int nw = 201;
  auto* wt = app.add_subcommand("weight-table", "the filter function and its Fourier transform");
  add_common(wt);
  wt->add_option("--g", wg, "gap, default from the config");
  wt->add_option("--g-tilde", wgt, "inner width, default from the config");
  wt->add_option("--smax", smax)->capture_default_str();
  wt->add_option("--step", sh)->capture_default_str();
  wt->add_option("--wmax", wmax)->capture_default_str();
  wt->add_option("--nw", nw)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    fail("config", e.what(), "");
    return exit_config;
  }

  try {
    const Budget budget(common.budget);
    if (wt->parsed() && wg > 0.0) {
      const WeightFunction w(wg, wgt);
      std::ofstream os(out_file(common, "weight_table.csv"), std::ios::binary);
      write_weight_csv(os, w, smax, sh, wmax, nw);
      std::cout << json{{"experiment", "weight-table"}, {"g", wg}, {"g_tilde", wgt}}.dump() << '\n';
      return exit_ok;
    }
    ModelConfig cfg = load_config(common);
    int failed = 0;
    if (gap->parsed()) {
      ResultTable t = run_check_gap(cfg);
      failed = emit(common, "check_gap", t);
    } else if (sw->parsed()) {
      ResultTable t = run_adiabatic_sweep(cfg, sweep, budget);
      failed = emit(common, "sweep", t);
      loglog(common, "sweep", t, "sup_error", "eta", "eps", "tracking error against eps");
    } else if (rs->parsed()) {
      ResultTable t = run_response(cfg, resp, budget);
      failed = emit(common, "response", t);
      loglog(common, "response", t, "sup_residual", "n", "eps", "response residual against eps");
    } else if (td->parsed()) {
      for (const std::string& s : triples) {
        ComparisonTriple tr;
        char c1 = 0, c2 = 0;
        std::istringstream is(s);
        if (!(is >> tr.m >> c1 >> tr.k >> c2 >> tr.l) || c1 != ',' || c2 != ',')
          throw ConfigError("triple must read M,k,l", "/triple");
        tdl.triples.push_back(tr);
      }
      ResultTable t = run_tdl(cfg, tdl, budget);
      failed = emit(common, "tdl", t);
    } else if (lrc->parsed()) {
      if (!std::isnan(lr_frozen)) cfg = frozen_config(cfg, lr_frozen);
      if (all_sites) {
        lr.b_sites.clear();
        const Box box = build_box(lr.k, cfg.d, cfg.bc);
        const FockSpace space(box, cfg.r);
        const SiteSet x = make_observable("density:" + lr.a_site, space).support();
        for (const Point& p : box.sites()) {
          if (set_distance(x, SiteSet{p}) < 1) continue;
          std::string s;
          for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
          lr.b_sites.push_back(s);
        }
      }
      ResultTable t = run_lr(cfg, lr, budget);
      failed = emit(common, "lr", t);
      if (common.svg) {
        // rows: B sites, columns: times
        std::vector<std::string> rows, cols;
        std::map<std::string, std::map<std::string, double>> grid;
        const auto& c = t.columns();
        auto at = [&](const char* n) { return static_cast<std::size_t>(std::find(c.begin(), c.end(), n) - c.begin()); };
        for (const auto& r : t.rows()) {
          if (r[at("metric")] != "lhs") continue;
          const std::string& p = r[at("param")];
          const std::string& tt = r[at("t")];
          if (!grid.count(p)) rows.push_back(p);
          if (std::find(cols.begin(), cols.end(), tt) == cols.end()) cols.push_back(tt);
          grid[p][tt] = std::stod(r[at("value")]);
        }
        std::vector<std::vector<double>> values;
        for (const auto& p : rows) {
          std::vector<double> line;
          for (const auto& tt : cols) line.push_back(grid[p].count(tt) ? grid[p][tt] : 0.0);
          values.push_back(line);
        }
        std::ofstream os(out_file(common, "lr.svg"), std::ios::binary);
        write_heatmap_svg(os, "log10 commutator norm", rows, cols, values);
      }
    } else if (nm->parsed()) {
      ResultTable t = run_norms(cfg);
      failed = emit(common, "norms", t);
    } else if (wt->parsed()) {
      const WeightFunction w(cfg.gap.g_min, wgt > 0.0 ? wgt : cfg.gap.g_tilde);
      std::ofstream os(out_file(common, "weight_table.csv"), std::ios::binary);
      write_weight_csv(os, w, smax, sh, wmax, nw);
      std::cout << json{{"experiment", "weight-table"}, {"g", w.g()}, {"g_tilde", w.g_tilde()}}.dump() << '\n';
    }
    if (failed > 0) {
      fail("check_failed", std::to_string(failed) + " flag(s) failed, see the output table");
      return exit_violation;
    }
    return exit_ok;
  } catch (const ConfigError& e) {
    fail("config", e.what(), e.pointer());
    return exit_config;
  } catch (const BoundViolation& e) {
    fail("bound_violation", e.what());
    return exit_violation;
  } catch (const BudgetExceeded& e) {
    fail("budget", e.what());
    return exit_other;
  } catch (const std::exception& e) {
    fail("runtime", e.what());
    return exit_other;
  }
}
