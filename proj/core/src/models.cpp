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


#include "gaplab/models.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace gaplab {

using nlohmann::json;

std::vector<double> ModelConfig::time_grid() const {
  std::vector<double> out;
  if (time_points <= 1) return {t0};
  for (int i = 0; i < time_points; ++i) out.push_back(t0 + (t1 - t0) * i / (time_points - 1));
  return out;
}

namespace {

std::string join_ptr(const std::string& base, const std::string& key) { return base + "/" + key; }

void allow_keys(const json& j, const std::string& ptr, std::initializer_list<const char*> keys) {
  if (!j.is_object()) throw ConfigError("expected an object", ptr.empty() ? "/" : ptr);
  std::set<std::string> ok(keys.begin(), keys.end());
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!ok.count(it.key())) throw ConfigError("unknown key '" + it.key() + "'", join_ptr(ptr, it.key()));
  }
}

template <typename T>
T read(const json& j, const std::string& key, const std::string& ptr, const T& fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("wrong type for '" + key + "'", join_ptr(ptr, key));
  }
}

template <typename T>
T require(const json& j, const std::string& key, const std::string& ptr) {
  if (!j.contains(key)) throw ConfigError("missing key '" + key + "'", join_ptr(ptr, key));
  return read<T>(j, key, ptr, T{});
}

Envelope parse_envelope(const json& j, const std::string& ptr) {
  allow_keys(j, ptr, {"kind", "params"});
  const std::string kind = read<std::string>(j, "kind", ptr, "constant");
  const std::vector<double> params = read<std::vector<double>>(j, "params", ptr, {1.0});
  try {
    return make_envelope(kind, params);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what(), ptr);
  }
}

json envelope_json(const Envelope& e) { return json{{"kind", e.kind}, {"params", e.params}}; }

TermFamily parse_family(const json& j, const std::string& ptr) {
  allow_keys(j, ptr, {"name", "kind", "amplitude", "stagger", "envelope"});
  TermFamily f;
  f.kind = require<std::string>(j, "kind", ptr);
  if (f.kind != "hopping" && f.kind != "onsite" && f.kind != "density_density")
    throw ConfigError("unknown term kind '" + f.kind + "'", join_ptr(ptr, "kind"));
  f.name = read<std::string>(j, "name", ptr, f.kind);
  f.amplitude = read<double>(j, "amplitude", ptr, 1.0);
  f.stagger = read<bool>(j, "stagger", ptr, false);
  if (j.contains("envelope")) f.envelope = parse_envelope(j.at("envelope"), join_ptr(ptr, "envelope"));
  return f;
}

std::vector<TermFamily> parse_families(const json& j, const std::string& key, const std::string& ptr) {
  std::vector<TermFamily> out;
  if (!j.contains(key)) return out;
  const json& arr = j.at(key);
  if (!arr.is_array()) throw ConfigError("expected an array", join_ptr(ptr, key));
  for (std::size_t i = 0; i < arr.size(); ++i)
    out.push_back(parse_family(arr[i], join_ptr(join_ptr(ptr, key), std::to_string(i))));
  return out;
}

json family_json(const TermFamily& f) {
  return json{{"name", f.name},
              {"kind", f.kind},
              {"amplitude", f.amplitude},
              {"stagger", f.stagger},
              {"envelope", envelope_json(f.envelope)}};
}

int stagger_sign(const Point& x) {
  int s = 0;
  for (int c : x) s += c;
  return (s % 2 + 2) % 2 == 0 ? 1 : -1;
}

// neighbour along axis a, or empty when the bond leaves an open box
bool neighbour(const Box& box, const Point& x, int a, Point& y) {
  y = x;
  y[a] += 1;
  if (box.contains(y)) return true;
  if (box.bc() == Boundary::periodic && box.side() > 2) {
    y[a] = -box.k();
    return true;
  }
  return false;
}

}  // namespace

ModelConfig parse_config(const json& j) {
  allow_keys(j, "", {"version", "name", "lattice", "h0", "h1", "potential", "gap", "particles", "time", "decay"});
  ModelConfig c;
  c.version = read<int>(j, "version", "", config_version);
  if (c.version != config_version)
    throw ConfigError("unsupported config version " + std::to_string(c.version), "/version");
  c.name = read<std::string>(j, "name", "", c.name);

  const json& lat = j.contains("lattice") ? j.at("lattice") : json::object();
  allow_keys(lat, "/lattice", {"d", "r", "bc", "k"});
  c.d = read<int>(lat, "d", "/lattice", 1);
  c.r = read<int>(lat, "r", "/lattice", 1);
  if (c.d < 1 || c.d > 2) throw ConfigError("dimension must be 1 or 2", "/lattice/d");
  if (c.r < 1) throw ConfigError("internal dimension must be positive", "/lattice/r");
  try {
    c.bc = parse_boundary(read<std::string>(lat, "bc", "/lattice", "open"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what(), "/lattice/bc");
  }
  c.k = read<std::vector<int>>(lat, "k", "/lattice", c.k);
  if (c.k.empty()) throw ConfigError("need at least one box radius", "/lattice/k");
  for (std::size_t i = 0; i < c.k.size(); ++i) {
    if (c.k[i] < 1) throw ConfigError("box radius must be positive", "/lattice/k/" + std::to_string(i));
    if (c.r * static_cast<int>(std::pow(2 * c.k[i] + 1, c.d)) > 14)
      throw ConfigError("box exceeds the 14-mode limit", "/lattice/k/" + std::to_string(i));
  }

  c.h0 = parse_families(j, "h0", "");
  if (c.h0.empty()) throw ConfigError("h0 needs at least one term family", "/h0");
  c.h1 = parse_families(j, "h1", "");

  if (j.contains("potential")) {
    const json& p = j.at("potential");
    allow_keys(p, "/potential", {"kind", "slope", "axis", "envelope"});
    c.potential.kind = read<std::string>(p, "kind", "/potential", "none");
    if (c.potential.kind != "none" && c.potential.kind != "linear")
      throw ConfigError("unknown potential kind '" + c.potential.kind + "'", "/potential/kind");
    c.potential.slope = read<double>(p, "slope", "/potential", 0.0);
    c.potential.axis = read<int>(p, "axis", "/potential", 0);
    if (c.potential.axis < 0 || c.potential.axis >= c.d) throw ConfigError("axis out of range", "/potential/axis");
    if (p.contains("envelope")) c.potential.envelope = parse_envelope(p.at("envelope"), "/potential/envelope");
  }

  if (!j.contains("gap")) throw ConfigError("missing gap declaration", "/gap");
  const json& g = j.at("gap");
  allow_keys(g, "/gap", {"g", "g_tilde", "kappa_max", "mode", "f_minus", "f_plus"});
  c.gap.g_min = require<double>(g, "g", "/gap");
  c.gap.g_tilde = require<double>(g, "g_tilde", "/gap");
  if (!(c.gap.g_min > 0.0)) throw ConfigError("gap must be positive", "/gap/g");
  if (!(c.gap.g_tilde > 0.0 && c.gap.g_tilde < c.gap.g_min))
    throw ConfigError("need 0 < g_tilde < g", "/gap/g_tilde");
  c.gap.kappa_max = read<int>(g, "kappa_max", "/gap", 8);
  const std::string mode = read<std::string>(g, "mode", "/gap", "bottom");
  if (mode == "bottom") {
    c.gap.mode = PatchMode::bottom;
  } else if (mode == "window") {
    c.gap.mode = PatchMode::window;
    c.gap.f_minus = require<double>(g, "f_minus", "/gap");
    c.gap.f_plus = require<double>(g, "f_plus", "/gap");
  } else {
    throw ConfigError("unknown patch mode '" + mode + "'", "/gap/mode");
  }

  if (j.contains("particles")) {
    const json& p = j.at("particles");
    if (p.is_number_integer()) {
      if (p.get<int>() < 0) throw ConfigError("particle number must be non-negative", "/particles");
      c.particles = std::to_string(p.get<int>());
    } else if (p.is_string() && (p == "half" || p == "sublattice")) {
      c.particles = p.get<std::string>();
    } else {
      throw ConfigError("particles must be an integer, \"half\" or \"sublattice\"", "/particles");
    }
  }

  if (j.contains("time")) {
    const json& t = j.at("time");
    allow_keys(t, "/time", {"t0", "t1", "points"});
    c.t0 = read<double>(t, "t0", "/time", 0.0);
    c.t1 = read<double>(t, "t1", "/time", 1.0);
    c.time_points = read<int>(t, "points", "/time", 5);
    if (!(c.t1 >= c.t0)) throw ConfigError("need t1 >= t0", "/time/t1");
    if (c.time_points < 1) throw ConfigError("need at least one time point", "/time/points");
  }

  c.decay = read<std::string>(j, "decay", "", c.decay);
  try {
    (void)parse_decay(c.decay);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what(), "/decay");
  }
  return c;
}

ModelConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what(), "");
  }
  return parse_config(j);
}

json to_json(const ModelConfig& c) {
  json j;
  j["version"] = c.version;
  j["name"] = c.name;
  j["lattice"] = {{"d", c.d}, {"r", c.r}, {"bc", to_string(c.bc)}, {"k", c.k}};
  j["h0"] = json::array();
  for (const auto& f : c.h0) j["h0"].push_back(family_json(f));
  j["h1"] = json::array();
  for (const auto& f : c.h1) j["h1"].push_back(family_json(f));
  j["potential"] = {{"kind", c.potential.kind},
                    {"slope", c.potential.slope},
                    {"axis", c.potential.axis},
                    {"envelope", envelope_json(c.potential.envelope)}};
  j["gap"] = {{"g", c.gap.g_min},
              {"g_tilde", c.gap.g_tilde},
              {"kappa_max", c.gap.kappa_max},
              {"mode", c.gap.mode == PatchMode::bottom ? "bottom" : "window"}};
  if (c.gap.mode == PatchMode::window) {
    j["gap"]["f_minus"] = c.gap.f_minus;
    j["gap"]["f_plus"] = c.gap.f_plus;
  }
  if (c.particles == "half" || c.particles == "sublattice")
    j["particles"] = c.particles;
  else
    j["particles"] = std::stoi(c.particles);
  j["time"] = {{"t0", c.t0}, {"t1", c.t1}, {"points", c.time_points}};
  j["decay"] = c.decay;
  return j;
}

ModelConfig builtin_model(const std::string& name) {
  ModelConfig c;
  c.name = name;
  c.d = 1;
  c.r = 1;
  c.bc = Boundary::open;
  c.k = {2, 3, 4};
  c.particles = "sublattice";
  TermFamily hop{"hopping", "hopping", -1.0, false, Envelope::constant(1.0)};
  // dimerization ramps smoothly from 0.2 to 0.5 over [0, 1]
  TermFamily dimer{"dimerization", "hopping", -1.0, true, Envelope::smooth_switch(0.0, 1.0, 0.2, 0.3)};
  TermFamily stag{"staggering", "onsite", 0.5, true, Envelope::constant(1.0)};
  c.h0 = {hop, dimer, stag};
  c.potential = PotentialSpec{"linear", 0.25, 0, Envelope::constant(1.0)};
  c.t0 = -0.5;
  c.t1 = 1.5;
  c.time_points = 5;
  if (name == "M1") {
  } else if (name == "M2") {
    c.h0.push_back(TermFamily{"interaction", "density_density", 0.5, false, Envelope::constant(1.0)});
  } else if (name == "M3") {
    c.h1.push_back(TermFamily{"perturbation", "density_density", 0.5, false, Envelope::constant(1.0)});
  } else {
    throw ConfigError("unknown built-in model '" + name + "'", "/name");
  }
  c.gap.g_min = 1.0;
  c.gap.g_tilde = 0.5;
  c.gap.kappa_max = 4;
  return c;
}

std::vector<std::string> builtin_names() { return {"M1", "M2", "M3"}; }

Interaction family_interaction(const TermFamily& f, const std::vector<Box>& boxes, int r) {
  Interaction phi(r);
  for (const Box& box : boxes) {
    phi.add_box(box);
    FockSpace space(box, r);
    for (const Point& x : box.sites()) {
      const double amp = f.amplitude * (f.stagger ? stagger_sign(x) : 1);
      if (f.kind == "onsite") {
        phi.add(box.k(), SiteSet{x}, amp * number_operator(space, SiteSet{x}));
        continue;
      }
      for (int a = 0; a < box.dim(); ++a) {
        Point y;
        if (!neighbour(box, x, a, y)) continue;
        FockOperator term = FockOperator::zero(space.dim());
        if (f.kind == "hopping") {
          for (int i = 0; i < r; ++i) {
            FockOperator h = creation(space, x, i) * annihilation(space, y, i);
            term += h + h.adjoint();
          }
        } else {
          term = number_operator(space, SiteSet{x}) * number_operator(space, SiteSet{y});
        }
        phi.add(box.k(), SiteSet{x, y}, amp * term);
      }
    }
  }
  return phi;
}

namespace {

std::vector<Box> boxes_for(const ModelConfig& c, const std::vector<int>& ks) {
  std::vector<Box> out;
  for (int k : ks) out.push_back(build_box(k, c.d, c.bc));
  return out;
}

TimedInteraction timed(const ModelConfig& c, const std::vector<TermFamily>& fam, const std::vector<int>& ks) {
  TimedInteraction out;
  const std::vector<Box> boxes = boxes_for(c, ks);
  for (const auto& f : fam) out.families.push_back({f.name, f.envelope, family_interaction(f, boxes, c.r)});
  return out;
}

}  // namespace

Model::Model(ModelConfig cfg, int k) : cfg_(std::move(cfg)), k_(k) {
  space_ = FockSpace(build_box(k, cfg_.d, cfg_.bc), cfg_.r);
  if (cfg_.particles == "half") {
    particles_ = space_.modes() / 2;
  } else if (cfg_.particles == "sublattice") {
    particles_ = 0;
    for (const Point& x : space_.box().sites()) {
      if (stagger_sign(x) < 0) particles_ += cfg_.r;
    }
  } else {
    particles_ = std::stoi(cfg_.particles);
  }
  if (particles_ > space_.modes()) throw ConfigError("more particles than modes", "/particles");
  basis_ = sector_basis(space_, particles_);

  auto piece = [&](const Envelope& e, FockOperator op) {
    Mat b = restrict_to(op, basis_);
    return Piece{e, std::move(op), std::move(b)};
  };
  const Box box = space_.box();
  for (const auto& f : cfg_.h0) h0_.push_back(piece(f.envelope, assemble(family_interaction(f, {box}, cfg_.r), k)));
  for (const auto& f : cfg_.h1) v_.push_back(piece(f.envelope, assemble(family_interaction(f, {box}, cfg_.r), k)));
  if (cfg_.potential.kind == "linear") {
    LipschitzPotential p = linear_potential(cfg_.potential.slope, cfg_.potential.axis);
    v_.push_back(piece(cfg_.potential.envelope, assemble_potential(p, space_)));
  }
}

bool Model::stationary() const {
  auto st = [](const Piece& p) { return p.envelope.stationary(); };
  return std::all_of(h0_.begin(), h0_.end(), st) && std::all_of(v_.begin(), v_.end(), st);
}

TimedInteraction Model::h0_interaction(const std::vector<int>& ks) const { return timed(cfg_, cfg_.h0, ks); }
TimedInteraction Model::h1_interaction(const std::vector<int>& ks) const { return timed(cfg_, cfg_.h1, ks); }

LipschitzPotential Model::potential() const {
  LipschitzPotential p = cfg_.potential.kind == "linear" ? linear_potential(cfg_.potential.slope, cfg_.potential.axis)
                                                         : constant_potential(0.0);
  p.envelope = cfg_.potential.envelope;
  return p;
}

namespace {

template <typename Pieces>
FockOperator sum_full(const Pieces& ps, std::size_t dim, double t, int derivative) {
  FockOperator out = FockOperator::zero(dim);
  for (const auto& p : ps) {
    const double w = p.envelope(t, derivative);
    if (w != 0.0) out += w * p.full;
  }
  return out;
}

template <typename Pieces>
Mat sum_block(const Pieces& ps, Eigen::Index n, double t, int derivative) {
  Mat out = Mat::Zero(n, n);
  for (const auto& p : ps) {
    const double w = p.envelope(t, derivative);
    if (w != 0.0) out += w * p.block;
  }
  return out;
}

}  // namespace

FockOperator Model::h0(double t, int derivative) const { return sum_full(h0_, space_.dim(), t, derivative); }
FockOperator Model::perturbation(double t, int derivative) const {
  return sum_full(v_, space_.dim(), t, derivative);
}
Mat Model::h0_block(double t, int derivative) const {
  return sum_block(h0_, static_cast<Eigen::Index>(basis_.size()), t, derivative);
}
Mat Model::perturbation_block(double t, int derivative) const {
  return sum_block(v_, static_cast<Eigen::Index>(basis_.size()), t, derivative);
}
Mat Model::block(const FockOperator& a) const { return restrict_to(a, basis_); }

SaptProblem Model::sapt_problem() const {
  SaptProblem p;
  p.h0 = [this](double t, int der) { return h0_block(t, der); };
  p.v = [this](double t) { return perturbation_block(t); };
  p.gap = cfg_.gap;
  p.stationary = stationary();
  return p;
}

WeightFunction Model::weight() const { return WeightFunction(cfg_.gap.g_min, cfg_.gap.g_tilde); }

std::vector<GapReport> verify_gap(const ModelConfig& cfg) {
  std::vector<GapReport> out;
  for (int k : cfg.k) {
    Model m(cfg, k);
    for (double t : cfg.time_grid()) {
      EigenSystem es = diagonalize(m.h0_block(t));
      GapReport r;
      r.k = k;
      r.t = t;
      r.patch = find_gapped_patch(es.values, cfg.gap);
      r.spectrum = es.values;
      out.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace gaplab
