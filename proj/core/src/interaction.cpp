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

#include "gaplab/interaction.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gaplab/majorana.hpp"

namespace gaplab {

DecayFunction::DecayFunction(Kind k, double a, double beta) : kind_(k), a_(a), beta_(beta) {
  if (a < 0.0) throw std::invalid_argument("decay rate must be non-negative");
  if (k == Kind::subexponential && !(beta > 0.0 && beta < 1.0))
    throw std::invalid_argument("sub-exponential decay needs 0 < beta < 1");
}

double DecayFunction::operator()(double r) const {
  switch (kind_) {
    case Kind::constant: return 1.0;
    case Kind::exponential: return std::exp(-a_ * r);
    case Kind::subexponential: return std::exp(-a_ * std::pow(r, beta_));
  }
  return 1.0;
}

std::string DecayFunction::name() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::constant: os << "const"; break;
    case Kind::exponential: os << "exp:" << a_; break;
    case Kind::subexponential: os << "subexp:" << a_ << ":" << beta_; break;
  }
  return os.str();
}

DecayFunction parse_decay(const std::string& spec) {
  if (spec == "const" || spec == "constant") return DecayFunction::constant();
  auto colon = spec.find(':');
  std::string head = spec.substr(0, colon);
  std::vector<double> args;
  while (colon != std::string::npos) {
    auto next = spec.find(':', colon + 1);
    args.push_back(std::stod(spec.substr(colon + 1, next - colon - 1)));
    colon = next;
  }
  if (head == "exp" && args.size() == 1) return DecayFunction::exponential(args[0]);
  if (head == "subexp" && args.size() == 2) return DecayFunction::subexponential(args[0], args[1]);
  throw std::invalid_argument("unknown decay function: " + spec);
}

double f_zeta(const DecayFunction& zeta, double r, int d) { return zeta(r) / std::pow(1.0 + r, d + 1); }

bool check_log_superadditive(const DecayFunction& zeta, int rmax) {
  for (int r = 0; r <= rmax; ++r) {
    for (int s = 0; s <= rmax; ++s) {
      if (zeta(r + s) < zeta(r) * zeta(s) * (1.0 - 1e-12)) return false;
    }
  }
  return true;
}

bool check_class_s(const DecayFunction& zeta, int rmax, int nmax) {
  for (int n = 0; n <= nmax; ++n) {
    double best = 0.0;
    int arg = 0;
    for (int r = 0; r <= rmax; ++r) {
      double v = std::pow(static_cast<double>(r), n) * zeta(r);
      if (v > best) {
        best = v;
        arg = r;
      }
    }
    if (arg >= rmax) return false;
  }
  return true;
}

double gamma_norm(const DecayFunction& zeta, const Box& box) {
  double best = 0.0;
  for (int y = 0; y < box.size(); ++y) {
    double s = 0.0;
    for (int x = 0; x < box.size(); ++x) s += f_zeta(zeta, box.distance(x, y), box.dim());
    best = std::max(best, s);
  }
  return best;
}

double convolution_constant(const DecayFunction& zeta, const Box& box) {
  const int n = box.size();
  const int d = box.dim();
  double best = 0.0;
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      double s = 0.0;
      for (int z = 0; z < n; ++z) s += f_zeta(zeta, box.distance(x, z), d) * f_zeta(zeta, box.distance(z, y), d);
      best = std::max(best, s / f_zeta(zeta, box.distance(x, y), d));
    }
  }
  return best;
}

std::vector<int> Interaction::radii() const {
  std::vector<int> out;
  for (const auto& kv : spaces_) out.push_back(kv.first);
  return out;
}

const FockSpace& Interaction::space(int k) const {
  auto it = spaces_.find(k);
  if (it == spaces_.end()) throw std::out_of_range("interaction has no box of radius " + std::to_string(k));
  return it->second;
}

const std::map<SiteSet, FockOperator>& Interaction::terms(int k) const {
  static const std::map<SiteSet, FockOperator> empty;
  auto it = terms_.find(k);
  return it == terms_.end() ? empty : it->second;
}

double Interaction::term_norm(int k, const SiteSet& x) const {
  auto& cache = norms_[k];
  auto it = cache.find(x);
  if (it != cache.end()) return it->second;
  const auto& t = terms(k);
  auto jt = t.find(x);
  double v = jt == t.end() ? 0.0 : local_norm(jt->second, x, space(k));
  cache[x] = v;
  return v;
}

void Interaction::add_box(const Box& box) {
  if (!spaces_.count(box.k())) spaces_.emplace(box.k(), FockSpace(box, r_));
}

void Interaction::insert(int k, const SiteSet& x, const FockOperator& op) {
  const FockSpace& sp = space(k);
  if (!sp.box().contains(x)) throw std::out_of_range("term support " + to_string(x) + " outside box");
  if (op.dim() != sp.dim()) throw std::invalid_argument("term dimension does not match its box");
  auto& t = terms_[k];
  auto it = t.find(x);
  FockOperator o = op;
  o.set_support(x);
  if (it == t.end())
    t.emplace(x, std::move(o));
  else
    it->second += o;
  norms_[k].erase(x);
}

void Interaction::add(int k, const SiteSet& x, const FockOperator& op) {
  if (!op.hermitian()) throw std::invalid_argument("term on " + to_string(x) + " is not Hermitian");
  if (op.parity() == Parity::odd || op.parity() == Parity::mixed)
    throw std::invalid_argument("term on " + to_string(x) + " is not even");
  if (!is_number_conserving(op)) throw std::invalid_argument("term on " + to_string(x) + " does not conserve N");
  insert(k, x, op);
}

void Interaction::add_unchecked(int k, const SiteSet& x, const FockOperator& op) { insert(k, x, op); }

Interaction Interaction::scaled(cplx s) const {
  Interaction out(r_);
  out.spaces_ = spaces_;
  for (const auto& [k, t] : terms_) {
    for (const auto& [x, op] : t) out.insert(k, x, s * op);
  }
  return out;
}

Interaction TimedInteraction::at(double t, int k, int derivative) const {
  if (families.empty()) throw std::invalid_argument("empty timed interaction");
  Interaction out(families.front().phi.r());
  for (const auto& f : families) {
    if (!f.phi.has_box(k)) continue;
    out.add_box(f.phi.space(k).box());
    const double w = f.envelope(t, derivative);
    for (const auto& [x, op] : f.phi.terms(k)) {
      out.add_unchecked(k, x, cplx(w, 0.0) * op);
    }
  }
  return out;
}

bool TimedInteraction::stationary() const {
  return std::all_of(families.begin(), families.end(), [](const Family& f) { return f.envelope.stationary(); });
}

LipschitzPotential linear_potential(double slope, int axis) {
  LipschitzPotential v;
  v.name = "linear";
  v.v = [slope, axis](int, const Point& x) { return slope * x[axis]; };
  return v;
}

LipschitzPotential constant_potential(double c) {
  LipschitzPotential v;
  v.name = "constant";
  v.v = [c](int, const Point&) { return c; };
  return v;
}

namespace {

int box_diameter(const Box& box, const std::vector<int>& idx) {
  int best = 0;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    for (std::size_t j = i + 1; j < idx.size(); ++j) best = std::max(best, box.distance(idx[i], idx[j]));
  }
  return best;
}

double pow_int(double base, int n) { return n == 0 ? 1.0 : std::pow(base, n); }

}  // namespace

double interaction_norm(const Interaction& phi, const DecayFunction& zeta, int n, const std::vector<int>& k_range) {
  if (k_range.empty()) throw std::invalid_argument("empty box range");
  double best = 0.0;
  for (int k : k_range) {
    const Box& box = phi.space(k).box();
    const int ns = box.size();
    std::vector<double> acc(static_cast<std::size_t>(ns) * ns, 0.0);
    for (const auto& [x, op] : phi.terms(k)) {
      std::vector<int> idx = box.indices(x);
      const double w = pow_int(box_diameter(box, idx), n) * phi.term_norm(k, x);
      for (int a : idx) {
        for (int b : idx) acc[a * ns + b] += w;
      }
    }
    for (int a = 0; a < ns; ++a) {
      for (int b = 0; b < ns; ++b) {
        if (acc[a * ns + b] == 0.0) continue;
        best = std::max(best, acc[a * ns + b] / f_zeta(zeta, box.distance(a, b), box.dim()));
      }
    }
  }
  return best;
}

namespace {

bool inside_radius(const Point& p, int m) {
  return std::all_of(p.begin(), p.end(), [m](int c) { return c >= -m && c <= m; });
}

bool inside_radius(const SiteSet& x, int m) {
  return std::all_of(x.begin(), x.end(), [m](const Point& p) { return inside_radius(p, m); });
}

double restricted_sum(const std::map<SiteSet, double>& weights, int n, int d, const DecayFunction& zeta) {
  std::map<std::pair<Point, Point>, double> acc;
  for (const auto& [x, nrm] : weights) {
    const double w = pow_int(diameter(x), n) * nrm;
    for (const auto& a : x) {
      for (const auto& b : x) acc[{a, b}] += w;
    }
  }
  double best = 0.0;
  for (const auto& [pr, v] : acc) {
    if (v == 0.0) continue;
    best = std::max(best, v / f_zeta(zeta, l1_distance(pr.first, pr.second), d));
  }
  return best;
}

}  // namespace

double restricted_norm(const Interaction& phi, int l, const DecayFunction& zeta, int n, int m) {
  const Box& box = phi.space(l).box();
  if (m > l) throw std::out_of_range("restriction radius exceeds box");
  std::map<SiteSet, double> weights;
  for (const auto& [x, op] : phi.terms(l)) {
    if (inside_radius(x, m)) weights[x] = phi.term_norm(l, x);
  }
  return restricted_sum(weights, n, box.dim(), zeta);
}

FockOperator assemble(const Interaction& phi, int k) {
  const FockSpace& sp = phi.space(k);
  FockOperator out = FockOperator::zero(sp.dim());
  for (const auto& [x, op] : phi.terms(k)) out += op;
  return out;
}

FockOperator assemble(const TimedInteraction& phi, int k, double t, int derivative) {
  return assemble(phi.at(t, k, derivative), k);
}

FockOperator assemble_potential(const LipschitzPotential& v, const FockSpace& space, double t, int derivative) {
  const Box& box = space.box();
  const double w = v.envelope(t, derivative);
  const std::size_t dim = space.dim();
  std::vector<double> diag(dim, 0.0);
  for (int s = 0; s < box.size(); ++s) {
    const double vs = w * v(box.k(), box.site(s));
    for (int i = 0; i < space.r(); ++i) {
      const std::size_t bit = std::size_t{1} << space.mode(s, i);
      for (std::size_t b = 0; b < dim; ++b) {
        if (b & bit) diag[b] += vs;
      }
    }
  }
  SpMat op(dim, dim);
  std::vector<Eigen::Triplet<cplx>> trip;
  for (std::size_t b = 0; b < dim; ++b) {
    if (diag[b] != 0.0) trip.emplace_back(b, b, cplx(diag[b], 0.0));
  }
  op.setFromTriplets(trip.begin(), trip.end());
  return FockOperator(std::move(op), box.all());
}

double lipschitz_constant(const LipschitzPotential& v, const std::vector<Box>& boxes) {
  double best = 0.0;
  for (const auto& box : boxes) {
    for (int a = 0; a < box.size(); ++a) {
      for (int b = a + 1; b < box.size(); ++b) {
        double dv = std::abs(v(box.k(), box.site(a)) - v(box.k(), box.site(b)));
        best = std::max(best, dv / box.distance(a, b));
      }
    }
  }
  return best;
}

Interaction commutator_interaction(const Interaction& a, const Interaction& b) {
  if (a.r() != b.r()) throw std::invalid_argument("interactions on different internal spaces");
  Interaction out(a.r());
  for (int k : a.radii()) {
    if (!b.has_box(k)) throw std::invalid_argument("box mismatch in commutator interaction");
    out.add_box(a.space(k).box());
    for (const auto& [x, opx] : a.terms(k)) {
      for (const auto& [y, opy] : b.terms(k)) {
        if (set_intersection(x, y).empty()) continue;
        FockOperator c = commutator(opx, opy);
        if (max_abs(c) == 0.0) continue;
        out.add_unchecked(k, set_union(x, y), c);
      }
    }
  }
  for (int k : b.radii()) {
    if (!a.has_box(k)) throw std::invalid_argument("box mismatch in commutator interaction");
  }
  return out;
}

double local_norm(const FockOperator& op, const SiteSet& x, const FockSpace& space) {
  const int m = static_cast<int>(x.size()) * space.r();
  if (max_abs(op) == 0.0) return 0.0;
  if (x.empty() || m > 8 || space.modes() <= m + 1) return norm(op);
  std::vector<int> src = space.modes_of(x);
  const int sites = static_cast<int>(x.size());
  FockSpace small(Box((sites + 1) / 2 > 0 ? (sites + 1) / 2 : 1, 1, Boundary::open), space.r());
  MajoranaExpansion terms = majorana_expand_supported(op.dense(), src, 1e-15);
  MajoranaExpansion mapped;
  for (const auto& [mask, c] : terms) {
    std::uint64_t out = 0;
    for (std::size_t k = 0; k < src.size(); ++k) {
      for (int b = 0; b < 2; ++b) {
        if (mask >> (2 * src[k] + b) & 1) out |= std::uint64_t{1} << (2 * k + b);
      }
    }
    mapped.emplace_back(out, c);
  }
  Mat small_op = majorana_sum(small, mapped);
  return op.hermitian() ? opnorm_hermitian(small_op) : opnorm(small_op);
}

double cauchy_deficit(const TimedInteraction& phi, int k, int l, int m, const DecayFunction& zeta, int n,
                      int derivative, const std::vector<double>& times) {
  if (!(m <= k && k <= l)) throw std::out_of_range("cauchy deficit needs M <= k <= l");
  if (phi.families.empty()) return 0.0;
  const int r = phi.families.front().phi.r();
  const int d = phi.families.front().phi.space(k).box().dim();
  const Boundary bc = phi.families.front().phi.space(k).box().bc();
  FockSpace target(Box(m, d, bc), r);
  // per family and support: transplanted difference Phi^l(X) - Phi^k(X)
  std::vector<std::map<SiteSet, Mat>> diffs(phi.families.size());
  for (std::size_t f = 0; f < phi.families.size(); ++f) {
    const Interaction& p = phi.families[f].phi;
    if (!p.has_box(k) || !p.has_box(l)) throw std::out_of_range("interaction lacks requested boxes");
    std::map<SiteSet, Mat>& dd = diffs[f];
    for (const auto& [x, op] : p.terms(l)) {
      if (!inside_radius(x, m)) continue;
      Mat t = transplant(op, x, p.space(l), target).dense();
      auto [it, fresh] = dd.emplace(x, t);
      if (!fresh) it->second += t;
    }
    for (const auto& [x, op] : p.terms(k)) {
      if (!inside_radius(x, m)) continue;
      Mat t = transplant(op, x, p.space(k), target).dense();
      auto [it, fresh] = dd.emplace(x, -t);
      if (!fresh) it->second -= t;
    }
  }
  double best = 0.0;
  for (double t : times) {
    std::map<SiteSet, Mat> total;
    for (std::size_t f = 0; f < phi.families.size(); ++f) {
      const double w = phi.families[f].envelope(t, derivative);
      if (w == 0.0) continue;
      for (const auto& [x, mat] : diffs[f]) {
        auto [it, fresh] = total.emplace(x, w * mat);
        if (!fresh) it->second += w * mat;
      }
    }
    std::map<SiteSet, double> weights;
    for (const auto& [x, mat] : total) {
      if (mat.cwiseAbs().maxCoeff() == 0.0) continue;
      weights[x] = local_norm(FockOperator(mat), x, target);
    }
    best = std::max(best, restricted_sum(weights, n, d, zeta));
  }
  return best;
}

}  // namespace gaplab
