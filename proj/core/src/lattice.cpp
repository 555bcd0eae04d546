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

#include "gaplab/lattice.hpp"

#include <algorithm>
#include <iterator>
#include <cstdlib>
#include <stdexcept>

namespace gaplab {

Boundary parse_boundary(const std::string& tag) {
  if (tag == "open") return Boundary::open;
  if (tag == "periodic") return Boundary::periodic;
  throw std::invalid_argument("unknown boundary condition: " + tag);
}

std::string to_string(Boundary bc) {
  return bc == Boundary::open ? "open" : "periodic";
}

Box::Box(int k, int d, Boundary bc) : k_(k), d_(d), bc_(bc) {
  if (k < 1 || d < 1) throw std::invalid_argument("box needs k >= 1 and d >= 1");
  int n = 1;
  for (int a = 0; a < d; ++a) n *= side();
  sites_.reserve(n);
  Point p(d, -k);
  for (int i = 0; i < n; ++i) {
    sites_.push_back(p);
    for (int a = d - 1; a >= 0; --a) {
      if (++p[a] <= k) break;
      p[a] = -k;
    }
  }
  metric_.resize(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      metric_[i * n + j] = bc == Boundary::open ? l1_distance(sites_[i], sites_[j])
                                               : torus_distance(sites_[i], sites_[j], side());
    }
  }
}

int Box::index_of(const Point& p) const {
  if (static_cast<int>(p.size()) != d_) return -1;
  int idx = 0;
  for (int a = 0; a < d_; ++a) {
    if (p[a] < -k_ || p[a] > k_) return -1;
    idx = idx * side() + (p[a] + k_);
  }
  return idx;
}

bool Box::contains(const SiteSet& s) const {
  return std::all_of(s.begin(), s.end(), [&](const Point& p) { return contains(p); });
}

int Box::distance(const Point& a, const Point& b) const {
  int i = index_of(a);
  int j = index_of(b);
  if (i < 0 || j < 0) throw std::out_of_range("point outside box");
  return distance(i, j);
}

std::vector<int> Box::indices(const SiteSet& s) const {
  std::vector<int> out;
  out.reserve(s.size());
  for (const auto& p : s) {
    int i = index_of(p);
    if (i < 0) throw std::out_of_range("site " + to_string(p) + " outside box");
    out.push_back(i);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Box build_box(int k, int d, Boundary bc, int site_budget) {
  if (k < 1 || d < 1) throw std::invalid_argument("box needs k >= 1 and d >= 1");
  long n = 1;
  for (int a = 0; a < d; ++a) {
    n *= 2 * k + 1;
    if (n > site_budget) throw std::length_error("box exceeds site budget");
  }
  return Box(k, d, bc);
}

int l1_distance(const Point& a, const Point& b) {
  int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return s;
}

int torus_distance(const Point& a, const Point& b, int side) {
  int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    int delta = std::abs(a[i] - b[i]) % side;
    s += std::min(delta, side - delta);
  }
  return s;
}

int distance_to(const Point& p, const SiteSet& y) {
  int best = -1;
  for (const auto& q : y) {
    int dd = l1_distance(p, q);
    if (best < 0 || dd < best) best = dd;
  }
  return best;
}

int set_distance(const SiteSet& x, const SiteSet& y) {
  int best = -1;
  for (const auto& p : x) {
    int dd = distance_to(p, y);
    if (dd >= 0 && (best < 0 || dd < best)) best = dd;
  }
  return best;
}

int diameter(const SiteSet& y) {
  int best = 0;
  for (auto i = y.begin(); i != y.end(); ++i) {
    for (auto j = std::next(i); j != y.end(); ++j) best = std::max(best, l1_distance(*i, *j));
  }
  return best;
}

SiteSet fatten(const SiteSet& y, int delta) {
  if (delta < 0) throw std::invalid_argument("fattening radius must be non-negative");
  if (y.empty() || delta == 0) return y;
  const int d = static_cast<int>(y.begin()->size());
  SiteSet out;
  Point off(d, -delta);
  while (true) {
    int norm = 0;
    for (int v : off) norm += std::abs(v);
    if (norm <= delta) {
      for (const auto& p : y) {
        Point q(p);
        for (int a = 0; a < d; ++a) q[a] += off[a];
        out.insert(std::move(q));
      }
    }
    int a = d - 1;
    for (; a >= 0; --a) {
      if (++off[a] <= delta) break;
      off[a] = -delta;
    }
    if (a < 0) break;
  }
  return out;
}

SiteSet set_union(const SiteSet& a, const SiteSet& b) {
  SiteSet out(a);
  out.insert(b.begin(), b.end());
  return out;
}

SiteSet set_intersection(const SiteSet& a, const SiteSet& b) {
  SiteSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

SiteSet set_difference(const SiteSet& a, const SiteSet& b) {
  SiteSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

bool is_subset(const SiteSet& a, const SiteSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::string to_string(const Point& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(p[i]);
  }
  return s + ")";
}

std::string to_string(const SiteSet& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& p : s) {
    if (!first) out += " ";
    out += p.size() == 1 ? std::to_string(p[0]) : to_string(p);
    first = false;
  }
  return out + "}";
}

}  // namespace gaplab
