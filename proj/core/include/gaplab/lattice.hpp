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
#ifndef GAPLAB_LATTICE_HPP
#define GAPLAB_LATTICE_HPP

#include <set>
#include <string>
#include <vector>

namespace gaplab {

using Point = std::vector<int>;
using SiteSet = std::set<Point>;

enum class Boundary { open, periodic };

Boundary parse_boundary(const std::string& tag);
std::string to_string(Boundary bc);

// Centred box {-k..k}^d. Sites are stored in lexicographic order and the
// distance table is precomputed for every pair.
class Box {
 public:
  Box() = default;
  Box(int k, int d, Boundary bc);

  int k() const { return k_; }
  int dim() const { return d_; }
  Boundary bc() const { return bc_; }
  int size() const { return static_cast<int>(sites_.size()); }
  int side() const { return 2 * k_ + 1; }

  const std::vector<Point>& sites() const { return sites_; }
  const Point& site(int i) const { return sites_[i]; }

  // -1 when p lies outside the box
  int index_of(const Point& p) const;
  bool contains(const Point& p) const { return index_of(p) >= 0; }
  bool contains(const SiteSet& s) const;

  // box metric d^{Lambda_k}
  int distance(int i, int j) const { return metric_[i * size() + j]; }
  int distance(const Point& a, const Point& b) const;

  SiteSet all() const { return SiteSet(sites_.begin(), sites_.end()); }
  std::vector<int> indices(const SiteSet& s) const;

 private:
  int k_ = 0;
  int d_ = 0;
  Boundary bc_ = Boundary::open;
  std::vector<Point> sites_;
  std::vector<int> metric_;
};

constexpr int default_site_budget = 4096;

Box build_box(int k, int d, Boundary bc, int site_budget = default_site_budget);

int l1_distance(const Point& a, const Point& b);
int torus_distance(const Point& a, const Point& b, int side);

// l1 distance from a point to a set, -1 for the empty set
int distance_to(const Point& p, const SiteSet& y);
int set_distance(const SiteSet& x, const SiteSet& y);

int diameter(const SiteSet& y);

// {z : dist(z, y) <= delta} in Z^d
SiteSet fatten(const SiteSet& y, int delta);

SiteSet set_union(const SiteSet& a, const SiteSet& b);
SiteSet set_intersection(const SiteSet& a, const SiteSet& b);
SiteSet set_difference(const SiteSet& a, const SiteSet& b);
bool is_subset(const SiteSet& a, const SiteSet& b);

std::string to_string(const Point& p);
std::string to_string(const SiteSet& s);

}  // namespace gaplab

#endif
