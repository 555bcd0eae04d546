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
#ifndef GAPLAB_FOCK_HPP
#define GAPLAB_FOCK_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "gaplab/lattice.hpp"
#include "gaplab/types.hpp"

namespace gaplab {

// Operators up to this dimension are stored densely, larger ones sparsely.
constexpr std::size_t dense_limit = 1024;
constexpr int max_modes = 20;

// Fock space over a box with r internal states per site.  Mode m = r*site + i
// with sites in the box's lexicographic order; basis state bit m is the
// occupation of mode m and the Jordan-Wigner string runs over lower modes.
class FockSpace {
 public:
  FockSpace() = default;
  FockSpace(Box box, int r);

  const Box& box() const { return box_; }
  int r() const { return r_; }
  int modes() const { return r_ * box_.size(); }
  std::size_t dim() const { return std::size_t{1} << modes(); }

  int mode(int site, int i) const { return site * r_ + i; }
  int mode(const Point& x, int i) const;
  std::vector<int> modes_of(const SiteSet& x) const;
  std::uint64_t mask_of(const SiteSet& x) const;

 private:
  Box box_;
  int r_ = 1;
};

enum class Parity { even, odd, mixed, zero };

std::string to_string(Parity p);

class FockOperator {
 public:
  FockOperator() = default;
  explicit FockOperator(Mat m, SiteSet support = {});
  explicit FockOperator(SpMat m, SiteSet support = {});

  static FockOperator identity(std::size_t dim);
  static FockOperator zero(std::size_t dim);

  std::size_t dim() const;
  bool is_sparse() const { return sparse_.has_value(); }
  Mat dense() const;
  // valid only when !is_sparse()
  const Mat& matrix() const { return dense_; }
  SpMat sparse() const;

  const SiteSet& support() const { return support_; }
  void set_support(SiteSet s) { support_ = std::move(s); }

  Parity parity() const { return parity_; }
  bool hermitian() const { return hermitian_; }

  cplx trace() const;
  cplx element(std::size_t i, std::size_t j) const;

  FockOperator adjoint() const;
  FockOperator& operator+=(const FockOperator& o);
  FockOperator& operator-=(const FockOperator& o);
  FockOperator& operator*=(cplx s);

 private:
  void classify();

  Mat dense_;
  std::optional<SpMat> sparse_;
  SiteSet support_;
  Parity parity_ = Parity::zero;
  bool hermitian_ = true;
};

FockOperator operator+(FockOperator a, const FockOperator& b);
FockOperator operator-(FockOperator a, const FockOperator& b);
FockOperator operator*(const FockOperator& a, const FockOperator& b);
FockOperator operator*(cplx s, FockOperator a);
FockOperator operator*(double s, FockOperator a);

FockOperator commutator(const FockOperator& a, const FockOperator& b);
FockOperator anticommutator(const FockOperator& a, const FockOperator& b);

double norm(const FockOperator& a);
double max_abs(const FockOperator& a);

FockOperator creation(const FockSpace& space, const Point& x, int i = 0);
FockOperator annihilation(const FockSpace& space, const Point& x, int i = 0);
FockOperator creation_mode(const FockSpace& space, int mode);
FockOperator annihilation_mode(const FockSpace& space, int mode);
FockOperator number_operator(const FockSpace& space, const SiteSet& x);
FockOperator number_operator(const FockSpace& space);
// (-1)^N
FockOperator parity_operator(const FockSpace& space);

// parity automorphism (-1)^N A (-1)^N
FockOperator sigma(const FockOperator& a);
FockOperator even_part(const FockOperator& a);
FockOperator odd_part(const FockOperator& a);

bool is_number_conserving(const FockOperator& a, double tol = 1e-12);

int popcount(std::uint64_t s);
// Jordan-Wigner sign (-1)^{#occupied modes below m}
int jw_sign(std::uint64_t s, int m);

// Basis states with n particles, ascending.
std::vector<std::size_t> sector_basis(const FockSpace& space, int n);
// Block of an operator on the span of the given basis states.
Mat restrict_to(const FockOperator& a, const std::vector<std::size_t>& basis);
Mat restrict_to(const Mat& a, const std::vector<std::size_t>& basis);

// Row-major text format: first line "gaplab-operator <dim>", then one line
// per row with 2*dim numbers (re im re im ...), printed with 17 digits.
void dump(std::ostream& os, const FockOperator& a);
FockOperator load(std::istream& is);

}  // namespace gaplab

#endif
