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

#include "gaplab/fock.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <bit>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

namespace gaplab {

double opnorm(const Mat& a) {
  if (a.size() == 0) return 0.0;
  Eigen::BDCSVD<Mat> svd(a);
  return svd.singularValues()(0);
}

double opnorm_hermitian(const Mat& a) {
  if (a.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Mat> es(a, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

Mat commutator(const Mat& a, const Mat& b) { return a * b - b * a; }

int popcount(std::uint64_t s) { return std::popcount(s); }

int jw_sign(std::uint64_t s, int m) {
  std::uint64_t below = s & ((std::uint64_t{1} << m) - 1);
  return (std::popcount(below) & 1) ? -1 : 1;
}

FockSpace::FockSpace(Box box, int r) : box_(std::move(box)), r_(r) {
  if (r < 1) throw std::invalid_argument("need r >= 1 internal states");
  if (modes() > max_modes) throw std::length_error("Fock space exceeds mode budget");
}

int FockSpace::mode(const Point& x, int i) const {
  int s = box_.index_of(x);
  if (s < 0) throw std::out_of_range("site " + to_string(x) + " outside box");
  if (i < 0 || i >= r_) throw std::out_of_range("internal index out of range");
  return mode(s, i);
}

std::vector<int> FockSpace::modes_of(const SiteSet& x) const {
  std::vector<int> out;
  for (int s : box_.indices(x)) {
    for (int i = 0; i < r_; ++i) out.push_back(mode(s, i));
  }
  return out;
}

std::uint64_t FockSpace::mask_of(const SiteSet& x) const {
  std::uint64_t m = 0;
  for (int mo : modes_of(x)) m |= std::uint64_t{1} << mo;
  return m;
}

std::string to_string(Parity p) {
  switch (p) {
    case Parity::even: return "even";
    case Parity::odd: return "odd";
    case Parity::mixed: return "mixed";
    case Parity::zero: return "zero";
  }
  return "?";
}

FockOperator::FockOperator(Mat m, SiteSet support) : support_(std::move(support)) {
  if (m.rows() != m.cols()) throw std::invalid_argument("operator matrix must be square");
  if (static_cast<std::size_t>(m.rows()) > dense_limit) {
    sparse_ = m.sparseView(cplx(0.0), 1e-300);
  } else {
    dense_ = std::move(m);
  }
  classify();
}

FockOperator::FockOperator(SpMat m, SiteSet support) : support_(std::move(support)) {
  if (m.rows() != m.cols()) throw std::invalid_argument("operator matrix must be square");
  if (static_cast<std::size_t>(m.rows()) > dense_limit) {
    m.makeCompressed();
    sparse_ = std::move(m);
  } else {
    dense_ = Mat(m);
  }
  classify();
}

FockOperator FockOperator::identity(std::size_t dim) {
  if (dim > dense_limit) {
    SpMat id(dim, dim);
    id.setIdentity();
    return FockOperator(std::move(id));
  }
  return FockOperator(Mat::Identity(dim, dim));
}

FockOperator FockOperator::zero(std::size_t dim) {
  if (dim > dense_limit) return FockOperator(SpMat(dim, dim));
  return FockOperator(Mat::Zero(dim, dim));
}

std::size_t FockOperator::dim() const {
  return sparse_ ? static_cast<std::size_t>(sparse_->rows()) : static_cast<std::size_t>(dense_.rows());
}

Mat FockOperator::dense() const { return sparse_ ? Mat(*sparse_) : dense_; }

SpMat FockOperator::sparse() const {
  if (sparse_) return *sparse_;
  SpMat s = dense_.sparseView(cplx(0.0), 1e-300);
  return s;
}

cplx FockOperator::trace() const {
  if (!sparse_) return dense_.trace();
  cplx t = 0;
  for (Eigen::Index i = 0; i < sparse_->outerSize(); ++i) t += sparse_->coeff(i, i);
  return t;
}

cplx FockOperator::element(std::size_t i, std::size_t j) const {
  return sparse_ ? sparse_->coeff(i, j) : dense_(i, j);
}

void FockOperator::classify() {
  bool has_even = false;
  bool has_odd = false;
  double amax = 0.0;
  auto visit_max = [&](std::size_t, std::size_t, cplx v) { amax = std::max(amax, std::abs(v)); };
  auto visit = [&](std::size_t i, std::size_t j, cplx v) {
    if (std::abs(v) <= 1e-14 * amax) return;
    if ((std::popcount(i) + std::popcount(j)) & 1)
      has_odd = true;
    else
      has_even = true;
  };
  double herm = 0.0;
  if (sparse_) {
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index i = 0; i < sparse_->outerSize(); ++i) {
        for (SpMat::InnerIterator it(*sparse_, i); it; ++it) {
          if (pass == 0)
            visit_max(it.row(), it.col(), it.value());
          else
            visit(it.row(), it.col(), it.value());
        }
      }
    }
    SpMat diff = *sparse_ - SpMat(sparse_->adjoint());
    for (Eigen::Index i = 0; i < diff.outerSize(); ++i) {
      for (SpMat::InnerIterator it(diff, i); it; ++it) herm = std::max(herm, std::abs(it.value()));
    }
  } else {
    const auto n = static_cast<std::size_t>(dense_.rows());
    amax = n ? dense_.cwiseAbs().maxCoeff() : 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < n; ++i) {
        visit(i, j, dense_(i, j));
        herm = std::max(herm, std::abs(dense_(i, j) - std::conj(dense_(j, i))));
      }
    }
  }
  if (has_even && has_odd)
    parity_ = Parity::mixed;
  else if (has_even)
    parity_ = Parity::even;
  else if (has_odd)
    parity_ = Parity::odd;
  else
    parity_ = Parity::zero;
  hermitian_ = herm <= 1e-12 * std::max(amax, 1e-300) || amax == 0.0;
}

FockOperator FockOperator::adjoint() const {
  if (sparse_) return FockOperator(SpMat(sparse_->adjoint()), support_);
  return FockOperator(Mat(dense_.adjoint()), support_);
}

FockOperator& FockOperator::operator+=(const FockOperator& o) {
  if (o.dim() != dim()) throw std::invalid_argument("dimension mismatch");
  if (sparse_)
    *sparse_ += o.sparse();
  else
    dense_ += o.dense_;
  support_ = set_union(support_, o.support_);
  classify();
  return *this;
}

FockOperator& FockOperator::operator-=(const FockOperator& o) {
  if (o.dim() != dim()) throw std::invalid_argument("dimension mismatch");
  if (sparse_)
    *sparse_ -= o.sparse();
  else
    dense_ -= o.dense_;
  support_ = set_union(support_, o.support_);
  classify();
  return *this;
}

FockOperator& FockOperator::operator*=(cplx s) {
  if (sparse_)
    *sparse_ *= s;
  else
    dense_ *= s;
  classify();
  return *this;
}

FockOperator operator+(FockOperator a, const FockOperator& b) { return a += b; }
FockOperator operator-(FockOperator a, const FockOperator& b) { return a -= b; }
FockOperator operator*(cplx s, FockOperator a) { return a *= s; }
FockOperator operator*(double s, FockOperator a) { return a *= cplx(s, 0.0); }

FockOperator operator*(const FockOperator& a, const FockOperator& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
  SiteSet supp = set_union(a.support(), b.support());
  if (a.is_sparse()) return FockOperator(SpMat(a.sparse() * b.sparse()), supp);
  return FockOperator(Mat(a.matrix() * b.matrix()), supp);
}

FockOperator commutator(const FockOperator& a, const FockOperator& b) { return a * b - b * a; }
FockOperator anticommutator(const FockOperator& a, const FockOperator& b) { return a * b + b * a; }

double max_abs(const FockOperator& a) {
  if (!a.is_sparse()) return a.dim() ? a.matrix().cwiseAbs().maxCoeff() : 0.0;
  double m = 0.0;
  SpMat s = a.sparse();
  for (Eigen::Index i = 0; i < s.outerSize(); ++i) {
    for (SpMat::InnerIterator it(s, i); it; ++it) m = std::max(m, std::abs(it.value()));
  }
  return m;
}

namespace {

std::vector<std::vector<std::size_t>> all_sectors(std::size_t dim) {
  int modes = std::countr_zero(dim);
  std::vector<std::vector<std::size_t>> out(modes + 1);
  for (std::size_t s = 0; s < dim; ++s) out[std::popcount(s)].push_back(s);
  return out;
}

double sparse_norm(const FockOperator& a) {
  if (is_number_conserving(a)) {
    double best = 0.0;
    for (const auto& basis : all_sectors(a.dim())) {
      Mat blk = restrict_to(a, basis);
      best = std::max(best, a.hermitian() ? opnorm_hermitian(blk) : opnorm(blk));
    }
    return best;
  }
  // power iteration on A^dagger A
  SpMat s = a.sparse();
  Vec v = Vec::Ones(a.dim()).normalized();
  double lambda = 0.0;
  for (int it = 0; it < 500; ++it) {
    Vec w = s.adjoint() * (s * v);
    double nl = w.norm();
    if (nl == 0.0) return 0.0;
    v = w / nl;
    if (std::abs(nl - lambda) <= 1e-15 * nl) {
      lambda = nl;
      break;
    }
    lambda = nl;
  }
  return std::sqrt(lambda);
}

}  // namespace

double norm(const FockOperator& a) {
  if (a.is_sparse()) return sparse_norm(a);
  return a.hermitian() ? opnorm_hermitian(a.matrix()) : opnorm(a.matrix());
}

namespace {

FockOperator ladder(const FockSpace& space, int m, bool create, SiteSet support) {
  const std::size_t dim = space.dim();
  const std::uint64_t bit = std::uint64_t{1} << m;
  std::vector<Eigen::Triplet<cplx>> trip;
  trip.reserve(dim / 2);
  for (std::size_t s = 0; s < dim; ++s) {
    bool occ = s & bit;
    if (occ == create) continue;
    trip.emplace_back(s ^ bit, s, cplx(jw_sign(s, m), 0.0));
  }
  SpMat op(dim, dim);
  op.setFromTriplets(trip.begin(), trip.end());
  return FockOperator(std::move(op), std::move(support));
}

}  // namespace

FockOperator creation_mode(const FockSpace& space, int mode) {
  if (mode < 0 || mode >= space.modes()) throw std::out_of_range("mode out of range");
  return ladder(space, mode, true, SiteSet{space.box().site(mode / space.r())});
}

FockOperator annihilation_mode(const FockSpace& space, int mode) {
  if (mode < 0 || mode >= space.modes()) throw std::out_of_range("mode out of range");
  return ladder(space, mode, false, SiteSet{space.box().site(mode / space.r())});
}

FockOperator creation(const FockSpace& space, const Point& x, int i) {
  return ladder(space, space.mode(x, i), true, SiteSet{x});
}

FockOperator annihilation(const FockSpace& space, const Point& x, int i) {
  return ladder(space, space.mode(x, i), false, SiteSet{x});
}

FockOperator number_operator(const FockSpace& space, const SiteSet& x) {
  const std::uint64_t mask = space.mask_of(x);
  const std::size_t dim = space.dim();
  SpMat op(dim, dim);
  std::vector<Eigen::Triplet<cplx>> trip;
  for (std::size_t s = 0; s < dim; ++s) {
    int n = std::popcount(s & mask);
    if (n) trip.emplace_back(s, s, cplx(n, 0.0));
  }
  op.setFromTriplets(trip.begin(), trip.end());
  return FockOperator(std::move(op), x);
}

FockOperator number_operator(const FockSpace& space) {
  return number_operator(space, space.box().all());
}

FockOperator parity_operator(const FockSpace& space) {
  const std::size_t dim = space.dim();
  SpMat op(dim, dim);
  std::vector<Eigen::Triplet<cplx>> trip;
  for (std::size_t s = 0; s < dim; ++s) trip.emplace_back(s, s, cplx((std::popcount(s) & 1) ? -1.0 : 1.0, 0.0));
  op.setFromTriplets(trip.begin(), trip.end());
  return FockOperator(std::move(op));
}

FockOperator sigma(const FockOperator& a) {
  auto sign = [](std::size_t i, std::size_t j) { return ((std::popcount(i) + std::popcount(j)) & 1) ? -1.0 : 1.0; };
  if (a.is_sparse()) {
    SpMat s = a.sparse();
    for (Eigen::Index i = 0; i < s.outerSize(); ++i) {
      for (SpMat::InnerIterator it(s, i); it; ++it) it.valueRef() *= sign(it.row(), it.col());
    }
    return FockOperator(std::move(s), a.support());
  }
  Mat m = a.matrix();
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) *= sign(i, j);
  }
  return FockOperator(std::move(m), a.support());
}

FockOperator even_part(const FockOperator& a) { return 0.5 * (a + sigma(a)); }
FockOperator odd_part(const FockOperator& a) { return 0.5 * (a - sigma(a)); }

bool is_number_conserving(const FockOperator& a, double tol) {
  double amax = max_abs(a);
  if (amax == 0.0) return true;
  if (a.is_sparse()) {
    SpMat s = a.sparse();
    for (Eigen::Index i = 0; i < s.outerSize(); ++i) {
      for (SpMat::InnerIterator it(s, i); it; ++it) {
        if (std::popcount(static_cast<std::size_t>(it.row())) != std::popcount(static_cast<std::size_t>(it.col())) &&
            std::abs(it.value()) > tol * amax)
          return false;
      }
    }
    return true;
  }
  const Mat& m = a.matrix();
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (std::popcount(static_cast<std::size_t>(i)) != std::popcount(static_cast<std::size_t>(j)) &&
          std::abs(m(i, j)) > tol * amax)
        return false;
    }
  }
  return true;
}

std::vector<std::size_t> sector_basis(const FockSpace& space, int n) {
  std::vector<std::size_t> out;
  if (n < 0 || n > space.modes()) return out;
  for (std::size_t s = 0; s < space.dim(); ++s) {
    if (std::popcount(s) == n) out.push_back(s);
  }
  return out;
}

Mat restrict_to(const Mat& a, const std::vector<std::size_t>& basis) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  Mat out(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) out(i, j) = a(basis[i], basis[j]);
  }
  return out;
}

Mat restrict_to(const FockOperator& a, const std::vector<std::size_t>& basis) {
  if (!a.is_sparse()) return restrict_to(a.matrix(), basis);
  std::vector<Eigen::Index> local(a.dim(), -1);
  for (std::size_t i = 0; i < basis.size(); ++i) local[basis[i]] = static_cast<Eigen::Index>(i);
  const auto n = static_cast<Eigen::Index>(basis.size());
  Mat out = Mat::Zero(n, n);
  SpMat s = a.sparse();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (SpMat::InnerIterator it(s, basis[i]); it; ++it) {
      Eigen::Index j = local[it.col()];
      if (j >= 0) out(i, j) = it.value();
    }
  }
  return out;
}

void dump(std::ostream& os, const FockOperator& a) {
  const std::size_t n = a.dim();
  Mat m = a.dense();
  os << "gaplab-operator " << n << "\n" << std::setprecision(17);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j) os << ' ';
      os << m(i, j).real() << ' ' << m(i, j).imag();
    }
    os << '\n';
  }
}

FockOperator load(std::istream& is) {
  std::string tag;
  std::size_t n = 0;
  if (!(is >> tag >> n) || tag != "gaplab-operator") throw std::runtime_error("not a gaplab operator dump");
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double re = 0.0;
      double im = 0.0;
      if (!(is >> re >> im)) throw std::runtime_error("truncated operator dump");
      m(i, j) = cplx(re, im);
    }
  }
  return FockOperator(std::move(m));
}

}  // namespace gaplab
