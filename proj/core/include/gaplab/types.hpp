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
#ifndef GAPLAB_TYPES_HPP
#define GAPLAB_TYPES_HPP

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <complex>
#include <stdexcept>
#include <string>

namespace gaplab {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using SpMat = Eigen::SparseMatrix<cplx, Eigen::RowMajor>;

inline constexpr cplx I_unit{0.0, 1.0};

// Raised when a numerical bound or certified inequality fails at run time.
class BoundViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised for malformed model or experiment configuration.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& msg, std::string pointer = "")
      : std::runtime_error(msg), pointer_(std::move(pointer)) {}
  const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

// Spectral norm of a dense matrix.
double opnorm(const Mat& a);
// Spectral norm of a Hermitian dense matrix.
double opnorm_hermitian(const Mat& a);

Mat commutator(const Mat& a, const Mat& b);

}  // namespace gaplab

#endif
