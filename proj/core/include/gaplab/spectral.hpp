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
#ifndef GAPLAB_SPECTRAL_HPP
#define GAPLAB_SPECTRAL_HPP

#include <iosfwd>
#include <vector>

#include "gaplab/fock.hpp"

namespace gaplab {

struct EigenSystem {
  RVec values;  // ascending
  Mat vectors;  // columns
  double residual = 0.0;

  std::size_t size() const { return static_cast<std::size_t>(values.size()); }
};

EigenSystem diagonalize(const Mat& h);
EigenSystem diagonalize(const FockOperator& h);

// Spectrum of a number-conserving operator, one block per particle number.
struct SectorSpectrum {
  int particles = 0;
  std::vector<std::size_t> basis;
  EigenSystem es;
};

std::vector<SectorSpectrum> diagonalize_sectors(const FockOperator& h, const FockSpace& space);
RVec merged_values(const std::vector<SectorSpectrum>& sectors);

class NoGap : public BoundViolation {
 public:
  using BoundViolation::BoundViolation;
};

class MultiplicityExceeded : public BoundViolation {
 public:
  using BoundViolation::BoundViolation;
};

enum class PatchMode { bottom, window };

struct PatchRequest {
  double g_min = 0.0;
  double g_tilde = 0.0;
  PatchMode mode = PatchMode::bottom;
  double f_minus = 0.0;
  double f_plus = 0.0;
  int kappa_max = 8;
};

struct GappedPatch {
  std::size_t first = 0;  // index range [first, first + kappa) of the sorted spectrum
  int kappa = 0;
  double f_minus = 0.0;
  double f_plus = 0.0;
  double g = 0.0;        // achieved separation from the rest of the spectrum
  double g_tilde = 0.0;  // requested width bound
  Mat projection;        // empty when built from bare eigenvalues
};

// Degenerate levels closer than this are never split by a patch boundary.
constexpr double degeneracy_tol = 1e-10;

GappedPatch find_gapped_patch(const RVec& sorted, const PatchRequest& req);
GappedPatch find_gapped_patch(const EigenSystem& es, const PatchRequest& req);

Mat spectral_projection(const EigenSystem& es, std::size_t first, std::size_t count);

// Patch located on the merged sector spectrum.  `sector` is the index of the
// particle-number block holding the whole patch, or -1 when it straddles
// several blocks.
struct SectorPatch {
  GappedPatch patch;
  int sector = -1;
  Mat local_projection;  // patch projection inside that block
};

SectorPatch find_gapped_patch(const std::vector<SectorSpectrum>& sectors, const PatchRequest& req);

// CSV rows: k,t,index,eigenvalue,in_patch
void write_spectrum_csv_header(std::ostream& os);
void write_spectrum_csv(std::ostream& os, int k, double t, const RVec& sorted, const GappedPatch& patch);

}  // namespace gaplab

#endif
