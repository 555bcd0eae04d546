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

#include "gaplab/majorana.hpp"

#include <bit>

namespace gaplab {

int MajoranaMonomial::degree() const { return std::popcount(mask); }

namespace {

std::pair<std::uint64_t, cplx> apply_ordered(const std::vector<int>& order, std::uint64_t s) {
  std::uint64_t cur = s;
  cplx ph = 1.0;
  // rightmost factor acts first
  for (int mu : order) {
    const int mode = mu / 2;
    const std::uint64_t bit = std::uint64_t{1} << mode;
    const double sg = jw_sign(cur, mode);
    if (mu % 2 == 0) {
      ph *= sg;
    } else {
      ph *= (cur & bit) ? cplx(0.0, -sg) : cplx(0.0, sg);
    }
    cur ^= bit;
  }
  return {cur, ph};
}

std::vector<int> descending_bits(std::uint64_t mask) {
  std::vector<int> order;
  for (int mu = 63; mu >= 0; --mu) {
    if (mask >> mu & 1) order.push_back(mu);
  }
  return order;
}

}  // namespace

std::pair<std::uint64_t, cplx> apply_monomial(std::uint64_t mask, std::uint64_t s) {
  return apply_ordered(descending_bits(mask), s);
}

MajoranaMonomial majorana_monomial(const FockSpace& space, std::uint64_t mask) {
  MajoranaMonomial m;
  m.mask = mask;
  const std::size_t dim = space.dim();
  if ((mask >> (2 * space.modes())) != 0) throw std::out_of_range("monomial mask exceeds mode count");
  std::vector<int> order = descending_bits(mask);
  for (int mu : order) m.flip ^= std::uint64_t{1} << (mu / 2);
  m.phase.resize(dim);
  for (std::size_t s = 0; s < dim; ++s) m.phase[s] = apply_ordered(order, s).second;
  return m;
}

FockOperator to_operator(const FockSpace& space, const MajoranaMonomial& m) {
  const std::size_t dim = space.dim();
  std::vector<Eigen::Triplet<cplx>> trip;
  trip.reserve(dim);
  for (std::size_t s = 0; s < dim; ++s) trip.emplace_back(s ^ m.flip, s, m.phase[s]);
  SpMat op(dim, dim);
  op.setFromTriplets(trip.begin(), trip.end());
  return FockOperator(std::move(op));
}

cplx hs_coefficient(const MajoranaMonomial& m, const Mat& a) {
  cplx acc = 0.0;
  const std::size_t dim = m.phase.size();
  for (std::size_t s = 0; s < dim; ++s) acc += std::conj(m.phase[s]) * a(s ^ m.flip, s);
  return acc / static_cast<double>(dim);
}

void add_scaled(Mat& out, const MajoranaMonomial& m, cplx c) {
  const std::size_t dim = m.phase.size();
  for (std::size_t s = 0; s < dim; ++s) out(s ^ m.flip, s) += c * m.phase[s];
}

std::vector<std::uint64_t> monomial_masks(const std::vector<int>& modes, bool even_only) {
  std::vector<int> bits;
  for (int m : modes) {
    bits.push_back(2 * m);
    bits.push_back(2 * m + 1);
  }
  const std::size_t count = std::size_t{1} << bits.size();
  std::vector<std::uint64_t> out;
  out.reserve(even_only ? count / 2 + 1 : count);
  for (std::size_t sub = 0; sub < count; ++sub) {
    if (even_only && (std::popcount(sub) & 1)) continue;
    std::uint64_t mask = 0;
    for (std::size_t b = 0; b < bits.size(); ++b) {
      if (sub >> b & 1) mask |= std::uint64_t{1} << bits[b];
    }
    out.push_back(mask);
  }
  return out;
}

MajoranaExpansion majorana_expand(const FockSpace& space, const Mat& a, const std::vector<int>& modes,
                                  bool even_only, double cutoff) {
  MajoranaExpansion out;
  for (std::uint64_t mask : monomial_masks(modes, even_only)) {
    MajoranaMonomial m = majorana_monomial(space, mask);
    cplx c = hs_coefficient(m, a);
    if (std::abs(c) > cutoff) out.emplace_back(mask, c);
  }
  return out;
}

MajoranaExpansion majorana_expand_supported(const Mat& a, const std::vector<int>& modes, double cutoff) {
  const std::size_t nloc = std::size_t{1} << modes.size();
  std::vector<std::uint64_t> states(nloc);
  for (std::size_t sub = 0; sub < nloc; ++sub) {
    std::uint64_t s = 0;
    for (std::size_t b = 0; b < modes.size(); ++b) {
      if (sub >> b & 1) s |= std::uint64_t{1} << modes[b];
    }
    states[sub] = s;
  }
  MajoranaExpansion out;
  for (std::uint64_t mask : monomial_masks(modes, false)) {
    std::vector<int> order = descending_bits(mask);
    cplx acc = 0.0;
    for (std::uint64_t s : states) {
      auto [t, ph] = apply_ordered(order, s);
      acc += std::conj(ph) * a(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(s));
    }
    acc /= static_cast<double>(nloc);
    if (std::abs(acc) > cutoff) out.emplace_back(mask, acc);
  }
  return out;
}

Mat majorana_sum(const FockSpace& space, const MajoranaExpansion& terms) {
  Mat out = Mat::Zero(space.dim(), space.dim());
  for (const auto& [mask, c] : terms) add_scaled(out, majorana_monomial(space, mask), c);
  return out;
}

FockOperator transplant(const FockOperator& a, const SiteSet& support, const FockSpace& from,
                        const FockSpace& to) {
  if (from.r() != to.r()) throw std::invalid_argument("internal dimension mismatch");
  if (!to.box().contains(support)) throw std::out_of_range("support not contained in target box");
  std::vector<int> src = from.modes_of(support);
  std::vector<int> dst = to.modes_of(support);
  MajoranaExpansion terms = majorana_expand_supported(a.dense(), src, 1e-15);
  MajoranaExpansion mapped;
  mapped.reserve(terms.size());
  for (const auto& [mask, c] : terms) {
    std::uint64_t out = 0;
    for (std::size_t k = 0; k < src.size(); ++k) {
      for (int b = 0; b < 2; ++b) {
        if (mask >> (2 * src[k] + b) & 1) out |= std::uint64_t{1} << (2 * dst[k] + b);
      }
    }
    mapped.emplace_back(out, c);
  }
  return FockOperator(majorana_sum(to, mapped), support);
}

}  // namespace gaplab
