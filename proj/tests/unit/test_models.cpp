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

#include <gtest/gtest.h>

#include "gaplab/models.hpp"

using namespace gaplab;
using nlohmann::json;

namespace {

std::string pointer_of(const json& j) {
  try {
    parse_config(j);
  } catch (const ConfigError& e) {
    return e.pointer();
  }
  return "<accepted>";
}

}  // namespace

TEST(Models, BuiltinsRoundTrip) {
  for (const std::string& name : builtin_names()) {
    const ModelConfig c = builtin_model(name);
    const json j = to_json(c);
    EXPECT_EQ(to_json(parse_config(j)), j) << name;
    EXPECT_NO_THROW(parse_config_text(j.dump()));
  }
  EXPECT_THROW(builtin_model("nope"), std::exception);
}

TEST(Models, ErrorPointers) {
  const json base = to_json(builtin_model("M1"));
  auto with = [&](const std::string& ptr, const json& v) {
    json j = base;
    j[json::json_pointer(ptr)] = v;
    return pointer_of(j);
  };
  EXPECT_EQ(pointer_of(base), "<accepted>");
  EXPECT_EQ(with("/lattice/k/0", 0), "/lattice/k/0");
  EXPECT_EQ(with("/lattice/k/1", 7), "/lattice/k/1");
  EXPECT_EQ(with("/h0", json::array()), "/h0");
  EXPECT_EQ(with("/gap/g_tilde", 5.0), "/gap/g_tilde");
  EXPECT_EQ(with("/gap/g", -1.0), "/gap/g");
  EXPECT_EQ(with("/gap/mode", "middle"), "/gap/mode");
  EXPECT_EQ(with("/particles", "all"), "/particles");
  EXPECT_EQ(with("/particles", -2), "/particles");
  EXPECT_EQ(with("/time/points", 0), "/time/points");
  EXPECT_EQ(with("/decay", "gauss:1"), "/decay");
  EXPECT_EQ(with("/potential/kind", "quadratic"), "/potential/kind");
  EXPECT_EQ(with("/gap/colour", 1), "/gap/colour");
  EXPECT_EQ(with("/version", 99), "/version");
  json nogap = base;
  nogap.erase("gap");
  EXPECT_EQ(pointer_of(nogap), "/gap");
  try {
    parse_config_text("{\"version\": 1,");
    ADD_FAILURE();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.pointer(), "");
  }
}

TEST(Models, BlockIsTheParticleSector) {
  const Model m(builtin_model("M1"), 2);
  EXPECT_EQ(m.space().modes(), 5);
  const std::size_t n = m.basis().size();
  EXPECT_GT(n, 0u);
  const Mat hb = m.h0_block(0.3);
  EXPECT_EQ(hb.rows(), static_cast<Eigen::Index>(n));
  EXPECT_LT((hb - restrict_to(m.h0(0.3), m.basis())).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LT((hb - hb.adjoint()).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Models, DerivativeMatchesDifferenceQuotient) {
  const Model m(builtin_model("M1"), 1);
  const double t = 0.4, h = 1e-5;
  const Mat fd = (m.h0_block(t + h) - m.h0_block(t - h)) / (2 * h);
  EXPECT_LT((fd - m.h0_block(t, 1)).cwiseAbs().maxCoeff(), 1e-7);
}

TEST(Models, BuiltinsAreGapped) {
  for (const std::string& name : builtin_names()) {
    ModelConfig c = builtin_model(name);
    c.k = {1, 2};
    EXPECT_NO_THROW(verify_gap(c)) << name;
  }
}
