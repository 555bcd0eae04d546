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

#include <cmath>
#include <sstream>

#include "gaplab/report.hpp"

using namespace gaplab;

TEST(Report, CsvEscaping) {
  EXPECT_EQ(csv_escape("plain"), "plain");
  EXPECT_EQ(csv_escape("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_escape("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(csv_escape("x;y"), "x;y");
}

TEST(Report, TableWritesCrlf) {
  ResultTable t({"name", "value"});
  t.add({"a,b", format_number(0.5)});
  t.add({"c", format_number(std::nan(""))});
  EXPECT_THROW(t.add({"short"}), std::exception);
  EXPECT_EQ(t.csv(), "name,value\r\n\"a,b\",0.5\r\nc,nan\r\n");
  const auto col = t.column("value");
  EXPECT_EQ(col[0], 0.5);
  EXPECT_TRUE(std::isnan(col[1]));
}

TEST(Report, HashAndProvenance) {
  EXPECT_EQ(fnv1a(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(hex64(0xaf63dc4c8601ec8cULL), "af63dc4c8601ec8c");
  const auto p = make_provenance({{"x", 1}}, 7, "sweep");
  EXPECT_EQ(p["seed"], 7);
  EXPECT_EQ(p["experiment"], "sweep");
  EXPECT_EQ(p["config_hash"], make_provenance({{"x", 1}}, 8, "other")["config_hash"]);
  EXPECT_NE(p["config_hash"], make_provenance({{"x", 2}}, 7, "sweep")["config_hash"]);
}

TEST(Report, SlopeOfExactPowerLaw) {
  std::vector<double> x{0.1, 0.01, 0.001}, y;
  for (double v : x) y.push_back(3.0 * std::pow(v, 2.5));
  EXPECT_NEAR(loglog_slope(x, y), 2.5, 1e-12);
}

TEST(Report, SvgOutput) {
  std::ostringstream os;
  write_loglog_svg(os, "t", "x", "y", {Series{"s", {0.1, 1.0}, {0.01, 1.0}}});
  EXPECT_NE(os.str().find("<svg"), std::string::npos);
  std::ostringstream hm;
  write_heatmap_svg(hm, "cone", {"r"}, {"c1", "c2"}, {{1e-3, 1.0}});
  EXPECT_NE(hm.str().find("</svg>"), std::string::npos);
}
