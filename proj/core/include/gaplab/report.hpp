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
#ifndef GAPLAB_REPORT_HPP
#define GAPLAB_REPORT_HPP

#include <cstdint>
#include <iosfwd>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

namespace gaplab {

std::string format_number(double v);

// Tidy table with a provenance block.  CSV output follows RFC 4180 with CRLF
// line ends; provenance goes to a JSON sidecar so the CSV stays plain.
class ResultTable {
 public:
  explicit ResultTable(std::vector<std::string> columns = {});

  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }

  void add(std::vector<std::string> row);
  // numeric column by name, NaN for non-numeric cells
  std::vector<double> column(const std::string& name) const;

  nlohmann::json provenance;

  void write_csv(std::ostream& os) const;
  std::string csv() const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

std::string csv_escape(const std::string& cell);

// 64-bit FNV-1a, stable across platforms
std::uint64_t fnv1a(const std::string& text);
std::string hex64(std::uint64_t v);

nlohmann::json make_provenance(const nlohmann::json& config, std::uint64_t seed, const std::string& experiment);

// least-squares slope of log y against log x over positive entries
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

struct Series {
  std::string label;
  std::vector<double> x, y;
};

// Log-log line plot.
void write_loglog_svg(std::ostream& os, const std::string& title, const std::string& xlabel, const std::string& ylabel,
                      const std::vector<Series>& series);
// Heat map of log10 values on a (row, column) grid, e.g. the light cone
void write_heatmap_svg(std::ostream& os, const std::string& title, const std::vector<std::string>& row_labels,
                       const std::vector<std::string>& col_labels, const std::vector<std::vector<double>>& values);

}  // namespace gaplab

#endif
