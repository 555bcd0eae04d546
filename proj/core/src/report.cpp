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


#include "gaplab/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace gaplab {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

ResultTable::ResultTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void ResultTable::add(std::vector<std::string> row) {
  if (row.size() != columns_.size()) throw std::invalid_argument("row width does not match the table");
  rows_.push_back(std::move(row));
}

std::vector<double> ResultTable::column(const std::string& name) const {
  auto it = std::find(columns_.begin(), columns_.end(), name);
  if (it == columns_.end()) throw std::out_of_range("no column '" + name + "'");
  const auto c = static_cast<std::size_t>(it - columns_.begin());
  std::vector<double> out;
  for (const auto& r : rows_) {
    try {
      std::size_t pos = 0;
      double v = std::stod(r[c], &pos);
      out.push_back(pos == r[c].size() ? v : std::numeric_limits<double>::quiet_NaN());
    } catch (const std::exception&) {
      out.push_back(std::numeric_limits<double>::quiet_NaN());
    }
  }
  return out;
}

std::string csv_escape(const std::string& cell) {
  if (cell.find_first_of(",\"\r\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (char ch : cell) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

void ResultTable::write_csv(std::ostream& os) const {
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << csv_escape(cells[i]);
    os << "\r\n";
  };
  line(columns_);
  for (const auto& r : rows_) line(r);
}

std::string ResultTable::csv() const {
  std::ostringstream os;
  write_csv(os);
  return os.str();
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

nlohmann::json make_provenance(const nlohmann::json& config, std::uint64_t seed, const std::string& experiment) {
  return nlohmann::json{{"experiment", experiment},
                        {"config_hash", hex64(fnv1a(config.dump()))},
                        {"code_version", "0.1.0"},
                        {"seed", seed}};
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("slope fit needs equal lengths");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) continue;
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  const double den = n * sxx - sx * sx;
  if (den == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return (n * sxy - sx * sy) / den;
}

namespace {

const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string esc(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<')
      out += "&lt;";
    else if (c == '>')
      out += "&gt;";
    else if (c == '&')
      out += "&amp;";
    else
      out += c;
  }
  return out;
}

}  // namespace

void write_loglog_svg(std::ostream& os, const std::string& title, const std::string& xlabel, const std::string& ylabel,
                      const std::vector<Series>& series) {
  const double w = 640, h = 440, ml = 70, mr = 150, mt = 40, mb = 55;
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!(s.x[i] > 0) || !(s.y[i] > 0)) continue;
      xmin = std::min(xmin, std::log10(s.x[i]));
      xmax = std::max(xmax, std::log10(s.x[i]));
      ymin = std::min(ymin, std::log10(s.y[i]));
      ymax = std::max(ymax, std::log10(s.y[i]));
    }
  }
  if (xmin > xmax) xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  xmin = std::floor(xmin), xmax = std::max(std::ceil(xmax), xmin + 1);
  ymin = std::floor(ymin), ymax = std::max(std::ceil(ymax), ymin + 1);
  auto px = [&](double lx) { return ml + (lx - xmin) / (xmax - xmin) * (w - ml - mr); };
  auto py = [&](double ly) { return h - mb - (ly - ymin) / (ymax - ymin) * (h - mt - mb); };
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << w / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << esc(title) << "</text>\n";
  for (double e = xmin; e <= xmax + 1e-9; e += 1) {
    os << "<line x1=\"" << px(e) << "\" y1=\"" << mt << "\" x2=\"" << px(e) << "\" y2=\"" << h - mb
       << "\" stroke=\"#ddd\"/>\n";
    os << "<text x=\"" << px(e) << "\" y=\"" << h - mb + 18 << "\" text-anchor=\"middle\" font-size=\"11\">1e"
       << static_cast<int>(e) << "</text>\n";
  }
  for (double e = ymin; e <= ymax + 1e-9; e += 1) {
    os << "<line x1=\"" << ml << "\" y1=\"" << py(e) << "\" x2=\"" << w - mr << "\" y2=\"" << py(e)
       << "\" stroke=\"#ddd\"/>\n";
    os << "<text x=\"" << ml - 6 << "\" y=\"" << py(e) + 4 << "\" text-anchor=\"end\" font-size=\"11\">1e"
       << static_cast<int>(e) << "</text>\n";
  }
  os << "<text x=\"" << (ml + w - mr) / 2 << "\" y=\"" << h - 12 << "\" text-anchor=\"middle\" font-size=\"13\">"
     << esc(xlabel) << "</text>\n";
  os << "<text x=\"16\" y=\"" << (mt + h - mb) / 2 << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 16 "
     << (mt + h - mb) / 2 << ")\">" << esc(ylabel) << "</text>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* col = palette[k % 6];
    std::ostringstream pts;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!(s.x[i] > 0) || !(s.y[i] > 0)) continue;
      pts << px(std::log10(s.x[i])) << ',' << py(std::log10(s.y[i])) << ' ';
      os << "<circle cx=\"" << px(std::log10(s.x[i])) << "\" cy=\"" << py(std::log10(s.y[i])) << "\" r=\"3\" fill=\""
         << col << "\"/>\n";
    }
    os << "<polyline fill=\"none\" stroke=\"" << col << "\" points=\"" << pts.str() << "\"/>\n";
    os << "<text x=\"" << w - mr + 10 << "\" y=\"" << mt + 16 * (k + 1) << "\" font-size=\"12\" fill=\"" << col
       << "\">" << esc(s.label) << "</text>\n";
  }
  os << "</svg>\n";
}

void write_heatmap_svg(std::ostream& os, const std::string& title, const std::vector<std::string>& row_labels,
                       const std::vector<std::string>& col_labels, const std::vector<std::vector<double>>& values) {
  const double cell = 22, ml = 70, mt = 40;
  const double w = ml + cell * col_labels.size() + 20;
  const double h = mt + cell * row_labels.size() + 40;
  double lo = 1e300, hi = -1e300;
  for (const auto& r : values) {
    for (double v : r) {
      if (v > 0) lo = std::min(lo, std::log10(v)), hi = std::max(hi, std::log10(v));
    }
  }
  if (lo > hi) lo = 0, hi = 1;
  if (hi - lo < 1e-12) hi = lo + 1;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << w / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << esc(title) << "</text>\n";
  for (std::size_t i = 0; i < values.size(); ++i) {
    os << "<text x=\"" << ml - 6 << "\" y=\"" << mt + cell * i + 15 << "\" text-anchor=\"end\" font-size=\"10\">"
       << esc(row_labels[i]) << "</text>\n";
    for (std::size_t j = 0; j < values[i].size(); ++j) {
      const double v = values[i][j];
      const double f = v > 0 ? (std::log10(v) - lo) / (hi - lo) : 0.0;
      const int shade = static_cast<int>(255 * (1.0 - f));
      os << "<rect x=\"" << ml + cell * j << "\" y=\"" << mt + cell * i << "\" width=\"" << cell << "\" height=\""
         << cell << "\" fill=\"rgb(255," << shade << ',' << shade << ")\"/>\n";
    }
  }
  for (std::size_t j = 0; j < col_labels.size(); ++j) {
    os << "<text x=\"" << ml + cell * j + cell / 2 << "\" y=\"" << mt + cell * values.size() + 14
       << "\" text-anchor=\"middle\" font-size=\"10\">" << esc(col_labels[j]) << "</text>\n";
  }
  os << "</svg>\n";
}

}  // namespace gaplab
