#include "rasim/csv.hpp"

#include <cstdio>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace rasim {

std::array<double, 6> reference_values(double sigma2, double epsilon) {
  constexpr double e = std::numbers::e;
  const double keep = 1.0 - epsilon;
  return {e / 2.0 * sigma2,         e / 6.0 * sigma2,         sigma2 / 2.0,
          e / (6.0 * keep) * sigma2, e / (2.0 * keep) * sigma2, 0.88 * sigma2};
}

std::array<double, 15> metric_values(const MetricsReport& r) {
  return {r.naee, r.naaoi, r.throughput, r.alpha_hat, r.activation_rate,
          r.e_j,  r.e_j2,  r.e_u,        r.e_u2,      r.e_i,
          r.e_sumsq, r.wald_ratio, r.l1, r.l2,        r.l2_closed_form};
}

MetricsReport report_from_values(const std::array<double, 15>& v) {
  MetricsReport r;
  r.naee = v[0];
  r.naaoi = v[1];
  r.throughput = v[2];
  r.alpha_hat = v[3];
  r.activation_rate = v[4];
  r.e_j = v[5];
  r.e_j2 = v[6];
  r.e_u = v[7];
  r.e_u2 = v[8];
  r.e_i = v[9];
  r.e_sumsq = v[10];
  r.wald_ratio = v[11];
  r.l1 = v[12];
  r.l2 = v[13];
  r.l2_closed_form = v[14];
  return r;
}

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string csv_header(bool with_references) {
  std::string h;
  for (std::size_t c = 0; c < kCsvColumns.size(); ++c) {
    if (c) h += ',';
    h += kCsvColumns[c];
  }
  if (with_references) {
    for (auto name : kReferenceColumns) {
      h += ',';
      h += name;
    }
  }
  return h;
}

std::string csv_line(const CsvRow& row, bool with_references) {
  std::string s = row.policy;
  s += ',' + std::to_string(row.M);
  s += ',' + std::to_string(row.K);
  s += ',' + format_double(row.sigma2);
  s += ',' + format_double(row.epsilon);
  s += ',' + format_double(row.beta_or_gamma);
  s += ',' + std::to_string(row.seed);
  s += ',' + row.replication;
  for (double v : metric_values(row.report)) s += ',' + format_double(v);
  if (with_references) {
    for (double v : reference_values(row.sigma2, row.epsilon)) s += ',' + format_double(v);
  }
  return s;
}

std::string to_csv(const std::vector<CsvRow>& rows, bool with_references) {
  std::string out = csv_header(with_references) + '\n';
  for (const auto& r : rows) out += csv_line(r, with_references) + '\n';
  return out;
}

CsvTable parse_csv(std::string_view text) {
  CsvTable t;
  std::istringstream in{std::string(text)};
  std::string line;
  auto split = [](const std::string& l) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(l);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!l.empty() && l.back() == ',') cells.emplace_back();
    return cells;
  };
  if (!std::getline(in, line)) throw std::invalid_argument("empty CSV");
  t.header = split(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cells = split(line);
    if (cells.size() != t.header.size()) {
      throw std::invalid_argument("CSV row has " + std::to_string(cells.size()) +
                                  " cells, header has " + std::to_string(t.header.size()));
    }
    t.rows.push_back(std::move(cells));
  }
  return t;
}

}  // namespace rasim
