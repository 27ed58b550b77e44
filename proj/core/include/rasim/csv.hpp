#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "rasim/metrics.hpp"

namespace rasim {

inline constexpr std::array<std::string_view, 23> kCsvColumns{
    "policy", "M",        "K",          "sigma2",          "epsilon", "beta_or_gamma",
    "seed",   "replication", "naee",    "naaoi",           "throughput", "alpha_hat",
    "activation_rate", "e_j", "e_j2",   "e_u",             "e_u2",    "e_i",
    "e_sumsq", "wald_ratio", "l1",      "l2",              "l2_closed_form"};

/// Analytic reference lines appended to sweep tables, in order:
/// (e/2) s2, (e/6) s2, s2/2, e/(6(1-eps)) s2, e/(2(1-eps)) s2, 0.88 s2.
inline constexpr std::array<std::string_view, 6> kReferenceColumns{
    "ref_e_over_2", "ref_e_over_6", "ref_half", "ref_e_over_6_erasure", "ref_e_over_2_erasure",
    "ref_lower_bound"};

std::array<double, 6> reference_values(double sigma2, double epsilon);

/// The 15 metric columns (naee .. l2_closed_form) of a report.
std::array<double, 15> metric_values(const MetricsReport& report);
/// Inverse of metric_values for the CSV fields; other report members keep
/// their defaults.
MetricsReport report_from_values(const std::array<double, 15>& values);

/// 17-significant-digit rendering used in every CSV cell.
std::string format_double(double value);

struct CsvRow {
  std::string policy;
  std::int64_t M = 0;
  std::int64_t K = 0;
  double sigma2 = 0.0;
  double epsilon = 0.0;
  double beta_or_gamma = 0.0;
  std::uint64_t seed = 0;
  /// Replication index, "mean" or "stderr".
  std::string replication;
  MetricsReport report;
};

std::string csv_header(bool with_references);
std::string csv_line(const CsvRow& row, bool with_references);
std::string to_csv(const std::vector<CsvRow>& rows, bool with_references);

/// Parsed CSV table: header cells and rows of raw cells.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

CsvTable parse_csv(std::string_view text);

}  // namespace rasim
