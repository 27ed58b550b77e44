#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <numbers>

#include "rasim/csv.hpp"

namespace rasim {
namespace {

TEST(CsvHeader, FixedColumns) {
  EXPECT_EQ(csv_header(false),
            "policy,M,K,sigma2,epsilon,beta_or_gamma,seed,replication,naee,naaoi,throughput,"
            "alpha_hat,activation_rate,e_j,e_j2,e_u,e_u2,e_i,e_sumsq,wald_ratio,l1,l2,"
            "l2_closed_form");
}

TEST(CsvHeader, ReferenceColumnsAppended) {
  const auto h = csv_header(true);
  EXPECT_EQ(h.rfind(csv_header(false), 0), 0U);
  EXPECT_NE(h.find(",ref_e_over_2,ref_e_over_6,ref_half,"), std::string::npos);
}

TEST(FormatDouble, SeventeenDigitsRoundTrip) {
  for (double v : {0.1, 1.0 / 3.0, std::numbers::e, 1e-300, 123456789.0}) {
    const auto s = format_double(v);
    EXPECT_EQ(std::strtod(s.c_str(), nullptr), v);
  }
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(2.0), "2");
}

TEST(ReferenceValues, Formulas) {
  const auto r = reference_values(3.0, 0.5);
  const double e = std::numbers::e;
  EXPECT_DOUBLE_EQ(r[0], e / 2 * 3);
  EXPECT_DOUBLE_EQ(r[1], e / 6 * 3);
  EXPECT_DOUBLE_EQ(r[2], 1.5);
  EXPECT_DOUBLE_EQ(r[3], e);
  EXPECT_DOUBLE_EQ(r[4], 3 * e);
  EXPECT_DOUBLE_EQ(r[5], 0.88 * 3);
}

TEST(CsvLine, ParsesBackToSameCells) {
  CsvRow row;
  row.policy = "ebt";
  row.M = 500;
  row.K = 1000;
  row.sigma2 = 1.0;
  row.epsilon = 0.0;
  row.beta_or_gamma = std::sqrt(500 * std::numbers::e);
  row.seed = 18446744073709551615ULL;
  row.replication = "mean";
  row.report.naee = 0.5;
  row.report.l2_closed_form = 1.0 / 7.0;
  const auto table = parse_csv(to_csv({row}, true));
  ASSERT_EQ(table.rows.size(), 1U);
  EXPECT_EQ(table.header.size(), kCsvColumns.size() + kReferenceColumns.size());
  const auto& cells = table.rows[0];
  EXPECT_EQ(cells[0], "ebt");
  EXPECT_EQ(cells[6], "18446744073709551615");
  EXPECT_EQ(cells[7], "mean");
  EXPECT_EQ(std::strtod(cells[5].c_str(), nullptr), row.beta_or_gamma);
  EXPECT_EQ(std::strtod(cells[22].c_str(), nullptr), 1.0 / 7.0);
}

TEST(MetricValues, RoundTrip) {
  MetricsReport r;
  r.naee = 1;
  r.wald_ratio = 2;
  r.e_sumsq = 3;
  const auto back = report_from_values(metric_values(r));
  EXPECT_EQ(metric_values(back), metric_values(r));
}

TEST(ParseCsv, RejectsRaggedRows) {
  EXPECT_THROW(parse_csv("a,b\n1\n"), std::invalid_argument);
  EXPECT_THROW(parse_csv(""), std::invalid_argument);
}

}  // namespace
}  // namespace rasim
