#include <gtest/gtest.h>

#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "orlicz/generators.hpp"
#include "orlicz/report.hpp"

using namespace orlicz;

namespace {

std::vector<std::vector<double>> parse_rows(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line) && !line.empty()) {
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST(Format, TwelveSignificantDigits) {
  EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(format_number(5.0), "5");
  EXPECT_EQ(format_number(1234567.891234567), "1234567.89123");
  EXPECT_EQ(round12(2.0 / 3.0), 0.666666666667);
}

TEST(Report, JsonAndCsv) {
  const auto r = pareto_generates_lp(2.0, default_suite(8), 1000, 5);
  const auto j = nlohmann::json::parse(report_to_json(r));
  EXPECT_EQ(j["experiment"], "pareto");
  EXPECT_EQ(j["seed"], 5);
  EXPECT_EQ(j["suite_version"], "suite-v1");
  ASSERT_EQ(j["entries"].size(), 8u);
  EXPECT_EQ(j["entries"][0]["label"], "e1");
  EXPECT_DOUBLE_EQ(j["spread"].get<double>(), round12(r.spread));
  EXPECT_TRUE(j.contains("config"));

  std::stringstream csv(report_to_csv(r));
  std::string header;
  std::getline(csv, header);
  EXPECT_EQ(header, "label,norm,mc_mean,mc_stderr,ratio");
  int rows = 0;
  for (std::string line; std::getline(csv, line);) ++rows;
  EXPECT_EQ(rows, 8);
}

TEST(Report, TailCsv) {
  const auto d = log_gamma_tail(2.0);
  std::stringstream csv(tail_to_csv(d, std::vector<double>{0.5, 2.0, 4.0}));
  std::string header;
  std::getline(csv, header);
  EXPECT_EQ(header, "t,tail,pdf");
  const auto rows = parse_rows(csv);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[1][1], 0.25);
  EXPECT_EQ(rows[2][2], 2.0 * std::pow(4.0, -3.0));
  std::stringstream atoms(atoms_to_csv(point_mass_tail(3.0)));
  std::getline(atoms, header);
  EXPECT_EQ(header, "location,mass");
  EXPECT_EQ(parse_rows(atoms), (std::vector<std::vector<double>>{{3.0, 1.0}}));
}

TEST(Report, SmoothingCsv) {
  const auto m = normalize(OrliczFunction::power(1.5));
  const auto s = approx_smooth_kink(m, 1.1);
  std::stringstream csv(smoothing_to_csv(m, s, 257));
  std::string comment, header;
  std::getline(csv, comment);
  std::getline(csv, header);
  EXPECT_EQ(comment, "# delta=" + format_number(s.delta));
  EXPECT_EQ(header, "t,M,N,M2,N2");
  const auto rows = parse_rows(csv);
  ASSERT_EQ(rows.size(), 257u);
  for (const auto& r : rows) {
    EXPECT_LE(r[2], r[1] * (1 + 1e-11));
    EXPECT_LE(r[1], 1.1 * r[2] * (1 + 1e-11));
  }
  EXPECT_EQ(rows.back()[4], 0.0);
  EXPECT_NEAR(rows.back()[0], m.kink(), 1e-11);
}
