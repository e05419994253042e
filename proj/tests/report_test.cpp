#include <benfordnet/report.hpp>

#include "oracle_values.hpp"

#include <gtest/gtest.h>

#include <json.hpp>

#include <regex>
#include <sstream>
#include <string>
#include <vector>

using namespace benfordnet;

namespace {

ProfileDataset small_dataset() {
  std::ostringstream csv;
  csv << "id,follower,following\n";
  for (int i = 1; i <= 400; ++i) csv << "p" << i << ',' << (i * 37) % 9973 << ',' << i * i << '\n';
  std::istringstream in(csv.str());
  return load(in, InputFormat::csv, {"follower", "following"}, "small.csv");
}

ReportDocument analysis_doc(int position = 1) {
  const auto ds = small_dataset();
  SelectionSpec spec;
  spec.strategy = SelectionStrategy::random;
  spec.metric = "follower";
  spec.n = 200;
  spec.seed = 3;
  spec.replicates = 4;
  return analysis_document(ds, spec, replicate_analysis(ds, spec, 10, position));
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST(FormatFixed, LocaleFreeAndNoNegativeZero) {
  EXPECT_EQ(format_fixed(0.30103, 3), "0.301");
  EXPECT_EQ(format_fixed(-0.0000001, 3), "0.000");
  EXPECT_EQ(format_fixed(-0.25, 2), "-0.25");
  EXPECT_EQ(hex64(0xabcULL), "0000000000000abc");
}

TEST(MeanCheck, FlagsSecondDigitDiscrepancy) {
  const auto first = mean_check(expected_distribution(10, 1));
  EXPECT_NEAR(first.exact, oracle::kExactFirstDigitMean, 1e-12);
  EXPECT_NEAR(first.rounded_row, 3.441, 1e-12);
  EXPECT_EQ(*first.published, 3.441);
  EXPECT_TRUE(*first.published_consistent());

  const auto second = mean_check(expected_distribution(10, 2));
  EXPECT_NEAR(second.exact, 4.1874, 1e-4);
  EXPECT_NEAR(second.rounded_row, 4.186, 1e-12);
  EXPECT_EQ(*second.published, 4.187);
  EXPECT_FALSE(*second.published_consistent());

  EXPECT_FALSE(mean_check(expected_distribution(8, 1)).published.has_value());
}

TEST(RenderCsv, ExpectedOnlyHasOneRowPerDigit) {
  const auto rows = lines(render_report(expected_document(10, 1), RenderFormat::csv));
  ASSERT_EQ(rows.size(), 10u);
  EXPECT_EQ(rows[0], "digit,empirical,expected,delta");
  EXPECT_EQ(rows[1], "1,,0.301029995664,");
  EXPECT_EQ(lines(render_report(expected_document(16, 2), RenderFormat::csv)).size(), 17u);
}

TEST(RenderCsv, EmpiricalColumnRenormalizes) {
  for (const int pos : {1, 2}) {
    const auto rows = lines(render_report(analysis_doc(pos), RenderFormat::csv));
    double total = 0.0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const auto first = rows[i].find(',');
      const auto second = rows[i].find(',', first + 1);
      total += std::stod(rows[i].substr(first + 1, second - first - 1));
    }
    EXPECT_NEAR(total, 1.0, 1e-9);
  }
}

TEST(RenderJson, RoundTripsLosslesslyAndByteIdentically) {
  for (const auto& doc : {expected_document(10, 1), expected_document(10, 2),
                          expected_document(2, 1), analysis_doc(1), analysis_doc(2)}) {
    const std::string text = render_report(doc, RenderFormat::json);
    const ReportDocument parsed = parse_report(text);
    EXPECT_EQ(parsed, doc);
    EXPECT_EQ(render_report(parsed, RenderFormat::json), text);
  }
}

TEST(RenderJson, SchemaFields) {
  const auto j = nlohmann::json::parse(render_report(analysis_doc(), RenderFormat::json));
  EXPECT_EQ(j.at("schema_version"), kReportSchemaVersion);
  EXPECT_EQ(j.at("tool").at("name"), "benfordnet");
  EXPECT_EQ(j.at("kind"), "analysis");
  EXPECT_EQ(j.at("input").at("records"), 400);
  EXPECT_FALSE(j.at("input").contains("ingested_at"));  // would break determinism
  EXPECT_EQ(j.at("analysis").at("per_replicate").size(), 4u);
  EXPECT_EQ(j.at("selection").at("strategy"), "random");
  EXPECT_EQ(j.at("analysis").at("summary").at("bands").at("close_below"), 0.006);
}

TEST(RenderJson, RejectsUnknownSchemaVersionAndGarbage) {
  auto j = nlohmann::json::parse(render_report(expected_document(10, 1), RenderFormat::json));
  j["schema_version"] = 99;
  EXPECT_THROW((void)parse_report(j.dump()), data_error);
  EXPECT_THROW((void)parse_report("{not json"), data_error);
  EXPECT_THROW((void)parse_report("{\"schema_version\":1}"), data_error);
}

TEST(RenderSvg, WellFormedWithOneBarPairPerDigit) {
  const std::string svg = render_report(analysis_doc(), RenderFormat::svg);
  EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
  EXPECT_NE(svg.find("<svg xmlns=\"http://www.w3.org/2000/svg\""), std::string::npos);
  EXPECT_EQ(svg.find("href"), std::string::npos);  // no external assets

  const auto count = [&](const std::string& needle) {
    std::size_t n = 0;
    for (auto p = svg.find(needle); p != std::string::npos; p = svg.find(needle, p + 1)) ++n;
    return n;
  };
  EXPECT_EQ(count("<g class=\"digit\""), 9u);
  EXPECT_EQ(count("class=\"empirical\""), 9u);
  EXPECT_EQ(count("class=\"expected\""), 9u);

  // Tag balance: every opened element is closed or self-closing.
  const std::regex open_tag(R"(<([a-zA-Z]+)[^>]*[^/]>)");
  const std::regex self_closing(R"(<[a-zA-Z]+[^>]*/>)");
  const std::regex close_tag(R"(</[a-zA-Z]+>)");
  const auto n_open = std::distance(std::sregex_iterator(svg.begin(), svg.end(), open_tag), {});
  const auto n_close = std::distance(std::sregex_iterator(svg.begin(), svg.end(), close_tag), {});
  EXPECT_EQ(n_open, n_close);
  EXPECT_GT(std::distance(std::sregex_iterator(svg.begin(), svg.end(), self_closing), {}), 0);
}

TEST(RenderTable, ShowsBothMeansAndVerdict) {
  const auto expected = render_report(expected_document(10, 1), RenderFormat::table);
  EXPECT_NE(expected.find("3.4402"), std::string::npos);
  EXPECT_NE(expected.find("3.441"), std::string::npos);

  const auto second = render_report(expected_document(10, 2), RenderFormat::table);
  EXPECT_NE(second.find("DISCREPANCY"), std::string::npos);
  EXPECT_NE(second.find("4.186"), std::string::npos);
  EXPECT_NE(second.find("4.187"), std::string::npos);

  const auto analysis = render_report(analysis_doc(), RenderFormat::table);
  EXPECT_NE(analysis.find("verdict:"), std::string::npos);
  EXPECT_NE(analysis.find("configurable extension"), std::string::npos);
}

TEST(RenderProperty, Deterministic) {
  for (const auto f : {RenderFormat::table, RenderFormat::csv, RenderFormat::json, RenderFormat::svg}) {
    EXPECT_EQ(render_report(analysis_doc(), f), render_report(analysis_doc(), f));
  }
  EXPECT_THROW((void)parse_render_format("pdf"), usage_error);
}

TEST(Compare, SameReportHasZeroDeltas) {
  const auto doc = analysis_doc();
  const auto c = compare_reports(doc, doc);
  for (const double d : c.delta) EXPECT_EQ(d, 0.0);
  EXPECT_EQ(*c.first_mad, *c.second_mad);
  const auto j = nlohmann::json::parse(render_comparison(c, RenderFormat::json));
  EXPECT_EQ(j.at("delta").size(), 9u);
  EXPECT_EQ(lines(render_comparison(c, RenderFormat::csv)).size(), 10u);
  EXPECT_THROW((void)render_comparison(c, RenderFormat::svg), usage_error);
}

TEST(Compare, ExpectedVersusAnalysis) {
  const auto c = compare_reports(expected_document(10, 1), analysis_doc());
  EXPECT_FALSE(c.first_mad.has_value());
  ASSERT_TRUE(c.second_mad.has_value());
  double mad = 0.0;
  for (const double d : c.delta) mad += std::abs(d);
  EXPECT_NEAR(mad / 9.0, *c.second_mad, 1e-15);
  EXPECT_NE(render_comparison(c, RenderFormat::table).find("MAD"), std::string::npos);
}

TEST(Compare, MismatchedBaseOrPosition) {
  EXPECT_THROW((void)compare_reports(expected_document(10, 1), expected_document(8, 1)),
               usage_error);
  EXPECT_THROW((void)compare_reports(expected_document(10, 1), expected_document(10, 2)),
               usage_error);
}
