#pragma once

// Report documents and their renderings: human table, per-digit CSV,
// schema-versioned JSON, and a self-contained SVG bar chart.
//
// All number formatting goes through std::to_chars, so output never depends
// on the process locale. JSON doubles use the shortest representation that
// parses back to the same value, which makes parse(render(doc)) == doc.

#include <benfordnet/benford.hpp>
#include <benfordnet/dataset.hpp>
#include <benfordnet/digits.hpp>
#include <benfordnet/errors.hpp>
#include <benfordnet/synth.hpp>

#include <json.hpp>

#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace benfordnet {

inline constexpr std::string_view kToolName = "benfordnet";
inline constexpr std::string_view kToolVersion = "1.0.0";
inline constexpr int kReportSchemaVersion = 1;

[[nodiscard]] inline std::string format_fixed(double value, int decimals) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] =
      std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::fixed, decimals);
  if (ec != std::errc{}) throw usage_error("number too large to format");
  std::string out(buf.data(), ptr);
  if (out.starts_with("-") && out.find_first_not_of("-0.") == std::string::npos) out.erase(0, 1);
  return out;
}

[[nodiscard]] inline std::string hex64(std::uint64_t v) {
  std::array<char, 17> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, 16);
  std::string digits(buf.data(), ptr);
  return std::string(16 - digits.size(), '0') + digits;
}

enum class RenderFormat { table, csv, json, svg };

[[nodiscard]] inline RenderFormat parse_render_format(std::string_view name) {
  if (name == "table") return RenderFormat::table;
  if (name == "csv") return RenderFormat::csv;
  if (name == "json") return RenderFormat::json;
  if (name == "svg") return RenderFormat::svg;
  throw usage_error("unknown render format '" + std::string(name) + "'");
}

/// Exact mean of the expected distribution next to the mean of its
/// 3-decimal rounded row, and, for base 10, the mean printed in the
/// conventional published table.
struct MeanCheck {
  double exact = 0.0;
  double rounded_row = 0.0;
  std::optional<double> published;

  /// Whether the rounded-row mean reproduces the published mean at 3 decimals.
  [[nodiscard]] std::optional<bool> published_consistent() const {
    if (!published) return std::nullopt;
    return std::llround(rounded_row * 1000.0) == std::llround(*published * 1000.0);
  }

  friend bool operator==(const MeanCheck&, const MeanCheck&) = default;
};

[[nodiscard]] inline MeanCheck mean_check(const DigitDistribution& expected) {
  MeanCheck check{distribution_mean(expected), rounded_row_mean(expected, 3), std::nullopt};
  if (expected.base() == 10) {
    check.published =
        expected.position() == 1 ? kPublishedFirstDigitMean : kPublishedSecondDigitMean;
  }
  return check;
}

struct InputInfo {
  std::string filename;
  InputFormat format = InputFormat::csv;
  std::uint64_t records = 0;
  std::uint64_t byte_count = 0;
  std::uint64_t fnv1a64 = 0;

  friend bool operator==(const InputInfo&, const InputInfo&) = default;
};

[[nodiscard]] inline InputInfo input_info(const ProfileDataset& dataset) {
  const auto& s = dataset.source();
  return {s.filename, s.format, dataset.size(), s.byte_count, s.fnv1a64};
}

enum class ReportKind { expected, analysis };

struct ReportDocument {
  int schema_version = kReportSchemaVersion;
  std::string tool_version = std::string(kToolVersion);
  ReportKind kind = ReportKind::expected;
  DigitDistribution expected;
  MeanCheck means;
  std::optional<InputInfo> input;
  std::optional<SelectionSpec> selection;
  std::optional<GeneratorSpec> generator;
  std::optional<AveragedDistribution> analysis;

  [[nodiscard]] const DigitPlace& place() const noexcept { return expected.place(); }

  friend bool operator==(const ReportDocument&, const ReportDocument&) = default;
};

[[nodiscard]] inline ReportDocument expected_document(int base, int position) {
  DigitDistribution expected = expected_distribution(base, position);
  MeanCheck means = mean_check(expected);
  return ReportDocument{kReportSchemaVersion, std::string(kToolVersion), ReportKind::expected,
                        std::move(expected), means, std::nullopt, std::nullopt, std::nullopt,
                        std::nullopt};
}

[[nodiscard]] inline ReportDocument analysis_document(const ProfileDataset& dataset,
                                                      SelectionSpec selection,
                                                      AveragedDistribution analysis) {
  DigitDistribution expected = analysis.summary.expected;
  MeanCheck means = mean_check(expected);
  selection.replicates = selection.effective_replicates();
  return ReportDocument{kReportSchemaVersion, std::string(kToolVersion),
                        ReportKind::analysis,  std::move(expected),
                        means,                 input_info(dataset),
                        std::move(selection),  std::nullopt,
                        std::move(analysis)};
}

// ---------------------------------------------------------------------------
// JSON

namespace detail {

using nlohmann::json;

inline json distribution_json(const DigitDistribution& d) {
  json digits = json::array();
  for (const int v : d.place().digits()) digits.push_back(v);
  return {{"base", d.base()},
          {"position", d.position()},
          {"digits", digits},
          {"probabilities", std::vector<double>(d.probabilities().begin(), d.probabilities().end())}};
}

inline DigitDistribution distribution_from(const json& j) {
  const DigitPlace place(j.at("base").get<int>(), j.at("position").get<int>());
  auto p = j.at("probabilities").get<std::vector<double>>();
  return DigitDistribution(place, std::move(p));
}

inline json bands_json(const VerdictBands& b) {
  return {{"metric", "mad"},
          {"close_below", b.close},
          {"acceptable_below", b.acceptable},
          {"marginal_below", b.marginal}};
}

inline VerdictBands bands_from(const json& j) {
  return {j.at("close_below").get<double>(), j.at("acceptable_below").get<double>(),
          j.at("marginal_below").get<double>()};
}

inline json conformance_json(const ConformanceReport& r) {
  return {{"empirical", distribution_json(r.empirical)},
          {"expected", distribution_json(r.expected)},
          {"n_included", r.n_included},
          {"n_excluded", r.n_excluded},
          {"mad", r.mad},
          {"chi_square", r.chi_square},
          {"chi_square_df", r.chi_square_df},
          {"max_deviation_digit", r.max_deviation_digit.value},
          {"max_deviation", r.max_deviation},
          {"empirical_mean", r.empirical_mean},
          {"expected_mean", r.expected_mean},
          {"bands", bands_json(r.bands)},
          {"verdict", std::string(to_string(r.verdict))}};
}

inline ConformanceReport conformance_from(const json& j) {
  return ConformanceReport{distribution_from(j.at("empirical")),
                           distribution_from(j.at("expected")),
                           j.at("n_included").get<std::uint64_t>(),
                           j.at("n_excluded").get<std::uint64_t>(),
                           j.at("mad").get<double>(),
                           j.at("chi_square").get<double>(),
                           j.at("chi_square_df").get<int>(),
                           Digit{j.at("max_deviation_digit").get<int>()},
                           j.at("max_deviation").get<double>(),
                           j.at("empirical_mean").get<double>(),
                           j.at("expected_mean").get<double>(),
                           bands_from(j.at("bands")),
                           parse_verdict(j.at("verdict").get<std::string>())};
}

inline json selection_json(const SelectionSpec& s) {
  json j = {{"strategy", std::string(to_string(s.strategy))},
            {"metric", s.metric},
            {"n", s.n},
            {"seed", s.seed},
            {"replicates", s.replicates},
            {"ascending", s.ascending}};
  if (s.strategy == SelectionStrategy::cross_sorted) j["order_metric"] = s.order_metric;
  return j;
}

inline SelectionSpec selection_from(const json& j) {
  SelectionSpec s;
  s.strategy = parse_strategy(j.at("strategy").get<std::string>());
  s.metric = j.at("metric").get<std::string>();
  s.order_metric = j.value("order_metric", std::string{});
  s.n = j.at("n").get<std::uint64_t>();
  s.seed = j.at("seed").get<std::uint64_t>();
  s.replicates = j.at("replicates").get<std::uint64_t>();
  s.ascending = j.at("ascending").get<bool>();
  return s;
}

inline SynthModel parse_model(std::string_view name) {
  for (const auto m : {SynthModel::uniform_mixture, SynthModel::planted, SynthModel::padded}) {
    if (to_string(m) == name) return m;
  }
  throw usage_error("unknown generator model '" + std::string(name) + "'");
}

inline ScaleLaw parse_scale_law(std::string_view name) {
  if (name == "log_uniform") return ScaleLaw::log_uniform;
  if (name == "uniform") return ScaleLaw::uniform;
  throw usage_error("unknown scale law '" + std::string(name) + "'");
}

}  // namespace detail

[[nodiscard]] inline nlohmann::json generator_json(const GeneratorSpec& g) {
  return {{"model", std::string(to_string(g.model))},
          {"count", g.count},
          {"seed", g.seed},
          {"s_max", g.s_max},
          {"s_law", std::string(to_string(g.s_law))},
          {"fraction", g.fraction},
          {"planted_value", g.planted_value},
          {"step", g.step},
          {"probability", g.probability}};
}

[[nodiscard]] inline GeneratorSpec generator_from(const nlohmann::json& j) {
  GeneratorSpec g;
  g.model = detail::parse_model(j.at("model").get<std::string>());
  g.count = j.at("count").get<std::uint64_t>();
  g.seed = j.at("seed").get<std::uint64_t>();
  g.s_max = j.at("s_max").get<std::uint64_t>();
  g.s_law = detail::parse_scale_law(j.at("s_law").get<std::string>());
  g.fraction = j.at("fraction").get<double>();
  g.planted_value = j.at("planted_value").get<std::uint64_t>();
  g.step = j.at("step").get<std::uint64_t>();
  g.probability = j.at("probability").get<double>();
  return g;
}

[[nodiscard]] inline nlohmann::json to_json(const ReportDocument& doc) {
  using detail::json;
  json j;
  j["schema_version"] = doc.schema_version;
  j["tool"] = {{"name", std::string(kToolName)}, {"version", doc.tool_version}};
  j["kind"] = doc.kind == ReportKind::expected ? "expected" : "analysis";
  j["expected"] = detail::distribution_json(doc.expected);
  json means = {{"exact", doc.means.exact}, {"rounded_row", doc.means.rounded_row}};
  if (doc.means.published) {
    means["published"] = *doc.means.published;
    means["published_consistent"] = *doc.means.published_consistent();
  }
  j["means"] = means;
  if (doc.input) {
    j["input"] = {{"filename", doc.input->filename},
                  {"format", std::string(to_string(doc.input->format))},
                  {"records", doc.input->records},
                  {"bytes", doc.input->byte_count},
                  {"fnv1a64", hex64(doc.input->fnv1a64)}};
  }
  if (doc.selection) j["selection"] = detail::selection_json(*doc.selection);
  if (doc.generator) j["generator"] = generator_json(*doc.generator);
  if (doc.analysis) {
    const auto& a = *doc.analysis;
    json reps = json::array();
    for (const auto& r : a.per_replicate) reps.push_back(detail::conformance_json(r));
    j["analysis"] = {{"replicates", a.replicates},
                     {"per_digit_mean", a.per_digit_mean},
                     {"per_digit_min", a.per_digit_min},
                     {"per_digit_max", a.per_digit_max},
                     {"summary", detail::conformance_json(a.summary)},
                     {"per_replicate", reps}};
  }
  return j;
}

[[nodiscard]] inline ReportDocument report_from_json(const nlohmann::json& j) {
  try {
    const int version = j.at("schema_version").get<int>();
    if (version != kReportSchemaVersion) {
      throw data_error("unsupported report schema_version " + std::to_string(version));
    }
    ReportDocument doc{version,
                       j.at("tool").at("version").get<std::string>(),
                       j.at("kind").get<std::string>() == "analysis" ? ReportKind::analysis
                                                                     : ReportKind::expected,
                       detail::distribution_from(j.at("expected")),
                       MeanCheck{},
                       std::nullopt,
                       std::nullopt,
                       std::nullopt,
                       std::nullopt};
    const auto& means = j.at("means");
    doc.means.exact = means.at("exact").get<double>();
    doc.means.rounded_row = means.at("rounded_row").get<double>();
    if (means.contains("published")) doc.means.published = means.at("published").get<double>();
    if (j.contains("input")) {
      const auto& in = j.at("input");
      const auto hash = in.at("fnv1a64").get<std::string>();
      std::uint64_t h = 0;
      std::from_chars(hash.data(), hash.data() + hash.size(), h, 16);
      doc.input = InputInfo{in.at("filename").get<std::string>(),
                            parse_input_format(in.at("format").get<std::string>()),
                            in.at("records").get<std::uint64_t>(),
                            in.at("bytes").get<std::uint64_t>(), h};
    }
    if (j.contains("selection")) doc.selection = detail::selection_from(j.at("selection"));
    if (j.contains("generator")) doc.generator = generator_from(j.at("generator"));
    if (j.contains("analysis")) {
      const auto& a = j.at("analysis");
      std::vector<ConformanceReport> reps;
      for (const auto& r : a.at("per_replicate")) reps.push_back(detail::conformance_from(r));
      doc.analysis = AveragedDistribution{doc.expected.place(),
                                          a.at("per_digit_mean").get<std::vector<double>>(),
                                          a.at("per_digit_min").get<std::vector<double>>(),
                                          a.at("per_digit_max").get<std::vector<double>>(),
                                          a.at("replicates").get<std::uint64_t>(),
                                          std::move(reps),
                                          detail::conformance_from(a.at("summary"))};
    }
    return doc;
  } catch (const nlohmann::json::exception& e) {
    throw data_error(std::string("malformed report JSON: ") + e.what());
  }
}

[[nodiscard]] inline ReportDocument parse_report(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw data_error(std::string("report is not valid JSON: ") + e.what());
  }
  return report_from_json(j);
}

// ---------------------------------------------------------------------------
// Text renderings

namespace detail {

/// Empirical frequencies shown for a document: replicate mean for analyses.
inline std::optional<std::vector<double>> empirical_row(const ReportDocument& doc) {
  if (!doc.analysis) return std::nullopt;
  return doc.analysis->per_digit_mean;
}

inline std::string pad_left(std::string s, std::size_t width) {
  if (s.size() < width) s.insert(0, width - s.size(), ' ');
  return s;
}

inline std::string render_table(const ReportDocument& doc) {
  std::ostringstream out;
  const auto& place = doc.place();
  out << kToolName << ' ' << doc.tool_version << "  base " << place.base() << ", digit position "
      << place.position() << '\n';
  if (doc.input) {
    out << "input: " << doc.input->filename << " (" << to_string(doc.input->format) << ", "
        << doc.input->records << " records, fnv1a64 " << hex64(doc.input->fnv1a64) << ")\n";
  }
  if (doc.selection) {
    const auto& s = *doc.selection;
    out << "selection: " << to_string(s.strategy) << " metric=" << s.metric;
    if (s.strategy == SelectionStrategy::cross_sorted) out << " order_metric=" << s.order_metric;
    if (s.strategy != SelectionStrategy::all) out << " n=" << s.n;
    if (s.strategy == SelectionStrategy::random) {
      out << " replicates=" << s.replicates << " seed=" << s.seed;
    } else if (s.strategy != SelectionStrategy::all) {
      out << (s.ascending ? " ascending" : " descending");
    }
    out << '\n';
  }
  if (doc.generator) {
    out << "generator: " << to_string(doc.generator->model) << " seed=" << doc.generator->seed
        << '\n';
  }
  out << '\n';

  const auto empirical = empirical_row(doc);
  if (empirical) {
    out << "digit  empirical        min        max   expected      delta\n";
  } else {
    out << "digit   expected\n";
  }
  std::size_t i = 0;
  for (const int d : place.digits()) {
    out << pad_left(std::string(1, digit_char(d)), 5);
    if (empirical) {
      out << pad_left(format_fixed((*empirical)[i], 6), 11)
          << pad_left(format_fixed(doc.analysis->per_digit_min[i], 6), 11)
          << pad_left(format_fixed(doc.analysis->per_digit_max[i], 6), 11);
    }
    out << pad_left(format_fixed(doc.expected[d], 6), 11);
    if (empirical) out << pad_left(format_fixed((*empirical)[i] - doc.expected[d], 6), 11);
    out << '\n';
    ++i;
  }
  out << '\n';
  out << "expected mean (exact):        " << format_fixed(doc.means.exact, 4) << '\n';
  out << "expected mean (3-dp row):     " << format_fixed(doc.means.rounded_row, 3) << '\n';
  if (doc.means.published) {
    out << "published table mean:         " << format_fixed(*doc.means.published, 3);
    if (*doc.means.published_consistent()) {
      out << "  (matches 3-dp row)\n";
    } else {
      out << "  (DISCREPANCY: 3-dp row sums to " << format_fixed(doc.means.rounded_row, 3)
          << ")\n";
    }
  }
  if (doc.analysis) {
    const auto& r = doc.analysis->summary;
    out << '\n';
    out << "replicates:                   " << doc.analysis->replicates << '\n';
    out << "values per replicate:         " << r.n_included << " included, " << r.n_excluded
        << " excluded (no digit at this position)\n";
    out << "empirical mean digit:         " << format_fixed(r.empirical_mean, 4) << '\n';
    out << "MAD:                          " << format_fixed(r.mad, 6) << '\n';
    out << "chi-square:                   " << format_fixed(r.chi_square, 3) << " (df "
        << r.chi_square_df << ")\n";
    out << "max deviation:                " << format_fixed(r.max_deviation, 6) << " at digit "
        << digit_char(r.max_deviation_digit.value) << '\n';
    out << "verdict:                      " << to_string(r.verdict) << '\n';
    out << "verdict bands (MAD, configurable extension): close < " << format_fixed(r.bands.close, 4)
        << ", acceptable < " << format_fixed(r.bands.acceptable, 4) << ", marginal < "
        << format_fixed(r.bands.marginal, 4) << '\n';
  }
  return out.str();
}

inline std::string render_csv(const ReportDocument& doc) {
  std::ostringstream out;
  out << "digit,empirical,expected,delta\n";
  const auto empirical = empirical_row(doc);
  std::size_t i = 0;
  for (const int d : doc.place().digits()) {
    out << digit_char(d) << ',';
    if (empirical) out << format_fixed((*empirical)[i], 12);
    out << ',' << format_fixed(doc.expected[d], 12) << ',';
    if (empirical) out << format_fixed((*empirical)[i] - doc.expected[d], 12);
    out << '\n';
    ++i;
  }
  return out.str();
}

inline std::string xml_escape(std::string_view s) {
  std::string out;
  for (const char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

inline std::string render_svg(const ReportDocument& doc) {
  constexpr int kLeft = 60, kRight = 20, kTop = 40, kBottom = 50, kPlotHeight = 300;
  constexpr int kGroup = 48, kBar = 18;
  const auto& place = doc.place();
  const auto empirical = empirical_row(doc);
  const int groups = static_cast<int>(place.size());
  const int width = kLeft + kRight + groups * kGroup;
  const int height = kTop + kPlotHeight + kBottom;

  double top = 0.0;
  std::size_t i = 0;
  for (const int d : place.digits()) {
    top = std::max(top, doc.expected[d]);
    if (empirical) top = std::max(top, (*empirical)[i]);
    ++i;
  }
  top = std::max(0.05, std::ceil(top * 20.0) / 20.0);
  const auto y_of = [&](double p) { return kTop + kPlotHeight * (1.0 - p / top); };

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  out << "  <title>" << xml_escape(std::string(kToolName)) << ": digit position "
      << place.position() << ", base " << place.base() << "</title>\n";
  out << "  <rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
      << "\" fill=\"#ffffff\"/>\n";
  out << "  <line x1=\"" << kLeft << "\" y1=\"" << kTop + kPlotHeight << "\" x2=\""
      << width - kRight << "\" y2=\"" << kTop + kPlotHeight << "\" stroke=\"#000000\"/>\n";
  out << "  <line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
      << kTop + kPlotHeight << "\" stroke=\"#000000\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double p = top * t / 4.0;
    out << "  <text x=\"" << kLeft - 6 << "\" y=\"" << format_fixed(y_of(p) + 4.0, 1)
        << "\" font-size=\"11\" text-anchor=\"end\">" << format_fixed(p, 3) << "</text>\n";
  }

  i = 0;
  for (const int d : place.digits()) {
    const int x0 = kLeft + static_cast<int>(i) * kGroup + (kGroup - 2 * kBar) / 2;
    out << "  <g class=\"digit\" data-digit=\"" << digit_char(d) << "\">\n";
    if (empirical) {
      const double y = y_of((*empirical)[i]);
      out << "    <rect class=\"empirical\" x=\"" << x0 << "\" y=\"" << format_fixed(y, 2)
          << "\" width=\"" << kBar << "\" height=\"" << format_fixed(kTop + kPlotHeight - y, 2)
          << "\" fill=\"#4878a8\"/>\n";
    }
    const double ye = y_of(doc.expected[d]);
    out << "    <rect class=\"expected\" x=\"" << x0 + kBar << "\" y=\"" << format_fixed(ye, 2)
        << "\" width=\"" << kBar << "\" height=\"" << format_fixed(kTop + kPlotHeight - ye, 2)
        << "\" fill=\"#e0a040\"/>\n";
    out << "    <text x=\"" << x0 + kBar << "\" y=\"" << kTop + kPlotHeight + 16
        << "\" font-size=\"12\" text-anchor=\"middle\">" << digit_char(d) << "</text>\n";
    out << "  </g>\n";
    ++i;
  }

  const int legend_y = height - 14;
  if (empirical) {
    out << "  <rect x=\"" << kLeft << "\" y=\"" << legend_y - 10
        << "\" width=\"10\" height=\"10\" fill=\"#4878a8\"/>\n";
    out << "  <text x=\"" << kLeft + 14 << "\" y=\"" << legend_y
        << "\" font-size=\"12\">empirical</text>\n";
  }
  out << "  <rect x=\"" << kLeft + 100 << "\" y=\"" << legend_y - 10
      << "\" width=\"10\" height=\"10\" fill=\"#e0a040\"/>\n";
  out << "  <text x=\"" << kLeft + 114 << "\" y=\"" << legend_y
      << "\" font-size=\"12\">expected</text>\n";
  if (doc.analysis) {
    out << "  <text x=\"" << width - kRight << "\" y=\"" << kTop - 14
        << "\" font-size=\"12\" text-anchor=\"end\">MAD " << format_fixed(doc.analysis->summary.mad, 4)
        << " (" << to_string(doc.analysis->summary.verdict) << ")</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace detail

[[nodiscard]] inline std::string render_report(const ReportDocument& doc, RenderFormat format) {
  switch (format) {
    case RenderFormat::table: return detail::render_table(doc);
    case RenderFormat::csv: return detail::render_csv(doc);
    case RenderFormat::json: return to_json(doc).dump(2) + "\n";
    case RenderFormat::svg: return detail::render_svg(doc);
  }
  throw usage_error("unknown render format");
}

// ---------------------------------------------------------------------------
// Side-by-side comparison of two reports

struct ReportComparison {
  DigitPlace place;
  std::vector<double> first;   // empirical mean, or expected for expected-only reports
  std::vector<double> second;
  std::vector<double> delta;   // second - first
  std::optional<double> first_mad, second_mad;
  std::optional<double> first_chi_square, second_chi_square;
  std::optional<std::uint64_t> first_n, second_n;
  std::string first_label, second_label;
};

[[nodiscard]] inline ReportComparison compare_reports(const ReportDocument& a,
                                                      const ReportDocument& b,
                                                      std::string first_label = "first",
                                                      std::string second_label = "second") {
  if (a.place() != b.place()) {
    throw usage_error("cannot compare reports of different base or digit position");
  }
  const auto row = [](const ReportDocument& d) {
    if (d.analysis) return d.analysis->per_digit_mean;
    return std::vector<double>(d.expected.probabilities().begin(), d.expected.probabilities().end());
  };
  ReportComparison c{a.place(), row(a), row(b), {}, {}, {}, {}, {}, {}, {},
                     std::move(first_label), std::move(second_label)};
  for (std::size_t i = 0; i < c.first.size(); ++i) c.delta.push_back(c.second[i] - c.first[i]);
  if (a.analysis) {
    c.first_mad = a.analysis->summary.mad;
    c.first_chi_square = a.analysis->summary.chi_square;
    c.first_n = a.analysis->summary.n_included;
  }
  if (b.analysis) {
    c.second_mad = b.analysis->summary.mad;
    c.second_chi_square = b.analysis->summary.chi_square;
    c.second_n = b.analysis->summary.n_included;
  }
  return c;
}

[[nodiscard]] inline std::string render_comparison(const ReportComparison& c,
                                                   RenderFormat format) {
  const auto opt = [](const std::optional<double>& v, int decimals) {
    return v ? format_fixed(*v, decimals) : std::string("-");
  };
  std::ostringstream out;
  switch (format) {
    case RenderFormat::csv: {
      out << "digit,first,second,delta\n";
      std::size_t i = 0;
      for (const int d : c.place.digits()) {
        out << digit_char(d) << ',' << format_fixed(c.first[i], 12) << ','
            << format_fixed(c.second[i], 12) << ',' << format_fixed(c.delta[i], 12) << '\n';
        ++i;
      }
      return out.str();
    }
    case RenderFormat::json: {
      nlohmann::json j = {{"schema_version", kReportSchemaVersion},
                          {"kind", "comparison"},
                          {"base", c.place.base()},
                          {"position", c.place.position()},
                          {"labels", {c.first_label, c.second_label}},
                          {"first", c.first},
                          {"second", c.second},
                          {"delta", c.delta}};
      const auto put = [&](const char* key, const auto& a, const auto& b) {
        j[key] = {a ? nlohmann::json(*a) : nlohmann::json(nullptr),
                  b ? nlohmann::json(*b) : nlohmann::json(nullptr)};
      };
      put("mad", c.first_mad, c.second_mad);
      put("chi_square", c.first_chi_square, c.second_chi_square);
      put("n_included", c.first_n, c.second_n);
      return j.dump(2) + "\n";
    }
    case RenderFormat::table: {
      out << "first:  " << c.first_label << "\nsecond: " << c.second_label << "\n\n";
      out << "digit      first     second      delta\n";
      std::size_t i = 0;
      for (const int d : c.place.digits()) {
        out << detail::pad_left(std::string(1, digit_char(d)), 5)
            << detail::pad_left(format_fixed(c.first[i], 6), 11)
            << detail::pad_left(format_fixed(c.second[i], 6), 11)
            << detail::pad_left(format_fixed(c.delta[i], 6), 11) << '\n';
        ++i;
      }
      out << '\n';
      out << "MAD         " << detail::pad_left(opt(c.first_mad, 6), 10)
          << detail::pad_left(opt(c.second_mad, 6), 11) << '\n';
      out << "chi-square  " << detail::pad_left(opt(c.first_chi_square, 3), 10)
          << detail::pad_left(opt(c.second_chi_square, 3), 11) << '\n';
      out << "n           " << detail::pad_left(c.first_n ? std::to_string(*c.first_n) : "-", 10)
          << detail::pad_left(c.second_n ? std::to_string(*c.second_n) : "-", 11) << '\n';
      return out.str();
    }
    case RenderFormat::svg:
      break;
  }
  throw usage_error("comparison supports table, csv and json output");
}

}  // namespace benfordnet
