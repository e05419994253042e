// benfordnet command-line tool.
//
//   benfordnet expected --base 10 --position 1 --format table
//   benfordnet analyze data.csv --metric following --strategy random --n 20000
//                      --replicates 10 --seed 42 --format json
//   benfordnet synth --model uniform-mixture --count 100000 --seed 7 -o m.csv
//   benfordnet compare a.json b.json
//
// Exit codes: 0 ok, 1 usage, 2 data, 3 conformance assertion failed.

#include <benfordnet/benfordnet.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace benfordnet;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitAssertion = 3;

class output_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Accepts both "sorted-top" and "sorted_top" spellings.
std::string underscored(std::string s) {
  std::replace(s.begin(), s.end(), '-', '_');
  return s;
}

void write_output(const std::string& path, const std::string& bytes) {
  if (path.empty() || path == "-") {
    std::cout << bytes;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw output_error("cannot open '" + path + "' for writing");
  out << bytes;
  if (!out.flush()) throw output_error("failed writing '" + path + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw data_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

struct ExpectedOptions {
  int base = 10;
  int position = 1;
  std::string format = "table";
  std::string output;
};

int run_expected(const ExpectedOptions& o) {
  const auto format = parse_render_format(o.format);
  write_output(o.output, render_report(expected_document(o.base, o.position), format));
  return kExitOk;
}

struct AnalyzeOptions {
  std::string input;
  std::string input_format;
  std::string metrics;
  std::string metric;
  std::string order_metric;
  std::string strategy = "all";
  std::optional<std::uint64_t> n;
  std::uint64_t replicates = 1;
  std::optional<std::uint64_t> seed;
  bool ascending = false;
  int base = 10;
  int position = 1;
  std::string format = "table";
  std::string bands;
  std::string assert_band;
  std::string generator_sidecar;
  std::string output;
};

int run_analyze(const AnalyzeOptions& o) {
  const auto format = parse_render_format(o.format);
  const DigitPlace place(o.base, o.position);

  SelectionSpec spec;
  spec.strategy = parse_strategy(underscored(o.strategy));
  spec.metric = o.metric;
  spec.order_metric = o.order_metric;
  spec.replicates = o.replicates;
  spec.ascending = o.ascending;
  if (spec.strategy != SelectionStrategy::all) {
    if (!o.n) throw usage_error("--n is required for strategy " + std::string(to_string(spec.strategy)));
    spec.n = *o.n;
  }
  if (spec.strategy == SelectionStrategy::random) {
    if (!o.seed) throw usage_error("--seed is required for random selection");
    spec.seed = *o.seed;
  } else if (o.seed) {
    spec.seed = *o.seed;
  }
  if (spec.strategy == SelectionStrategy::cross_sorted && spec.order_metric.empty()) {
    throw usage_error("--order-metric is required for cross_sorted selection");
  }

  VerdictBands bands = VerdictBands::defaults_for(place.position());
  if (!o.bands.empty()) {
    const auto parts = split_commas(o.bands);
    if (parts.size() != 3) throw usage_error("--bands takes close,acceptable,marginal");
    try {
      bands = {std::stod(parts[0]), std::stod(parts[1]), std::stod(parts[2])};
    } catch (const std::exception&) {
      throw usage_error("--bands values must be numbers");
    }
    bands.validate();
  }
  std::optional<Verdict> required;
  if (!o.assert_band.empty()) required = parse_verdict(o.assert_band);

  std::vector<std::string> metrics =
      o.metrics.empty() ? std::vector<std::string>{} : split_commas(o.metrics);
  for (const auto& m : {spec.metric, spec.order_metric}) {
    if (!m.empty() && std::find(metrics.begin(), metrics.end(), m) == metrics.end()) {
      metrics.push_back(m);
    }
  }
  const InputFormat input_format =
      o.input_format.empty() ? infer_input_format(o.input) : parse_input_format(o.input_format);

  std::optional<GeneratorSpec> generator;
  if (!o.generator_sidecar.empty()) {
    try {
      generator = generator_from(nlohmann::json::parse(read_file(o.generator_sidecar)).at("generator"));
    } catch (const nlohmann::json::exception& e) {
      throw data_error("malformed generator sidecar: " + std::string(e.what()));
    }
  }

  const ProfileDataset dataset = load_file(o.input, input_format, metrics);
  AveragedDistribution analysis =
      replicate_analysis(dataset, spec, place.base(), place.position(), bands);
  const Verdict verdict = analysis.summary.verdict;
  ReportDocument doc = analysis_document(dataset, spec, std::move(analysis));
  doc.generator = generator;
  write_output(o.output, render_report(doc, format));

  if (required && !at_least(verdict, *required)) {
    std::cerr << "conformance assertion failed: verdict " << to_string(verdict)
              << " is worse than " << to_string(*required) << '\n';
    return kExitAssertion;
  }
  return kExitOk;
}

struct SynthOptions {
  std::string model = "uniform-mixture";
  std::uint64_t count = 100000;
  std::optional<std::uint64_t> seed;
  std::uint64_t s_max = 10000000;
  std::string s_law = "log-uniform";
  double fraction = 0.3;
  std::uint64_t value = 500000;
  std::uint64_t step = 100;
  double probability = 0.8;
  std::string input;
  std::string input_metric = "value";
  std::string output;
};

int run_synth(const SynthOptions& o) {
  if (!o.seed) throw usage_error("--seed is required for synth");
  if (o.output.empty()) throw usage_error("-o/--output is required for synth");

  GeneratorSpec spec;
  spec.model = detail::parse_model(underscored(o.model));
  spec.count = o.count;
  spec.seed = *o.seed;
  spec.s_max = o.s_max;
  spec.s_law = detail::parse_scale_law(underscored(o.s_law));
  spec.fraction = o.fraction;
  spec.planted_value = o.value;
  spec.step = o.step;
  spec.probability = o.probability;
  spec.validate();

  std::vector<std::uint64_t> base;
  std::optional<InputInfo> base_info;
  if (!o.input.empty()) {
    if (spec.model == SynthModel::uniform_mixture) {
      throw usage_error("--input only applies to planted and padded models");
    }
    const auto dataset = load_file(o.input, infer_input_format(o.input), {o.input_metric});
    base = dataset.column(o.input_metric);
    base_info = input_info(dataset);
    spec.count = base.size();
    if (base.empty()) throw data_error("base input has no records");
  }
  const auto values = generate(spec, base);

  std::string csv;
  csv.reserve(values.size() * 12 + 16);
  csv += "id,value\n";
  for (std::size_t i = 0; i < values.size(); ++i) {
    csv += std::to_string(i + 1);
    csv += ',';
    csv += std::to_string(values[i]);
    csv += '\n';
  }
  write_output(o.output, csv);

  nlohmann::json sidecar = {{"schema_version", kReportSchemaVersion},
                            {"tool", {{"name", std::string(kToolName)},
                                      {"version", std::string(kToolVersion)}}},
                            {"generator", generator_json(spec)},
                            {"output", {{"filename", o.output},
                                        {"rows", values.size()},
                                        {"bytes", csv.size()},
                                        {"fnv1a64", hex64(fnv1a64(csv))}}}};
  if (base_info) {
    sidecar["base_input"] = {{"filename", base_info->filename},
                             {"metric", o.input_metric},
                             {"records", base_info->records},
                             {"fnv1a64", hex64(base_info->fnv1a64)}};
  }
  write_output(o.output + ".json", sidecar.dump(2) + "\n");
  return kExitOk;
}

struct CompareOptions {
  std::string first;
  std::string second;
  std::string format = "table";
  std::string output;
};

int run_compare(const CompareOptions& o) {
  const auto format = parse_render_format(o.format);
  const auto a = parse_report(read_file(o.first));
  const auto b = parse_report(read_file(o.second));
  write_output(o.output, render_comparison(compare_reports(a, b, o.first, o.second), format));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Benford first-digit forensics for connectivity counts", "benfordnet"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  ExpectedOptions expected;
  auto* cmd_expected = app.add_subcommand("expected", "Print the Benford expectation");
  cmd_expected->add_option("--base", expected.base, "Number base (2..36)");
  cmd_expected->add_option("--position", expected.position, "Digit position (1 or 2)");
  cmd_expected->add_option("--format", expected.format, "table, csv, json or svg");
  cmd_expected->add_option("-o,--output", expected.output, "Output file (default stdout)");

  AnalyzeOptions analyze;
  auto* cmd_analyze = app.add_subcommand("analyze", "Test a dataset metric against the law");
  cmd_analyze->add_option("input", analyze.input, "CSV or JSONL dataset")->required();
  cmd_analyze->add_option("--input-format", analyze.input_format,
                          "csv or jsonl (default: from extension)");
  cmd_analyze->add_option("--metrics", analyze.metrics,
                          "Comma-separated metric columns that every record must carry");
  cmd_analyze->add_option("--metric", analyze.metric, "Metric under analysis")->required();
  cmd_analyze->add_option("--order-metric", analyze.order_metric,
                          "Ranking metric for cross_sorted");
  cmd_analyze->add_option("--strategy", analyze.strategy,
                          "all, sorted_top, random or cross_sorted");
  cmd_analyze->add_option("--n", analyze.n, "Profiles per selection");
  cmd_analyze->add_option("--replicates", analyze.replicates, "Random selections to average");
  cmd_analyze->add_option("--seed", analyze.seed, "Master seed (required for random)");
  cmd_analyze->add_flag("--ascending", analyze.ascending,
                        "Rank ascending instead of descending for sorted strategies");
  cmd_analyze->add_option("--base", analyze.base, "Number base (2..36)");
  cmd_analyze->add_option("--position", analyze.position, "Digit position (1 or 2)");
  cmd_analyze->add_option("--format", analyze.format, "table, csv, json or svg");
  cmd_analyze->add_option("--bands", analyze.bands, "MAD band limits close,acceptable,marginal");
  cmd_analyze->add_option("--assert-conformance", analyze.assert_band,
                          "Exit 3 when the verdict is worse than this band");
  cmd_analyze->add_option("--generator-sidecar", analyze.generator_sidecar,
                          "Provenance JSON written by synth, echoed into the report");
  cmd_analyze->add_option("-o,--output", analyze.output, "Output file (default stdout)");

  SynthOptions synth;
  auto* cmd_synth = app.add_subcommand("synth", "Generate a synthetic counts dataset");
  cmd_synth->add_option("--model", synth.model, "uniform-mixture, planted or padded");
  cmd_synth->add_option("--count", synth.count, "Number of processes");
  cmd_synth->add_option("--seed", synth.seed, "Seed (required)");
  cmd_synth->add_option("--s-max", synth.s_max, "Largest range bound S");
  cmd_synth->add_option("--s-law", synth.s_law, "log-uniform or uniform");
  cmd_synth->add_option("--fraction", synth.fraction, "Planted fraction");
  cmd_synth->add_option("--value", synth.value, "Planted value");
  cmd_synth->add_option("--step", synth.step, "Padding step");
  cmd_synth->add_option("--probability", synth.probability, "Padding probability");
  cmd_synth->add_option("--input", synth.input,
                        "Base dataset to plant into or pad (default: a uniform mixture)");
  cmd_synth->add_option("--input-metric", synth.input_metric, "Metric column of --input");
  cmd_synth->add_option("-o,--output", synth.output, "Output CSV; provenance goes to <output>.json");

  CompareOptions compare;
  auto* cmd_compare = app.add_subcommand("compare", "Compare two JSON reports digit by digit");
  cmd_compare->add_option("first", compare.first, "First report JSON")->required();
  cmd_compare->add_option("second", compare.second, "Second report JSON")->required();
  cmd_compare->add_option("--format", compare.format, "table, csv or json");
  cmd_compare->add_option("-o,--output", compare.output, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (cmd_expected->parsed()) return run_expected(expected);
    if (cmd_analyze->parsed()) return run_analyze(analyze);
    if (cmd_synth->parsed()) return run_synth(synth);
    if (cmd_compare->parsed()) return run_compare(compare);
  } catch (const usage_error& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const data_error& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const output_error& e) {
    std::cerr << "output error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}
