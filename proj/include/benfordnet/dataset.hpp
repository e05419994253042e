#pragma once

// Connectivity datasets (per-profile nonnegative counts) and the selection
// protocol: all records, top-N by the metric, top-N by another metric, or N
// sampled uniformly without replacement, repeated over seeded replicates and
// averaged as normalized frequencies.

#include <benfordnet/benford.hpp>
#include <benfordnet/digits.hpp>
#include <benfordnet/errors.hpp>
#include <benfordnet/random.hpp>

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace benfordnet {

enum class InputFormat { csv, jsonl };

[[nodiscard]] inline std::string_view to_string(InputFormat f) {
  return f == InputFormat::csv ? "csv" : "jsonl";
}

[[nodiscard]] inline InputFormat parse_input_format(std::string_view name) {
  if (name == "csv") return InputFormat::csv;
  if (name == "jsonl") return InputFormat::jsonl;
  throw usage_error("unknown input format '" + std::string(name) + "' (expected csv or jsonl)");
}

/// Format implied by a file extension; csv when unrecognized.
[[nodiscard]] inline InputFormat infer_input_format(std::string_view path) {
  const auto ends_with = [&](std::string_view ext) {
    return path.size() >= ext.size() && path.substr(path.size() - ext.size()) == ext;
  };
  return ends_with(".jsonl") || ends_with(".ndjson") ? InputFormat::jsonl : InputFormat::csv;
}

/// 64-bit FNV-1a, used to fingerprint input bytes in reports.
[[nodiscard]] inline std::uint64_t fnv1a64(std::string_view bytes) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

struct DatasetSource {
  std::string filename;
  InputFormat format = InputFormat::csv;
  std::string ingested_at;  // UTC, ISO-8601
  std::uint64_t byte_count = 0;
  std::uint64_t fnv1a64 = 0;
};

struct ProfileRecord {
  std::optional<std::string> id;
  std::vector<std::uint64_t> values;  // parallel to ProfileDataset::metrics()

  friend bool operator==(const ProfileRecord&, const ProfileRecord&) = default;
};

class ProfileDataset {
 public:
  ProfileDataset(std::vector<std::string> metrics, std::vector<ProfileRecord> records,
                 DatasetSource source = {})
      : metrics_(std::move(metrics)), records_(std::move(records)), source_(std::move(source)) {
    for (std::size_t i = 0; i < records_.size(); ++i) {
      if (records_[i].values.size() != metrics_.size()) {
        throw schema_error("record does not carry every declared metric", i);
      }
    }
  }

  [[nodiscard]] const std::vector<std::string>& metrics() const noexcept { return metrics_; }
  [[nodiscard]] const std::vector<ProfileRecord>& records() const noexcept { return records_; }
  [[nodiscard]] const DatasetSource& source() const noexcept { return source_; }
  [[nodiscard]] std::size_t size() const noexcept { return records_.size(); }

  [[nodiscard]] std::optional<std::size_t> metric_index(std::string_view name) const {
    const auto it = std::find(metrics_.begin(), metrics_.end(), name);
    if (it == metrics_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - metrics_.begin());
  }

  [[nodiscard]] std::size_t require_metric(std::string_view name) const {
    const auto index = metric_index(name);
    if (!index) throw usage_error("unknown metric '" + std::string(name) + "'");
    return *index;
  }

  /// All values of one metric in record order.
  [[nodiscard]] std::vector<std::uint64_t> column(std::string_view name) const {
    const std::size_t m = require_metric(name);
    std::vector<std::uint64_t> out;
    out.reserve(records_.size());
    for (const auto& r : records_) out.push_back(r.values[m]);
    return out;
  }

 private:
  std::vector<std::string> metrics_;
  std::vector<ProfileRecord> records_;
  DatasetSource source_;
};

namespace detail {

inline std::string utc_now_iso8601() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

/// Parses a base-10 unsigned integer cell with no sign, spaces or separators.
inline std::uint64_t parse_count_cell(std::string_view cell, std::string_view metric,
                                      std::size_t line) {
  if (!cell.empty() && cell.front() == '-' && cell.size() > 1 &&
      cell.find_first_not_of("0123456789", 1) == std::string_view::npos) {
    throw data_error("negative value " + std::string(cell) + " for metric '" +
                         std::string(metric) + "' on line " + std::to_string(line),
                     line);
  }
  std::uint64_t value = 0;
  const auto* first = cell.data();
  const auto* last = cell.data() + cell.size();
  const auto [ptr, ec] = std::from_chars(first, last, value, 10);
  if (cell.empty() || ec == std::errc::invalid_argument || ptr != last) {
    throw data_error("non-integer value '" + std::string(cell) + "' for metric '" +
                         std::string(metric) + "' on line " + std::to_string(line),
                     line);
  }
  if (ec == std::errc::result_out_of_range) {
    throw data_error("value " + std::string(cell) + " for metric '" + std::string(metric) +
                         "' on line " + std::to_string(line) + " exceeds 64 bits",
                     line);
  }
  return value;
}

/// Splits one CSV line. Double-quoted fields may contain commas and "" escapes.
inline std::vector<std::string> split_csv_line(std::string_view line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
      was_quoted = false;
    } else if (c == '"' && field.empty() && !was_quoted) {
      quoted = true;
      was_quoted = true;
    } else {
      field.push_back(c);
    }
  }
  if (quoted) throw data_error("unterminated quoted field on line " + std::to_string(line_no),
                               line_no);
  fields.push_back(std::move(field));
  return fields;
}

/// Calls fn(line_number, line) for each line, 1-based, without trailing CR.
template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    fn(++line_no, line);
    pos = end + 1;
  }
}

inline std::vector<ProfileRecord> parse_csv(std::string_view text,
                                            const std::vector<std::string>& metrics) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
  std::vector<ProfileRecord> records;
  std::vector<std::size_t> metric_columns;
  std::optional<std::size_t> id_column;
  std::size_t width = 0;
  bool have_header = false;

  for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    if (line.empty()) return;
    auto fields = split_csv_line(line, line_no);
    if (!have_header) {
      have_header = true;
      width = fields.size();
      for (const auto& m : metrics) {
        const auto it = std::find(fields.begin(), fields.end(), m);
        if (it == fields.end()) {
          throw schema_error("missing column '" + m + "' in CSV header", line_no);
        }
        metric_columns.push_back(static_cast<std::size_t>(it - fields.begin()));
      }
      const auto id = std::find(fields.begin(), fields.end(), "id");
      if (id != fields.end()) id_column = static_cast<std::size_t>(id - fields.begin());
      return;
    }
    if (fields.size() != width) {
      throw data_error("expected " + std::to_string(width) + " fields, found " +
                           std::to_string(fields.size()) + " on line " + std::to_string(line_no),
                       line_no);
    }
    ProfileRecord record;
    if (id_column) record.id = fields[*id_column];
    record.values.reserve(metrics.size());
    for (std::size_t m = 0; m < metrics.size(); ++m) {
      record.values.push_back(parse_count_cell(fields[metric_columns[m]], metrics[m], line_no));
    }
    records.push_back(std::move(record));
  });
  if (!have_header) throw schema_error("CSV input has no header row");
  return records;
}

inline std::vector<ProfileRecord> parse_jsonl(std::string_view text,
                                              const std::vector<std::string>& metrics) {
  std::vector<ProfileRecord> records;
  for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    if (line.find_first_not_of(" \t") == std::string_view::npos) return;
    nlohmann::json object;
    try {
      object = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw data_error("invalid JSON on line " + std::to_string(line_no) + ": " + e.what(),
                       line_no);
    }
    if (!object.is_object()) {
      throw data_error("line " + std::to_string(line_no) + " is not a JSON object", line_no);
    }
    ProfileRecord record;
    if (const auto id = object.find("id"); id != object.end()) {
      record.id = id->is_string() ? id->get<std::string>() : id->dump();
    }
    for (const auto& m : metrics) {
      const auto cell = object.find(m);
      if (cell == object.end()) {
        throw schema_error("missing metric '" + m + "' on line " + std::to_string(line_no),
                           line_no);
      }
      if (cell->is_number_unsigned()) {
        record.values.push_back(cell->get<std::uint64_t>());
      } else if (cell->is_number_integer()) {
        // nlohmann stores nonnegative integers as unsigned, so this is negative.
        throw data_error("negative value " + cell->dump() + " for metric '" + m + "' on line " +
                             std::to_string(line_no),
                         line_no);
      } else {
        throw data_error("non-integer value " + cell->dump() + " for metric '" + m +
                             "' on line " + std::to_string(line_no),
                         line_no);
      }
    }
    records.push_back(std::move(record));
  });
  return records;
}

}  // namespace detail

/// Parses the whole stream. Every declared metric must be present on every
/// record; cells must be exact nonnegative integers that fit in 64 bits.
[[nodiscard]] inline ProfileDataset load(std::istream& in, InputFormat format,
                                         std::vector<std::string> metrics,
                                         std::string filename = "<stream>") {
  if (metrics.empty()) throw usage_error("schema declares no metric columns");
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  auto records = format == InputFormat::csv ? detail::parse_csv(bytes, metrics)
                                            : detail::parse_jsonl(bytes, metrics);
  DatasetSource source{std::move(filename), format, detail::utc_now_iso8601(), bytes.size(),
                       fnv1a64(bytes)};
  return ProfileDataset(std::move(metrics), std::move(records), std::move(source));
}

[[nodiscard]] inline ProfileDataset load_file(const std::string& path, InputFormat format,
                                              std::vector<std::string> metrics) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw data_error("cannot open input file '" + path + "'");
  return load(in, format, std::move(metrics), path);
}

enum class SelectionStrategy { all, sorted_top, random, cross_sorted };

[[nodiscard]] inline std::string_view to_string(SelectionStrategy s) {
  switch (s) {
    case SelectionStrategy::all: return "all";
    case SelectionStrategy::sorted_top: return "sorted_top";
    case SelectionStrategy::random: return "random";
    case SelectionStrategy::cross_sorted: return "cross_sorted";
  }
  return "all";
}

[[nodiscard]] inline SelectionStrategy parse_strategy(std::string_view name) {
  for (const auto s : {SelectionStrategy::all, SelectionStrategy::sorted_top,
                       SelectionStrategy::random, SelectionStrategy::cross_sorted}) {
    if (to_string(s) == name) return s;
  }
  throw usage_error("unknown selection strategy '" + std::string(name) + "'");
}

struct SelectionSpec {
  SelectionStrategy strategy = SelectionStrategy::all;
  std::string metric;
  std::string order_metric;  // cross_sorted only
  std::uint64_t n = 0;       // ignored by `all`
  std::uint64_t seed = 0;
  std::uint64_t replicates = 1;  // random only
  bool ascending = false;        // sorted_top / cross_sorted direction

  /// Checks the spec against a dataset. Unknown metrics are usage errors;
  /// n larger than the dataset is a data error.
  void validate(const ProfileDataset& dataset) const {
    (void)dataset.require_metric(metric);
    if (replicates < 1) throw usage_error("replicates must be >= 1");
    if (strategy == SelectionStrategy::cross_sorted) {
      (void)dataset.require_metric(order_metric);
      if (order_metric == metric) {
        throw usage_error("cross_sorted needs an order metric different from the metric");
      }
    }
    if (strategy != SelectionStrategy::all) {
      if (n < 1) throw usage_error("selection size n must be >= 1");
      if (n > dataset.size()) {
        throw data_error("selection size " + std::to_string(n) + " exceeds dataset size " +
                         std::to_string(dataset.size()));
      }
    }
  }

  /// Replicates actually drawn: only random selection repeats.
  [[nodiscard]] std::uint64_t effective_replicates() const noexcept {
    return strategy == SelectionStrategy::random ? replicates : 1;
  }

  friend bool operator==(const SelectionSpec&, const SelectionSpec&) = default;
};

namespace detail {

inline std::vector<std::size_t> ranked_indices(const ProfileDataset& dataset, std::size_t by,
                                               bool ascending) {
  std::vector<std::size_t> order(dataset.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  const auto& records = dataset.records();
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return ascending ? records[a].values[by] < records[b].values[by]
                     : records[a].values[by] > records[b].values[by];
  });
  return order;
}

}  // namespace detail

/// One metric series per replicate. Random replicate r samples with an
/// Rng seeded by derive_seed(spec.seed, r); values appear in draw order.
/// Sorted strategies break ties by input order.
[[nodiscard]] inline std::vector<std::vector<std::uint64_t>> select(const ProfileDataset& dataset,
                                                                    const SelectionSpec& spec) {
  spec.validate(dataset);
  const std::size_t m = dataset.require_metric(spec.metric);
  const auto& records = dataset.records();
  const auto pick = [&](const std::vector<std::size_t>& indices, std::size_t count) {
    std::vector<std::uint64_t> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(records[indices[i]].values[m]);
    return out;
  };
  const auto n = static_cast<std::size_t>(spec.n);

  switch (spec.strategy) {
    case SelectionStrategy::all:
      return {dataset.column(spec.metric)};
    case SelectionStrategy::sorted_top:
      return {pick(detail::ranked_indices(dataset, m, spec.ascending), n)};
    case SelectionStrategy::cross_sorted:
      return {pick(detail::ranked_indices(dataset, dataset.require_metric(spec.order_metric),
                                          spec.ascending),
                   n)};
    case SelectionStrategy::random: {
      std::vector<std::vector<std::uint64_t>> series;
      series.reserve(spec.replicates);
      for (std::uint64_t r = 0; r < spec.replicates; ++r) {
        Rng rng(derive_seed(spec.seed, r));
        series.push_back(pick(sample_indices(dataset.size(), n, rng), n));
      }
      return series;
    }
  }
  return {};
}

struct AveragedDistribution {
  DigitPlace place;
  std::vector<double> per_digit_mean;
  std::vector<double> per_digit_min;
  std::vector<double> per_digit_max;
  std::uint64_t replicates = 0;
  std::vector<ConformanceReport> per_replicate;
  ConformanceReport summary;  // of per_digit_mean against the expectation

  friend bool operator==(const AveragedDistribution&, const AveragedDistribution&) = default;
};

/// Averages normalized per-digit frequencies over a set of replicate reports.
[[nodiscard]] inline AveragedDistribution average_reports(std::vector<ConformanceReport> reports,
                                                          const VerdictBands& bands) {
  if (reports.empty()) throw usage_error("nothing to average");
  const DigitPlace place = reports.front().empirical.place();
  const std::size_t width = place.size();
  std::vector<double> mean(width, 0.0);
  std::vector<double> lo(width, 1.0);
  std::vector<double> hi(width, 0.0);
  std::uint64_t included = 0;
  std::uint64_t excluded = 0;
  for (const auto& r : reports) {
    if (r.empirical.place() != place) throw usage_error("replicates differ in base or position");
    const auto p = r.empirical.probabilities();
    for (std::size_t i = 0; i < width; ++i) {
      mean[i] += p[i];
      lo[i] = std::min(lo[i], p[i]);
      hi[i] = std::max(hi[i], p[i]);
    }
    included += r.n_included;
    excluded += r.n_excluded;
  }
  const auto k = static_cast<double>(reports.size());
  for (auto& v : mean) v /= k;
  // Rounding of the division can push the mean a hair outside [min, max]
  // when all replicates agree; clamp to keep the hull property exact.
  for (std::size_t i = 0; i < width; ++i) mean[i] = std::clamp(mean[i], lo[i], hi[i]);

  const auto count = static_cast<std::uint64_t>(reports.size());
  const std::uint64_t mean_included = (included + count / 2) / count;
  const std::uint64_t mean_excluded = (excluded + count / 2) / count;
  ConformanceReport summary =
      count == 1 ? reports.front()
                 : conformance_report(DigitDistribution(place, mean), mean_included,
                                      mean_excluded, bands);
  return AveragedDistribution{place, std::move(mean), std::move(lo), std::move(hi), count,
                              std::move(reports), std::move(summary)};
}

/// Selection, then histogram, normalization and conformance report per
/// replicate, then averaging of normalized frequencies.
[[nodiscard]] inline AveragedDistribution replicate_analysis(const ProfileDataset& dataset,
                                                             const SelectionSpec& spec, int base,
                                                             int position,
                                                             const VerdictBands& bands) {
  const DigitPlace place(base, position);
  bands.validate();
  const auto series = select(dataset, spec);
  std::vector<ConformanceReport> reports;
  reports.reserve(series.size());
  for (std::size_t r = 0; r < series.size(); ++r) {
    const DigitHistogram hist = digit_histogram(series[r], place.base(), place.position());
    if (hist.n_included() == 0) {
      throw data_error("replicate " + std::to_string(r) +
                       " has no value with a digit at the requested position");
    }
    reports.push_back(conformance_report(hist, bands));
  }
  return average_reports(std::move(reports), bands);
}

[[nodiscard]] inline AveragedDistribution replicate_analysis(const ProfileDataset& dataset,
                                                             const SelectionSpec& spec, int base,
                                                             int position) {
  return replicate_analysis(dataset, spec, base, position, VerdictBands::defaults_for(position));
}

}  // namespace benfordnet
