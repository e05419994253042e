#pragma once

// Benford expectations for any base and digit position, and conformance
// statistics (MAD, chi-square, maximum deviation, verdict band).

#include <benfordnet/digits.hpp>
#include <benfordnet/errors.hpp>

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace benfordnet {

/// First position: P(d) = log_b(1 + 1/d). Second position: the first-digit
/// law marginalized over the leading digit, P(k) = sum_j log_b(1 + 1/(j*b + k)).
[[nodiscard]] inline DigitDistribution expected_distribution(int base, int position) {
  const DigitPlace place(base, position);
  const double log_base = std::log(static_cast<double>(base));
  std::vector<double> probabilities;
  probabilities.reserve(place.size());
  for (const int d : place.digits()) {
    if (position == 1) {
      probabilities.push_back(std::log(1.0 + 1.0 / d) / log_base);
    } else {
      double p = 0.0;
      for (int lead = 1; lead < base; ++lead) {
        p += std::log(1.0 + 1.0 / (lead * base + d)) / log_base;
      }
      probabilities.push_back(p);
    }
  }
  return DigitDistribution(place, std::move(probabilities));
}

[[nodiscard]] inline double distribution_mean(const DigitDistribution& dist) {
  double mean = 0.0;
  for (const int d : dist.place().digits()) mean += d * dist[d];
  return mean;
}

/// Mean computed from probabilities rounded to `decimals` places, the way a
/// printed frequency table is averaged.
[[nodiscard]] inline double rounded_row_mean(const DigitDistribution& dist, int decimals = 3) {
  const double scale = std::pow(10.0, decimals);
  double mean = 0.0;
  for (const int d : dist.place().digits()) mean += d * (std::round(dist[d] * scale) / scale);
  return mean;
}

/// Means listed in the widely reproduced 3-decimal base-10 digit table.
inline constexpr double kPublishedFirstDigitMean = 3.441;
inline constexpr double kPublishedSecondDigitMean = 4.187;

[[nodiscard]] inline double mad(const DigitDistribution& empirical,
                                const DigitDistribution& expected) {
  if (empirical.place() != expected.place()) {
    throw usage_error("cannot compare distributions of different base or position");
  }
  double total = 0.0;
  for (const int d : empirical.place().digits()) total += std::abs(empirical[d] - expected[d]);
  return total / static_cast<double>(empirical.place().size());
}

struct ChiSquare {
  double statistic = 0.0;
  int df = 0;
};

[[nodiscard]] inline ChiSquare chi_square(const DigitHistogram& hist,
                                          const DigitDistribution& expected) {
  if (hist.place() != expected.place()) {
    throw usage_error("histogram and expected distribution differ in base or position");
  }
  if (hist.n_included() == 0) throw data_error("chi-square of an empty histogram");
  const auto n = static_cast<double>(hist.n_included());
  double statistic = 0.0;
  for (const int d : hist.place().digits()) {
    const double observed = static_cast<double>(hist[d]);
    const double wanted = n * expected[d];
    if (wanted == 0.0) {
      if (observed != 0.0) throw data_error("observed count where zero was expected");
      continue;
    }
    statistic += (observed - wanted) * (observed - wanted) / wanted;
  }
  return {statistic, static_cast<int>(hist.place().size()) - 1};
}

// Upper critical values of the chi-square distribution for the two degrees
// of freedom that base-10 tests produce (8 for first digits, 9 for second).
inline constexpr double kChiSquareCritical_df8_alpha05 = 15.507;
inline constexpr double kChiSquareCritical_df8_alpha01 = 20.090;
inline constexpr double kChiSquareCritical_df9_alpha05 = 16.919;
inline constexpr double kChiSquareCritical_df9_alpha01 = 21.666;

enum class Verdict { close, acceptable, marginal, nonconforming };

[[nodiscard]] inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::close: return "close";
    case Verdict::acceptable: return "acceptable";
    case Verdict::marginal: return "marginal";
    case Verdict::nonconforming: return "nonconforming";
  }
  return "nonconforming";
}

[[nodiscard]] inline Verdict parse_verdict(std::string_view name) {
  for (const auto v : {Verdict::close, Verdict::acceptable, Verdict::marginal,
                       Verdict::nonconforming}) {
    if (to_string(v) == name) return v;
  }
  throw usage_error("unknown verdict band '" + std::string(name) + "'");
}

/// True when `v` is the same band as `limit` or a better one.
[[nodiscard]] inline bool at_least(Verdict v, Verdict limit) {
  return static_cast<int>(v) <= static_cast<int>(limit);
}

/// Upper MAD bounds (exclusive) of the close, acceptable and marginal bands.
struct VerdictBands {
  double close = 0.006;
  double acceptable = 0.012;
  double marginal = 0.015;

  /// Conventional forensic-accounting bands: first-digit (0.006, 0.012,
  /// 0.015); second-digit (0.008, 0.010, 0.012).
  [[nodiscard]] static VerdictBands defaults_for(int position) {
    if (position == 2) return {0.008, 0.010, 0.012};
    return {};
  }

  void validate() const {
    if (!(close > 0.0 && close <= acceptable && acceptable <= marginal)) {
      throw usage_error("verdict bands must satisfy 0 < close <= acceptable <= marginal");
    }
  }

  [[nodiscard]] Verdict classify(double mad_value) const {
    if (mad_value < close) return Verdict::close;
    if (mad_value < acceptable) return Verdict::acceptable;
    if (mad_value < marginal) return Verdict::marginal;
    return Verdict::nonconforming;
  }

  friend bool operator==(const VerdictBands&, const VerdictBands&) = default;
};

struct ConformanceReport {
  DigitDistribution empirical;
  DigitDistribution expected;
  std::uint64_t n_included = 0;
  std::uint64_t n_excluded = 0;
  double mad = 0.0;
  double chi_square = 0.0;
  int chi_square_df = 0;
  Digit max_deviation_digit;
  double max_deviation = 0.0;
  double empirical_mean = 0.0;
  double expected_mean = 0.0;
  VerdictBands bands;
  Verdict verdict = Verdict::nonconforming;

  friend bool operator==(const ConformanceReport&, const ConformanceReport&) = default;
};

namespace detail {

inline ConformanceReport assemble_report(DigitDistribution empirical, std::uint64_t n_included,
                                         std::uint64_t n_excluded, ChiSquare chi,
                                         const VerdictBands& bands) {
  bands.validate();
  DigitDistribution expected = expected_distribution(empirical.base(), empirical.position());
  Digit worst{empirical.place().first_digit()};
  double worst_gap = -1.0;
  for (const int d : empirical.place().digits()) {
    const double gap = std::abs(empirical[d] - expected[d]);
    if (gap > worst_gap) {
      worst_gap = gap;
      worst = Digit{d};
    }
  }
  const double mad_value = mad(empirical, expected);
  const double empirical_mean = distribution_mean(empirical);
  const double expected_mean = distribution_mean(expected);
  return ConformanceReport{std::move(empirical), std::move(expected), n_included, n_excluded,
                           mad_value, chi.statistic, chi.df, worst, worst_gap,
                           empirical_mean, expected_mean, bands, bands.classify(mad_value)};
}

}  // namespace detail

[[nodiscard]] inline ConformanceReport conformance_report(const DigitHistogram& hist,
                                                          const VerdictBands& bands) {
  DigitDistribution empirical = normalize(hist);
  const ChiSquare chi =
      chi_square(hist, expected_distribution(hist.base(), hist.position()));
  return detail::assemble_report(std::move(empirical), hist.n_included(), hist.n_excluded(), chi,
                                 bands);
}

[[nodiscard]] inline ConformanceReport conformance_report(const DigitHistogram& hist) {
  return conformance_report(hist, VerdictBands::defaults_for(hist.position()));
}

/// Report for an already-normalized distribution observed over `n_included`
/// values (e.g. replicate-averaged frequencies). Chi-square uses the
/// frequency form n * sum (f - p)^2 / p.
[[nodiscard]] inline ConformanceReport conformance_report(const DigitDistribution& empirical,
                                                          std::uint64_t n_included,
                                                          std::uint64_t n_excluded,
                                                          const VerdictBands& bands) {
  if (n_included == 0) throw data_error("conformance report over zero values");
  const DigitDistribution expected = expected_distribution(empirical.base(), empirical.position());
  double sum = 0.0;
  for (const int d : empirical.place().digits()) {
    const double p = expected[d];
    if (p > 0.0) sum += (empirical[d] - p) * (empirical[d] - p) / p;
  }
  const ChiSquare chi{static_cast<double>(n_included) * sum,
                      static_cast<int>(empirical.place().size()) - 1};
  return detail::assemble_report(empirical, n_included, n_excluded, chi, bands);
}

}  // namespace benfordnet
