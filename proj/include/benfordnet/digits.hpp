#pragma once

// Significant-digit extraction in bases 2..36 and per-digit histograms.
//
// Extraction is exact integer arithmetic (repeated division). Zero has no
// first digit and single-digit values have no second digit; such values are
// counted as excluded rather than rejected. Negative inputs are data errors.

#include <benfordnet/errors.hpp>

#include <algorithm>
#include <cmath>
#include <compare>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <ranges>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace benfordnet {

inline constexpr int kMinBase = 2;
inline constexpr int kMaxBase = 36;

struct Digit {
  int value = 0;
  friend constexpr auto operator<=>(Digit, Digit) = default;
};

/// A digit position in a base: which digits are legal there.
class DigitPlace {
 public:
  DigitPlace(int base, int position) : base_(base), position_(position) {
    if (base < kMinBase || base > kMaxBase) {
      throw usage_error("base must be in [2, 36], got " + std::to_string(base));
    }
    if (position != 1 && position != 2) {
      throw usage_error("digit position must be 1 or 2, got " + std::to_string(position));
    }
  }

  [[nodiscard]] int base() const noexcept { return base_; }
  [[nodiscard]] int position() const noexcept { return position_; }

  /// 1 for the leading digit, 0 for the second.
  [[nodiscard]] int first_digit() const noexcept { return position_ == 1 ? 1 : 0; }
  [[nodiscard]] int last_digit() const noexcept { return base_ - 1; }
  [[nodiscard]] std::size_t size() const noexcept {
    return static_cast<std::size_t>(last_digit() - first_digit() + 1);
  }
  [[nodiscard]] bool contains(int digit) const noexcept {
    return digit >= first_digit() && digit <= last_digit();
  }
  [[nodiscard]] std::size_t slot(int digit) const noexcept {
    return static_cast<std::size_t>(digit - first_digit());
  }
  [[nodiscard]] auto digits() const noexcept {
    return std::views::iota(first_digit(), base_);
  }

  friend bool operator==(const DigitPlace&, const DigitPlace&) = default;

 private:
  int base_;
  int position_;
};

/// Alphanumeric rendering of a digit (0-9 then a-z).
[[nodiscard]] inline char digit_char(int digit) {
  constexpr std::string_view kAlphabet = "0123456789abcdefghijklmnopqrstuvwxyz";
  return kAlphabet.at(static_cast<std::size_t>(digit));
}

template <std::unsigned_integral T>
[[nodiscard]] std::optional<Digit> significant_digit(T value, int base, int position) {
  const DigitPlace place(base, position);
  if (value == 0) return std::nullopt;
  const auto b = static_cast<T>(base);
  if (position == 2 && value < b) return std::nullopt;

  // The remainder of the last division is the digit right after the leading one.
  T second = 0;
  while (value >= b) {
    second = value % b;
    value /= b;
  }
  return Digit{static_cast<int>(position == 1 ? value : second)};
}

template <std::signed_integral T>
[[nodiscard]] std::optional<Digit> significant_digit(T value, int base, int position) {
  if (value < 0) {
    (void)DigitPlace(base, position);
    throw data_error("negative value " + std::to_string(value) + " has no significant digit");
  }
  return significant_digit(static_cast<std::make_unsigned_t<T>>(value), base, position);
}

/// Same as significant_digit for a value of arbitrary magnitude given as a
/// string of decimal digits (leading zeros allowed).
[[nodiscard]] inline std::optional<Digit> significant_digit_of_decimal(std::string_view decimal,
                                                                       int base, int position) {
  const DigitPlace place(base, position);
  if (decimal.empty()) throw data_error("empty decimal string");
  std::vector<std::uint8_t> number;
  number.reserve(decimal.size());
  for (std::size_t i = 0; i < decimal.size(); ++i) {
    const char c = decimal[i];
    if (c < '0' || c > '9') {
      throw data_error("not a decimal digit: '" + std::string(1, c) + "'", i);
    }
    if (number.empty() && c == '0') continue;
    number.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  if (number.empty()) return std::nullopt;

  // Schoolbook division of the decimal digit vector by base, collecting the
  // two most recent remainders. When the quotient becomes zero the last
  // remainder is the leading digit and the one before it the second digit.
  int leading = -1;
  int second = -1;
  while (!number.empty()) {
    std::vector<std::uint8_t> quotient;
    quotient.reserve(number.size());
    int remainder = 0;
    for (const auto d : number) {
      const int acc = remainder * 10 + d;
      const int q = acc / base;
      remainder = acc % base;
      if (!quotient.empty() || q != 0) quotient.push_back(static_cast<std::uint8_t>(q));
    }
    second = leading;
    leading = remainder;
    number = std::move(quotient);
  }
  if (position == 1) return Digit{leading};
  if (second < 0) return std::nullopt;
  return Digit{second};
}

/// Per-digit counts at one position in one base, with the number of values
/// that had no digit there.
class DigitHistogram {
 public:
  DigitHistogram(DigitPlace place, std::vector<std::uint64_t> counts, std::uint64_t n_excluded)
      : place_(place), counts_(std::move(counts)), n_excluded_(n_excluded) {
    if (counts_.size() != place_.size()) {
      throw usage_error("histogram needs one count per legal digit");
    }
    n_included_ = std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
  }

  explicit DigitHistogram(DigitPlace place)
      : DigitHistogram(place, std::vector<std::uint64_t>(place.size(), 0), 0) {}

  [[nodiscard]] const DigitPlace& place() const noexcept { return place_; }
  [[nodiscard]] int base() const noexcept { return place_.base(); }
  [[nodiscard]] int position() const noexcept { return place_.position(); }
  [[nodiscard]] std::uint64_t n_included() const noexcept { return n_included_; }
  [[nodiscard]] std::uint64_t n_excluded() const noexcept { return n_excluded_; }
  [[nodiscard]] std::uint64_t n_total() const noexcept { return n_included_ + n_excluded_; }
  [[nodiscard]] std::span<const std::uint64_t> counts() const noexcept { return counts_; }

  [[nodiscard]] std::uint64_t operator[](int digit) const {
    if (!place_.contains(digit)) throw usage_error("digit out of range for this histogram");
    return counts_[place_.slot(digit)];
  }

  friend bool operator==(const DigitHistogram&, const DigitHistogram&) = default;

 private:
  DigitPlace place_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t n_included_ = 0;
  std::uint64_t n_excluded_ = 0;
};

/// Normalized per-digit probabilities; sums to one.
class DigitDistribution {
 public:
  static constexpr double kSumTolerance = 1e-12;

  DigitDistribution(DigitPlace place, std::vector<double> probabilities)
      : place_(place), probabilities_(std::move(probabilities)) {
    if (probabilities_.size() != place_.size()) {
      throw usage_error("distribution needs one probability per legal digit");
    }
    double total = 0.0;
    for (const double p : probabilities_) {
      if (!(p >= 0.0) || p > 1.0 + kSumTolerance) {
        throw data_error("probability outside [0, 1]");
      }
      total += p;
    }
    if (std::abs(total - 1.0) > kSumTolerance) {
      throw data_error("probabilities sum to " + std::to_string(total) + ", not 1");
    }
  }

  [[nodiscard]] const DigitPlace& place() const noexcept { return place_; }
  [[nodiscard]] int base() const noexcept { return place_.base(); }
  [[nodiscard]] int position() const noexcept { return place_.position(); }
  [[nodiscard]] std::span<const double> probabilities() const noexcept { return probabilities_; }

  [[nodiscard]] double operator[](int digit) const {
    if (!place_.contains(digit)) throw usage_error("digit out of range for this distribution");
    return probabilities_[place_.slot(digit)];
  }

  friend bool operator==(const DigitDistribution&, const DigitDistribution&) = default;

 private:
  DigitPlace place_;
  std::vector<double> probabilities_;
};

/// Counts the digit at `position` of every value. Zeros (and single-digit
/// values for position 2) are excluded; a negative value is a data error
/// naming its index.
template <std::ranges::input_range R>
  requires std::integral<std::ranges::range_value_t<R>>
[[nodiscard]] DigitHistogram digit_histogram(R&& values, int base, int position) {
  const DigitPlace place(base, position);
  std::vector<std::uint64_t> counts(place.size(), 0);
  std::uint64_t excluded = 0;
  std::size_t index = 0;
  for (const auto value : values) {
    if constexpr (std::signed_integral<std::ranges::range_value_t<R>>) {
      if (value < 0) {
        throw data_error("negative connectivity count " + std::to_string(value), index);
      }
    }
    const auto digit = significant_digit(
        static_cast<std::make_unsigned_t<std::ranges::range_value_t<R>>>(value), base, position);
    if (digit) {
      ++counts[place.slot(digit->value)];
    } else {
      ++excluded;
    }
    ++index;
  }
  return DigitHistogram(place, std::move(counts), excluded);
}

[[nodiscard]] inline DigitDistribution normalize(const DigitHistogram& hist) {
  if (hist.n_included() == 0) {
    throw data_error("cannot normalize an empty histogram (no value has a digit at position " +
                     std::to_string(hist.position()) + ")");
  }
  const auto n = static_cast<double>(hist.n_included());
  std::vector<double> probabilities;
  probabilities.reserve(hist.counts().size());
  for (const auto c : hist.counts()) probabilities.push_back(static_cast<double>(c) / n);
  return DigitDistribution(hist.place(), std::move(probabilities));
}

}  // namespace benfordnet
