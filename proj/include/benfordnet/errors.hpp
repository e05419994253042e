#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace benfordnet {

/// Bad arguments from the caller (base out of range, unknown metric, ...).
class usage_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input data that cannot be analyzed: negative counts, unparsable cells,
/// empty histograms. Carries the offending line or index when known.
class data_error : public std::runtime_error {
 public:
  explicit data_error(const std::string& what,
                      std::optional<std::size_t> location = std::nullopt)
      : std::runtime_error(location ? what + " (at " + std::to_string(*location) + ")" : what),
        location_(location) {}

  [[nodiscard]] std::optional<std::size_t> location() const noexcept { return location_; }

 private:
  std::optional<std::size_t> location_;
};

/// Declared metric column missing from the input header or object.
class schema_error : public data_error {
 public:
  using data_error::data_error;
};

}  // namespace benfordnet
