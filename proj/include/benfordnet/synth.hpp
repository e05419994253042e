#pragma once

// Synthetic accumulation processes.
//
// uniform_mixture: M independent counters, each stopped uniformly in
// {1..S} with S itself random. Converges to the first-digit law.
// planted: a fixed value written over a fraction of records (account farms).
// padded: counts rounded up to vanity multiples (friend-list inflation).

#include <benfordnet/errors.hpp>
#include <benfordnet/random.hpp>

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace benfordnet {

enum class SynthModel { uniform_mixture, planted, padded };
enum class ScaleLaw { log_uniform, uniform };

[[nodiscard]] inline std::string_view to_string(SynthModel m) {
  switch (m) {
    case SynthModel::uniform_mixture: return "uniform_mixture";
    case SynthModel::planted: return "planted";
    case SynthModel::padded: return "padded";
  }
  return "uniform_mixture";
}

[[nodiscard]] inline std::string_view to_string(ScaleLaw law) {
  return law == ScaleLaw::log_uniform ? "log_uniform" : "uniform";
}

struct GeneratorSpec {
  SynthModel model = SynthModel::uniform_mixture;
  std::uint64_t count = 1;
  std::uint64_t seed = 0;
  // uniform_mixture
  std::uint64_t s_max = 1;
  ScaleLaw s_law = ScaleLaw::log_uniform;
  // planted
  double fraction = 0.0;
  std::uint64_t planted_value = 1;
  // padded
  std::uint64_t step = 1;
  double probability = 0.0;

  void validate() const {
    if (count < 1) throw usage_error("generator count must be >= 1");
    if (s_max < 1) throw usage_error("s_max must be >= 1");
    if (!(fraction >= 0.0 && fraction <= 1.0)) throw usage_error("fraction must be in [0, 1]");
    if (planted_value < 1) throw usage_error("planted value must be positive");
    if (step < 1) throw usage_error("step must be >= 1");
    if (!(probability >= 0.0 && probability <= 1.0)) {
      throw usage_error("probability must be in [0, 1]");
    }
  }

  friend bool operator==(const GeneratorSpec&, const GeneratorSpec&) = default;
};

/// S is drawn per process by `s_law` over {1..s_max} (log_uniform: exponent
/// uniform on [0, ln s_max), then rounded half-up and clamped to [1, s_max]);
/// the value is then uniform on {1..S}.
[[nodiscard]] inline std::vector<std::uint64_t> gen_uniform_mixture(const GeneratorSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  const double log_max = std::log(static_cast<double>(spec.s_max));
  std::vector<std::uint64_t> values;
  values.reserve(spec.count);
  for (std::uint64_t i = 0; i < spec.count; ++i) {
    std::uint64_t scale = 0;
    if (spec.s_law == ScaleLaw::log_uniform) {
      const double s = std::floor(std::exp(rng.unit() * log_max) + 0.5);
      scale = s < 1.0 ? 1 : static_cast<std::uint64_t>(s);
      if (scale > spec.s_max) scale = spec.s_max;
    } else {
      scale = 1 + rng.below(spec.s_max);
    }
    values.push_back(1 + rng.below(scale));
  }
  return values;
}

/// Number of positions gen_planted overwrites: floor(f * len + 0.5).
[[nodiscard]] inline std::size_t planted_count(std::size_t length, double fraction) {
  return static_cast<std::size_t>(std::floor(fraction * static_cast<double>(length) + 0.5));
}

[[nodiscard]] inline std::vector<std::uint64_t> gen_planted(std::span<const std::uint64_t> base,
                                                            double fraction,
                                                            std::uint64_t planted_value,
                                                            std::uint64_t seed) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) throw usage_error("fraction must be in [0, 1]");
  std::vector<std::uint64_t> values(base.begin(), base.end());
  Rng rng(seed);
  for (const auto i : sample_indices(values.size(), planted_count(values.size(), fraction), rng)) {
    values[i] = planted_value;
  }
  return values;
}

/// Each value, independently with probability p, is rounded up to the next
/// multiple of `step`. One unit draw is consumed per value regardless.
[[nodiscard]] inline std::vector<std::uint64_t> gen_padded(std::span<const std::uint64_t> base,
                                                           std::uint64_t step, double p,
                                                           std::uint64_t seed) {
  if (step < 1) throw usage_error("step must be >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw usage_error("probability must be in [0, 1]");
  Rng rng(seed);
  std::vector<std::uint64_t> values;
  values.reserve(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    std::uint64_t v = base[i];
    if (rng.unit() < p && v % step != 0) {
      const std::uint64_t up = step - v % step;
      if (v > std::numeric_limits<std::uint64_t>::max() - up) {
        throw data_error("padding overflows 64-bit count", i);
      }
      v += up;
    }
    values.push_back(v);
  }
  return values;
}

/// Runs the model named by `spec`. Planted and padded models transform
/// `base` when given; otherwise they transform a uniform mixture drawn with
/// seed derive_seed(spec.seed, 0), and the transform itself uses
/// derive_seed(spec.seed, 1).
[[nodiscard]] inline std::vector<std::uint64_t> generate(
    const GeneratorSpec& spec, std::span<const std::uint64_t> base = {}) {
  spec.validate();
  if (spec.model == SynthModel::uniform_mixture) return gen_uniform_mixture(spec);

  std::vector<std::uint64_t> own_base;
  if (base.empty()) {
    GeneratorSpec mixture = spec;
    mixture.model = SynthModel::uniform_mixture;
    mixture.seed = derive_seed(spec.seed, 0);
    own_base = gen_uniform_mixture(mixture);
    base = own_base;
  }
  const std::uint64_t transform_seed = derive_seed(spec.seed, 1);
  if (spec.model == SynthModel::planted) {
    return gen_planted(base, spec.fraction, spec.planted_value, transform_seed);
  }
  return gen_padded(base, spec.step, spec.probability, transform_seed);
}

}  // namespace benfordnet
