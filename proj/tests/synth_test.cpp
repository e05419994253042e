#include <benfordnet/benford.hpp>
#include <benfordnet/synth.hpp>

#include "oracle_values.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

using namespace benfordnet;

namespace {

GeneratorSpec mixture(std::uint64_t count, std::uint64_t s_max, ScaleLaw law, std::uint64_t seed) {
  GeneratorSpec spec;
  spec.count = count;
  spec.s_max = s_max;
  spec.s_law = law;
  spec.seed = seed;
  return spec;
}

double first_digit_mad(const std::vector<std::uint64_t>& values) {
  return conformance_report(digit_histogram(values, 10, 1)).mad;
}

}  // namespace

TEST(Rng, MatchesOracle) {
  EXPECT_EQ(derive_seed(42, 0), oracle::kDeriveSeed42_0);
  EXPECT_EQ(derive_seed(42, 9), oracle::kDeriveSeed42_9);
  Rng rng(7);
  for (const auto want : oracle::kBelow1000Seed7) EXPECT_EQ(rng.below(1000), want);
}

TEST(Rng, UnitInRangeAndBelowBounds) {
  Rng rng(1);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.unit();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    EXPECT_LT(rng.below(3), 3u);
  }
  EXPECT_EQ(rng.below(1), 0u);
  EXPECT_THROW((void)rng.below(0), usage_error);
}

TEST(SampleIndices, DistinctAndPermutation) {
  Rng rng(5);
  const auto all = sample_indices(100, 100, rng);
  std::set<std::size_t> seen(all.begin(), all.end());
  EXPECT_EQ(seen.size(), 100u);
  const auto some = sample_indices(1000, 10, rng);
  EXPECT_EQ(std::set<std::size_t>(some.begin(), some.end()).size(), 10u);
  EXPECT_THROW((void)sample_indices(3, 4, rng), usage_error);
}

TEST(UniformMixture, MatchesOracleStream) {
  const auto values = gen_uniform_mixture(mixture(100000, 10000000, ScaleLaw::log_uniform,
                                                  oracle::kMixtureSeed));
  ASSERT_EQ(values.size(), 100000u);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(values[i], oracle::kMixtureFirstFive[i]);
  EXPECT_NEAR(first_digit_mad(values), oracle::kMadMixture, 1e-12);
  EXPECT_LT(first_digit_mad(values), 0.01);
}

TEST(UniformMixture, SmaxOneGivesOnes) {
  const auto values = gen_uniform_mixture(mixture(1000, 1, ScaleLaw::log_uniform, 3));
  EXPECT_TRUE(std::all_of(values.begin(), values.end(), [](auto v) { return v == 1; }));
  EXPECT_EQ(normalize(digit_histogram(values, 10, 1))[1], 1.0);
}

TEST(UniformMixture, SingleDigitSupport) {
  const auto values = gen_uniform_mixture(mixture(50000, 9, ScaleLaw::uniform, 4));
  const auto h = digit_histogram(values, 10, 1);
  EXPECT_EQ(h.n_included(), values.size());
  for (int d = 1; d <= 9; ++d) {
    EXPECT_EQ(h[d], static_cast<std::uint64_t>(std::count(values.begin(), values.end(), d)));
  }
}

TEST(UniformMixtureProperty, BoundedAndDeterministic) {
  for (const auto law : {ScaleLaw::log_uniform, ScaleLaw::uniform}) {
    for (const std::uint64_t s_max : {1ULL, 2ULL, 17ULL, 1000ULL, 54353496ULL}) {
      const auto spec = mixture(2000, s_max, law, s_max * 31);
      const auto a = gen_uniform_mixture(spec);
      EXPECT_EQ(a, gen_uniform_mixture(spec));
      for (const auto v : a) {
        EXPECT_GE(v, 1u);
        EXPECT_LE(v, s_max);
      }
    }
  }
}

TEST(Planted, IdentityAndFull) {
  const std::vector<std::uint64_t> base = {1, 22, 333, 4444, 55555};
  EXPECT_EQ(gen_planted(base, 0.0, 777, 1), base);
  const auto all = gen_planted(base, 1.0, 777, 1);
  EXPECT_TRUE(std::all_of(all.begin(), all.end(), [](auto v) { return v == 777; }));
  EXPECT_EQ(normalize(digit_histogram(all, 10, 1))[7], 1.0);
  EXPECT_THROW((void)gen_planted(base, 1.5, 777, 1), usage_error);
}

TEST(PlantedProperty, ChangesExactlyRoundedCount) {
  std::mt19937_64 gen(12);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t len = 1 + gen() % 300;
    std::vector<std::uint64_t> base(len);
    for (auto& v : base) v = 1 + gen() % 1000;  // never equal to the planted value
    const double f = static_cast<double>(gen() % 1001) / 1000.0;
    const auto out = gen_planted(base, f, 5000, trial);
    std::size_t changed = 0;
    for (std::size_t i = 0; i < len; ++i) changed += out[i] != base[i];
    EXPECT_EQ(changed, planted_count(len, f));
    EXPECT_EQ(out, gen_planted(base, f, 5000, trial));
  }
  EXPECT_EQ(planted_count(10, 0.25), 3u);  // 2.5 rounds half up
  EXPECT_EQ(planted_count(10, 0.24), 2u);
}

TEST(Planted, RaisesMadOverConformingBase) {
  const auto base = gen_uniform_mixture(mixture(100000, 10000000, ScaleLaw::log_uniform,
                                                oracle::kMixtureSeed));
  const auto planted = gen_planted(base, 0.3, 500000, oracle::kPlantedSeed);
  EXPECT_NEAR(first_digit_mad(planted), oracle::kMadPlanted, 1e-12);
  EXPECT_GT(first_digit_mad(planted), first_digit_mad(base));
}

TEST(Padded, Examples) {
  const std::vector<std::uint64_t> base = {123, 456};
  EXPECT_EQ(gen_padded(base, 100, 0.0, 9), base);
  EXPECT_EQ(gen_padded(base, 100, 1.0, 9), (std::vector<std::uint64_t>{200, 500}));
  EXPECT_EQ(gen_padded(std::vector<std::uint64_t>{300, 0}, 100, 1.0, 9),
            (std::vector<std::uint64_t>{300, 0}));
  EXPECT_THROW((void)gen_padded(base, 0, 0.5, 9), usage_error);
  EXPECT_THROW((void)gen_padded(std::vector<std::uint64_t>{~0ULL}, 10, 1.0, 9), data_error);
}

TEST(PaddedProperty, NeverDecreasesAndIdentityCases) {
  std::mt19937_64 gen(21);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::uint64_t> base(1 + gen() % 200);
    for (auto& v : base) v = gen() % 100000;
    const std::uint64_t step = 1 + gen() % 1000;
    const double p = static_cast<double>(gen() % 101) / 100.0;
    const auto out = gen_padded(base, step, p, trial);
    for (std::size_t i = 0; i < base.size(); ++i) {
      EXPECT_GE(out[i], base[i]);
      EXPECT_TRUE(out[i] == base[i] || out[i] % step == 0);
    }
    EXPECT_EQ(gen_padded(base, 1, p, trial), base);
    EXPECT_EQ(gen_padded(base, step, 0.0, trial), base);
  }
}

TEST(Padded, SecondDigitCollapsesTowardZero) {
  const auto base = gen_uniform_mixture(mixture(100000, 10000000, ScaleLaw::log_uniform,
                                                oracle::kMixtureSeed));
  const auto padded = gen_padded(base, 100, 1.0, oracle::kPaddedSeed);
  const double before = normalize(digit_histogram(base, 10, 2))[0];
  const double after = normalize(digit_histogram(padded, 10, 2))[0];
  EXPECT_NEAR(before, oracle::kSecondDigitZeroBefore, 1e-12);
  EXPECT_NEAR(after, oracle::kSecondDigitZeroAfterPadding, 1e-12);
  EXPECT_GT(after, 4 * before);
}

TEST(Generate, DispatchAndDerivedSeeds) {
  GeneratorSpec spec = mixture(1000, 1000000, ScaleLaw::log_uniform, 77);
  EXPECT_EQ(generate(spec), gen_uniform_mixture(spec));

  GeneratorSpec base_spec = spec;
  base_spec.seed = derive_seed(77, 0);
  const auto base = gen_uniform_mixture(base_spec);

  spec.model = SynthModel::planted;
  spec.fraction = 0.25;
  spec.planted_value = 4242;
  EXPECT_EQ(generate(spec), gen_planted(base, 0.25, 4242, derive_seed(77, 1)));

  spec.model = SynthModel::padded;
  spec.step = 50;
  spec.probability = 0.5;
  EXPECT_EQ(generate(spec), gen_padded(base, 50, 0.5, derive_seed(77, 1)));

  const std::vector<std::uint64_t> given = {5, 10, 15};
  EXPECT_EQ(generate(spec, given), gen_padded(given, 50, 0.5, derive_seed(77, 1)));
}

TEST(GeneratorSpec, Validation) {
  GeneratorSpec spec;
  spec.count = 0;
  EXPECT_THROW(spec.validate(), usage_error);
  spec = {};
  spec.fraction = -0.1;
  EXPECT_THROW(spec.validate(), usage_error);
  spec = {};
  spec.probability = 1.1;
  EXPECT_THROW(spec.validate(), usage_error);
  spec = {};
  spec.s_max = 0;
  EXPECT_THROW(spec.validate(), usage_error);
}
