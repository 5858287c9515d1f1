#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>

#include "preq/error.hpp"
#include "preq/prequential.hpp"
#include "preq/rational.hpp"

namespace preq {
namespace {

TEST(Rational, ParsesFractionsIntegersAndDecimals) {
  EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
  EXPECT_EQ(parse_rational("-2"), Rational(-2));
  EXPECT_EQ(parse_rational("0.125"), Rational(1, 8));
  EXPECT_EQ(parse_rational("0.1"), Rational(1, 10));
  EXPECT_EQ(parse_rational(" 1/3 "), Rational(1, 3));
}

TEST(Rational, RejectsMalformedText) {
  for (const char* bad : {"", "1/0", "a", "1/2/3", "0.1.2", "--1"}) {
    EXPECT_THROW(parse_rational(bad), ParseError) << bad;
  }
}

TEST(Rational, RendersWithExplicitDenominator) {
  EXPECT_EQ(to_string(Rational(1)), "1/1");
  EXPECT_EQ(to_string(Rational(0)), "0/1");
  EXPECT_EQ(to_string(Rational(-3, 9)), "-1/3");
  EXPECT_EQ(format_float(1.0 / 3.0), "0.333333333333");
  EXPECT_DOUBLE_EQ(round12(0.1 + 0.2), 0.3);
}

TEST(Forecast, RejectsValuesOutsideUnitInterval) {
  EXPECT_THROW(Forecast(Rational(-1, 10)), std::invalid_argument);
  EXPECT_THROW(Forecast(Rational(11, 10)), std::invalid_argument);
  EXPECT_NO_THROW(Forecast(Rational(0)));
  EXPECT_NO_THROW(Forecast(Rational(1)));
}

TEST(BinaryHistory, RoundTripsThroughText) {
  const BinaryHistory x = BinaryHistory::from_string("0110");
  EXPECT_EQ(x.size(), 4U);
  EXPECT_EQ(x[1], Outcome::One);
  EXPECT_EQ(x.to_string(), "0110");
  EXPECT_EQ(x.first(2).to_string(), "01");
  EXPECT_EQ(BinaryHistory::from_string("").to_string(), "");
  EXPECT_THROW(BinaryHistory::from_string("012"), ParseError);
}

TEST(ForecastingSystem, LevelOrderIndexIsABijection) {
  const std::size_t n = 5;
  std::map<std::size_t, std::string> seen;
  for (std::size_t len = 0; len < n; ++len) {
    for (std::size_t mask = 0; mask < (std::size_t{1} << len); ++mask) {
      BinaryHistory x;
      for (std::size_t i = 0; i < len; ++i) x.push_back(outcome_from_bit(static_cast<int>((mask >> (len - 1 - i)) & 1U)));
      const std::size_t idx = ForecastingSystem::index_of(x);
      EXPECT_TRUE(seen.emplace(idx, x.to_string()).second);
      EXPECT_EQ(ForecastingSystem::history_of(idx), x);
    }
  }
  EXPECT_EQ(seen.size(), (std::size_t{1} << n) - 1);
  EXPECT_EQ(seen.rbegin()->first, (std::size_t{1} << n) - 2);
}

TEST(ForecastingSystem, HorizonIsEnforced) {
  ForecastingSystem phi = ForecastingSystem::constant(2, Rational(1, 3));
  EXPECT_EQ(phi.table_size(), 3U);
  EXPECT_EQ(phi.at(BinaryHistory::from_string("1")).value(), Rational(1, 3));
  EXPECT_THROW(phi.at(BinaryHistory::from_string("01")), HorizonError);
  EXPECT_THROW(phi.set(BinaryHistory::from_string("111"), Forecast(Rational(0))), HorizonError);
  EXPECT_THROW(ForecastingSystem::constant(0, 0), std::invalid_argument);
  EXPECT_THROW(ForecastingSystem::constant(ForecastingSystem::kMaxHorizon + 1, 0), std::invalid_argument);
}

TEST(InducedPath, InterleavesForecastsAndOutcomes) {
  ForecastingSystem phi = ForecastingSystem::constant(2, Rational(1, 2));
  phi.set(BinaryHistory::from_string("1"), Forecast(Rational(1, 4)));
  const PrequentialPrefix path = induced_path(phi, BinaryHistory::from_string("10"));
  ASSERT_EQ(path.size(), 2U);
  EXPECT_EQ(path[0].p.value(), Rational(1, 2));
  EXPECT_EQ(path[0].y, Outcome::One);
  EXPECT_EQ(path[1].p.value(), Rational(1, 4));
  EXPECT_EQ(path[1].y, Outcome::Zero);
}

TEST(CylinderProbability, MultipliesAlongTheHistory) {
  ForecastingSystem phi = ForecastingSystem::constant(3, Rational(1, 3));
  EXPECT_EQ(cylinder_probability(phi, BinaryHistory::from_string("101")), Rational(2, 27));
  EXPECT_EQ(cylinder_probability(phi, BinaryHistory{}), Rational(1));
}

// Property: cylinder probabilities of each level sum to one for random systems.
TEST(CylinderProbability, LevelsSumToOne) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> num(0, 6);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + trial % 5;
    ForecastingSystem phi = ForecastingSystem::constant(n, 0);
    for (std::size_t i = 0; i < phi.table_size(); ++i) {
      phi.set(ForecastingSystem::history_of(i), Forecast(Rational(num(rng), 6)));
    }
    for (std::size_t len = 0; len <= n; ++len) {
      Rational total = 0;
      for (std::size_t mask = 0; mask < (std::size_t{1} << len); ++mask) {
        BinaryHistory x;
        for (std::size_t i = 0; i < len; ++i) x.push_back(outcome_from_bit(static_cast<int>((mask >> i) & 1U)));
        total += cylinder_probability(phi, x);
      }
      EXPECT_EQ(total, 1) << "trial " << trial << " level " << len;
    }
  }
}

TEST(Sampling, IsReproducibleAndRespectsDegenerateForecasts) {
  const ForecastingSystem phi = ForecastingSystem::constant(20, Rational(1, 2));
  EXPECT_EQ(sample_outcomes(phi, 20, 42), sample_outcomes(phi, 20, 42));
  EXPECT_NE(sample_outcomes(phi, 20, 42), sample_outcomes(phi, 20, 43));
  EXPECT_EQ(sample_outcomes(ForecastingSystem::constant(8, 0), 8, 1).to_string(), "00000000");
  EXPECT_EQ(sample_outcomes(ForecastingSystem::constant(8, 1), 8, 1).to_string(), "11111111");
  EXPECT_THROW(sample_outcomes(phi, 21, 1), HorizonError);
}

TEST(Sampling, ConstantStreamMatchesConstantSystem) {
  const Rational p(2, 7);
  const BinaryHistory x = sample_outcomes(ForecastingSystem::constant(16, p), 16, 9);
  const std::vector<Step> s = sample_constant_stream(Forecast(p), 16, 9);
  ASSERT_EQ(s.size(), 16U);
  for (std::size_t i = 0; i < 16; ++i) {
    EXPECT_EQ(s[i].y, x[i]);
    EXPECT_EQ(s[i].p.value(), p);
  }
}

TEST(Sampling, FrequencyTracksTheForecast) {
  const auto s = sample_constant_stream(Forecast(Rational(1, 5)), 20000, 3);
  std::size_t ones = 0;
  for (const Step& step : s) ones += step.y == Outcome::One;
  // 4 standard deviations of a Binomial(20000, 1/5) count.
  EXPECT_NEAR(static_cast<double>(ones), 4000.0, 4 * std::sqrt(20000 * 0.2 * 0.8));
}

TEST(Sampling, DerivedSeedsDiffer) {
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
  EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
  EXPECT_EQ(derive_seed(5, 3), derive_seed(5, 3));
}

}  // namespace
}  // namespace preq
