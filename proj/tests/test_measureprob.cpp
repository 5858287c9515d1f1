#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "preq/error.hpp"
#include "preq/gameprob.hpp"
#include "preq/io.hpp"
#include "preq/measureprob.hpp"
#include "preq/random.hpp"

namespace preq {
namespace {

using testing::counterexample_a;
using testing::counterexample_b;
using testing::enumerate_event_probability;

const Rational kHalf(1, 2);

TEST(ExactEventProbability, CounterexampleUnderConstantHalf) {
  const ForecastingSystem half = ForecastingSystem::constant(2, kHalf);
  // Only the second box of A is reachable: p1 = 1/2, y1 = 0, then p2 = 1/2 != 0.
  EXPECT_EQ(exact_event_probability(half, counterexample_a()), 0);
  ForecastingSystem phi = ForecastingSystem::constant(2, kHalf);
  phi.set(BinaryHistory::from_string("0"), Forecast(0));
  EXPECT_EQ(exact_event_probability(phi, counterexample_a()), kHalf);
}

TEST(ExactEventProbability, HorizonMismatch) {
  EXPECT_THROW(exact_event_probability(ForecastingSystem::constant(1, kHalf), EventUnion::full(2)), ArityError);
  EXPECT_EQ(exact_event_probability(ForecastingSystem::constant(3, kHalf), EventUnion::full(2)), 1);
}

// Oracle: enumerate all outcome strings and sum cylinder probabilities.
TEST(ExactEventProbability, MatchesEnumeration) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    const EventUnion e = random_event(rng);
    const ForecastingSystem phi = random_forecasting_system(rng, e);
    EXPECT_EQ(exact_event_probability(phi, e), enumerate_event_probability(phi, e)) << event_to_json(e);
  }
}

TEST(MeasureUpper, CounterexampleValues) {
  const EventUnion a = counterexample_a();
  const EventUnion b = counterexample_b();
  EXPECT_EQ(measure_upper_probability(a).value, kHalf);
  EXPECT_EQ(measure_upper_probability(b).value, kHalf);
  EXPECT_EQ(measure_upper_probability(unite(a, b)).value, 1);
  EXPECT_EQ(measure_upper_probability(intersect(a, b)).value, kHalf);
  EXPECT_EQ(measure_upper_probability(EventUnion::empty(2)).value, 0);
  EXPECT_EQ(measure_upper_probability(EventUnion::full(2)).value, 1);
}

// Property: the witness attains the value and no random system beats it.
TEST(MeasureUpper, WitnessAttainsAndDominatesRandomSystems) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 200; ++trial) {
    const EventUnion e = random_event(rng);
    const MeasureUpper m = measure_upper_probability(e);
    EXPECT_EQ(m.witness.horizon(), e.horizon());
    EXPECT_EQ(enumerate_event_probability(m.witness, e), m.value);
    for (int k = 0; k < 5; ++k) {
      EXPECT_LE(exact_event_probability(random_forecasting_system(rng, e), e), m.value);
    }
  }
}

TEST(MeasureUpper, AgreesWithGameEngine) {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 200; ++trial) {
    const EventUnion e = random_event(rng);
    EXPECT_EQ(measure_upper_probability(e).value, upper_game_probability(e)) << event_to_json(e);
  }
}

TEST(GridBruteforce, BelowExactAndEqualOnMatchingGrid) {
  std::mt19937_64 rng(34);
  RandomEventOptions coarse;
  coarse.max_horizon = 2;
  coarse.denominators = {1, 2};
  RandomEventOptions fine = coarse;
  fine.denominators = {3, 5, 7};
  for (int trial = 0; trial < 25; ++trial) {
    const EventUnion on_grid = random_event(rng, coarse);
    EXPECT_EQ(grid_bruteforce(on_grid, 2), measure_upper_probability(on_grid).value) << event_to_json(on_grid);
    const EventUnion off_grid = random_event(rng, fine);
    EXPECT_LE(grid_bruteforce(off_grid, 2), measure_upper_probability(off_grid).value) << event_to_json(off_grid);
  }
}

TEST(GridBruteforce, GuardsEnumerationSize) {
  EXPECT_THROW(grid_bruteforce(EventUnion::full(4), 8), GuardError);
  EXPECT_THROW(grid_bruteforce(EventUnion::full(1), 0), std::invalid_argument);
}

TEST(MonteCarlo, CoversTheExactValueAndIgnoresThreadCount) {
  std::mt19937_64 rng(35);
  for (int trial = 0; trial < 10; ++trial) {
    const EventUnion e = random_event(rng);
    const ForecastingSystem phi = random_forecasting_system(rng, e);
    const double exact = to_double(exact_event_probability(phi, e));
    const MonteCarloEstimate one = monte_carlo_probability(phi, e, 4000, 100 + trial, 1);
    const MonteCarloEstimate four = monte_carlo_probability(phi, e, 4000, 100 + trial, 4);
    EXPECT_EQ(one.hits, four.hits);
    EXPECT_EQ(one.samples, 4000U);
    // Half-width is 4 standard errors; a degenerate estimate must be exact.
    if (one.half_width > 0) {
      EXPECT_LE(std::abs(one.estimate - exact), one.half_width + 1e-12) << event_to_json(e);
    } else {
      EXPECT_DOUBLE_EQ(one.estimate, exact);
    }
  }
}

}  // namespace
}  // namespace preq
