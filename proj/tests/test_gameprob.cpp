#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "preq/error.hpp"
#include "preq/gameprob.hpp"
#include "preq/io.hpp"
#include "preq/random.hpp"
#include "preq/strategies.hpp"

namespace preq {
namespace {

using testing::brute_game_value;
using testing::counterexample_a;
using testing::counterexample_b;
using testing::prefix_of;

const Rational kHalf(1, 2);

TEST(CellPath, TextRoundTrip) {
  const CellPath p = CellPath::parse("2:1,0:0");
  ASSERT_EQ(p.size(), 2U);
  EXPECT_EQ(p[0].cell, 2U);
  EXPECT_EQ(p[0].y, Outcome::One);
  EXPECT_EQ(p.to_string(), "2:1,0:0");
  EXPECT_EQ(CellPath::parse("").size(), 0U);
  for (const char* bad : {"1", "1:2", ":1", "1:1,", "a:0"}) EXPECT_THROW(CellPath::parse(bad), ParseError) << bad;
}

TEST(ValueFunction, IndexAndPathAreInverse) {
  const EventUnion e = counterexample_a();
  ValueFunction t({forecast_partition(e, 1), forecast_partition(e, 2)});
  for (std::size_t level = 0; level <= 2; ++level) {
    for (std::size_t i = 0; i < t.level_size(level); ++i) EXPECT_EQ(t.index_of(t.path_of(level, i)), i);
  }
  EXPECT_EQ(t.level_size(1), 2 * forecast_partition(e, 1).size());
}

TEST(ValueFunction, SizeGuard) {
  ForecastPartition wide;
  for (int k = 0; k <= 64; ++k) wide.breakpoints.push_back(Rational(k, 64));
  for (int k = 0; k < 64; ++k) wide.cells.push_back(Cell{Rational(k, 64), Rational(k + 1, 64), k == 0, true});
  EXPECT_THROW(ValueFunction(std::vector<ForecastPartition>(5, wide)), GuardError);
}

TEST(GameEngine, CounterexampleValues) {
  const EventUnion a = counterexample_a();
  const EventUnion b = counterexample_b();
  EXPECT_EQ(upper_game_probability(a), kHalf);
  EXPECT_EQ(upper_game_probability(b), kHalf);
  EXPECT_EQ(upper_game_probability(unite(a, b)), 1);
  EXPECT_EQ(upper_game_probability(intersect(a, b)), kHalf);
}

TEST(GameEngine, TrivialEvents) {
  EXPECT_EQ(upper_game_probability(EventUnion::empty(3)), 0);
  EXPECT_EQ(upper_game_probability(EventUnion::full(3)), 1);
  // Forecaster must name exactly 1/2 and then see a 1.
  EventUnion single(1);
  single.add(Box::point(prefix_of({{kHalf, 1}})));
  EXPECT_EQ(upper_game_probability(single), kHalf);
  // Any forecast, outcome 1: the forecaster may say 1.
  EventUnion ones(1, {Box({BoxStep{Interval::unit(), BitConstraint::One}})});
  EXPECT_EQ(upper_game_probability(ones), 1);
}

TEST(GameEngine, OptimalForecastAndHorizonErrors) {
  const EventUnion a = counterexample_a();
  EXPECT_EQ(optimal_forecast_at(a, PrequentialPrefix{}).value(), 0);
  EXPECT_THROW(optimal_forecast_at(a, prefix_of({{0, 0}, {kHalf, 0}})), HorizonError);
  const GameEngine engine(a);
  EXPECT_EQ(engine.conditional(prefix_of({{0, 0}})), kHalf);
  EXPECT_EQ(engine.conditional(prefix_of({{0, 1}})), 0);
  EXPECT_EQ(engine.conditional(prefix_of({{0, 0}, {kHalf, 0}})), 1);
}

// Oracle: recursion over concrete candidate forecasts, no cell machinery.
TEST(GameEngine, MatchesBruteForceOnRandomEvents) {
  std::mt19937_64 rng(21);
  RandomEventOptions opts;
  opts.max_boxes = 2;
  for (int trial = 0; trial < 60; ++trial) {
    const EventUnion e = random_event(rng, opts);
    EXPECT_EQ(upper_game_probability(e), brute_game_value(e)) << event_to_json(e);
  }
}

// Three code paths for conditional values: table lookup, the from-scratch
// rooted recursion, and the brute-force oracle, at prefixes built from
// candidate forecasts.
TEST(GameEngine, ConditionalValuesAgreeAcrossCodePaths) {
  std::mt19937_64 rng(22);
  RandomEventOptions opts;
  opts.max_horizon = 2;
  opts.max_boxes = 2;
  for (int trial = 0; trial < 30; ++trial) {
    const EventUnion e = random_event(rng, opts);
    const GameEngine engine(e);
    for (std::size_t len = 0; len <= e.horizon(); ++len) {
      testing::for_each_candidate_prefix(e, len, PrequentialPrefix{}, [&](const PrequentialPrefix& x) {
        const Rational oracle = brute_game_value(e, x);
        EXPECT_EQ(engine.conditional(x), oracle) << x.to_string();
        EXPECT_EQ(conditional_upper_probability(e, x), oracle) << x.to_string();
      });
    }
  }
}

// Property: the optimal forecast attains the supremum at every prefix.
TEST(GameEngine, OptimalForecastAttainsTheValue) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    const EventUnion e = random_event(rng);
    if (e.is_empty_list()) continue;
    const GameEngine engine(e);
    PrequentialPrefix x = random_member(rng, e);
    for (std::size_t len = 0; len < e.horizon(); ++len) {
      const PrequentialPrefix pre = x.first(len);
      const Forecast p = engine.optimal_forecast(pre);
      const Rational avg = mix(p.value(), engine.conditional(pre.extended(p, Outcome::Zero)),
                               engine.conditional(pre.extended(p, Outcome::One)));
      EXPECT_EQ(avg, engine.conditional(pre)) << pre.to_string();
    }
  }
}

// Property: UpProb is monotone under inclusion and subadditive.
TEST(GameEngine, MonotoneAndSubadditive) {
  std::mt19937_64 rng(24);
  RandomEventOptions opts;
  opts.max_boxes = 2;
  for (int trial = 0; trial < 100; ++trial) {
    const EventUnion a = random_event(rng, opts);
    EventUnion b = random_event(rng, opts);
    if (b.horizon() != a.horizon()) b = EventUnion(a.horizon());
    const Rational ua = upper_game_probability(a);
    const Rational ub = upper_game_probability(b);
    const Rational uu = upper_game_probability(unite(a, b));
    EXPECT_LE(ua, uu);
    EXPECT_LE(ub, uu);
    EXPECT_LE(uu, ua + ub);
    EXPECT_LE(upper_game_probability(intersect(a, b)), std::min(ua, ub));
    EXPECT_GE(ua, 0);
    EXPECT_LE(ua, 1);
  }
}

// The witness table is a superfarthingale at every node and cell endpoint,
// with leaves equal to the event indicator.
TEST(GameEngine, WitnessIsSuperfarthingale) {
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 100; ++trial) {
    const EventUnion e = random_event(rng);
    const ValueFunction w = witness_superfarthingale(e);
    const FarthingaleReport r = check_farthingale(w, FarthingaleMode::Super);
    EXPECT_TRUE(r.ok) << (r.violations.empty() ? "" : r.violations.front().node);
    EXPECT_EQ(w.root(), upper_game_probability(e));
  }
}

TEST(Levy, ThresholdMustBeInsideUnitInterval) {
  const EventUnion a = counterexample_a();
  EXPECT_THROW(LevyStrategy(a, 0), std::invalid_argument);
  EXPECT_THROW(LevyStrategy(a, 1), std::invalid_argument);
  EXPECT_NO_THROW(LevyStrategy(a, kHalf));
}

TEST(Levy, RidesTheWitnessOnACounterexampleMember) {
  LevyStrategy s(counterexample_a(), Rational(3, 4));
  EXPECT_EQ(s.regime(), LevyStrategy::Regime::Riding);
  s.step(Step{Forecast(0), Outcome::Zero});
  s.step(Step{Forecast(kHalf), Outcome::Zero});
  EXPECT_GE(s.capital() * Rational(3, 4), 1);
  s.step(Step{Forecast(kHalf), Outcome::One});
  EXPECT_EQ(s.regime(), LevyStrategy::Regime::Terminal);
}

// Property: capital never goes negative, and on members of events with
// UpProb below the threshold it ends at or above 1/a.
TEST(Levy, CapitalReachesInverseThresholdOnMembers) {
  std::mt19937_64 rng(26);
  int checked = 0;
  for (int trial = 0; trial < 300 && checked < 60; ++trial) {
    const EventUnion e = random_event(rng);
    if (e.is_empty_list()) continue;
    const Rational a = Rational(1 + trial % 3, 4);
    const auto engine = std::make_shared<const GameEngine>(e);
    if (engine->upper_probability() >= a) continue;
    const PrequentialPrefix x = random_member(rng, e);
    LevyStrategy s(engine, a);
    for (const Step& step : x) {
      s.step(step);
      ASSERT_GE(s.capital(), 0);
    }
    EXPECT_GE(s.capital() * a, 1) << x.to_string();
    EXPECT_EQ(engine->conditional(x), 1);
    ++checked;
  }
  EXPECT_GE(checked, 30);
}

// Property: along arbitrary paths the strategy is a superfarthingale.
TEST(Levy, StreamStrategyIsASuperfarthingale) {
  std::mt19937_64 rng(27);
  for (int trial = 0; trial < 40; ++trial) {
    const EventUnion e = random_event(rng);
    const LevyStreamStrategy s(LevyStrategy(e, Rational(2, 3)));
    const auto stream = e.is_empty_list() ? random_stream(rng, e.horizon()) : random_member(rng, e).steps();
    const FarthingaleReport r = check_farthingale(s, stream, FarthingaleMode::Super);
    EXPECT_TRUE(r.ok) << (r.violations.empty() ? "" : r.violations.front().node);
  }
}

}  // namespace
}  // namespace preq
