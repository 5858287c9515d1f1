#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "preq/events.hpp"
#include "preq/prequential.hpp"

namespace preq {

/// Parameters of the seeded random event generator used by duality sweeps
/// and property tests.
struct RandomEventOptions {
  std::size_t min_horizon = 1;
  std::size_t max_horizon = 3;
  std::size_t min_boxes = 0;
  std::size_t max_boxes = 3;
  /// Interval endpoints are k/d with d drawn from these denominators.
  std::vector<unsigned> denominators = {1, 2, 3, 4, 5, 6, 7, 8};
  /// Chance that a forecast interval collapses to a point.
  double point_probability = 0.3;
  /// Chance that an outcome coordinate is a wildcard.
  double wildcard_probability = 0.3;
};

EventUnion random_event(std::mt19937_64& rng, const RandomEventOptions& options = {});

/// Random rational in [0,1] with a denominator from `denominators`.
Rational random_grid_rational(std::mt19937_64& rng, const std::vector<unsigned>& denominators);

/// Forecasting system whose entries are drawn half the time from the event's
/// endpoints at the matching step (so point constraints get hit) and
/// otherwise from random_grid_rational.
ForecastingSystem random_forecasting_system(std::mt19937_64& rng, const EventUnion& event,
                                            const std::vector<unsigned>& denominators = {1, 2, 3, 4, 5, 6, 7, 8});

/// A random member of a non-empty event: a box is picked, then each forecast
/// from {lo, hi, midpoint} of its interval and each wildcard outcome uniformly.
PrequentialPrefix random_member(std::mt19937_64& rng, const EventUnion& event);

/// Random forecast/outcome stream of the given length.
std::vector<Step> random_stream(std::mt19937_64& rng, std::size_t length,
                                const std::vector<unsigned>& denominators = {1, 2, 3, 4, 5, 6, 7, 8});

}  // namespace preq
