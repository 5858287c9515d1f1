#pragma once

#include <cstddef>
#include <cstdint>

#include "preq/events.hpp"
#include "preq/prequential.hpp"
#include "preq/rational.hpp"

namespace preq {

/// Prob_phi of the outcome sequences whose induced path lands in the event.
/// Box-union events pull back to finite unions of cylinders, so no outer
/// measure is involved. Throws ArityError if phi's horizon is shorter than
/// the event's.
Rational exact_event_probability(const ForecastingSystem& phi, const EventUnion& event);

struct MeasureUpper {
  Rational value;
  /// Maximising forecasting system at the event's horizon; forecasts at
  /// histories whose induced path has left every box are 0.
  ForecastingSystem witness;
};

/// Maximum of exact_event_probability over all forecasting systems, by
/// dynamic programming on the binary outcome tree.
MeasureUpper measure_upper_probability(const EventUnion& event);

/// Largest number of forecasting systems grid_bruteforce will enumerate.
inline constexpr std::uint64_t kGridEnumerationLimit = 10'000'000;

/// Maximum of exact_event_probability over every forecasting system with
/// table values in {0, 1/k, ..., 1}. Throws GuardError when the
/// (k+1)^(2^N - 1) systems exceed kGridEnumerationLimit.
Rational grid_bruteforce(const EventUnion& event, unsigned k);

struct MonteCarloEstimate {
  double estimate = 0;
  double half_width = 0;
  std::size_t hits = 0;
  std::size_t samples = 0;
};

/// Fraction of seeded draws from Prob_phi whose induced path lies in the
/// event, with half-width 4 * sqrt(est * (1 - est) / samples). Sample i uses
/// seed derive_seed(seed, i), so results do not depend on thread count.
MonteCarloEstimate monte_carlo_probability(const ForecastingSystem& phi, const EventUnion& event,
                                           std::size_t samples, std::uint64_t seed,
                                           unsigned threads = 1);

}  // namespace preq
