#include "preq/random.hpp"

#include <algorithm>
#include <stdexcept>

namespace preq {
namespace {

std::size_t uniform_index(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool coin(std::mt19937_64& rng, double p) { return std::bernoulli_distribution(p)(rng); }

}  // namespace

Rational random_grid_rational(std::mt19937_64& rng, const std::vector<unsigned>& denominators) {
  if (denominators.empty()) throw std::invalid_argument("need at least one denominator");
  const unsigned d = denominators[uniform_index(rng, 0, denominators.size() - 1)];
  const unsigned k = static_cast<unsigned>(uniform_index(rng, 0, d));
  return Rational(k, d);
}

EventUnion random_event(std::mt19937_64& rng, const RandomEventOptions& options) {
  const std::size_t horizon = uniform_index(rng, options.min_horizon, options.max_horizon);
  const std::size_t n_boxes = uniform_index(rng, options.min_boxes, options.max_boxes);
  EventUnion event(horizon);
  for (std::size_t b = 0; b < n_boxes; ++b) {
    std::vector<BoxStep> steps;
    for (std::size_t i = 0; i < horizon; ++i) {
      Rational lo = random_grid_rational(rng, options.denominators);
      Rational hi = coin(rng, options.point_probability) ? lo : random_grid_rational(rng, options.denominators);
      if (hi < lo) std::swap(lo, hi);
      BitConstraint y = BitConstraint::Any;
      if (!coin(rng, options.wildcard_probability)) y = coin(rng, 0.5) ? BitConstraint::One : BitConstraint::Zero;
      steps.push_back(BoxStep{Interval::closed(std::move(lo), std::move(hi)), y});
    }
    event.add(Box(std::move(steps)));
  }
  return event;
}

ForecastingSystem random_forecasting_system(std::mt19937_64& rng, const EventUnion& event,
                                            const std::vector<unsigned>& denominators) {
  ForecastingSystem phi = ForecastingSystem::constant(event.horizon(), 0);
  for (std::size_t i = 0; i < phi.table_size(); ++i) {
    const BinaryHistory x = ForecastingSystem::history_of(i);
    Rational p;
    if (!event.boxes().empty() && coin(rng, 0.5)) {
      const Box& box = event.boxes()[uniform_index(rng, 0, event.size() - 1)];
      const Interval& iv = box.step(x.size()).p;
      p = coin(rng, 0.5) ? iv.lo : iv.hi;
    } else {
      p = random_grid_rational(rng, denominators);
    }
    phi.set(x, Forecast(std::move(p)));
  }
  return phi;
}

PrequentialPrefix random_member(std::mt19937_64& rng, const EventUnion& event) {
  if (event.boxes().empty()) throw std::invalid_argument("empty event has no members");
  const Box& box = event.boxes()[uniform_index(rng, 0, event.size() - 1)];
  PrequentialPrefix path;
  for (const BoxStep& s : box.steps()) {
    Rational p;
    switch (uniform_index(rng, 0, 2)) {
      case 0: p = s.p.lo; break;
      case 1: p = s.p.hi; break;
      default: p = (s.p.lo + s.p.hi) / 2; break;
    }
    Outcome y = Outcome::Zero;
    if (s.y == BitConstraint::One || (s.y == BitConstraint::Any && coin(rng, 0.5))) y = Outcome::One;
    path.push_back(Step{Forecast(std::move(p)), y});
  }
  return path;
}

std::vector<Step> random_stream(std::mt19937_64& rng, std::size_t length, const std::vector<unsigned>& denominators) {
  std::vector<Step> stream;
  stream.reserve(length);
  for (std::size_t i = 0; i < length; ++i) {
    stream.push_back(Step{Forecast(random_grid_rational(rng, denominators)), coin(rng, 0.5) ? Outcome::One : Outcome::Zero});
  }
  return stream;
}

}  // namespace preq
