#include "preq/measureprob.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "preq/error.hpp"

namespace preq {
namespace {

using Mask = std::vector<bool>;

bool any(const Mask& mask) { return std::find(mask.begin(), mask.end(), true) != mask.end(); }

Mask step_alive(const EventUnion& event, const Mask& alive, std::size_t level, const Step& s) {
  Mask out(alive.size());
  for (std::size_t b = 0; b < alive.size(); ++b) {
    out[b] = alive[b] && event.boxes()[b].admits_step(level, s);
  }
  return out;
}

Rational probability_below(const ForecastingSystem& phi, const EventUnion& event, BinaryHistory& x,
                           const Mask& alive) {
  if (!any(alive)) return Rational(0);
  const std::size_t level = x.size();
  if (level == event.horizon()) return Rational(1);
  const Forecast& p = phi.at(x);
  Rational total = 0;
  for (Outcome y : {Outcome::Zero, Outcome::One}) {
    const Rational weight = y == Outcome::One ? p.value() : Rational(1 - p.value());
    if (weight == 0) continue;
    const Mask next = step_alive(event, alive, level, Step{p, y});
    x.push_back(y);
    total += weight * probability_below(phi, event, x, next);
    x.pop_back();
  }
  return total;
}

// Value of the best forecasting system below a binary node depends only on
// the depth and the boxes still consistent with the induced path.
class MeasureSolver {
 public:
  explicit MeasureSolver(const EventUnion& event) : event_(event) {}

  Rational value(std::size_t level, const Mask& alive) {
    if (!any(alive)) return Rational(0);
    if (level == event_.horizon()) return Rational(1);
    auto key = std::make_pair(level, alive);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Rational best = choose(level, alive).second;
    memo_.emplace(std::move(key), best);
    return best;
  }

  /// Smallest maximising forecast at a node and the value it achieves.
  std::pair<Rational, Rational> choose(std::size_t level, const Mask& alive) {
    std::optional<Rational> best_p;
    Rational best(-1);
    for (const Rational& p : candidates(level, alive)) {
      const Forecast f(p);
      const Rational v0 = value(level + 1, step_alive(event_, alive, level, Step{f, Outcome::Zero}));
      const Rational v1 = value(level + 1, step_alive(event_, alive, level, Step{f, Outcome::One}));
      const Rational v = (1 - p) * v0 + p * v1;
      if (v > best) {
        best = v;
        best_p = p;
      }
    }
    return {*best_p, best};
  }

  void extract(ForecastingSystem& phi, BinaryHistory& x, const Mask& alive) {
    const std::size_t level = x.size();
    if (level == event_.horizon() || !any(alive)) return;
    const Rational p = choose(level, alive).first;
    phi.set(x, Forecast(p));
    for (Outcome y : {Outcome::Zero, Outcome::One}) {
      const Mask next = step_alive(event_, alive, level, Step{Forecast(p), y});
      x.push_back(y);
      extract(phi, x, next);
      x.pop_back();
    }
  }

 private:
  // The objective is linear between consecutive endpoints of the live boxes
  // and upper semicontinuous, so its maximum is reached at one of them.
  std::vector<Rational> candidates(std::size_t level, const Mask& alive) const {
    std::vector<Rational> pts = {Rational(0), Rational(1)};
    for (std::size_t b = 0; b < alive.size(); ++b) {
      if (!alive[b]) continue;
      const Interval& iv = event_.boxes()[b].step(level).p;
      pts.push_back(iv.lo);
      pts.push_back(iv.hi);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
  }

  const EventUnion& event_;
  std::map<std::pair<std::size_t, Mask>, Rational> memo_;
};

}  // namespace

Rational exact_event_probability(const ForecastingSystem& phi, const EventUnion& event) {
  if (phi.horizon() < event.horizon()) {
    throw ArityError("forecasting horizon " + std::to_string(phi.horizon()) +
                     " is shorter than event horizon " + std::to_string(event.horizon()));
  }
  BinaryHistory x;
  return probability_below(phi, event, x, Mask(event.size(), true));
}

MeasureUpper measure_upper_probability(const EventUnion& event) {
  MeasureSolver solver(event);
  const Mask all(event.size(), true);
  MeasureUpper out{solver.value(0, all), ForecastingSystem::constant(event.horizon(), 0)};
  BinaryHistory x;
  solver.extract(out.witness, x, all);
  return out;
}

Rational grid_bruteforce(const EventUnion& event, unsigned k) {
  if (k == 0) throw std::invalid_argument("grid resolution must be positive");
  const std::size_t entries = (std::size_t{1} << event.horizon()) - 1;
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < entries; ++i) {
    if (count > kGridEnumerationLimit / (k + 1)) {
      throw GuardError("grid enumeration of (" + std::to_string(k + 1) + ")^" + std::to_string(entries) +
                       " forecasting systems exceeds the limit of " +
                       std::to_string(kGridEnumerationLimit));
    }
    count *= k + 1;
  }

  ForecastingSystem phi = ForecastingSystem::constant(event.horizon(), 0);
  std::vector<unsigned> digit(entries, 0);
  Rational best = 0;
  while (true) {
    for (std::size_t i = 0; i < entries; ++i) {
      phi.set(ForecastingSystem::history_of(i), Forecast(Rational(digit[i], k)));
    }
    best = std::max(best, exact_event_probability(phi, event));
    std::size_t i = 0;
    while (i < entries && ++digit[i] > k) digit[i++] = 0;
    if (i == entries) break;
  }
  return best;
}

MonteCarloEstimate monte_carlo_probability(const ForecastingSystem& phi, const EventUnion& event,
                                           std::size_t samples, std::uint64_t seed, unsigned threads) {
  if (samples == 0) throw std::invalid_argument("Monte Carlo needs at least one sample");
  if (phi.horizon() < event.horizon()) {
    throw ArityError("forecasting horizon " + std::to_string(phi.horizon()) +
                     " is shorter than event horizon " + std::to_string(event.horizon()));
  }
  threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(samples)));

  std::vector<std::size_t> hits(threads, 0);
  auto work = [&](unsigned t) {
    const std::size_t begin = samples * t / threads;
    const std::size_t end = samples * (t + 1) / threads;
    for (std::size_t i = begin; i < end; ++i) {
      const BinaryHistory omega = sample_outcomes(phi, event.horizon(), derive_seed(seed, i));
      if (contains(event, induced_path(phi, omega))) ++hits[t];
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
  }

  MonteCarloEstimate out;
  out.samples = samples;
  for (std::size_t h : hits) out.hits += h;
  out.estimate = static_cast<double>(out.hits) / static_cast<double>(samples);
  out.half_width = 4.0 * std::sqrt(out.estimate * (1.0 - out.estimate) / static_cast<double>(samples));
  return out;
}

}  // namespace preq
