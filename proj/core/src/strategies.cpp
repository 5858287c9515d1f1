#include "preq/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "preq/error.hpp"

namespace preq {

void AllInStrategy::step(const Forecast& p, Outcome y) {
  const Rational odds = target_ == Outcome::One ? p.value() : Rational(1 - p.value());
  if (odds == 0) return;
  capital_ = y == target_ ? Rational(capital_ / odds) : Rational(0);
}

LinearBetStrategy::LinearBetStrategy(Rational stake, Rational initial)
    : stake_(std::move(stake)), capital_(std::move(initial)) {
  if (stake_ < -1 || stake_ > 1) throw std::invalid_argument("linear stake must lie in [-1,1]");
}

CalibrationState CalibrationState::start(std::size_t horizon, Rational threshold) {
  if (horizon == 0) throw std::invalid_argument("calibration horizon must be positive");
  if (threshold <= 0) throw std::invalid_argument("calibration threshold must be positive");
  CalibrationState s;
  s.horizon = horizon;
  s.threshold = std::move(threshold);
  return s;
}

Rational CalibrationState::capital() const {
  const Rational quarter_n(static_cast<long long>(horizon), 4);
  return (sum * sum - variance + quarter_n) /
         (threshold * threshold * static_cast<long long>(horizon) + quarter_n);
}

Rational CalibrationState::initial_capital() const {
  const Rational quarter_n(static_cast<long long>(horizon), 4);
  return quarter_n / (threshold * threshold * static_cast<long long>(horizon) + quarter_n);
}

std::pair<CalibrationState, Rational> calibration_step(CalibrationState state, const Step& step) {
  if (state.n >= state.horizon) {
    throw HorizonError("calibration test already consumed its " + std::to_string(state.horizon) +
                       " rounds");
  }
  const Rational& p = step.p.value();
  state.sum += bit(step.y) - p;
  state.variance += p * (1 - p);
  ++state.n;
  Rational capital = state.capital();
  return {std::move(state), std::move(capital)};
}

CalibrationVerdict calibration_verdict(const CalibrationState& state) {
  if (state.n != state.horizon) {
    throw StateError("verdict requested after " + std::to_string(state.n) + " of " +
                     std::to_string(state.horizon) + " rounds");
  }
  CalibrationVerdict v;
  const bool reject =
      state.sum * state.sum >= state.threshold * state.threshold * static_cast<long long>(state.horizon);
  v.verdict = reject ? Verdict::Reject : Verdict::NoReject;
  v.ratio = state.capital() / state.initial_capital();
  return v;
}

CapitalProcess run_stream(const Strategy& strategy, std::span<const Step> stream) {
  if (auto h = strategy.horizon(); h && stream.size() > *h) {
    throw HorizonError("stream of " + std::to_string(stream.size()) + " rounds exceeds strategy horizon " +
                       std::to_string(*h));
  }
  auto s = strategy.clone();
  CapitalProcess out{s->capital(), {}};
  out.trajectory.reserve(stream.size());
  for (const Step& st : stream) {
    s->step(st.p, st.y);
    out.trajectory.push_back(s->capital());
  }
  return out;
}

std::vector<double> bias_trajectory(std::span<const Step> stream) {
  std::vector<double> out;
  out.reserve(stream.size());
  Rational sum = 0;
  for (std::size_t i = 0; i < stream.size(); ++i) {
    sum += bit(stream[i].y) - stream[i].p.value();
    out.push_back(to_double(sum / static_cast<long long>(i + 1)));
  }
  return out;
}

namespace {

bool violates(FarthingaleMode mode, const Rational& value, const Rational& average) {
  return mode == FarthingaleMode::Exact ? value != average : value < average;
}

std::vector<Rational> probes_with(const Rational& extra) {
  std::vector<Rational> probes = {Rational(0), Rational(1, 4), Rational(1, 2), Rational(3, 4), Rational(1), extra};
  std::sort(probes.begin(), probes.end());
  probes.erase(std::unique(probes.begin(), probes.end()), probes.end());
  return probes;
}

// Probes the one-round identity at a node whose strategy state is `at`.
void probe_node(const Strategy& at, const std::vector<Rational>& probes, FarthingaleMode mode,
                const std::string& node, FarthingaleReport& report) {
  const Rational value = at.capital();
  for (const Rational& p : probes) {
    const Forecast f(p);
    auto zero = at.clone();
    zero->step(f, Outcome::Zero);
    auto one = at.clone();
    one->step(f, Outcome::One);
    const Rational c0 = zero->capital();
    const Rational c1 = one->capital();
    const Rational average = mix(p, c0, c1);
    if (violates(mode, value, average) || c0 < 0 || c1 < 0) {
      report.ok = false;
      report.violations.push_back(FarthingaleViolation{node, p, value, average});
    }
  }
}

}  // namespace

FarthingaleReport check_farthingale(const ValueFunction& table, FarthingaleMode mode) {
  FarthingaleReport report;
  for (std::size_t level = 0; level < table.horizon(); ++level) {
    const ForecastPartition& part = table.partition(level + 1);
    for (std::size_t index = 0; index < table.level_size(level); ++index) {
      const Rational& value = table.at(level, index);
      for (std::size_t c = 0; c < part.size(); ++c) {
        const Rational& v0 = table.at(level + 1, table.child_index(level, index, c, Outcome::Zero));
        const Rational& v1 = table.at(level + 1, table.child_index(level, index, c, Outcome::One));
        const Cell& cell = part.cells[c];
        for (const Rational* p : {&cell.lo, &cell.hi}) {
          if (p == &cell.hi && cell.is_point()) break;
          const Rational average = mix(*p, v0, v1);
          if (violates(mode, value, average)) {
            report.ok = false;
            report.violations.push_back(
                FarthingaleViolation{table.path_of(level, index).to_string(), *p, value, average});
          }
        }
      }
    }
  }
  return report;
}

FarthingaleReport check_farthingale(const Strategy& strategy, std::span<const Step> stream,
                                    FarthingaleMode mode) {
  FarthingaleReport report;
  auto s = strategy.clone();
  if (s->capital() < 0) {
    report.ok = false;
    report.violations.push_back(FarthingaleViolation{"0", Rational(0), s->capital(), Rational(0)});
  }
  for (std::size_t n = 0; n < stream.size(); ++n) {
    probe_node(*s, probes_with(stream[n].p.value()), mode, std::to_string(n), report);
    s->step(stream[n].p, stream[n].y);
  }
  return report;
}

namespace {

void certify_below(const ForecastingSystem& phi, const Strategy& at, BinaryHistory& x,
                   FarthingaleReport& report) {
  if (x.size() == phi.horizon()) return;
  const Forecast& p = phi.at(x);
  probe_node(at, probes_with(p.value()), FarthingaleMode::Super, x.empty() ? "''" : x.to_string(), report);
  if (report.violations.size() > 16) return;
  for (Outcome y : {Outcome::Zero, Outcome::One}) {
    auto next = at.clone();
    next->step(p, y);
    x.push_back(y);
    certify_below(phi, *next, x, report);
    x.pop_back();
  }
}

}  // namespace

FarthingaleReport certify_on_tree(const ForecastingSystem& phi, const Strategy& strategy) {
  if (phi.horizon() > kCertifyHorizon) {
    throw GuardError("certification is exhaustive and limited to horizon " +
                     std::to_string(kCertifyHorizon));
  }
  FarthingaleReport report;
  if (strategy.capital() < 0) {
    report.ok = false;
    report.violations.push_back(FarthingaleViolation{"''", Rational(0), strategy.capital(), Rational(0)});
    return report;
  }
  BinaryHistory x;
  certify_below(phi, strategy, x, report);
  return report;
}

VilleResult ville_check(const ForecastingSystem& phi, const Strategy& strategy, const Rational& level,
                        std::size_t samples, std::uint64_t seed, unsigned threads) {
  if (samples == 0) throw std::invalid_argument("Ville check needs at least one sample");
  if (level <= 0) throw std::invalid_argument("Ville level C must be positive");
  if (auto h = strategy.horizon(); h && *h < phi.horizon()) {
    throw HorizonError("strategy horizon is shorter than the forecasting horizon");
  }
  const FarthingaleReport cert = certify_on_tree(phi, strategy);
  if (!cert.ok) {
    const FarthingaleViolation& v = cert.violations.front();
    throw CertificationError("strategy '" + strategy.name() + "' is not a non-negative superfarthingale: at node " +
                             v.node + ", p = " + to_string(v.p) + ", value " + to_string(v.value) +
                             " < average " + to_string(v.average));
  }

  threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(samples)));
  std::vector<std::size_t> hits(threads, 0);
  auto work = [&](unsigned t) {
    const std::size_t begin = samples * t / threads;
    const std::size_t end = samples * (t + 1) / threads;
    for (std::size_t i = begin; i < end; ++i) {
      const PrequentialPrefix path = induced_path(phi, sample_outcomes(phi, phi.horizon(), derive_seed(seed, i)));
      auto s = strategy.clone();
      bool reached = s->capital() >= level;
      for (std::size_t n = 0; n < path.size() && !reached; ++n) {
        s->step(path[n].p, path[n].y);
        reached = s->capital() >= level;
      }
      if (reached) ++hits[t];
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
  }

  VilleResult out;
  out.samples = samples;
  for (std::size_t h : hits) out.hits += h;
  out.frequency = static_cast<double>(out.hits) / static_cast<double>(samples);
  out.bound = to_double(strategy.capital() / level);
  out.pass = out.frequency <= out.bound + 4.0 * std::sqrt(out.bound / static_cast<double>(samples));
  return out;
}

}  // namespace preq
