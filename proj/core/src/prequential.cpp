#include "preq/prequential.hpp"

#include <random>
#include <stdexcept>

#include "preq/error.hpp"

namespace preq {

Forecast::Forecast(Rational value) : value_(std::move(value)) {
  if (!in_unit_interval(value_)) {
    throw std::invalid_argument("forecast " + preq::to_string(value_) + " outside [0,1]");
  }
}

Outcome outcome_from_bit(int b) {
  if (b != 0 && b != 1) throw std::invalid_argument("outcome must be 0 or 1");
  return b == 1 ? Outcome::One : Outcome::Zero;
}

PrequentialPrefix PrequentialPrefix::first(std::size_t m) const {
  if (m > steps_.size()) throw HorizonError("prefix shorter than requested length");
  return PrequentialPrefix(std::vector<Step>(steps_.begin(), steps_.begin() + m));
}

PrequentialPrefix PrequentialPrefix::extended(const Forecast& p, Outcome y) const {
  PrequentialPrefix out = *this;
  out.push_back(Step{p, y});
  return out;
}

std::string PrequentialPrefix::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < steps_.size(); ++i) {
    if (i > 0) s += ", ";
    s += preq::to_string(steps_[i].p.value());
    s += ", ";
    s += std::to_string(bit(steps_[i].y));
  }
  return s + ")";
}

BinaryHistory BinaryHistory::from_string(std::string_view bits) {
  BinaryHistory h;
  for (char c : bits) {
    if (c != '0' && c != '1') {
      throw ParseError("binary history '" + std::string(bits) + "' contains non-bit characters");
    }
    h.push_back(c == '1' ? Outcome::One : Outcome::Zero);
  }
  return h;
}

BinaryHistory BinaryHistory::first(std::size_t m) const {
  if (m > bits_.size()) throw HorizonError("history shorter than requested length");
  return BinaryHistory(std::vector<Outcome>(bits_.begin(), bits_.begin() + m));
}

std::string BinaryHistory::to_string() const {
  std::string s;
  s.reserve(bits_.size());
  for (Outcome y : bits_) s += y == Outcome::One ? '1' : '0';
  return s;
}

ForecastingSystem::ForecastingSystem(std::size_t horizon, Forecast constant) : horizon_(horizon) {
  if (horizon == 0 || horizon > kMaxHorizon) {
    throw std::invalid_argument("forecasting system horizon must be in 1.." +
                                std::to_string(kMaxHorizon));
  }
  table_.assign((std::size_t{1} << horizon) - 1, constant);
}

std::size_t ForecastingSystem::index_of(const BinaryHistory& x) {
  std::size_t offset = 0;
  for (Outcome y : x) offset = (offset << 1) | static_cast<std::size_t>(bit(y));
  return ((std::size_t{1} << x.size()) - 1) + offset;
}

BinaryHistory ForecastingSystem::history_of(std::size_t index) {
  std::size_t n = 0;
  while (((std::size_t{1} << (n + 1)) - 1) <= index) ++n;
  const std::size_t offset = index - ((std::size_t{1} << n) - 1);
  BinaryHistory x;
  for (std::size_t i = n; i-- > 0;) x.push_back(((offset >> i) & 1U) ? Outcome::One : Outcome::Zero);
  return x;
}

const Forecast& ForecastingSystem::at(const BinaryHistory& x) const {
  if (x.size() >= horizon_) {
    throw HorizonError("history of length " + std::to_string(x.size()) +
                       " has no forecast at horizon " + std::to_string(horizon_));
  }
  return table_[index_of(x)];
}

void ForecastingSystem::set(const BinaryHistory& x, Forecast p) {
  if (x.size() >= horizon_) {
    throw HorizonError("history of length " + std::to_string(x.size()) +
                       " is beyond horizon " + std::to_string(horizon_));
  }
  table_[index_of(x)] = std::move(p);
}

PrequentialPrefix induced_path(const ForecastingSystem& phi, const BinaryHistory& omega) {
  if (omega.size() > phi.horizon()) {
    throw HorizonError("history of length " + std::to_string(omega.size()) +
                       " exceeds forecasting horizon " + std::to_string(phi.horizon()));
  }
  PrequentialPrefix path;
  BinaryHistory past;
  for (Outcome y : omega) {
    path.push_back(Step{phi.at(past), y});
    past.push_back(y);
  }
  return path;
}

Rational cylinder_probability(const ForecastingSystem& phi, const BinaryHistory& x) {
  if (x.size() > phi.horizon()) {
    throw HorizonError("history of length " + std::to_string(x.size()) +
                       " exceeds forecasting horizon " + std::to_string(phi.horizon()));
  }
  Rational prob = 1;
  BinaryHistory past;
  for (Outcome y : x) {
    const Rational& p = phi.at(past).value();
    prob *= y == Outcome::One ? p : Rational(1 - p);
    if (prob == 0) return prob;
    past.push_back(y);
  }
  return prob;
}

Outcome OutcomeSampler::draw(const Rational& p) {
  static const Integer scale = Integer(1) << 53;
  const Integer k(engine_() >> 11);
  return k * boost::multiprecision::denominator(p) < boost::multiprecision::numerator(p) * scale ? Outcome::One
                                                                                                  : Outcome::Zero;
}

BinaryHistory sample_outcomes(const ForecastingSystem& phi, std::size_t n, std::uint64_t seed) {
  if (n > phi.horizon()) {
    throw HorizonError("cannot sample " + std::to_string(n) + " outcomes at horizon " +
                       std::to_string(phi.horizon()));
  }
  OutcomeSampler sampler(seed);
  BinaryHistory x;
  for (std::size_t i = 0; i < n; ++i) x.push_back(sampler.draw(phi.at(x).value()));
  return x;
}

std::vector<Step> sample_constant_stream(const Forecast& p, std::size_t n, std::uint64_t seed) {
  OutcomeSampler sampler(seed);
  std::vector<Step> stream;
  stream.reserve(n);
  for (std::size_t i = 0; i < n; ++i) stream.push_back(Step{p, sampler.draw(p.value())});
  return stream;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace preq
