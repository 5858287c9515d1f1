#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "preq/rational.hpp"

namespace preq {

/// A probability forecast p in [0,1] that the next outcome is 1.
class Forecast {
 public:
  Forecast() = default;
  /// Throws std::invalid_argument when value lies outside [0,1].
  explicit Forecast(Rational value);

  const Rational& value() const { return value_; }
  double to_double() const { return preq::to_double(value_); }

  friend bool operator==(const Forecast&, const Forecast&) = default;

 private:
  Rational value_{0};
};

enum class Outcome : std::uint8_t { Zero = 0, One = 1 };

inline int bit(Outcome y) { return static_cast<int>(y); }
Outcome outcome_from_bit(int b);

/// One round of the protocol: the forecast followed by the outcome.
struct Step {
  Forecast p;
  Outcome y = Outcome::Zero;

  friend bool operator==(const Step&, const Step&) = default;
};

/// Finite sequence of forecasts and outcomes; the empty prefix is the root.
class PrequentialPrefix {
 public:
  PrequentialPrefix() = default;
  explicit PrequentialPrefix(std::vector<Step> steps) : steps_(std::move(steps)) {}

  std::size_t size() const { return steps_.size(); }
  bool empty() const { return steps_.empty(); }
  const Step& operator[](std::size_t i) const { return steps_[i]; }
  const std::vector<Step>& steps() const { return steps_; }
  auto begin() const { return steps_.begin(); }
  auto end() const { return steps_.end(); }

  void push_back(Step s) { steps_.push_back(std::move(s)); }
  void pop_back() { steps_.pop_back(); }
  /// The first m steps (m <= size()).
  PrequentialPrefix first(std::size_t m) const;
  PrequentialPrefix extended(const Forecast& p, Outcome y) const;

  std::string to_string() const;

  friend bool operator==(const PrequentialPrefix&, const PrequentialPrefix&) = default;

 private:
  std::vector<Step> steps_;
};

/// Finite binary outcome history; the empty history is the root.
class BinaryHistory {
 public:
  BinaryHistory() = default;
  explicit BinaryHistory(std::vector<Outcome> bits) : bits_(std::move(bits)) {}
  /// Parses "0101"; throws ParseError on other characters.
  static BinaryHistory from_string(std::string_view bits);

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  Outcome operator[](std::size_t i) const { return bits_[i]; }
  const std::vector<Outcome>& bits() const { return bits_; }
  auto begin() const { return bits_.begin(); }
  auto end() const { return bits_.end(); }

  void push_back(Outcome y) { bits_.push_back(y); }
  void pop_back() { bits_.pop_back(); }
  BinaryHistory first(std::size_t m) const;

  /// "0101"; the empty history renders as "".
  std::string to_string() const;

  friend bool operator==(const BinaryHistory&, const BinaryHistory&) = default;

 private:
  std::vector<Outcome> bits_;
};

/// Finite-horizon forecasting system: a forecast for every binary history of
/// length 0..horizon-1. Histories are stored in level order, so the table has
/// exactly 2^horizon - 1 entries.
class ForecastingSystem {
 public:
  static constexpr std::size_t kMaxHorizon = 24;

  /// Builds the constant system x -> p. Throws std::invalid_argument for a
  /// horizon of 0 or above kMaxHorizon.
  ForecastingSystem(std::size_t horizon, Forecast constant);

  static ForecastingSystem constant(std::size_t horizon, const Rational& p) {
    return ForecastingSystem(horizon, Forecast(p));
  }

  std::size_t horizon() const { return horizon_; }
  std::size_t table_size() const { return table_.size(); }

  /// Forecast after history x; throws HorizonError if x.size() >= horizon.
  const Forecast& at(const BinaryHistory& x) const;
  void set(const BinaryHistory& x, Forecast p);

  /// Level-order index of a history: 2^n - 1 + (bits read as a binary number).
  static std::size_t index_of(const BinaryHistory& x);
  static BinaryHistory history_of(std::size_t index);

  const std::vector<Forecast>& table() const { return table_; }

  friend bool operator==(const ForecastingSystem&, const ForecastingSystem&) = default;

 private:
  std::size_t horizon_;
  std::vector<Forecast> table_;
};

/// (phi(empty), y1, phi(y1), y2, ...): interleaves the system's forecasts with omega.
PrequentialPrefix induced_path(const ForecastingSystem& phi, const BinaryHistory& omega);

/// Prob_phi of the cylinder of x: product of phi or 1-phi along x.
Rational cylinder_probability(const ForecastingSystem& phi, const BinaryHistory& x);

/// Seeded Bernoulli draws with exact thresholds.
///
/// The generator is std::mt19937_64 seeded with `seed`. Each draw takes one
/// 64-bit output, keeps its top 53 bits as an integer k, and emits 1 iff
/// k < p * 2^53 (compared exactly in integers). Runs are bit-reproducible.
class OutcomeSampler {
 public:
  explicit OutcomeSampler(std::uint64_t seed) : engine_(seed) {}
  Outcome draw(const Rational& p);

 private:
  std::mt19937_64 engine_;
};

/// Draw from Prob_phi using one OutcomeSampler step per round.
BinaryHistory sample_outcomes(const ForecastingSystem& phi, std::size_t n, std::uint64_t seed);

/// n rounds of the constant forecast p with outcomes drawn from p; usable at
/// lengths beyond ForecastingSystem::kMaxHorizon. Agrees with sample_outcomes
/// on a constant system of the same seed.
std::vector<Step> sample_constant_stream(const Forecast& p, std::size_t n, std::uint64_t seed);

/// Decorrelated per-sample seed (splitmix64 of base + index).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

}  // namespace preq
