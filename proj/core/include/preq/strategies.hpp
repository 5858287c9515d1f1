#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "preq/gameprob.hpp"
#include "preq/prequential.hpp"
#include "preq/rational.hpp"

namespace preq {

/// A betting strategy driven by a forecast/outcome stream. It only ever sees
/// the announced forecast and the outcome of each round, never the process
/// that generated them.
class Strategy {
 public:
  virtual ~Strategy() = default;

  virtual std::unique_ptr<Strategy> clone() const = 0;
  virtual std::string name() const = 0;
  /// Capital after the rounds consumed so far.
  virtual Rational capital() const = 0;
  virtual void step(const Forecast& p, Outcome y) = 0;
  /// Maximum number of rounds, if bounded.
  virtual std::optional<std::size_t> horizon() const { return std::nullopt; }
};

/// Never bets.
class ConstantStrategy final : public Strategy {
 public:
  explicit ConstantStrategy(Rational capital = 1) : capital_(std::move(capital)) {}
  std::unique_ptr<Strategy> clone() const override { return std::make_unique<ConstantStrategy>(*this); }
  std::string name() const override { return "constant"; }
  Rational capital() const override { return capital_; }
  void step(const Forecast&, Outcome) override {}

 private:
  Rational capital_;
};

/// Stakes all capital on `target` at the forecaster's odds: capital is
/// multiplied by y/p (target 1) or (1-y)/(1-p) (target 0). A round whose
/// forecast gives the target probability 0 is skipped. Under p = 1/2 and
/// target 1 this is the doubling strategy.
class AllInStrategy final : public Strategy {
 public:
  explicit AllInStrategy(Outcome target = Outcome::One, Rational initial = 1)
      : target_(target), capital_(std::move(initial)) {}
  std::unique_ptr<Strategy> clone() const override { return std::make_unique<AllInStrategy>(*this); }
  std::string name() const override { return "all-in"; }
  Rational capital() const override { return capital_; }
  void step(const Forecast& p, Outcome y) override;

 private:
  Outcome target_;
  Rational capital_;
};

/// Multiplies capital by 1 + stake * (y - p); |stake| <= 1 keeps it non-negative.
class LinearBetStrategy final : public Strategy {
 public:
  explicit LinearBetStrategy(Rational stake, Rational initial = 1);
  std::unique_ptr<Strategy> clone() const override { return std::make_unique<LinearBetStrategy>(*this); }
  std::string name() const override { return "linear"; }
  Rational capital() const override { return capital_; }
  void step(const Forecast& p, Outcome y) override { capital_ *= 1 + stake_ * (bit(y) - p.value()); }

 private:
  Rational stake_;
  Rational capital_;
};

/// Running statistics of the finite-horizon calibration test.
struct CalibrationState {
  std::size_t horizon = 0;
  /// Rejection threshold C > 0.
  Rational threshold{1};
  std::size_t n = 0;
  /// Sum of (y_i - p_i).
  Rational sum{0};
  /// Sum of p_i (1 - p_i).
  Rational variance{0};

  /// Throws std::invalid_argument unless horizon > 0 and threshold > 0.
  static CalibrationState start(std::size_t horizon, Rational threshold);

  /// (S^2 - A + N/4) / (C^2 N + N/4); a non-negative farthingale in the rounds.
  Rational capital() const;
  Rational initial_capital() const;
};

/// Consumes one round. Throws HorizonError once n has reached the horizon.
std::pair<CalibrationState, Rational> calibration_step(CalibrationState state, const Step& step);

enum class Verdict { Reject, NoReject };

struct CalibrationVerdict {
  Verdict verdict = Verdict::NoReject;
  /// Final over initial capital; at least 4 C^2 whenever the test rejects.
  Rational ratio;
};

/// Rejects iff |S_N| >= C sqrt(N), decided exactly as S^2 >= C^2 N. Throws
/// StateError before the horizon is reached.
CalibrationVerdict calibration_verdict(const CalibrationState& state);

/// The calibration test as a stream strategy.
class CalibrationStrategy final : public Strategy {
 public:
  CalibrationStrategy(std::size_t horizon, Rational threshold)
      : state_(CalibrationState::start(horizon, std::move(threshold))) {}
  std::unique_ptr<Strategy> clone() const override { return std::make_unique<CalibrationStrategy>(*this); }
  std::string name() const override { return "calibration"; }
  Rational capital() const override { return state_.capital(); }
  void step(const Forecast& p, Outcome y) override { state_ = calibration_step(state_, Step{p, y}).first; }
  std::optional<std::size_t> horizon() const override { return state_.horizon; }
  const CalibrationState& state() const { return state_; }

 private:
  CalibrationState state_;
};

/// LevyStrategy as a stream strategy.
class LevyStreamStrategy final : public Strategy {
 public:
  explicit LevyStreamStrategy(LevyStrategy inner) : inner_(std::move(inner)) {}
  std::unique_ptr<Strategy> clone() const override { return std::make_unique<LevyStreamStrategy>(*this); }
  std::string name() const override { return "levy"; }
  Rational capital() const override { return inner_.capital(); }
  void step(const Forecast& p, Outcome y) override { inner_.step(Step{p, y}); }
  std::optional<std::size_t> horizon() const override { return inner_.engine().event().horizon(); }
  const LevyStrategy& inner() const { return inner_; }

 private:
  LevyStrategy inner_;
};

struct CapitalProcess {
  Rational initial_capital;
  /// trajectory[i] is the capital after round i + 1.
  std::vector<Rational> trajectory;
};

/// Runs a fresh copy of `strategy` over the stream. Throws HorizonError for a
/// stream longer than the strategy's horizon.
CapitalProcess run_stream(const Strategy& strategy, std::span<const Step> stream);

/// (1/n) sum_{i<=n} (y_i - p_i) for n = 1..len; a diagnostic only.
std::vector<double> bias_trajectory(std::span<const Step> stream);

enum class FarthingaleMode { Exact, Super };

struct FarthingaleViolation {
  /// Cell-path for tables, prefix length for streams.
  std::string node;
  Rational p;
  Rational value;
  Rational average;
};

struct FarthingaleReport {
  bool ok = true;
  std::vector<FarthingaleViolation> violations;
};

/// Checks V(x) = (or >=) (1-p) V(x,p,0) + p V(x,p,1) at both endpoints of
/// every cell at every interior node. Children are constant on a cell, so
/// the two sides are linear in p there and endpoint checks suffice.
FarthingaleReport check_farthingale(const ValueFunction& table, FarthingaleMode mode);

/// Checks the same identity for a stream strategy at every node along
/// `stream`, probing p in {0, 1/4, 1/2, 3/4, 1, p_n}. A strategy whose
/// per-round capital is a polynomial of degree <= 3 in p is thereby checked
/// as an identity in p. Also flags negative capital.
FarthingaleReport check_farthingale(const Strategy& strategy, std::span<const Step> stream,
                                    FarthingaleMode mode);

/// Largest phi horizon ville_check will certify exhaustively.
inline constexpr std::size_t kCertifyHorizon = 16;

/// Verifies non-negativity and the superfarthingale inequality at the probe
/// forecasts on every node of the tree induced by phi, up to phi's horizon.
FarthingaleReport certify_on_tree(const ForecastingSystem& phi, const Strategy& strategy);

struct VilleResult {
  /// Fraction of sampled paths along which capital ever reached C.
  double frequency = 0;
  /// V(empty) / C.
  double bound = 0;
  /// frequency <= bound + 4 sqrt(bound / samples).
  bool pass = false;
  std::size_t hits = 0;
  std::size_t samples = 0;
};

/// Empirical check of Ville's inequality along paths drawn from phi, each of
/// phi's full horizon. Throws CertificationError if the strategy fails
/// certify_on_tree, GuardError beyond kCertifyHorizon.
VilleResult ville_check(const ForecastingSystem& phi, const Strategy& strategy, const Rational& level,
                        std::size_t samples, std::uint64_t seed, unsigned threads = 1);

}  // namespace preq
