#include <stdexcept>

#include "preq/gameprob.hpp"

namespace preq {

LevyStrategy::LevyStrategy(std::shared_ptr<const GameEngine> engine, Rational threshold)
    : engine_(std::move(engine)), threshold_(std::move(threshold)) {
  if (!engine_) throw std::invalid_argument("Levy strategy needs an engine");
  if (!(threshold_ > 0 && threshold_ < 1)) {
    throw std::invalid_argument("Levy threshold must lie in (0,1), got " + to_string(threshold_));
  }
  maybe_start_ride();
}

void LevyStrategy::maybe_start_ride() {
  if (regime_ != Regime::Waiting || prefix_.size() >= engine_->event().horizon()) return;
  const Rational& w = engine_->conditional(prefix_);
  if (w >= threshold_) return;
  // Ride (W + shift) scaled so that W = 1 pays exactly capital / threshold.
  // shift > 0 keeps the ride well defined when the witness is worthless here.
  regime_ = Regime::Riding;
  switch_points_.push_back(prefix_.size());
  ride_base_ = capital_;
  ride_root_ = w;
  ride_shift_ = (threshold_ - w) / (1 - threshold_);
}

void LevyStrategy::step(const Step& next) {
  if (regime_ == Regime::Terminal || prefix_.size() >= engine_->event().horizon()) {
    regime_ = Regime::Terminal;
    return;
  }
  prefix_.push_back(next);

  if (regime_ == Regime::Riding) {
    const Rational& w = engine_->conditional(prefix_);
    capital_ = ride_base_ * (w + ride_shift_) / (ride_root_ + ride_shift_);
    if (capital_ * threshold_ >= ride_base_) {
      milestones_.push_back(capital_);
      regime_ = Regime::Waiting;
    }
  }
  maybe_start_ride();
}

LevyStrategy levy_strategy_step(LevyStrategy s, const Step& next) {
  s.step(next);
  return s;
}

}  // namespace preq
