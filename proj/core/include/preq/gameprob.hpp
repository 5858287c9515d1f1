#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "preq/events.hpp"
#include "preq/prequential.hpp"
#include "preq/rational.hpp"

namespace preq {

/// A node of the cell-refined prequential tree: for each step, the forecast
/// cell taken and the outcome. Canonical text form joins "cell:bit" entries
/// with commas; the root is "".
class CellPath {
 public:
  struct Entry {
    std::size_t cell = 0;
    Outcome y = Outcome::Zero;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  CellPath() = default;
  explicit CellPath(std::vector<Entry> entries) : entries_(std::move(entries)) {}
  /// Throws ParseError on malformed text.
  static CellPath parse(std::string_view text);

  std::size_t size() const { return entries_.size(); }
  const Entry& operator[](std::size_t i) const { return entries_[i]; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }
  void push_back(Entry e) { entries_.push_back(e); }

  std::string to_string() const;

  friend bool operator==(const CellPath&, const CellPath&) = default;

 private:
  std::vector<Entry> entries_;
};

/// Rational value on every node of the cell-refined prequential tree, level
/// by level. Level n holds one entry per cell-path of length n, so the table
/// is complete by construction.
class ValueFunction {
 public:
  static constexpr std::size_t kMaxEntries = std::size_t{1} << 24;

  /// All-zero table over the given per-step partitions. Throws GuardError if
  /// the tree would exceed kMaxEntries nodes.
  explicit ValueFunction(std::vector<ForecastPartition> partitions);

  std::size_t horizon() const { return partitions_.size(); }
  /// 1-based step.
  const ForecastPartition& partition(std::size_t step) const { return partitions_.at(step - 1); }
  const std::vector<ForecastPartition>& partitions() const { return partitions_; }

  std::size_t level_size(std::size_t level) const { return levels_.at(level).size(); }
  const Rational& at(std::size_t level, std::size_t index) const { return levels_[level][index]; }
  Rational& at(std::size_t level, std::size_t index) { return levels_[level][index]; }
  const Rational& root() const { return levels_[0][0]; }

  /// Index at level+1 of the child reached through `cell` and outcome y.
  std::size_t child_index(std::size_t level, std::size_t index, std::size_t cell, Outcome y) const {
    return (index * partitions_[level].size() + cell) * 2 + static_cast<std::size_t>(bit(y));
  }

  std::size_t index_of(const CellPath& path) const;
  CellPath path_of(std::size_t level, std::size_t index) const;
  const Rational& at(const CellPath& path) const { return at(path.size(), index_of(path)); }
  void set(const CellPath& path, Rational v) { at(path.size(), index_of(path)) = std::move(v); }

  /// Cell-path of a concrete prefix. Throws HorizonError past the horizon.
  CellPath locate(const PrequentialPrefix& prefix) const;

  friend bool operator==(const ValueFunction&, const ValueFunction&) = default;

 private:
  std::vector<ForecastPartition> partitions_;
  std::vector<std::vector<Rational>> levels_;
};

/// Value of (1-p) v0 + p v1.
inline Rational mix(const Rational& p, const Rational& v0, const Rational& v1) {
  return (1 - p) * v0 + p * v1;
}

/// Exact supremum over p of (1-p) v0(p) + p v1(p) when the children are
/// constant on each cell of `partition`.
struct CellSup {
  Rational value;
  /// Smallest closed cell endpoint attaining `value`, when one exists.
  std::optional<Rational> argmax;
};

/// child(c, y) yields the child value for cell c and outcome y.
template <typename ChildValue>
CellSup sup_over_cells(const ForecastPartition& partition, ChildValue&& child) {
  CellSup best{Rational(-1), std::nullopt};
  std::optional<Rational> best_closed;
  Rational best_closed_value(-1);
  for (std::size_t c = 0; c < partition.size(); ++c) {
    const Cell& cell = partition.cells[c];
    const Rational& v0 = child(c, Outcome::Zero);
    const Rational& v1 = child(c, Outcome::One);
    const Rational at_lo = mix(cell.lo, v0, v1);
    const Rational at_hi = mix(cell.hi, v0, v1);
    if (at_lo > best.value) best.value = at_lo;
    if (at_hi > best.value) best.value = at_hi;
    // Scan order is ascending in p, so strict improvement keeps the smallest.
    if (cell.lo_closed && at_lo > best_closed_value) {
      best_closed_value = at_lo;
      best_closed = cell.lo;
    }
    if (cell.hi_closed && at_hi > best_closed_value) {
      best_closed_value = at_hi;
      best_closed = cell.hi;
    }
  }
  if (best_closed && best_closed_value == best.value) best.argmax = best_closed;
  return best;
}

/// Backward induction over the cell-refined prequential tree of a box-union
/// event. Leaves carry the membership indicator; each interior node carries
/// the supremum over forecasts of the forecast-weighted average of its
/// children. The resulting table is the witness superfarthingale and its
/// node values are the conditional upper game-theoretic probabilities.
class GameEngine {
 public:
  explicit GameEngine(EventUnion event);

  const EventUnion& event() const { return event_; }
  const ValueFunction& witness() const { return table_; }
  const Rational& upper_probability() const { return table_.root(); }

  /// Table lookup of the conditional value at a prefix of length <= horizon.
  const Rational& conditional(const PrequentialPrefix& x) const;
  /// Smallest forecast attaining the supremum at x; length(x) < horizon.
  Forecast optimal_forecast(const PrequentialPrefix& x) const;

 private:
  Rational solve(std::size_t level, std::size_t index, const std::vector<bool>& alive);

  EventUnion event_;
  ValueFunction table_;
  // cell_masks_[step][cell][box]: box's forecast interval covers the cell.
  std::vector<std::vector<std::vector<bool>>> cell_masks_;
};

Rational upper_game_probability(const EventUnion& event);

/// Backward induction rooted at x, recomputed from scratch over the
/// extensions of x (no table). At length(x) = horizon this is the indicator.
Rational conditional_upper_probability(const EventUnion& event, const PrequentialPrefix& x);

ValueFunction witness_superfarthingale(const EventUnion& event);

/// Throws HorizonError unless length(x) < horizon.
Forecast optimal_forecast_at(const EventUnion& event, const PrequentialPrefix& x);

/// Capital process that switches between holding and riding a rescaled
/// witness, growing without bound on the members of an event along which
/// the conditional upper probability keeps dipping below a threshold.
class LevyStrategy {
 public:
  enum class Regime { Waiting, Riding, Terminal };

  /// threshold must lie in (0,1); throws std::invalid_argument otherwise.
  LevyStrategy(std::shared_ptr<const GameEngine> engine, Rational threshold);
  LevyStrategy(const EventUnion& event, Rational threshold)
      : LevyStrategy(std::make_shared<const GameEngine>(event), std::move(threshold)) {}

  const Rational& capital() const { return capital_; }
  Regime regime() const { return regime_; }
  const Rational& threshold() const { return threshold_; }
  const PrequentialPrefix& prefix() const { return prefix_; }
  /// Capital values s_1, s_2, ... at which rides ended.
  const std::vector<Rational>& milestones() const { return milestones_; }
  /// Prefix lengths N_1, N_2, ... at which rides started.
  const std::vector<std::size_t>& switch_points() const { return switch_points_; }
  const GameEngine& engine() const { return *engine_; }

  /// Consumes one forecast/outcome pair. Past the horizon the strategy turns
  /// terminal and its capital stays frozen.
  void step(const Step& next);

 private:
  void maybe_start_ride();

  std::shared_ptr<const GameEngine> engine_;
  Rational threshold_;
  Rational capital_{1};
  Regime regime_ = Regime::Waiting;
  PrequentialPrefix prefix_;
  std::vector<Rational> milestones_;
  std::vector<std::size_t> switch_points_;
  // Active ride: capital = base * (W + shift) / (root + shift).
  Rational ride_base_{1};
  Rational ride_root_{0};
  Rational ride_shift_{0};
};

LevyStrategy levy_strategy_step(LevyStrategy s, const Step& next);

}  // namespace preq
