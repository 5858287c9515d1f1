#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "preq/prequential.hpp"
#include "preq/rational.hpp"

namespace preq {

/// Closed interval [lo, hi] within [0,1]; point intervals are allowed.
struct Interval {
  Rational lo{0};
  Rational hi{1};

  /// Throws std::invalid_argument unless 0 <= lo <= hi <= 1.
  static Interval closed(Rational lo, Rational hi);
  static Interval point(const Rational& p) { return closed(p, p); }
  static Interval unit() { return closed(0, 1); }

  bool contains(const Rational& p) const { return lo <= p && p <= hi; }
  std::optional<Interval> intersect(const Interval& other) const;

  friend bool operator==(const Interval&, const Interval&) = default;
};

enum class BitConstraint { Zero, One, Any };

bool admits(BitConstraint c, Outcome y);
std::optional<BitConstraint> merge(BitConstraint a, BitConstraint b);

struct BoxStep {
  Interval p;
  BitConstraint y = BitConstraint::Any;

  friend bool operator==(const BoxStep&, const BoxStep&) = default;
};

/// Product of closed forecast intervals and bit constraints over a fixed horizon.
class Box {
 public:
  explicit Box(std::vector<BoxStep> steps);

  /// The single prequential prefix `path` as a degenerate box.
  static Box point(const PrequentialPrefix& path);

  std::size_t horizon() const { return steps_.size(); }
  /// Zero-based step access.
  const BoxStep& step(std::size_t i) const { return steps_[i]; }
  const std::vector<BoxStep>& steps() const { return steps_; }

  bool admits_step(std::size_t i, const Step& s) const {
    return steps_[i].p.contains(s.p.value()) && admits(steps_[i].y, s.y);
  }
  bool contains(const PrequentialPrefix& path) const;
  std::optional<Box> intersect(const Box& other) const;
  /// Structural inclusion: every coordinate of this box lies within other's.
  bool subset_of(const Box& other) const;

  friend bool operator==(const Box&, const Box&) = default;

 private:
  std::vector<BoxStep> steps_;
};

/// Finite union of closed boxes at a common horizon. Represents the cylinder
/// of all infinite prequential sequences whose first `horizon` steps fall in
/// some box, which is a compact set.
class EventUnion {
 public:
  /// Throws std::invalid_argument for a zero horizon, ArityError for a box of
  /// a different horizon.
  explicit EventUnion(std::size_t horizon, std::vector<Box> boxes = {});

  static EventUnion full(std::size_t horizon);
  static EventUnion empty(std::size_t horizon) { return EventUnion(horizon); }

  std::size_t horizon() const { return horizon_; }
  const std::vector<Box>& boxes() const { return boxes_; }
  std::size_t size() const { return boxes_.size(); }
  bool is_empty_list() const { return boxes_.empty(); }

  void add(Box b);

  friend bool operator==(const EventUnion&, const EventUnion&) = default;

 private:
  std::size_t horizon_;
  std::vector<Box> boxes_;
};

/// Membership of a full-length prefix. Throws ArityError on length mismatch.
bool contains(const EventUnion& event, const PrequentialPrefix& prefix);

EventUnion unite(const EventUnion& a, const EventUnion& b);
/// Pairwise box intersection; incompatible pairs are dropped.
EventUnion intersect(const EventUnion& a, const EventUnion& b);

/// Maximal interval of [0,1] on which every box's membership test at one
/// step is constant.
struct Cell {
  Rational lo;
  Rational hi;
  bool lo_closed = true;
  bool hi_closed = true;

  bool is_point() const { return lo == hi; }
  bool contains(const Rational& p) const;
  /// A rational strictly inside the cell, or the point itself.
  Rational representative() const;

  friend bool operator==(const Cell&, const Cell&) = default;
};

struct ForecastPartition {
  /// 0, 1 and every interval endpoint at the step, ascending.
  std::vector<Rational> breakpoints;
  /// Ordered cover of [0,1] by pairwise disjoint cells.
  std::vector<Cell> cells;

  /// Index of the cell containing p (p in [0,1]).
  std::size_t cell_of(const Rational& p) const;
  std::size_t size() const { return cells.size(); }

  friend bool operator==(const ForecastPartition&, const ForecastPartition&) = default;
};

/// Partition of the forecast axis at `step` (1-based). Throws
/// std::out_of_range for a step outside 1..horizon.
ForecastPartition forecast_partition(const EventUnion& event, std::size_t step);

/// Box-level classifier for the rasterize path.
enum class BoxVerdict { Inside, Outside, Straddles };
using BoxClassifier = std::function<BoxVerdict(const Box&)>;

/// Inner and outer box-union approximations of an event given only through
/// a classifier. inner is contained in the event and the event is contained
/// in outer, provided the classifier is sound.
struct RasterizedEvent {
  EventUnion inner;
  EventUnion outer;
};

/// Tiles the prequential space at `horizon` with closed grid boxes spanned by
/// `breakpoints` (must include 0 and 1) and both outcomes, and sorts each
/// tile by `classify`.
RasterizedEvent rasterize(std::size_t horizon, const std::vector<Rational>& breakpoints,
                          const BoxClassifier& classify);

}  // namespace preq
