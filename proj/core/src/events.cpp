#include "preq/events.hpp"

#include <algorithm>
#include <stdexcept>

#include "preq/error.hpp"

namespace preq {

Interval Interval::closed(Rational lo, Rational hi) {
  if (!(0 <= lo && lo <= hi && hi <= 1)) {
    throw std::invalid_argument("interval [" + to_string(lo) + ", " + to_string(hi) +
                                "] is not a closed subinterval of [0,1]");
  }
  return Interval{std::move(lo), std::move(hi)};
}

std::optional<Interval> Interval::intersect(const Interval& other) const {
  Rational l = std::max(lo, other.lo);
  Rational h = std::min(hi, other.hi);
  if (l > h) return std::nullopt;
  return Interval{std::move(l), std::move(h)};
}

bool admits(BitConstraint c, Outcome y) {
  switch (c) {
    case BitConstraint::Any:
      return true;
    case BitConstraint::Zero:
      return y == Outcome::Zero;
    case BitConstraint::One:
      return y == Outcome::One;
  }
  return false;
}

std::optional<BitConstraint> merge(BitConstraint a, BitConstraint b) {
  if (a == BitConstraint::Any) return b;
  if (b == BitConstraint::Any || a == b) return a;
  return std::nullopt;
}

Box::Box(std::vector<BoxStep> steps) : steps_(std::move(steps)) {
  if (steps_.empty()) throw std::invalid_argument("a box needs at least one step");
}

Box Box::point(const PrequentialPrefix& path) {
  std::vector<BoxStep> steps;
  steps.reserve(path.size());
  for (const Step& s : path) {
    steps.push_back(BoxStep{Interval::point(s.p.value()),
                            s.y == Outcome::One ? BitConstraint::One : BitConstraint::Zero});
  }
  return Box(std::move(steps));
}

bool Box::contains(const PrequentialPrefix& path) const {
  if (path.size() != steps_.size()) {
    throw ArityError("prefix length " + std::to_string(path.size()) + " differs from box horizon " +
                     std::to_string(steps_.size()));
  }
  for (std::size_t i = 0; i < steps_.size(); ++i) {
    if (!admits_step(i, path[i])) return false;
  }
  return true;
}

std::optional<Box> Box::intersect(const Box& other) const {
  if (other.horizon() != horizon()) throw ArityError("box horizons differ");
  std::vector<BoxStep> steps;
  steps.reserve(steps_.size());
  for (std::size_t i = 0; i < steps_.size(); ++i) {
    auto p = steps_[i].p.intersect(other.steps_[i].p);
    auto y = merge(steps_[i].y, other.steps_[i].y);
    if (!p || !y) return std::nullopt;
    steps.push_back(BoxStep{std::move(*p), *y});
  }
  return Box(std::move(steps));
}

bool Box::subset_of(const Box& other) const {
  if (other.horizon() != horizon()) throw ArityError("box horizons differ");
  for (std::size_t i = 0; i < steps_.size(); ++i) {
    const BoxStep& a = steps_[i];
    const BoxStep& b = other.steps_[i];
    if (a.p.lo < b.p.lo || a.p.hi > b.p.hi) return false;
    if (b.y != BitConstraint::Any && a.y != b.y) return false;
  }
  return true;
}

EventUnion::EventUnion(std::size_t horizon, std::vector<Box> boxes)
    : horizon_(horizon), boxes_(std::move(boxes)) {
  if (horizon_ == 0) throw std::invalid_argument("event horizon must be positive");
  for (const Box& b : boxes_) {
    if (b.horizon() != horizon_) {
      throw ArityError("box horizon " + std::to_string(b.horizon()) + " differs from event horizon " +
                       std::to_string(horizon_));
    }
  }
}

EventUnion EventUnion::full(std::size_t horizon) {
  return EventUnion(horizon,
                    {Box(std::vector<BoxStep>(horizon, BoxStep{Interval::unit(), BitConstraint::Any}))});
}

void EventUnion::add(Box b) {
  if (b.horizon() != horizon_) {
    throw ArityError("box horizon " + std::to_string(b.horizon()) + " differs from event horizon " +
                     std::to_string(horizon_));
  }
  boxes_.push_back(std::move(b));
}

bool contains(const EventUnion& event, const PrequentialPrefix& prefix) {
  if (prefix.size() != event.horizon()) {
    throw ArityError("prefix length " + std::to_string(prefix.size()) +
                     " differs from event horizon " + std::to_string(event.horizon()));
  }
  return std::any_of(event.boxes().begin(), event.boxes().end(),
                     [&](const Box& b) { return b.contains(prefix); });
}

EventUnion unite(const EventUnion& a, const EventUnion& b) {
  if (a.horizon() != b.horizon()) throw ArityError("cannot unite events of different horizons");
  std::vector<Box> boxes = a.boxes();
  boxes.insert(boxes.end(), b.boxes().begin(), b.boxes().end());
  return EventUnion(a.horizon(), std::move(boxes));
}

EventUnion intersect(const EventUnion& a, const EventUnion& b) {
  if (a.horizon() != b.horizon()) throw ArityError("cannot intersect events of different horizons");
  EventUnion out(a.horizon());
  for (const Box& x : a.boxes()) {
    for (const Box& y : b.boxes()) {
      if (auto z = x.intersect(y)) out.add(std::move(*z));
    }
  }
  return out;
}

bool Cell::contains(const Rational& p) const {
  const bool above = lo_closed ? p >= lo : p > lo;
  const bool below = hi_closed ? p <= hi : p < hi;
  return above && below;
}

Rational Cell::representative() const {
  if (is_point()) return lo;
  return (lo + hi) / 2;
}

std::size_t ForecastPartition::cell_of(const Rational& p) const {
  // Cells are ordered; the first cell whose upper end admits p holds it.
  auto it = std::partition_point(cells.begin(), cells.end(), [&](const Cell& c) {
    return c.hi_closed ? c.hi < p : c.hi <= p;
  });
  if (it == cells.end() || !it->contains(p)) {
    throw std::out_of_range("forecast " + to_string(p) + " outside the partitioned axis");
  }
  return static_cast<std::size_t>(it - cells.begin());
}

ForecastPartition forecast_partition(const EventUnion& event, std::size_t step) {
  if (step == 0 || step > event.horizon()) {
    throw std::out_of_range("step " + std::to_string(step) + " outside 1.." +
                            std::to_string(event.horizon()));
  }
  const std::size_t i = step - 1;

  ForecastPartition part;
  part.breakpoints = {Rational(0), Rational(1)};
  for (const Box& b : event.boxes()) {
    part.breakpoints.push_back(b.step(i).p.lo);
    part.breakpoints.push_back(b.step(i).p.hi);
  }
  std::sort(part.breakpoints.begin(), part.breakpoints.end());
  part.breakpoints.erase(std::unique(part.breakpoints.begin(), part.breakpoints.end()),
                         part.breakpoints.end());

  // Atoms: each breakpoint as a point, and each open gap between neighbours.
  std::vector<Cell> atoms;
  for (std::size_t k = 0; k < part.breakpoints.size(); ++k) {
    const Rational& b = part.breakpoints[k];
    atoms.push_back(Cell{b, b, true, true});
    if (k + 1 < part.breakpoints.size()) {
      atoms.push_back(Cell{b, part.breakpoints[k + 1], false, false});
    }
  }

  auto pattern = [&](const Cell& c) {
    const Rational probe = c.representative();
    std::vector<bool> bits;
    bits.reserve(event.size());
    for (const Box& b : event.boxes()) bits.push_back(b.step(i).p.contains(probe));
    return bits;
  };

  // Merge adjacent atoms with identical membership patterns.
  std::vector<bool> current = pattern(atoms.front());
  Cell merged = atoms.front();
  for (std::size_t k = 1; k < atoms.size(); ++k) {
    std::vector<bool> next = pattern(atoms[k]);
    if (next == current) {
      merged.hi = atoms[k].hi;
      merged.hi_closed = atoms[k].hi_closed;
    } else {
      part.cells.push_back(merged);
      merged = atoms[k];
      current = std::move(next);
    }
  }
  part.cells.push_back(merged);
  return part;
}

RasterizedEvent rasterize(std::size_t horizon, const std::vector<Rational>& breakpoints,
                          const BoxClassifier& classify) {
  std::vector<Rational> grid = breakpoints;
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  if (grid.size() < 2 || grid.front() != 0 || grid.back() != 1) {
    throw std::invalid_argument("rasterize breakpoints must include 0 and 1");
  }

  const std::size_t tiles_per_step = 2 * (grid.size() - 1);
  RasterizedEvent out{EventUnion(horizon), EventUnion(horizon)};
  std::vector<std::size_t> digit(horizon, 0);
  while (true) {
    std::vector<BoxStep> steps;
    steps.reserve(horizon);
    for (std::size_t d : digit) {
      const std::size_t g = d / 2;
      steps.push_back(BoxStep{Interval::closed(grid[g], grid[g + 1]),
                              d % 2 == 1 ? BitConstraint::One : BitConstraint::Zero});
    }
    Box tile(std::move(steps));
    switch (classify(tile)) {
      case BoxVerdict::Inside:
        out.inner.add(tile);
        out.outer.add(std::move(tile));
        break;
      case BoxVerdict::Straddles:
        out.outer.add(std::move(tile));
        break;
      case BoxVerdict::Outside:
        break;
    }
    std::size_t k = 0;
    while (k < horizon && ++digit[k] == tiles_per_step) digit[k++] = 0;
    if (k == horizon) break;
  }
  return out;
}

}  // namespace preq
