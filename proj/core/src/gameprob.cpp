#include "preq/gameprob.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

#include "preq/error.hpp"

namespace preq {
namespace {

std::vector<ForecastPartition> all_partitions(const EventUnion& event) {
  std::vector<ForecastPartition> parts;
  parts.reserve(event.horizon());
  for (std::size_t step = 1; step <= event.horizon(); ++step) {
    parts.push_back(forecast_partition(event, step));
  }
  return parts;
}

bool any(const std::vector<bool>& mask) {
  return std::find(mask.begin(), mask.end(), true) != mask.end();
}

}  // namespace

CellPath CellPath::parse(std::string_view text) {
  CellPath path;
  if (text.empty()) return path;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string_view item = text.substr(pos, comma - pos);
    const std::size_t colon = item.find(':');
    if (colon == std::string_view::npos || colon + 2 != item.size()) {
      throw ParseError("malformed cell-path entry '" + std::string(item) + "'");
    }
    std::size_t cell = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + colon, cell);
    if (ec != std::errc() || ptr != item.data() + colon || colon == 0) {
      throw ParseError("malformed cell index in '" + std::string(item) + "'");
    }
    const char b = item[colon + 1];
    if (b != '0' && b != '1') throw ParseError("malformed bit in '" + std::string(item) + "'");
    path.push_back(Entry{cell, b == '1' ? Outcome::One : Outcome::Zero});
    pos = comma + 1;
  }
  return path;
}

std::string CellPath::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i > 0) s += ',';
    s += std::to_string(entries_[i].cell);
    s += ':';
    s += entries_[i].y == Outcome::One ? '1' : '0';
  }
  return s;
}

ValueFunction::ValueFunction(std::vector<ForecastPartition> partitions)
    : partitions_(std::move(partitions)) {
  if (partitions_.empty()) throw std::invalid_argument("value function needs a positive horizon");
  std::size_t width = 1;
  std::size_t total = 1;
  levels_.emplace_back(1, Rational(0));
  for (const ForecastPartition& part : partitions_) {
    width *= 2 * part.size();
    total += width;
    if (total > kMaxEntries) {
      throw GuardError("cell-refined tree exceeds " + std::to_string(kMaxEntries) + " nodes");
    }
    levels_.emplace_back(width, Rational(0));
  }
}

std::size_t ValueFunction::index_of(const CellPath& path) const {
  if (path.size() > horizon()) throw HorizonError("cell-path longer than the horizon");
  std::size_t index = 0;
  for (std::size_t level = 0; level < path.size(); ++level) {
    if (path[level].cell >= partitions_[level].size()) {
      throw StructuralError("cell index " + std::to_string(path[level].cell) + " out of range at step " +
                            std::to_string(level + 1));
    }
    index = child_index(level, index, path[level].cell, path[level].y);
  }
  return index;
}

CellPath ValueFunction::path_of(std::size_t level, std::size_t index) const {
  std::vector<CellPath::Entry> entries(level);
  for (std::size_t l = level; l-- > 0;) {
    const Outcome y = (index % 2 == 1) ? Outcome::One : Outcome::Zero;
    index /= 2;
    const std::size_t cells = partitions_[l].size();
    entries[l] = CellPath::Entry{index % cells, y};
    index /= cells;
  }
  return CellPath(std::move(entries));
}

CellPath ValueFunction::locate(const PrequentialPrefix& prefix) const {
  if (prefix.size() > horizon()) {
    throw HorizonError("prefix of length " + std::to_string(prefix.size()) + " exceeds horizon " +
                       std::to_string(horizon()));
  }
  CellPath path;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    path.push_back(CellPath::Entry{partitions_[i].cell_of(prefix[i].p.value()), prefix[i].y});
  }
  return path;
}

GameEngine::GameEngine(EventUnion event) : event_(std::move(event)), table_(all_partitions(event_)) {
  const std::size_t n_boxes = event_.size();
  cell_masks_.resize(event_.horizon());
  for (std::size_t i = 0; i < event_.horizon(); ++i) {
    const ForecastPartition& part = table_.partition(i + 1);
    for (const Cell& cell : part.cells) {
      const Rational probe = cell.representative();
      std::vector<bool> mask(n_boxes);
      for (std::size_t b = 0; b < n_boxes; ++b) mask[b] = event_.boxes()[b].step(i).p.contains(probe);
      cell_masks_[i].push_back(std::move(mask));
    }
  }
  solve(0, 0, std::vector<bool>(n_boxes, true));
}

Rational GameEngine::solve(std::size_t level, std::size_t index, const std::vector<bool>& alive) {
  // Subtrees off every box stay at their zero initialisation.
  if (!any(alive)) return Rational(0);
  if (level == event_.horizon()) {
    table_.at(level, index) = 1;
    return Rational(1);
  }

  const ForecastPartition& part = table_.partition(level + 1);
  std::vector<bool> child_alive(alive.size());
  for (std::size_t c = 0; c < part.size(); ++c) {
    for (Outcome y : {Outcome::Zero, Outcome::One}) {
      for (std::size_t b = 0; b < alive.size(); ++b) {
        child_alive[b] = alive[b] && cell_masks_[level][c][b] &&
                         admits(event_.boxes()[b].step(level).y, y);
      }
      solve(level + 1, table_.child_index(level, index, c, y), child_alive);
    }
  }

  const CellSup sup = sup_over_cells(part, [&](std::size_t c, Outcome y) -> const Rational& {
    return table_.at(level + 1, table_.child_index(level, index, c, y));
  });
  if (!sup.argmax) {
    throw std::logic_error("supremum not attained at a closed cell endpoint; event is not closed");
  }
  table_.at(level, index) = sup.value;
  return sup.value;
}

const Rational& GameEngine::conditional(const PrequentialPrefix& x) const {
  return table_.at(table_.locate(x));
}

Forecast GameEngine::optimal_forecast(const PrequentialPrefix& x) const {
  if (x.size() >= event_.horizon()) {
    throw HorizonError("no forecast to choose at prefix length " + std::to_string(x.size()) +
                       " for horizon " + std::to_string(event_.horizon()));
  }
  const CellPath path = table_.locate(x);
  const std::size_t level = path.size();
  const std::size_t index = table_.index_of(path);
  const CellSup sup = sup_over_cells(table_.partition(level + 1), [&](std::size_t c, Outcome y) -> const Rational& {
    return table_.at(level + 1, table_.child_index(level, index, c, y));
  });
  return Forecast(*sup.argmax);
}

Rational upper_game_probability(const EventUnion& event) {
  return GameEngine(event).upper_probability();
}

namespace {

Rational rooted_value(const EventUnion& event, const std::vector<ForecastPartition>& parts,
                      std::size_t level, const std::vector<bool>& alive) {
  if (!any(alive)) return Rational(0);
  if (level == event.horizon()) return Rational(1);

  const ForecastPartition& part = parts[level];
  std::vector<Rational> children(2 * part.size());
  std::vector<bool> child_alive(alive.size());
  for (std::size_t c = 0; c < part.size(); ++c) {
    // Any forecast inside the cell sees the same boxes.
    const Rational probe = part.cells[c].representative();
    for (Outcome y : {Outcome::Zero, Outcome::One}) {
      for (std::size_t b = 0; b < alive.size(); ++b) {
        const BoxStep& s = event.boxes()[b].step(level);
        child_alive[b] = alive[b] && s.p.contains(probe) && admits(s.y, y);
      }
      children[2 * c + static_cast<std::size_t>(bit(y))] =
          rooted_value(event, parts, level + 1, child_alive);
    }
  }
  return sup_over_cells(part, [&](std::size_t c, Outcome y) -> const Rational& {
           return children[2 * c + static_cast<std::size_t>(bit(y))];
         }).value;
}

}  // namespace

Rational conditional_upper_probability(const EventUnion& event, const PrequentialPrefix& x) {
  if (x.size() > event.horizon()) {
    throw HorizonError("prefix of length " + std::to_string(x.size()) + " exceeds horizon " +
                       std::to_string(event.horizon()));
  }
  std::vector<bool> alive(event.size());
  for (std::size_t b = 0; b < event.size(); ++b) {
    const Box& box = event.boxes()[b];
    bool ok = true;
    for (std::size_t i = 0; i < x.size() && ok; ++i) ok = box.admits_step(i, x[i]);
    alive[b] = ok;
  }
  return rooted_value(event, all_partitions(event), x.size(), alive);
}

ValueFunction witness_superfarthingale(const EventUnion& event) {
  return GameEngine(event).witness();
}

Forecast optimal_forecast_at(const EventUnion& event, const PrequentialPrefix& x) {
  return GameEngine(event).optimal_forecast(x);
}

}  // namespace preq
