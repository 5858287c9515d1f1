#include "preq/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "preq/error.hpp"

namespace preq {
namespace {

using nlohmann::json;

json parse_document(std::string_view text, const char* what) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

Rational rational_field(const json& j, const std::string& where) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw ParseError(where + ": expected a rational string");
}

std::size_t horizon_field(const json& doc, const char* what) {
  if (!doc.is_object() || !doc.contains("horizon") || !doc["horizon"].is_number_unsigned()) {
    throw ParseError(std::string(what) + ": missing non-negative integer \"horizon\"");
  }
  const auto n = doc["horizon"].get<std::size_t>();
  if (n == 0) throw ParseError(std::string(what) + ": horizon must be positive");
  return n;
}

BitConstraint bit_constraint(const json& j, const std::string& where) {
  if (j.is_number_integer()) {
    const auto b = j.get<long long>();
    if (b == 0) return BitConstraint::Zero;
    if (b == 1) return BitConstraint::One;
  } else if (j.is_string() && j.get<std::string>() == "*") {
    return BitConstraint::Any;
  }
  throw ParseError(where + ": \"y\" must be 0, 1 or \"*\"");
}

json cell_json(const Cell& c) {
  return json{{"lo", to_string(c.lo)}, {"hi", to_string(c.hi)}, {"lo_closed", c.lo_closed}, {"hi_closed", c.hi_closed}};
}

}  // namespace

EventUnion parse_event_json(std::string_view text) {
  const json doc = parse_document(text, "event");
  const std::size_t horizon = horizon_field(doc, "event");
  if (!doc.contains("boxes") || !doc["boxes"].is_array()) throw ParseError("event: missing \"boxes\" array");

  EventUnion event(horizon);
  for (std::size_t b = 0; b < doc["boxes"].size(); ++b) {
    const json& box = doc["boxes"][b];
    const std::string where = "event box " + std::to_string(b);
    if (!box.is_object() || !box.contains("steps") || !box["steps"].is_array()) {
      throw ParseError(where + ": missing \"steps\" array");
    }
    if (box["steps"].size() != horizon) {
      throw ParseError(where + ": has " + std::to_string(box["steps"].size()) + " steps, horizon is " +
                       std::to_string(horizon));
    }
    std::vector<BoxStep> steps;
    for (std::size_t i = 0; i < horizon; ++i) {
      const json& s = box["steps"][i];
      const std::string at = where + " step " + std::to_string(i + 1);
      if (!s.is_object() || !s.contains("p") || !s["p"].is_array() || s["p"].size() != 2 || !s.contains("y")) {
        throw ParseError(at + ": expected {\"p\": [lo, hi], \"y\": ...}");
      }
      Rational lo = rational_field(s["p"][0], at);
      Rational hi = rational_field(s["p"][1], at);
      if (!(0 <= lo && lo <= hi && hi <= 1)) {
        throw ParseError(at + ": [" + to_string(lo) + ", " + to_string(hi) + "] is not a closed subinterval of [0,1]");
      }
      steps.push_back(BoxStep{Interval::closed(std::move(lo), std::move(hi)), bit_constraint(s["y"], at)});
    }
    event.add(Box(std::move(steps)));
  }
  return event;
}

std::string event_to_json(const EventUnion& event) {
  json boxes = json::array();
  for (const Box& b : event.boxes()) {
    json steps = json::array();
    for (const BoxStep& s : b.steps()) {
      json y;
      switch (s.y) {
        case BitConstraint::Zero: y = 0; break;
        case BitConstraint::One: y = 1; break;
        case BitConstraint::Any: y = "*"; break;
      }
      steps.push_back(json{{"p", json::array({to_string(s.p.lo), to_string(s.p.hi)})}, {"y", y}});
    }
    boxes.push_back(json{{"steps", steps}});
  }
  return json{{"horizon", event.horizon()}, {"boxes", boxes}}.dump(2);
}

ForecastingSystem parse_forecasting_system_json(std::string_view text) {
  const json doc = parse_document(text, "forecasting system");
  const std::size_t horizon = horizon_field(doc, "forecasting system");
  if (horizon > ForecastingSystem::kMaxHorizon) {
    throw ParseError("forecasting system: horizon above " + std::to_string(ForecastingSystem::kMaxHorizon));
  }
  if (!doc.contains("table") || !doc["table"].is_object()) {
    throw ParseError("forecasting system: missing \"table\" object");
  }
  ForecastingSystem phi = ForecastingSystem::constant(horizon, 0);
  std::vector<bool> seen(phi.table_size(), false);
  for (const auto& [key, value] : doc["table"].items()) {
    const BinaryHistory x = BinaryHistory::from_string(key);
    if (x.size() >= horizon) throw ParseError("forecasting system: key '" + key + "' is beyond the horizon");
    Rational p = rational_field(value, "forecasting system key '" + key + "'");
    if (!in_unit_interval(p)) throw ParseError("forecasting system: forecast at '" + key + "' outside [0,1]");
    phi.set(x, Forecast(std::move(p)));
    seen[ForecastingSystem::index_of(x)] = true;
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) {
      throw StructuralError("forecasting system: no forecast for history '" +
                            ForecastingSystem::history_of(i).to_string() + "'");
    }
  }
  return phi;
}

std::string forecasting_system_to_json(const ForecastingSystem& phi) {
  json table = json::object();
  for (std::size_t i = 0; i < phi.table_size(); ++i) {
    table[ForecastingSystem::history_of(i).to_string()] = to_string(phi.table()[i].value());
  }
  return json{{"horizon", phi.horizon()}, {"table", table}}.dump(2);
}

ValueFunction parse_value_function_json(std::string_view text) {
  const json doc = parse_document(text, "value function");
  const std::size_t horizon = horizon_field(doc, "value function");
  if (!doc.contains("partitions") || !doc["partitions"].is_array() || doc["partitions"].size() != horizon) {
    throw StructuralError("value function: need one partition per step");
  }
  std::vector<ForecastPartition> parts;
  for (std::size_t i = 0; i < horizon; ++i) {
    ForecastPartition part;
    const json& cells = doc["partitions"][i];
    if (!cells.is_array() || cells.empty()) throw StructuralError("value function: empty partition");
    for (const json& c : cells) {
      const std::string at = "value function partition " + std::to_string(i + 1);
      if (!c.is_object() || !c.contains("lo") || !c.contains("hi")) throw ParseError(at + ": cell needs lo and hi");
      Cell cell{rational_field(c["lo"], at), rational_field(c["hi"], at), c.value("lo_closed", true),
                c.value("hi_closed", true)};
      part.breakpoints.push_back(cell.lo);
      part.breakpoints.push_back(cell.hi);
      part.cells.push_back(std::move(cell));
    }
    // Cells must tile [0,1] in order without gaps or overlaps.
    const Cell& first = part.cells.front();
    const Cell& last = part.cells.back();
    bool tiled = first.lo == 0 && first.lo_closed && last.hi == 1 && last.hi_closed;
    for (std::size_t k = 0; k + 1 < part.cells.size() && tiled; ++k) {
      const Cell& a = part.cells[k];
      const Cell& b = part.cells[k + 1];
      tiled = a.hi == b.lo && a.hi_closed != b.lo_closed && a.lo <= a.hi;
    }
    if (!tiled) throw StructuralError("value function: partition " + std::to_string(i + 1) + " does not tile [0,1]");
    std::sort(part.breakpoints.begin(), part.breakpoints.end());
    part.breakpoints.erase(std::unique(part.breakpoints.begin(), part.breakpoints.end()), part.breakpoints.end());
    parts.push_back(std::move(part));
  }

  ValueFunction table(std::move(parts));
  if (!doc.contains("values") || !doc["values"].is_object()) {
    throw StructuralError("value function: missing \"values\" object");
  }
  std::vector<std::vector<bool>> seen;
  for (std::size_t level = 0; level <= horizon; ++level) seen.emplace_back(table.level_size(level), false);
  for (const auto& [key, value] : doc["values"].items()) {
    const CellPath path = CellPath::parse(key);
    if (path.size() > horizon) throw StructuralError("value function: key '" + key + "' is beyond the horizon");
    const std::size_t index = table.index_of(path);
    table.at(path.size(), index) = rational_field(value, "value function key '" + key + "'");
    seen[path.size()][index] = true;
  }
  for (std::size_t level = 0; level <= horizon; ++level) {
    for (std::size_t index = 0; index < seen[level].size(); ++index) {
      if (!seen[level][index]) {
        throw StructuralError("value function: missing value for cell-path '" +
                              table.path_of(level, index).to_string() + "'");
      }
    }
  }
  return table;
}

std::string value_function_to_json(const ValueFunction& table) {
  json partitions = json::array();
  for (const ForecastPartition& part : table.partitions()) {
    json cells = json::array();
    for (const Cell& c : part.cells) cells.push_back(cell_json(c));
    partitions.push_back(cells);
  }
  json values = json::object();
  for (std::size_t level = 0; level <= table.horizon(); ++level) {
    for (std::size_t index = 0; index < table.level_size(level); ++index) {
      values[table.path_of(level, index).to_string()] = to_string(table.at(level, index));
    }
  }
  return json{{"horizon", table.horizon()}, {"partitions", partitions}, {"values", values}}.dump(2);
}

std::vector<Step> parse_stream_csv(std::istream& in) {
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::string compact;
    for (char c : line) {
      if (c != ' ' && c != '\t') compact += c;
    }
    if (compact != "p,y") throw ParseError("stream: expected header \"p,y\", got \"" + line + "\"");
    have_header = true;
    break;
  }
  if (!have_header) throw ParseError("stream: empty input, expected header \"p,y\"");

  std::vector<Step> stream;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    ++row;
    const std::string where = "stream row " + std::to_string(row);
    const auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
      throw ParseError(where + ": expected two fields \"p,y\"");
    }
    Rational p;
    try {
      p = parse_rational(std::string_view(line).substr(0, comma));
    } catch (const ParseError& e) {
      throw ParseError(where + ": " + e.what());
    }
    if (!in_unit_interval(p)) throw ParseError(where + ": forecast outside [0,1]");
    std::string y = line.substr(comma + 1);
    y.erase(0, y.find_first_not_of(" \t"));
    y.erase(y.find_last_not_of(" \t") + 1);
    if (y != "0" && y != "1") throw ParseError(where + ": outcome must be 0 or 1");
    stream.push_back(Step{Forecast(std::move(p)), y == "1" ? Outcome::One : Outcome::Zero});
  }
  return stream;
}

std::string stream_to_csv(const std::vector<Step>& stream) {
  std::string out = "p,y\n";
  for (const Step& s : stream) {
    out += to_string(s.p.value());
    out += ',';
    out += s.y == Outcome::One ? '1' : '0';
    out += '\n';
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace preq
