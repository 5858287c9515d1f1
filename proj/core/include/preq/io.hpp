#pragma once

#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "preq/events.hpp"
#include "preq/gameprob.hpp"
#include "preq/prequential.hpp"

namespace preq {

// Event files:
//   {"horizon": N, "boxes": [{"steps": [{"p": ["lo","hi"], "y": 0|1|"*"}, ...]}, ...]}
// Forecasting systems:
//   {"horizon": N, "table": {"<bitstring>": "num/den", ...}}, root keyed "".
// Value functions:
//   {"horizon": N,
//    "partitions": [[{"lo": "a/b", "hi": "c/d", "lo_closed": true, "hi_closed": false}, ...], ...],
//    "values": {"<cell-path>": "num/den", ...}}
// Rationals are "num/den" strings on output; parsers also accept integers and decimals.
// All parsers throw ParseError; incomplete tables throw StructuralError.

EventUnion parse_event_json(std::string_view text);
std::string event_to_json(const EventUnion& event);

ForecastingSystem parse_forecasting_system_json(std::string_view text);
std::string forecasting_system_to_json(const ForecastingSystem& phi);

ValueFunction parse_value_function_json(std::string_view text);
std::string value_function_to_json(const ValueFunction& table);

/// Forecast stream CSV: header "p,y", then one "p,y" row per round with p
/// as a decimal or "num/den" and y in {0,1}. Blank lines are skipped. Errors
/// name the 1-based data row.
std::vector<Step> parse_stream_csv(std::istream& in);
std::string stream_to_csv(const std::vector<Step>& stream);

std::string read_file(const std::string& path);

}  // namespace preq
