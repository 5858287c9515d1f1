#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "oracles.hpp"
#include "preq/error.hpp"
#include "preq/gameprob.hpp"
#include "preq/io.hpp"
#include "preq/random.hpp"

namespace preq {
namespace {

std::vector<Step> csv(const std::string& text) {
  std::istringstream in(text);
  return parse_stream_csv(in);
}

TEST(EventJson, RoundTripsRandomEvents) {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 100; ++trial) {
    const EventUnion e = random_event(rng);
    EXPECT_EQ(parse_event_json(event_to_json(e)), e);
  }
}

TEST(EventJson, ReadsTheShippedCounterexample) {
  EXPECT_EQ(parse_event_json(read_file(testing::data_path("events/A.json"))), testing::counterexample_a());
  EXPECT_EQ(parse_event_json(read_file(testing::data_path("events/B.json"))), testing::counterexample_b());
}

TEST(EventJson, RejectsMalformedDocuments) {
  const char* bad[] = {
      "{",
      R"({"boxes": []})",
      R"({"horizon": 0, "boxes": []})",
      R"({"horizon": 1})",
      R"({"horizon": 1, "boxes": [{"steps": []}]})",
      R"({"horizon": 1, "boxes": [{"steps": [{"p": ["1/2", "1/3"], "y": 0}]}]})",
      R"({"horizon": 1, "boxes": [{"steps": [{"p": ["0", "1"], "y": 2}]}]})",
      R"({"horizon": 1, "boxes": [{"steps": [{"p": ["0", "x"], "y": 1}]}]})",
  };
  for (const char* text : bad) EXPECT_THROW(parse_event_json(text), ParseError) << text;
}

TEST(ForecastingSystemJson, RoundTripAndCompleteness) {
  std::mt19937_64 rng(52);
  const EventUnion e = random_event(rng);
  const ForecastingSystem phi = random_forecasting_system(rng, e);
  EXPECT_EQ(parse_forecasting_system_json(forecasting_system_to_json(phi)), phi);
  EXPECT_THROW(parse_forecasting_system_json(R"({"horizon": 2, "table": {"": "1/2", "0": "1/2"}})"),
               StructuralError);
  EXPECT_THROW(parse_forecasting_system_json(R"({"horizon": 1, "table": {"": "3/2"}})"), ParseError);
  EXPECT_THROW(parse_forecasting_system_json(R"({"horizon": 1, "table": {"": "1/2", "0": "1/2"}})"), ParseError);
}

TEST(ValueFunctionJson, RoundTripAndStructuralErrors) {
  const ValueFunction w = witness_superfarthingale(testing::counterexample_a());
  const std::string text = value_function_to_json(w);
  EXPECT_EQ(parse_value_function_json(text), w);

  auto doc = nlohmann::json::parse(text);
  doc["values"].erase("");
  EXPECT_THROW(parse_value_function_json(doc.dump()), StructuralError);

  doc = nlohmann::json::parse(text);
  doc["partitions"][0][0]["hi_closed"] = false;
  EXPECT_THROW(parse_value_function_json(doc.dump()), StructuralError);
}

TEST(StreamCsv, ParsesAndReportsRows) {
  const auto s = csv("p,y\n1/2,1\n0.25,0\r\n\n0,1\n");
  ASSERT_EQ(s.size(), 3U);
  EXPECT_EQ(s[1].p.value(), Rational(1, 4));
  EXPECT_EQ(s[2].y, Outcome::One);
  EXPECT_EQ(csv(stream_to_csv(s)), s);
  EXPECT_TRUE(csv("p,y\n").empty());
}

TEST(StreamCsv, Errors) {
  EXPECT_THROW(csv(""), ParseError);
  EXPECT_THROW(csv("x,y\n"), ParseError);
  try {
    csv("p,y\n1/2,1\n2,0\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("row 2"), std::string::npos) << e.what();
  }
  EXPECT_THROW(csv("p,y\n1/2,2\n"), ParseError);
  EXPECT_THROW(csv("p,y\n1/2\n"), ParseError);
}

TEST(ReadFile, MissingFileIsAParseError) { EXPECT_THROW(read_file("/nonexistent/file.json"), ParseError); }

}  // namespace
}  // namespace preq
