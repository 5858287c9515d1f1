#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "preq/rational.hpp"
#include "preq/strategies.hpp"
#include "report.hpp"

namespace preq::cli {

struct CommandResult {
  Report report;
  int exit_code = kSuccess;
  /// Printed verbatim instead of the report when set (e.g. CSV output).
  std::optional<std::string> raw_output;
};

enum class Engine { Game, Measure, Both };

struct ValueOptions {
  std::string event_path;
  Engine engine = Engine::Both;
  /// Also run the grid brute-force oracle at this resolution.
  std::optional<unsigned> grid;
  /// Where to write the witness superfarthingale (value-function JSON).
  std::string table_out;
  /// Where to write the maximising forecasting system (JSON).
  std::string witness_out;
};
CommandResult cmd_value(const ValueOptions& opts);

struct CounterexampleOptions {
  bool measure = false;
};
CommandResult cmd_counterexample(const CounterexampleOptions& opts);

struct TestStreamOptions {
  std::string stream_path;
  /// Defaults to the stream length.
  std::optional<std::size_t> horizon;
  Rational threshold{1};
};
CommandResult cmd_test_stream(const TestStreamOptions& opts);

struct VilleOptions {
  /// Forecasting system file; when empty the constant `forecast` is used.
  std::string phi_path;
  Rational forecast{1, 2};
  std::size_t horizon = 10;
  /// doubling | all-in-zero | linear | constant
  std::string strategy = "doubling";
  Rational stake{1, 2};
  Rational level{4};
  std::size_t samples = 10000;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};
CommandResult cmd_ville(const VilleOptions& opts);

struct DualitySweepOptions {
  std::size_t count = 200;
  std::uint64_t seed = 1;
  std::size_t max_horizon = 3;
  std::size_t max_boxes = 3;
  unsigned max_denominator = 8;
  std::optional<unsigned> grid;
};
CommandResult cmd_duality_sweep(const DualitySweepOptions& opts);

struct LevyTraceOptions {
  std::string event_path;
  std::string stream_path;
  Rational threshold{3, 4};
};
CommandResult cmd_levy_trace(const LevyTraceOptions& opts);

struct VerifyOptions {
  std::string table_path;
  FarthingaleMode mode = FarthingaleMode::Super;
};
CommandResult cmd_verify(const VerifyOptions& opts);

struct ProbOptions {
  std::string phi_path;
  std::string event_path;
  /// 0 skips the Monte Carlo estimate.
  std::size_t samples = 0;
  std::uint64_t seed = 1;
};
CommandResult cmd_prob(const ProbOptions& opts);

struct SampleStreamOptions {
  std::string phi_path;
  Rational forecast{1, 2};
  std::size_t horizon = 100;
  std::uint64_t seed = 1;
  std::string out_path;
};
CommandResult cmd_sample_stream(const SampleStreamOptions& opts);

/// Seed from PREQ_SEED when set and parsable, else `fallback`.
std::uint64_t default_seed(std::uint64_t fallback = 1);

}  // namespace preq::cli
