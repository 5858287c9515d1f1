#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "preq/error.hpp"
#include "preq/rational.hpp"

namespace {

using namespace preq;
using namespace preq::cli;

/// Wires a rational-valued option ("3", "1/2", "0.25") into a Rational.
CLI::Option* add_rational(CLI::App* app, const std::string& name, Rational& target, const std::string& help) {
  return app->add_option_function<std::string>(
                 name, [&target](const std::string& text) { target = parse_rational(text); }, help)
      ->default_str(to_string(target));
}

int emit(const CommandResult& r, bool json) {
  if (r.raw_output) {
    std::cout << *r.raw_output;
  } else if (json) {
    std::cout << r.report.to_json();
  } else {
    std::cout << r.report.to_text();
  }
  if (r.exit_code == kInputError) {
    for (const Check& c : r.report.checks) {
      if (!c.pass) std::cerr << "error: " << c.detail << "\n";
    }
  }
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact upper probabilities and forecast-stream tests for the prequential protocol"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json = false;
  app.add_flag("--json", json, "Print the report as JSON");

  const std::uint64_t seed_default = default_seed();

  ValueOptions value;
  std::string engine = "both";
  auto* value_cmd = app.add_subcommand("value", "Upper probability of an event");
  value_cmd->add_option("--event", value.event_path, "Event JSON file")->required()->check(CLI::ExistingFile);
  value_cmd->add_option("--engine", engine, "game, measure or both")
      ->check(CLI::IsMember({"game", "measure", "both"}))
      ->capture_default_str();
  value_cmd->add_option("--grid", value.grid, "Also run the grid oracle with step 1/K");
  value_cmd->add_option("--table-out", value.table_out, "Write the witness value function here");
  value_cmd->add_option("--witness-out", value.witness_out, "Write the maximising forecasting system here");

  CounterexampleOptions counter;
  auto* counter_cmd = app.add_subcommand("counterexample", "Failure of strong subadditivity");
  counter_cmd->add_flag("--measure", counter.measure, "Use the measure-theoretic engine");

  TestStreamOptions stream;
  std::size_t stream_horizon = 0;
  auto* stream_cmd = app.add_subcommand("test-stream", "Calibration test of a forecast stream");
  stream_cmd->add_option("--stream", stream.stream_path, "Stream CSV file (header p,y)")->required();
  stream_cmd->add_option("-N", stream_horizon, "Horizon (default: stream length)");
  add_rational(stream_cmd, "-C", stream.threshold, "Rejection threshold");

  VilleOptions ville;
  ville.seed = seed_default;
  auto* ville_cmd = app.add_subcommand("ville", "Empirical check of Ville's inequality");
  ville_cmd->add_option("--phi", ville.phi_path, "Forecasting system JSON (default: constant forecast)");
  add_rational(ville_cmd, "--forecast", ville.forecast, "Constant forecast when --phi is absent");
  ville_cmd->add_option("-N", ville.horizon, "Horizon when --phi is absent")->capture_default_str();
  ville_cmd->add_option("--strategy", ville.strategy, "doubling, all-in-zero, linear or constant")
      ->check(CLI::IsMember({"doubling", "all-in-zero", "linear", "constant"}))
      ->capture_default_str();
  add_rational(ville_cmd, "--stake", ville.stake, "Stake of the linear strategy");
  add_rational(ville_cmd, "-C", ville.level, "Capital level");
  ville_cmd->add_option("--samples", ville.samples, "Sampled paths")->capture_default_str();
  ville_cmd->add_option("--seed", ville.seed, "Seed (default: PREQ_SEED or 1)");
  ville_cmd->add_option("--threads", ville.threads, "Worker threads")->capture_default_str();

  DualitySweepOptions sweep;
  sweep.seed = seed_default;
  auto* sweep_cmd = app.add_subcommand("duality-sweep", "Compare both engines on random events");
  sweep_cmd->add_option("--count", sweep.count, "Number of events")->capture_default_str();
  sweep_cmd->add_option("--seed", sweep.seed, "Seed (default: PREQ_SEED or 1)");
  sweep_cmd->add_option("--max-horizon", sweep.max_horizon)->capture_default_str();
  sweep_cmd->add_option("--max-boxes", sweep.max_boxes)->capture_default_str();
  sweep_cmd->add_option("--max-denominator", sweep.max_denominator)->capture_default_str();
  sweep_cmd->add_option("--grid", sweep.grid, "Also compare against the grid oracle with step 1/K");

  LevyTraceOptions levy;
  auto* levy_cmd = app.add_subcommand("levy-trace", "Capital of the zero-one strategy along a stream");
  levy_cmd->add_option("--event", levy.event_path, "Event JSON file")->required();
  levy_cmd->add_option("--stream", levy.stream_path, "Stream CSV file")->required();
  add_rational(levy_cmd, "-a,--threshold", levy.threshold, "Threshold in (0,1)");

  VerifyOptions verify;
  std::string mode = "super";
  auto* verify_cmd = app.add_subcommand("verify", "Check a value-function table");
  verify_cmd->add_option("--table", verify.table_path, "Value-function JSON file")->required();
  verify_cmd->add_option("--mode", mode, "exact or super")
      ->check(CLI::IsMember({"exact", "super"}))
      ->capture_default_str();

  ProbOptions prob;
  prob.seed = seed_default;
  auto* prob_cmd = app.add_subcommand("prob", "Probability of an event under a forecasting system");
  prob_cmd->add_option("--phi", prob.phi_path, "Forecasting system JSON")->required();
  prob_cmd->add_option("--event", prob.event_path, "Event JSON file")->required();
  prob_cmd->add_option("--samples", prob.samples, "Monte Carlo samples (0 = exact only)")->capture_default_str();
  prob_cmd->add_option("--seed", prob.seed, "Seed (default: PREQ_SEED or 1)");

  SampleStreamOptions sample;
  sample.seed = seed_default;
  auto* sample_cmd = app.add_subcommand("sample-stream", "Draw a forecast/outcome stream as CSV");
  sample_cmd->add_option("--phi", sample.phi_path, "Forecasting system JSON (default: constant forecast)");
  add_rational(sample_cmd, "--forecast", sample.forecast, "Constant forecast when --phi is absent");
  sample_cmd->add_option("-N", sample.horizon, "Length when --phi is absent")->capture_default_str();
  sample_cmd->add_option("--seed", sample.seed, "Seed (default: PREQ_SEED or 1)");
  sample_cmd->add_option("--out", sample.out_path, "Write here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kSuccess : kInputError;
  } catch (const preq::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }

  if (*value_cmd) {
    value.engine = engine == "game" ? Engine::Game : engine == "measure" ? Engine::Measure : Engine::Both;
    return emit(cmd_value(value), json);
  }
  if (*counter_cmd) return emit(cmd_counterexample(counter), json);
  if (*stream_cmd) {
    if (stream_cmd->count("-N") > 0) stream.horizon = stream_horizon;
    return emit(cmd_test_stream(stream), json);
  }
  if (*ville_cmd) return emit(cmd_ville(ville), json);
  if (*sweep_cmd) return emit(cmd_duality_sweep(sweep), json);
  if (*levy_cmd) return emit(cmd_levy_trace(levy), json);
  if (*verify_cmd) {
    verify.mode = mode == "exact" ? FarthingaleMode::Exact : FarthingaleMode::Super;
    return emit(cmd_verify(verify), json);
  }
  if (*prob_cmd) return emit(cmd_prob(prob), json);
  if (*sample_cmd) return emit(cmd_sample_stream(sample), json);
  return kInputError;
}
