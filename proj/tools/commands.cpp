#include "commands.hpp"

#include <cmath>
#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "preq/error.hpp"
#include "preq/events.hpp"
#include "preq/gameprob.hpp"
#include "preq/io.hpp"
#include "preq/measureprob.hpp"
#include "preq/random.hpp"

namespace preq::cli {
namespace {

using nlohmann::ordered_json;

template <typename Body>
CommandResult guarded(const std::string& name, Body&& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    CommandResult r{Report{name}, kInputError, std::nullopt};
    r.report.check("input", false, e.what());
    return r;
  } catch (const StructuralError& e) {
    CommandResult r{Report{name}, kInputError, std::nullopt};
    r.report.check("input", false, e.what());
    return r;
  } catch (const ArityError& e) {
    CommandResult r{Report{name}, kInputError, std::nullopt};
    r.report.check("input", false, e.what());
    return r;
  } catch (const HorizonError& e) {
    CommandResult r{Report{name}, kInputError, std::nullopt};
    r.report.check("input", false, e.what());
    return r;
  } catch (const GuardError& e) {
    CommandResult r{Report{name}, kInputError, std::nullopt};
    r.report.check("size guard", false, e.what());
    return r;
  } catch (const CertificationError& e) {
    CommandResult r{Report{name}, kInputError, std::nullopt};
    r.report.check("certification", false, e.what());
    return r;
  } catch (const std::invalid_argument& e) {
    CommandResult r{Report{name}, kInputError, std::nullopt};
    r.report.check("input", false, e.what());
    return r;
  }
}

EventUnion load_event(Report& report, const std::string& path) {
  const std::string text = read_file(path);
  report.input_file("event", path, text);
  return parse_event_json(text);
}

ForecastingSystem load_phi(Report& report, const std::string& path) {
  const std::string text = read_file(path);
  report.input_file("phi", path, text);
  return parse_forecasting_system_json(text);
}

std::vector<Step> load_stream(Report& report, const std::string& path) {
  const std::string text = read_file(path);
  report.input_file("stream", path, text);
  std::istringstream in(text);
  return parse_stream_csv(in);
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << contents;
}

const char* engine_name(Engine e) {
  switch (e) {
    case Engine::Game: return "game";
    case Engine::Measure: return "measure";
    case Engine::Both: return "both";
  }
  return "both";
}

EventUnion point_event(std::vector<std::vector<std::pair<Rational, int>>> members) {
  EventUnion e(members.front().size());
  for (const auto& m : members) {
    PrequentialPrefix path;
    for (const auto& [p, y] : m) path.push_back(Step{Forecast(p), outcome_from_bit(y)});
    e.add(Box::point(path));
  }
  return e;
}

}  // namespace

std::uint64_t default_seed(std::uint64_t fallback) {
  if (const char* env = std::getenv("PREQ_SEED")) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
  }
  return fallback;
}

CommandResult cmd_value(const ValueOptions& opts) {
  return guarded("value", [&] {
    CommandResult r{Report{"value"}, kSuccess, std::nullopt};
    Report& rep = r.report;
    const EventUnion event = load_event(rep, opts.event_path);
    rep.input("engine", engine_name(opts.engine));
    if (opts.grid) rep.input("grid", *opts.grid);

    std::optional<Rational> game;
    std::optional<MeasureUpper> measure;
    if (opts.engine != Engine::Measure) {
      const GameEngine engine(event);
      game = engine.upper_probability();
      rep.result("game", *game);
      if (!opts.table_out.empty()) write_file(opts.table_out, value_function_to_json(engine.witness()));
    }
    if (opts.engine != Engine::Game) {
      measure = measure_upper_probability(event);
      rep.result("measure", measure->value);
      rep.result("witness_phi_root", measure->witness.table().front().value());
      const Rational achieved = exact_event_probability(measure->witness, event);
      rep.check("witness attains measure value", achieved == measure->value,
                "witness reaches " + to_string(achieved) + ", expected " + to_string(measure->value));
      if (!opts.witness_out.empty()) write_file(opts.witness_out, forecasting_system_to_json(measure->witness));
    }
    if (game && measure) {
      rep.check("game == measure", *game == measure->value,
                "game " + to_string(*game) + " differs from measure " + to_string(measure->value));
    }
    if (opts.grid) {
      const Rational grid = grid_bruteforce(event, *opts.grid);
      rep.result("grid", grid);
      const Rational reference = measure ? measure->value : *game;
      rep.check("grid <= exact", grid <= reference,
                "grid value " + to_string(grid) + " exceeds exact " + to_string(reference));
    }
    if (!rep.all_pass()) r.exit_code = kInvariantViolation;
    return r;
  });
}

CommandResult cmd_counterexample(const CounterexampleOptions& opts) {
  return guarded("counterexample", [&] {
    CommandResult r{Report{"counterexample"}, kSuccess, std::nullopt};
    Report& rep = r.report;
    rep.input("engine", opts.measure ? "measure" : "game");

    const Rational half(1, 2);
    // Each member lists (p1, y1), (p2, y2).
    const EventUnion A = point_event({{{0, 0}, {half, 0}}, {{half, 0}, {0, 0}}});
    const EventUnion B = point_event({{{0, 0}, {half, 0}}, {{half, 1}, {0, 0}}});

    auto value = [&](const EventUnion& e) {
      return opts.measure ? measure_upper_probability(e).value : upper_game_probability(e);
    };
    const Rational ua = value(A);
    const Rational ub = value(B);
    const Rational u_union = value(unite(A, B));
    const Rational u_inter = value(intersect(A, B));
    rep.result("UpProb(A)", ua);
    rep.result("UpProb(B)", ub);
    rep.result("UpProb(A|B)", u_union);
    rep.result("UpProb(A&B)", u_inter);
    const Rational lhs = u_union + u_inter;
    const Rational rhs = ua + ub;
    rep.result("UpProb(A|B)+UpProb(A&B)", lhs);
    rep.result("UpProb(A)+UpProb(B)", rhs);

    auto expect = [&](const char* name, const Rational& got, const Rational& want) {
      rep.check(std::string(name) + " = " + to_string(want), got == want, "got " + to_string(got));
    };
    expect("UpProb(A)", ua, half);
    expect("UpProb(B)", ub, half);
    expect("UpProb(A|B)", u_union, Rational(1));
    expect("UpProb(A&B)", u_inter, half);
    rep.check("strong subadditivity violated (3/2 > 1)", lhs > rhs && lhs == Rational(3, 2) && rhs == 1,
              to_string(lhs) + " vs " + to_string(rhs));
    if (!rep.all_pass()) r.exit_code = kInvariantViolation;
    return r;
  });
}

CommandResult cmd_test_stream(const TestStreamOptions& opts) {
  return guarded("test-stream", [&] {
    CommandResult r{Report{"test-stream"}, kSuccess, std::nullopt};
    Report& rep = r.report;
    const std::vector<Step> stream = load_stream(rep, opts.stream_path);
    const std::size_t horizon = opts.horizon.value_or(stream.size());
    rep.input("N", horizon);
    rep.input("C", to_string(opts.threshold));
    if (horizon == 0) throw ParseError("stream is empty; nothing to test");
    if (stream.size() < horizon) {
      throw ParseError("stream has " + std::to_string(stream.size()) + " rows, fewer than N = " +
                       std::to_string(horizon));
    }

    CalibrationState state = CalibrationState::start(horizon, opts.threshold);
    const Rational initial = state.capital();
    Rational min_capital = initial;
    for (std::size_t i = 0; i < horizon; ++i) {
      auto [next, capital] = calibration_step(std::move(state), stream[i]);
      state = std::move(next);
      if (capital < min_capital) min_capital = capital;
    }
    const CalibrationVerdict verdict = calibration_verdict(state);
    const std::vector<double> bias = bias_trajectory(std::span(stream).first(horizon));

    rep.result("S_N", state.sum);
    rep.result("A_N", state.variance);
    rep.result("initial_capital", initial);
    rep.result("final_capital", state.capital());
    rep.result("ratio", verdict.ratio);
    rep.result_float("ratio_float", to_double(verdict.ratio));
    rep.result_float("mean_bias", bias.back());
    rep.result_json("verdict", verdict.verdict == Verdict::Reject ? "reject" : "no_reject");

    rep.check("capital non-negative", min_capital >= 0, "capital fell to " + to_string(min_capital));
    if (verdict.verdict == Verdict::Reject) {
      const Rational floor = 4 * opts.threshold * opts.threshold;
      rep.check("rejection ratio >= 4C^2", verdict.ratio >= floor,
                "ratio " + to_string(verdict.ratio) + " below " + to_string(floor));
    }
    if (!rep.all_pass()) {
      r.exit_code = kInvariantViolation;
    } else if (verdict.verdict == Verdict::Reject) {
      r.exit_code = kRejected;
    }
    return r;
  });
}

CommandResult cmd_ville(const VilleOptions& opts) {
  return guarded("ville", [&] {
    CommandResult r{Report{"ville"}, kSuccess, std::nullopt};
    Report& rep = r.report;
    rep.seed = opts.seed;
    const ForecastingSystem phi = opts.phi_path.empty()
                                      ? ForecastingSystem::constant(opts.horizon, opts.forecast)
                                      : load_phi(rep, opts.phi_path);
    if (opts.phi_path.empty()) {
      rep.input("forecast", to_string(opts.forecast));
      rep.input("N", opts.horizon);
    }
    rep.input("strategy", opts.strategy);
    rep.input("C", to_string(opts.level));
    rep.input("samples", opts.samples);

    std::unique_ptr<Strategy> strategy;
    if (opts.strategy == "doubling") {
      strategy = std::make_unique<AllInStrategy>(Outcome::One);
    } else if (opts.strategy == "all-in-zero") {
      strategy = std::make_unique<AllInStrategy>(Outcome::Zero);
    } else if (opts.strategy == "linear") {
      rep.input("stake", to_string(opts.stake));
      strategy = std::make_unique<LinearBetStrategy>(opts.stake);
    } else if (opts.strategy == "constant") {
      strategy = std::make_unique<ConstantStrategy>();
    } else {
      throw std::invalid_argument("unknown strategy '" + opts.strategy + "'");
    }

    const VilleResult res = ville_check(phi, *strategy, opts.level, opts.samples, opts.seed, opts.threads);
    rep.result_float("frequency", res.frequency);
    rep.result_float("bound", res.bound);
    rep.result_json("hits", res.hits);
    const double slack = res.bound + 4.0 * std::sqrt(res.bound / static_cast<double>(res.samples));
    rep.check("frequency <= V(0)/C + 4 sqrt(bound/samples)", res.pass,
              "frequency " + format_float(res.frequency) + " exceeds " + format_float(slack));
    if (!res.pass) r.exit_code = kInvariantViolation;
    return r;
  });
}

CommandResult cmd_duality_sweep(const DualitySweepOptions& opts) {
  return guarded("duality-sweep", [&] {
    CommandResult r{Report{"duality-sweep"}, kSuccess, std::nullopt};
    Report& rep = r.report;
    rep.seed = opts.seed;
    rep.input("count", opts.count);
    rep.input("max_horizon", opts.max_horizon);
    rep.input("max_boxes", opts.max_boxes);
    rep.input("max_denominator", opts.max_denominator);
    if (opts.grid) rep.input("grid", *opts.grid);
    if (opts.max_denominator == 0) throw std::invalid_argument("max denominator must be positive");

    RandomEventOptions gen;
    gen.max_horizon = opts.max_horizon;
    gen.max_boxes = opts.max_boxes;
    gen.denominators.clear();
    for (unsigned d = 1; d <= opts.max_denominator; ++d) gen.denominators.push_back(d);

    std::mt19937_64 rng(opts.seed);
    std::size_t agree = 0;
    std::size_t witness_ok = 0;
    std::size_t grid_checked = 0;
    std::size_t grid_ok = 0;
    ordered_json failures = ordered_json::array();
    for (std::size_t i = 0; i < opts.count; ++i) {
      const EventUnion event = random_event(rng, gen);
      const Rational game = upper_game_probability(event);
      const MeasureUpper measure = measure_upper_probability(event);
      const bool equal = game == measure.value;
      const bool attained = exact_event_probability(measure.witness, event) == measure.value;
      agree += equal;
      witness_ok += attained;
      if ((!equal || !attained) && failures.size() < 5) {
        failures.push_back(ordered_json{{"index", i},
                                        {"game", to_string(game)},
                                        {"measure", to_string(measure.value)},
                                        {"event", nlohmann::json::parse(event_to_json(event))}});
      }
      if (opts.grid) {
        try {
          const Rational g = grid_bruteforce(event, *opts.grid);
          ++grid_checked;
          grid_ok += g <= measure.value;
        } catch (const GuardError&) {
        }
      }
    }
    rep.result_json("events", opts.count);
    rep.result_json("agreements", agree);
    rep.result_json("witness_attained", witness_ok);
    if (opts.grid) {
      rep.result_json("grid_checked", grid_checked);
      rep.result_json("grid_below_exact", grid_ok);
    }
    if (!failures.empty()) rep.result_json("failures", failures);

    rep.check("game == measure on every event", agree == opts.count,
              std::to_string(opts.count - agree) + " of " + std::to_string(opts.count) + " events disagree");
    rep.check("measure witness attains the value", witness_ok == opts.count,
              std::to_string(opts.count - witness_ok) + " witnesses fall short");
    if (opts.grid) {
      rep.check("grid oracle <= exact", grid_ok == grid_checked,
                std::to_string(grid_checked - grid_ok) + " grid values exceed the exact value");
    }
    if (!rep.all_pass()) r.exit_code = kInvariantViolation;
    return r;
  });
}

CommandResult cmd_levy_trace(const LevyTraceOptions& opts) {
  return guarded("levy-trace", [&] {
    CommandResult r{Report{"levy-trace"}, kSuccess, std::nullopt};
    Report& rep = r.report;
    const EventUnion event = load_event(rep, opts.event_path);
    const std::vector<Step> stream = load_stream(rep, opts.stream_path);
    rep.input("a", to_string(opts.threshold));

    LevyStrategy levy(event, opts.threshold);
    rep.result("UpProb(E)", levy.engine().upper_probability());
    ordered_json trace = ordered_json::array();
    auto regime_name = [](LevyStrategy::Regime g) {
      switch (g) {
        case LevyStrategy::Regime::Waiting: return "waiting";
        case LevyStrategy::Regime::Riding: return "riding";
        case LevyStrategy::Regime::Terminal: return "terminal";
      }
      return "waiting";
    };
    auto record = [&] {
      ordered_json row{{"n", levy.prefix().size()}, {"capital", to_string(levy.capital())}, {"regime", regime_name(levy.regime())}};
      row["conditional"] = to_string(levy.engine().conditional(levy.prefix()));
      trace.push_back(std::move(row));
    };
    record();
    bool non_negative = true;
    const std::size_t used = std::min(stream.size(), event.horizon());
    rep.result_json("rows_used", used);
    for (std::size_t i = 0; i < used; ++i) {
      levy.step(stream[i]);
      non_negative = non_negative && levy.capital() >= 0;
      record();
    }
    rep.result_json("trace", trace);
    rep.result("final_capital", levy.capital());
    ordered_json milestones = ordered_json::array();
    for (const Rational& m : levy.milestones()) milestones.push_back(to_string(m));
    rep.result_json("milestones", milestones);
    rep.result_json("switch_points", levy.switch_points());

    const bool member = stream.size() >= event.horizon() &&
                        contains(event, PrequentialPrefix(std::vector<Step>(stream.begin(), stream.begin() + event.horizon())));
    rep.result_json("member", member);
    rep.check("capital non-negative", non_negative, "capital went negative");
    if (member && levy.engine().upper_probability() < opts.threshold) {
      rep.check("capital >= 1/a on a member", levy.capital() * opts.threshold >= 1,
                "final capital " + to_string(levy.capital()));
    }
    if (!rep.all_pass()) r.exit_code = kInvariantViolation;
    return r;
  });
}

CommandResult cmd_verify(const VerifyOptions& opts) {
  return guarded("verify", [&] {
    CommandResult r{Report{"verify"}, kSuccess, std::nullopt};
    Report& rep = r.report;
    const std::string text = read_file(opts.table_path);
    rep.input_file("table", opts.table_path, text);
    rep.input("mode", opts.mode == FarthingaleMode::Exact ? "exact" : "super");
    const ValueFunction table = parse_value_function_json(text);
    const FarthingaleReport check = check_farthingale(table, opts.mode);
    rep.result("root", table.root());
    rep.result_json("violations", check.violations.size());
    std::string detail;
    if (!check.ok) {
      const FarthingaleViolation& v = check.violations.front();
      detail = "first violation at node '" + v.node + "', p = " + to_string(v.p) + ": value " + to_string(v.value) +
               " vs average " + to_string(v.average);
    }
    rep.check(opts.mode == FarthingaleMode::Exact ? "farthingale identity" : "superfarthingale inequality",
              check.ok, detail);
    if (!check.ok) r.exit_code = kInvariantViolation;
    return r;
  });
}

CommandResult cmd_prob(const ProbOptions& opts) {
  return guarded("prob", [&] {
    CommandResult r{Report{"prob"}, kSuccess, std::nullopt};
    Report& rep = r.report;
    const ForecastingSystem phi = load_phi(rep, opts.phi_path);
    const EventUnion event = load_event(rep, opts.event_path);
    const Rational exact = exact_event_probability(phi, event);
    rep.result("exact", exact);
    const Rational upper = upper_game_probability(event);
    rep.result("UpProb(E)", upper);
    rep.check("Prob^phi(E) <= UpProb(E)", exact <= upper,
              to_string(exact) + " exceeds " + to_string(upper));
    if (opts.samples > 0) {
      rep.seed = opts.seed;
      rep.input("samples", opts.samples);
      const MonteCarloEstimate mc = monte_carlo_probability(phi, event, opts.samples, opts.seed);
      rep.result_float("estimate", mc.estimate);
      rep.result_float("half_width", mc.half_width);
      // Informational: the half-width covers the exact value in most, not all, seeded runs.
      rep.result_json("within_half_width", std::abs(mc.estimate - to_double(exact)) <= mc.half_width);
    }
    if (!rep.all_pass()) r.exit_code = kInvariantViolation;
    return r;
  });
}

CommandResult cmd_sample_stream(const SampleStreamOptions& opts) {
  return guarded("sample-stream", [&] {
    CommandResult r{Report{"sample-stream"}, kSuccess, std::nullopt};
    Report& rep = r.report;
    rep.seed = opts.seed;
    std::vector<Step> stream;
    if (opts.phi_path.empty()) {
      rep.input("forecast", to_string(opts.forecast));
      rep.input("N", opts.horizon);
      stream = sample_constant_stream(Forecast(opts.forecast), opts.horizon, opts.seed);
    } else {
      const ForecastingSystem phi = load_phi(rep, opts.phi_path);
      stream = induced_path(phi, sample_outcomes(phi, phi.horizon(), opts.seed)).steps();
    }
    const std::string csv = stream_to_csv(stream);
    if (opts.out_path.empty()) {
      r.raw_output = csv;
    } else {
      write_file(opts.out_path, csv);
      rep.result_json("rows", stream.size());
      rep.result_json("path", opts.out_path);
    }
    return r;
  });
}

}  // namespace preq::cli
