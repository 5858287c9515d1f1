#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "preq/rational.hpp"

namespace preq::cli {

/// Exit-code contract shared by every subcommand.
enum ExitCode : int {
  kSuccess = 0,
  kInvariantViolation = 1,
  kInputError = 2,
  kRejected = 3,
};

struct Check {
  std::string name;
  bool pass = false;
  /// Set for failures only.
  std::string detail;
};

/// Machine-readable result of one command. Rationals render as "num/den",
/// floats with 12 significant digits; key order is insertion order, so the
/// JSON form is byte-stable for identical inputs.
struct Report {
  explicit Report(std::string name) : command(std::move(name)) {}

  std::string command;
  nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
  nlohmann::ordered_json results = nlohmann::ordered_json::object();
  std::vector<Check> checks;
  std::optional<std::uint64_t> seed;

  void input(const std::string& key, nlohmann::ordered_json value) { inputs[key] = std::move(value); }
  void input_file(const std::string& key, const std::string& path, const std::string& contents);
  void result(const std::string& key, const Rational& value);
  void result_float(const std::string& key, double value);
  void result_json(const std::string& key, nlohmann::ordered_json value) { results[key] = std::move(value); }
  void check(std::string name, bool pass, std::string detail = {});

  bool all_pass() const;
  std::string to_json() const;
  std::string to_text() const;
};

/// Hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& data);

}  // namespace preq::cli
