#include "report.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include <openssl/evp.h>

namespace preq::cli {

void Report::input_file(const std::string& key, const std::string& path, const std::string& contents) {
  inputs[key] = nlohmann::ordered_json{{"path", path}, {"sha256", sha256_hex(contents)}};
}

void Report::result(const std::string& key, const Rational& value) { results[key] = to_string(value); }

void Report::result_float(const std::string& key, double value) { results[key] = round12(value); }

void Report::check(std::string name, bool pass, std::string detail) {
  if (pass) {
    detail.clear();
  } else if (detail.empty()) {
    detail = name + " failed";
  }
  checks.push_back(Check{std::move(name), pass, std::move(detail)});
}

bool Report::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::string Report::to_json() const {
  nlohmann::ordered_json doc;
  doc["command"] = command;
  doc["inputs"] = inputs;
  if (seed) doc["seed"] = *seed;
  doc["results"] = results;
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  for (const Check& c : checks) {
    nlohmann::ordered_json item{{"name", c.name}, {"status", c.pass ? "PASS" : "FAIL"}};
    if (!c.detail.empty()) item["details"] = c.detail;
    list.push_back(std::move(item));
  }
  doc["checks"] = list;
  return doc.dump(2) + "\n";
}

std::string Report::to_text() const {
  std::ostringstream out;
  out << command << "\n";
  if (seed) out << "  seed: " << *seed << "\n";
  for (const auto& [key, value] : results.items()) {
    out << "  " << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
  }
  for (const Check& c : checks) {
    out << "  [" << (c.pass ? "PASS" : "FAIL") << "] " << c.name;
    if (!c.detail.empty()) out << ": " << c.detail;
    out << "\n";
  }
  return out.str();
}

std::string sha256_hex(const std::string& data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), digest.data(), &len, EVP_sha256(), nullptr);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    hex += kHex[digest[i] >> 4];
    hex += kHex[digest[i] & 0xF];
  }
  return hex;
}

}  // namespace preq::cli
