#include "rkhs/report.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <json.hpp>

namespace rkhs {

namespace {

// JSON has no NaN or infinity; such values travel as strings.
nlohmann::json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

double read_number(const nlohmann::json& j) {
  if (j.is_number()) return j.get<double>();
  const auto s = j.get<std::string>();
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  throw std::invalid_argument("from_json_line: bad number '" + s + "'");
}

}  // namespace

std::string to_json_line(const VerificationReport& r) {
  nlohmann::json meta = nlohmann::json::object();
  for (const auto& [k, v] : r.metadata) meta[k] = number(v);
  nlohmann::json j = {{"check_name", r.check_name}, {"computed", number(r.computed)},
                      {"reference", number(r.reference)}, {"abs_error", number(r.abs_error)},
                      {"tolerance", number(r.tolerance)}, {"passed", r.passed},
                      {"metadata", std::move(meta)}};
  return j.dump();
}

VerificationReport from_json_line(const std::string& line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("from_json_line: ") + e.what());
  }
  VerificationReport r;
  try {
    r.check_name = j.at("check_name").get<std::string>();
    r.computed = read_number(j.at("computed"));
    r.reference = read_number(j.at("reference"));
    r.abs_error = read_number(j.at("abs_error"));
    r.tolerance = read_number(j.at("tolerance"));
    r.passed = j.at("passed").get<bool>();
    if (j.contains("metadata")) {
      for (const auto& [k, v] : j.at("metadata").items()) r.metadata[k] = read_number(v);
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("from_json_line: ") + e.what());
  }
  return r;
}

}  // namespace rkhs
