#pragma once

#include <cstdint>
#include <map>
#include <string>

#include <nlohmann/json.hpp>

#include "wiretap/common.hpp"

// Result envelope shared by every advantage and error evaluator.

namespace wiretap {

enum class ReportMode { kExact, kMonteCarlo, kAnalyticBound };

std::string to_string(ReportMode mode);

struct AdvReport {
  std::string metric;
  double value = 0.0;
  ReportMode mode = ReportMode::kExact;
  std::map<std::string, std::string> params;

  // Monte-Carlo runs only.
  bool sampled = false;
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  double half_width = 0.0;

  nlohmann::json witness;  // null when the engine has none to offer

  // Security level -lg(value); infinity at value 0.
  double bits() const;

  // {metric, value, bits, mode, params, seed?, trials?, half_width?,
  //  witness?}; bits serializes as null when infinite.
  nlohmann::json to_json() const;
};

}  // namespace wiretap
