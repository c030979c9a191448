#pragma once

#include <json.hpp>

#include <cstdint>
#include <limits>
#include <map>
#include <string>

namespace fidest {

// One estimator run. Differences to the oracle are recorded, never asserted.
struct EstimationReport {
  std::string algorithm;
  int trial = 0;
  std::uint64_t seed = 0;
  std::string config_hash;

  double estimate = std::numeric_limits<double>::quiet_NaN();
  double oracle_fidelity = std::numeric_limits<double>::quiet_NaN();
  double oracle_truncated_fidelity = std::numeric_limits<double>::quiet_NaN();

  nlohmann::json error_budget = nlohmann::json::object();
  std::map<std::string, std::int64_t> queries;  // uses per source
  std::int64_t samples = 0;                     // state copies consumed
  std::int64_t shots = 0;                       // measurement repetitions
  double seconds = 0.0;

  bool ok = true;
  std::string failure;
  nlohmann::json diagnostics = nlohmann::json::object();
};

nlohmann::json to_json(const EstimationReport& r);

// a * b clamped to the int64 range; counters in sampled modes overflow otherwise.
std::int64_t saturating_mul(std::int64_t a, std::int64_t b);
std::int64_t saturating_add(std::int64_t a, std::int64_t b);
// int64 conversion of a nonnegative count, clamped at the int64 maximum.
std::int64_t saturating_count(double x);

// splitmix64 finalizer of seed + (stream + 1) * golden gamma. Streams of one
// seed are independent of how many other streams are drawn.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

// FNV-1a of the compact JSON dump, as 16 hex digits.
std::string config_hash(const nlohmann::json& config);

}  // namespace fidest
