#include "fidest/report.hpp"

#include <cmath>
#include <limits>

namespace fidest {

nlohmann::json to_json(const EstimationReport& r) {
  nlohmann::json j;
  j["algorithm"] = r.algorithm;
  j["trial"] = r.trial;
  j["seed"] = r.seed;
  j["config_hash"] = r.config_hash;
  j["estimate"] = r.estimate;
  j["oracle_fidelity"] = r.oracle_fidelity;
  j["oracle_truncated_fidelity"] = r.oracle_truncated_fidelity;
  j["error_budget"] = r.error_budget;
  j["queries"] = r.queries;
  j["samples"] = r.samples;
  j["shots"] = r.shots;
  j["seconds"] = r.seconds;
  j["ok"] = r.ok;
  if (!r.ok) j["failure"] = r.failure;
  j["diagnostics"] = r.diagnostics;
  return j;
}

std::int64_t saturating_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) return std::numeric_limits<std::int64_t>::max();
  return out;
}

std::int64_t saturating_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) return std::numeric_limits<std::int64_t>::max();
  return out;
}

std::int64_t saturating_count(double x) {
  if (!(x > 0.0)) return 0;
  if (x >= 9.2e18) return std::numeric_limits<std::int64_t>::max();
  return static_cast<std::int64_t>(std::ceil(x));
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + (stream + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::string config_hash(const nlohmann::json& config) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : config.dump()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[i] = digits[h & 0xF];
  return out;
}

}  // namespace fidest
