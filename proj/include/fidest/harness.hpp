#pragma once

#include "fidest/algo_block.hpp"
#include "fidest/algo_spectral.hpp"
#include "fidest/report.hpp"
#include "fidest/states.hpp"

#include <json.hpp>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace fidest::harness {

enum class Family { random, diagonal, pure, split };
enum class SigmaKind { random, same };  // sigma drawn independently, or sigma = rho
enum class Algorithm { block, spectral, both };

struct InstanceConfig {
  int dim = 4;
  int rank = 2;
  double gap = 0.05;  // minimum spacing of rho's nonzero eigenvalues, kernel included
  Family family = Family::random;
  SigmaKind sigma = SigmaKind::random;
  double split_eps = 0.5;  // split: eigenvalues (1 +- eps)/rank

  void validate() const;
};

struct ExperimentConfig {
  std::uint64_t master_seed = 0;
  InstanceConfig instance;
  Algorithm algorithm = Algorithm::both;
  block::BlockAlgoParams block;
  spectral::SpectralAlgoParams spectral;
  int trials = 1;
  int workers = 1;
  std::string json_dir;  // one report file per trial and algorithm, if set
  std::string csv_path;

  void validate() const;
};

struct Instance {
  states::DensityMatrix rho;
  states::DensityMatrix sigma;
};

// Rank-r state whose nonzero eigenvalues are pairwise >= gap apart and, when
// rank < dim, >= gap away from 0.
states::DensityMatrix gapped_random_density(int dim, int rank, double gap, std::mt19937_64& rng);

// sigma = I_r / r, rho with half of its eigenvalues (1+eps)/r and half (1-eps)/r,
// both conjugated by one Haar unitary. F = (sqrt(1+eps) + sqrt(1-eps)) / 2.
Instance split_spectrum_instance(int dim, int rank, double eps, std::mt19937_64& rng);
double split_spectrum_fidelity(double eps);
// sigma uniform over r basis states, rho uniform over the first k of them: F = sqrt(k/r).
Instance point_mass_instance(int r, int k);

Instance generate_instance(const InstanceConfig& cfg, std::uint64_t seed);

// Seed of trial t; trial streams do not depend on the number of trials.
std::uint64_t trial_seed(std::uint64_t master_seed, int trial);

// Reports in trial order; block before spectral within a trial.
std::vector<EstimationReport> run_experiment(const ExperimentConfig& cfg);

// Column order is part of the output contract.
const std::vector<std::string>& csv_columns();
std::string csv_header();
std::string csv_row(const EstimationReport& r);
std::string to_csv(const std::vector<EstimationReport>& reports);
void write_outputs(const ExperimentConfig& cfg, const std::vector<EstimationReport>& reports);

struct Regression {
  double exponent = 0.0;
  double intercept = 0.0;
  double predicted = 0.0;
  int points = 0;
  bool within(double tol) const { return std::abs(exponent - predicted) <= tol; }
};

// Least squares of log y on log x.
Regression scaling_regression(const std::vector<double>& xs, const std::vector<double>& ys, double predicted);

struct SweepSpec {
  std::string parameter;  // block.epsilon, block.theta, spectral.epsilon, spectral.theta, spectral.delta
  std::vector<double> values;
  std::string metric;  // queries.<source>, samples, shots, repetitions, rho_query_cost
  double predicted_exponent = 0.0;
};

struct SweepResult {
  std::vector<double> xs;
  std::vector<double> ys;
  Regression fit;
  std::vector<EstimationReport> reports;
};

// Runs the single-trial experiment at each value of the swept parameter and
// fits the metric. Reports with a missing metric are skipped.
SweepResult run_sweep(const ExperimentConfig& base, const SweepSpec& spec);
double report_metric(const EstimationReport& r, const std::string& metric);

// Randomized replay of the bound-type statements. Checks whose stated form is
// known to be false carry erratum = true.
struct BoundCheck {
  std::string name;
  int instances = 0;
  int violations = 0;
  double worst_excess = 0.0;  // max of (observed - bound), <= 0 when all hold
  bool erratum = false;
};
std::vector<BoundCheck> verify_bounds(int instances, std::uint64_t seed, int max_dim = 8);
nlohmann::json to_json(const BoundCheck& c);

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ExperimentConfig& c);
nlohmann::json to_json(const InstanceConfig& c);
block::BlockAlgoParams block_params_from_json(const nlohmann::json& j);
spectral::SpectralAlgoParams spectral_params_from_json(const nlohmann::json& j);

std::string to_string(Family f);
std::string to_string(Algorithm a);
std::string to_string(SigmaKind s);
Family family_from_string(const std::string& s);
Algorithm algorithm_from_string(const std::string& s);
SigmaKind sigma_kind_from_string(const std::string& s);

}  // namespace fidest::harness
