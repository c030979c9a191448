#pragma once

#include "fidest/linalg.hpp"
#include "fidest/report.hpp"
#include "fidest/states.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace fidest::spectral {

enum class EigenNoise { uniform, extreme };  // extreme: always +-gamma
enum class OffDiagonalRoute { hadamard, taylor };

struct SpectralAlgoParams {
  double epsilon = 0.1;
  double delta = 0.1;  // failure probability
  double theta = 0.05;
  std::uint64_t seed = 0;
  std::optional<double> gap;  // Delta override; measured from the spectrum otherwise
  EigenNoise noise = EigenNoise::uniform;
  OffDiagonalRoute route = OffDiagonalRoute::hadamard;
  double k_const = 200.0;  // phase-estimation simulation constant, cost only

  void validate() const;
};

// Quantities fixed by (eps, delta, theta, Delta).
struct DerivedParams {
  int m = 0;             // ceil(1 / (2 theta))
  double harmonic = 0;   // H_m
  std::int64_t repetitions = 0;  // M = ceil(16 m H_m / (delta theta^2))
  double gamma = 0;      // min(theta^3 eps / sqrt 2, Delta / 2)
  int ell = 0;           // ceil(log2(16 / (delta theta^2)) + log2(M))
  double gap = 0;        // Delta
};

DerivedParams derive_params(const SpectralAlgoParams& params, double gap);

// Smallest spacing between distinct nonzero eigenvalues, and between the
// smallest nonzero eigenvalue and the kernel when rho is rank deficient.
double spectral_gap(const states::Spectrum& s);

struct SpectralSample {
  int index = 0;
  double lambda_tilde = 0.0;
  bool failed = false;
};

// Output contract of phase-estimation based spectral sampling.
SpectralSample spectral_sample(const states::Spectrum& rho, double gamma, int ell, std::mt19937_64& rng,
                               EigenNoise noise = EigenNoise::uniform);
// Copies of rho consumed by one spectral sample: ell * ceil(1/gamma) * k with
// k = ceil(k_const log(d log(1/gamma) / gamma) / gamma^2).
double spectral_sample_cost(double gamma, int ell, int dim, double k_const);

struct CollectedEntry {
  double lambda_tilde = 0.0;
  int matched_index = -1;  // nearest true eigenvalue within Delta/2, else -1
};

struct CollectedSpectrum {
  std::vector<CollectedEntry> entries;  // descending
  int r_theta() const { return static_cast<int>(entries.size()); }
  std::int64_t samples = 0;
  std::int64_t failures = 0;  // sampling failure events observed
};

CollectedSpectrum collect_spectrum(const states::Spectrum& rho, const SpectralAlgoParams& params,
                                   const DerivedParams& derived, std::mt19937_64& rng);
// True when every eigenvalue above theta was collected.
bool collection_complete(const CollectedSpectrum& c, const states::Spectrum& rho, double theta);

class AmbiguousEigenvalue : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct FilteredState {
  Vector state;
  int index = 0;
  double cost = 0.0;  // uses of U_rho
};

// Exact eigenvector moved by a uniformly drawn distance in [0, eps_filter]
// toward a random orthogonal direction.
FilteredState eigenstate_filter(const states::Spectrum& rho, double lambda_tilde, double eps_filter, double gap,
                                std::mt19937_64& rng);

// Shot counts used by the two tests.
double swap_test_shots(double xi, double nu);
double hadamard_test_shots(double xi, double nu);  // per measurement basis

// Binomial draw of the success fraction; Gaussian approximation above 2^53 shots.
double sample_fraction(double shots, double p, std::mt19937_64& rng);

double swap_test_estimate(const Vector& psi, const states::DensityMatrix& sigma, double xi, double nu,
                          std::mt19937_64& rng);
cplx hadamard_test_estimate(const Vector& state, const Matrix& u, double xi, double nu, std::mt19937_64& rng);

struct ContinuityCheck {
  double gap = 0.0;          // |Tr sqrt(Lambda) - Tr sqrt(Lambda_hat_+)|
  double bound = 0.0;        // sqrt(2) r sqrt(||Lambda - Lambda_hat||_1)
  double negative_mass = 0.0;  // ||Lambda_hat_-||_1
  double distance = 0.0;     // ||Lambda - Lambda_hat||_1
  bool holds() const { return gap <= bound + 1e-9 && negative_mass <= distance + 1e-9; }
};

class PreconditionViolation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

ContinuityCheck continuity_gap(const Matrix& lambda, const Matrix& lambda_hat, int r);
double trace_sqrt_positive_part(const Matrix& h);

// Estimation-error lemma checks. Each returns (observed gap, bound); hypotheses
// that fail throw PreconditionViolation.
struct LemmaCheck {
  double gap = 0.0;
  double bound = 0.0;
  bool holds() const { return gap <= bound + 1e-12; }
};
LemmaCheck diagonal_error_check(double lambda, double lambda_tilde, double sigma_ii, double sigma_tilde, double gamma,
                                double xi);
// Stated bound zeta + gamma^2 / (2 kappa^2) with kappa a lower bound on the eigenvalues.
LemmaCheck offdiagonal_error_check(double lambda_i, double lambda_j, double lambda_tilde_i, double lambda_tilde_j,
                                   cplx sigma_ij, cplx sigma_tilde, double gamma, double zeta, double kappa);
// Same gap against zeta + 2 gamma / sqrt(kappa), which first-order perturbation allows.
LemmaCheck offdiagonal_error_check_sound(double lambda_i, double lambda_j, double lambda_tilde_i,
                                         double lambda_tilde_j, cplx sigma_ij, cplx sigma_tilde, double gamma,
                                         double zeta, double kappa);
LemmaCheck inner_product_check(const Vector& psi, const Vector& psi_tilde, const Vector& phi, const Vector& phi_tilde,
                               const states::DensityMatrix& sigma);

struct SpectralRun {
  EstimationReport report;
  CollectedSpectrum collected;
  Matrix lambda_hat;
  Matrix lambda_oracle;  // Lambda entries of the matched eigenvectors
  double entry_bound = 0.0;  // eps^2 / (2 r^4)
  int entries_within = 0;
  int entries_total = 0;
};

SpectralRun run_spectral(const states::DensityMatrix& rho, const states::DensityMatrix& sigma,
                         const SpectralAlgoParams& params);
EstimationReport estimate_fidelity_spectral(const states::DensityMatrix& rho, const states::DensityMatrix& sigma,
                                            const SpectralAlgoParams& params);

nlohmann::json to_json(const SpectralAlgoParams& p);
nlohmann::json to_json(const DerivedParams& d);
std::string to_string(EigenNoise n);
std::string to_string(OffDiagonalRoute r);
EigenNoise eigen_noise_from_string(const std::string& s);
OffDiagonalRoute route_from_string(const std::string& s);

}  // namespace fidest::spectral
