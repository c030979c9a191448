#pragma once

#include "fidest/polyapprox.hpp"
#include "fidest/qsvt.hpp"
#include "fidest/report.hpp"
#include "fidest/states.hpp"

#include <json.hpp>

#include <cstdint>
#include <memory>
#include <optional>

namespace fidest::block {

enum class AccessMode { purified, sampled };

struct BlockAlgoParams {
  double theta = 0.5;
  double delta_trunc = 0.5;
  double epsilon = 0.1;
  AccessMode mode = AccessMode::purified;
  std::optional<int> rank_bound;
  std::optional<std::int64_t> shots;
  std::uint64_t seed = 0;
  bool amplitude_noise = true;  // purified mode: add the amplitude-estimation error
  bool inject_noise = false;    // sampled mode: depolarize each sample-based encoding

  void validate() const;
};

// Q~/alpha_Q is the block fed to the sign SVT.
inline constexpr double kQNormalization = 8.0;
// Shots in sampled mode: ceil(kShotConstant / (kappa eps^2 theta)), which keeps the
// binomial standard deviation of the estimate at most eps/5.
inline constexpr double kShotConstant = 800.0;
// Amplitude estimation repetitions: ceil(kAmplitudeRepsConstant / eta).
inline constexpr double kAmplitudeRepsConstant = 1.0;
// Measured purified-mode counters stay below
// kCostModelConstant * log^2(1/eps) * query_cost_model(...) (eps in [0.05, 0.2]).
inline constexpr double kCostModelConstant = 3e6;

// Terms of the error split. `analytic` values are evaluated from the realized
// polynomials; `measured` values from the oracle on the actual instance.
struct ErrorBudget {
  double s_term = 0.0;
  double q_term = 0.0;
  double svt_term = 0.0;
  double trunc_poly_term = 0.0;
  double statistical_term = 0.0;
  double encoding_term = 0.0;  // sampled mode: diamond error of the sample-based encodings

  struct Measured {
    double s_term = 0.0;
    double q_term = 0.0;
    double svt_term = 0.0;
    double trunc_poly_term = 0.0;
    double aggregate = 0.0;  // | ||t sqrt(rho) sqrt(sigma)||_1 - Tr[Q~ SV^p(Q~^dagger/alpha_Q)] |
  };
  std::optional<Measured> measured;
};

// Polynomials in the variable y = kappa x, where kappa x is the block of the
// input encodings (kappa = 1 purified, pi/4 sampled).
struct PolySet {
  double kappa = 1.0;
  int rk = 1;
  poly::ApproxPolynomial s;        // ~ sqrt(y)/2, majorated
  poly::ApproxPolynomial q;        // ~ sqrt(kappa theta / 2)/2 * y^{-1/2}
  poly::ApproxPolynomial t_tilde;  // 1 - rect, ~ 0 below (1-delta) kappa theta, ~ 1 above kappa theta
  poly::ApproxPolynomial p;        // ~ sgn
  poly::ApproxPolynomial r;        // t~(y) y q(y) / sqrt(2 kappa theta), odd
  poly::ApproxPolynomial tq;       // t~(y) q(y), even
  double eps_s = 0.0, delta_s = 0.0;
  double eps_q = 0.0, delta_q = 0.0;
  double eps_t = 0.0, delta_p = 0.0, eps_p = 0.0;
  double rect_apx_error = 0.0;  // certified |t - t~| on [0, 1]
  ErrorBudget analytic;         // statistical and encoding terms left at 0
};

int rank_bound_used(const BlockAlgoParams& params);
double access_kappa(AccessMode mode);

// Memoized on (eps, theta, delta, rk, kappa); construction is the expensive part.
std::shared_ptr<const PolySet> build_polynomials(const BlockAlgoParams& params);

// Ideal soft threshold: 0 below (1-delta) theta, 1 from theta on, clamp(t~) between.
double ideal_threshold(const PolySet& polys, const BlockAlgoParams& params, double x);

struct Pipeline {
  std::shared_ptr<const PolySet> polys;
  qsvt::BlockEncoding q_tilde;  // logical Q~, alpha_Q = 8 / kappa
  qsvt::BlockEncoding sign_svt;  // SV^p(Q~^dagger / alpha_Q)
  qsvt::BlockEncoding hadamard;  // logical t~q s SV^p(...), the operator measured on rho
  ErrorBudget budget;
  // Per-use diamond error of the sample-based encodings (sampled mode).
  double per_use_error = 0.0;
  std::int64_t copies_rho_per_use = 0;
  std::int64_t copies_sigma_per_use = 0;
};

Pipeline build_pipeline(const states::DensityMatrix& rho, const states::DensityMatrix& sigma,
                        const BlockAlgoParams& params);

// Closed-form source uses of one application of the measured operator.
std::int64_t closed_form_rho_uses(const PolySet& polys);
std::int64_t closed_form_sigma_uses(const PolySet& polys);

// Outcome-0 probability of the Hadamard test: Re Tr[rho (I + A/alpha)/2].
double hadamard_expectation(const states::DensityMatrix& rho, const qsvt::BlockEncoding& a);
// With the phase gate: (1 + Im Tr[rho A/alpha]) / 2.
double hadamard_expectation_imag(const states::DensityMatrix& rho, const qsvt::BlockEncoding& a);

// Oracle-side quantities of a pipeline on a given instance.
ErrorBudget::Measured measure_budget(const states::DensityMatrix& rho, const states::DensityMatrix& sigma,
                                     const Pipeline& pipe, const BlockAlgoParams& params);
double oracle_target(const states::DensityMatrix& rho, const states::DensityMatrix& sigma, const PolySet& polys,
                     const BlockAlgoParams& params);

EstimationReport estimate_fidelity_block(const states::DensityMatrix& rho, const states::DensityMatrix& sigma,
                                         const BlockAlgoParams& params);

struct CostModel {
  double rho_term = 0.0;
  double sigma_term = 0.0;
  double total() const { return rho_term + sigma_term; }
};
// Leading-order query (purified) or sample (sampled) cost without log factors.
CostModel query_cost_model(const BlockAlgoParams& params, double rk_theta, double t_rho, double t_sigma);

nlohmann::json to_json(const BlockAlgoParams& p);
nlohmann::json to_json(const ErrorBudget& b);
std::string to_string(AccessMode m);
AccessMode access_mode_from_string(const std::string& s);

}  // namespace fidest::block
