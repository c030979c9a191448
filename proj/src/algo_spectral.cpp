#include "fidest/algo_spectral.hpp"

#include "fidest/coupon.hpp"
#include "fidest/dme.hpp"
#include "fidest/qsvt.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace fidest::spectral {

namespace {

constexpr double kUnitarityTol = 1e-9;
constexpr double kRankTol = 1e-12;
constexpr double kDegenerateTol = 1e-10;
// Largest shot count drawn exactly; above it the binomial is replaced by its
// normal approximation, whose error is far below the shot noise there.
constexpr double kExactBinomialLimit = 9007199254740992.0;  // 2^53

Vector random_orthogonal_unit(const Vector& psi, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int attempt = 0; attempt < 16; ++attempt) {
    Vector z(psi.size());
    for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = cplx(normal(rng), normal(rng));
    z -= psi * psi.dot(z);
    const double n = z.norm();
    if (n > 1e-8) return z / n;
  }
  return Vector::Zero(psi.size());
}

int rank_of(const Matrix& h) {
  const HermitianEig e = eig_hermitian(hermitian_part(h));
  const double scale = std::max(1.0, e.values.cwiseAbs().maxCoeff());
  int r = 0;
  for (Eigen::Index i = 0; i < e.values.size(); ++i)
    if (std::abs(e.values(i)) > kRankTol * scale) ++r;
  return r;
}

int nonzero_rank(const states::Spectrum& s) { return s.rank(); }

// Lifts U_i to the ancilla-extended space of a dilation with system dimension d.
Matrix lift(const Matrix& u, int total_dim) {
  const int d = static_cast<int>(u.rows());
  Matrix out = Matrix::Identity(total_dim, total_dim);
  for (int b = 0; b + d <= total_dim; b += d) out.block(b, b, d, d) = u;
  return out;
}

}  // namespace

void SpectralAlgoParams::validate() const {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("spectral: epsilon must lie in (0, 1)");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("spectral: delta must lie in (0, 1)");
  if (!(theta > 0.0 && theta < 1.0)) throw std::invalid_argument("spectral: theta must lie in (0, 1)");
  if (gap && !(*gap > 0.0)) throw std::invalid_argument("spectral: gap must be positive");
  if (!(k_const > 0.0)) throw std::invalid_argument("spectral: k constant must be positive");
}

DerivedParams derive_params(const SpectralAlgoParams& params, double gap) {
  params.validate();
  if (!(gap > 0.0)) throw std::invalid_argument("spectral: rho needs a positive spectral gap");
  DerivedParams d;
  d.gap = gap;
  d.m = static_cast<int>(std::ceil(1.0 / (2.0 * params.theta)));
  d.harmonic = coupon::harmonic_number(d.m);
  const double theta2 = params.theta * params.theta;
  d.repetitions = static_cast<std::int64_t>(std::ceil(16.0 * d.m * d.harmonic / (params.delta * theta2)));
  d.gamma = std::min(std::pow(params.theta, 3) * params.epsilon / std::numbers::sqrt2, gap / 2.0);
  d.ell = static_cast<int>(
      std::ceil(std::log2(16.0 / (params.delta * theta2)) + std::log2(static_cast<double>(d.repetitions))));
  return d;
}

double spectral_gap(const states::Spectrum& s) {
  const int r = s.rank();
  if (r == 0) return 0.0;
  double gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i + 1 < r; ++i) gap = std::min(gap, s.eigenvalues(i) - s.eigenvalues(i + 1));
  if (r < s.eigenvalues.size()) gap = std::min(gap, s.eigenvalues(r - 1));
  // Spacings at rounding level are degeneracies.
  return std::isinf(gap) || gap <= kDegenerateTol ? 0.0 : gap;
}

SpectralSample spectral_sample(const states::Spectrum& rho, double gamma, int ell, std::mt19937_64& rng,
                               EigenNoise noise) {
  const int r = nonzero_rank(rho);
  if (r == 0) throw std::invalid_argument("spectral_sample: zero state");
  std::discrete_distribution<int> pick(rho.eigenvalues.data(), rho.eigenvalues.data() + r);
  SpectralSample s;
  s.index = pick(rng);
  std::bernoulli_distribution fail(std::ldexp(1.0, -ell));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  if (fail(rng)) {
    s.failed = true;
    s.lambda_tilde = unit(rng);
    return s;
  }
  const double lam = rho.eigenvalues(s.index);
  if (noise == EigenNoise::uniform) {
    s.lambda_tilde = lam + std::uniform_real_distribution<double>(-gamma, gamma)(rng);
  } else {
    s.lambda_tilde = lam + (unit(rng) < 0.5 ? -gamma : gamma);
  }
  return s;
}

double spectral_sample_cost(double gamma, int ell, int dim, double k_const) {
  const double k = std::ceil(k_const * std::log(dim * std::log(1.0 / gamma) / gamma) / (gamma * gamma));
  return ell * std::ceil(1.0 / gamma) * k;
}

CollectedSpectrum collect_spectrum(const states::Spectrum& rho, const SpectralAlgoParams& params,
                                   const DerivedParams& derived, std::mt19937_64& rng) {
  CollectedSpectrum out;
  const double floor = 0.75 * params.theta;
  const double separation = derived.gap / 2.0 + derived.gamma;
  const int r = nonzero_rank(rho);
  for (std::int64_t n = 0; n < derived.repetitions; ++n) {
    const SpectralSample s = spectral_sample(rho, derived.gamma, derived.ell, rng, params.noise);
    ++out.samples;
    if (s.failed) ++out.failures;
    if (s.lambda_tilde < floor) continue;
    bool close = false;
    for (const auto& e : out.entries)
      if (std::abs(e.lambda_tilde - s.lambda_tilde) <= separation) {
        close = true;
        break;
      }
    if (close) continue;
    CollectedEntry e;
    e.lambda_tilde = s.lambda_tilde;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < r; ++i) {
      const double dist = std::abs(rho.eigenvalues(i) - s.lambda_tilde);
      if (dist < best) {
        best = dist;
        e.matched_index = i;
      }
    }
    if (best > derived.gap / 2.0) e.matched_index = -1;
    out.entries.push_back(e);
  }
  std::sort(out.entries.begin(), out.entries.end(),
            [](const CollectedEntry& a, const CollectedEntry& b) { return a.lambda_tilde > b.lambda_tilde; });
  return out;
}

bool collection_complete(const CollectedSpectrum& c, const states::Spectrum& rho, double theta) {
  for (int i = 0; i < rho.rank(); ++i) {
    if (!(rho.eigenvalues(i) > theta)) continue;
    bool found = false;
    for (const auto& e : c.entries) found = found || e.matched_index == i;
    if (!found) return false;
  }
  return true;
}

FilteredState eigenstate_filter(const states::Spectrum& rho, double lambda_tilde, double eps_filter, double gap,
                                std::mt19937_64& rng) {
  if (!(eps_filter >= 0.0 && eps_filter <= 1.0)) throw std::invalid_argument("eigenstate_filter: eps must lie in [0, 1]");
  const int r = nonzero_rank(rho);
  int match = -1;
  for (int i = 0; i < r; ++i) {
    if (std::abs(rho.eigenvalues(i) - lambda_tilde) <= gap / 2.0) {
      if (match >= 0) throw AmbiguousEigenvalue("eigenstate_filter: estimate within Delta/2 of two eigenvalues");
      match = i;
    }
  }
  if (match < 0) throw std::domain_error("eigenstate_filter: no eigenvalue within Delta/2 of the estimate");
  FilteredState out;
  out.index = match;
  const Vector psi = rho.eigenvectors.col(match);
  const double dist = std::uniform_real_distribution<double>(0.0, eps_filter)(rng);
  const double phi = 2.0 * std::asin(dist / 2.0);
  const Vector chi = random_orthogonal_unit(psi, rng);
  out.state = std::cos(phi) * psi + std::sin(phi) * chi;
  out.state.normalize();
  const double log_term = eps_filter > 0.0 ? std::log(1.0 / eps_filter) : 1.0;
  out.cost = std::ceil(std::max(1.0, log_term) / (gap * std::sqrt(std::max(lambda_tilde, 1e-300))));
  return out;
}

double swap_test_shots(double xi, double nu) { return std::ceil(2.0 * std::log(2.0 / nu) / (xi * xi)); }

double hadamard_test_shots(double xi, double nu) { return std::ceil(4.0 * std::log(4.0 / nu) / (xi * xi)); }

double sample_fraction(double shots, double p, std::mt19937_64& rng) {
  p = std::clamp(p, 0.0, 1.0);
  if (shots <= kExactBinomialLimit) {
    const auto n = static_cast<std::int64_t>(shots);
    const std::int64_t k = std::binomial_distribution<std::int64_t>(n, p)(rng);
    return static_cast<double>(k) / shots;
  }
  const double sd = std::sqrt(p * (1.0 - p) / shots);
  return std::clamp(p + sd * std::normal_distribution<double>(0.0, 1.0)(rng), 0.0, 1.0);
}

double swap_test_estimate(const Vector& psi, const states::DensityMatrix& sigma, double xi, double nu,
                          std::mt19937_64& rng) {
  if (!(xi > 0.0 && xi < 1.0 && nu > 0.0 && nu < 1.0)) throw std::invalid_argument("swap_test: xi, nu must lie in (0, 1)");
  if (psi.size() != sigma.dim()) throw std::invalid_argument("swap_test: dimension mismatch");
  const double overlap = psi.dot(sigma.matrix() * psi).real();
  return 2.0 * sample_fraction(swap_test_shots(xi, nu), 0.5 * (1.0 + overlap), rng) - 1.0;
}

cplx hadamard_test_estimate(const Vector& state, const Matrix& u, double xi, double nu, std::mt19937_64& rng) {
  if (!(xi > 0.0 && xi < 1.0 && nu > 0.0 && nu < 1.0))
    throw std::invalid_argument("hadamard_test: xi, nu must lie in (0, 1)");
  if (u.rows() != u.cols() || u.rows() != state.size()) throw std::invalid_argument("hadamard_test: dimension mismatch");
  if (qsvt::unitarity_defect(u) > kUnitarityTol) throw std::invalid_argument("hadamard_test: U is not unitary");
  const cplx z = state.dot(u * state);
  const double shots = hadamard_test_shots(xi, nu);
  const double re = 2.0 * sample_fraction(shots, 0.5 * (1.0 + z.real()), rng) - 1.0;
  const double im = 2.0 * sample_fraction(shots, 0.5 * (1.0 + z.imag()), rng) - 1.0;
  return {re, im};
}

double trace_sqrt_positive_part(const Matrix& h) {
  const HermitianEig e = eig_hermitian(hermitian_part(h));
  double s = 0.0;
  for (Eigen::Index i = 0; i < e.values.size(); ++i) s += std::sqrt(std::max(0.0, e.values(i)));
  return s;
}

ContinuityCheck continuity_gap(const Matrix& lambda, const Matrix& lambda_hat, int r) {
  if (lambda.rows() != lambda_hat.rows() || lambda.cols() != lambda_hat.cols())
    throw std::invalid_argument("continuity_gap: shape mismatch");
  if (max_asymmetry(lambda_hat) > 1e-9) throw std::invalid_argument("continuity_gap: Lambda_hat is not Hermitian");
  const int rk = rank_of(lambda), rk_hat = rank_of(lambda_hat);
  if (rk_hat > rk || rk > r) throw PreconditionViolation("continuity_gap: needs rk(Lambda_hat) <= rk(Lambda) <= r");
  ContinuityCheck c;
  c.gap = std::abs(trace_sqrt_positive_part(lambda) - trace_sqrt_positive_part(lambda_hat));
  c.distance = trace_norm(lambda - lambda_hat);
  c.bound = std::numbers::sqrt2 * r * std::sqrt(c.distance);
  const HermitianEig e = eig_hermitian(hermitian_part(lambda_hat));
  for (Eigen::Index i = 0; i < e.values.size(); ++i) c.negative_mass += std::max(0.0, -e.values(i));
  return c;
}

LemmaCheck diagonal_error_check(double lambda, double lambda_tilde, double sigma_ii, double sigma_tilde, double gamma,
                                double xi) {
  if (std::abs(lambda_tilde - lambda) > gamma + 1e-15 || std::abs(sigma_tilde - sigma_ii) > xi + 1e-15)
    throw PreconditionViolation("diagonal_error_check: estimates outside gamma / xi");
  if (!(lambda_tilde > 0.0 && lambda_tilde <= 1.0 && sigma_tilde > 0.0 && sigma_tilde <= 1.0))
    throw PreconditionViolation("diagonal_error_check: estimates must lie in (0, 1]");
  return {std::abs(lambda_tilde * sigma_tilde - lambda * sigma_ii), gamma + xi};
}

namespace {

double offdiag_gap(double li, double lj, double lti, double ltj, cplx s, cplx st, double gamma, double zeta,
                   double kappa) {
  if (std::abs(lti - li) > gamma + 1e-15 || std::abs(ltj - lj) > gamma + 1e-15 || std::abs(st - s) > zeta + 1e-15)
    throw PreconditionViolation("offdiagonal_error_check: estimates outside gamma / zeta");
  if (!(lti > 0.0 && lti <= 1.0 && ltj > 0.0 && ltj <= 1.0))
    throw PreconditionViolation("offdiagonal_error_check: eigenvalue estimates must lie in (0, 1]");
  if (!(kappa > 0.0 && li >= kappa && lj >= kappa))
    throw PreconditionViolation("offdiagonal_error_check: kappa must lower-bound the eigenvalues");
  return std::abs(std::sqrt(li) * std::sqrt(lj) * s - std::sqrt(lti) * std::sqrt(ltj) * st);
}

}  // namespace

LemmaCheck offdiagonal_error_check(double li, double lj, double lti, double ltj, cplx s, cplx st, double gamma,
                                   double zeta, double kappa) {
  return {offdiag_gap(li, lj, lti, ltj, s, st, gamma, zeta, kappa), zeta + gamma * gamma / (2.0 * kappa * kappa)};
}

LemmaCheck offdiagonal_error_check_sound(double li, double lj, double lti, double ltj, cplx s, cplx st, double gamma,
                                         double zeta, double kappa) {
  return {offdiag_gap(li, lj, lti, ltj, s, st, gamma, zeta, kappa), zeta + 2.0 * gamma / std::sqrt(kappa)};
}

LemmaCheck inner_product_check(const Vector& psi, const Vector& psi_tilde, const Vector& phi, const Vector& phi_tilde,
                               const states::DensityMatrix& sigma) {
  const double eps = std::max((psi_tilde - psi).norm(), (phi_tilde - phi).norm());
  const Matrix& s = sigma.matrix();
  return {std::abs(psi_tilde.dot(s * phi_tilde) - psi.dot(s * phi)), 2.0 * eps};
}

SpectralRun run_spectral(const states::DensityMatrix& rho, const states::DensityMatrix& sigma,
                         const SpectralAlgoParams& params) {
  const auto start = std::chrono::steady_clock::now();
  if (rho.dim() != sigma.dim()) throw std::invalid_argument("spectral: dimension mismatch");
  params.validate();
  const int d = rho.dim();
  const states::Spectrum spec = states::spectrum(rho);
  const double gap = params.gap ? *params.gap : spectral_gap(spec);
  const DerivedParams derived = derive_params(params, gap);

  SpectralRun run;
  EstimationReport& rep = run.report;
  rep.algorithm = "spectral";
  rep.seed = params.seed;
  SpectralAlgoParams unseeded = params;
  unseeded.seed = 0;
  rep.config_hash = config_hash(to_json(unseeded));

  std::mt19937_64 collect_rng(derive_seed(params.seed, 0));
  run.collected = collect_spectrum(spec, params, derived, collect_rng);
  const auto& entries = run.collected.entries;
  const int r = run.collected.r_theta();

  double rho_cost = static_cast<double>(derived.repetitions) * spectral_sample_cost(derived.gamma, derived.ell, d,
                                                                                     params.k_const);
  double sigma_cost = 0.0, shots = 0.0, sigma_copies = 0.0;
  nlohmann::json anomalies = nlohmann::json::array();

  run.lambda_hat = Matrix::Zero(r, r);
  run.lambda_oracle = Matrix::Zero(r, r);
  double xi = 0.0, nu = 0.0, eps_filter = 0.0;
  if (r > 0) {
    const double r4 = std::pow(static_cast<double>(r), 4);
    xi = params.epsilon * params.epsilon / (8.0 * r4);
    nu = params.delta / (2.0 * r * r);
    eps_filter = params.epsilon * params.epsilon / (16.0 * r4);
    run.entry_bound = params.epsilon * params.epsilon / (2.0 * r4);

    std::vector<FilteredState> filtered(r);
    for (int i = 0; i < r; ++i) {
      std::mt19937_64 frng(derive_seed(derive_seed(params.seed, 1), i));
      try {
        filtered[i] = eigenstate_filter(spec, entries[i].lambda_tilde, eps_filter, gap, frng);
      } catch (const std::domain_error& e) {
        // Fall back to the nearest eigenvector; only reachable after a sampling failure.
        anomalies.push_back({{"entry", i}, {"lambda_tilde", entries[i].lambda_tilde}, {"reason", e.what()}});
        int best = 0;
        for (int k = 1; k < spec.rank(); ++k)
          if (std::abs(spec.eigenvalues(k) - entries[i].lambda_tilde) <
              std::abs(spec.eigenvalues(best) - entries[i].lambda_tilde))
            best = k;
        filtered[i].index = best;
        filtered[i].state = spec.eigenvectors.col(best);
        filtered[i].cost = 1.0;
      }
    }

    // One-ancilla unitary dilation of sigma, and U_i mapping |0> to psi~_i.
    const qsvt::UnitaryDilation u_sigma =
        qsvt::dilate_to_unitary(qsvt::oracle_encoding(sigma.matrix(), 1.0, 1, "sigma"));
    const int big = static_cast<int>(u_sigma.unitary.rows());
    std::vector<Matrix> prep(r);
    for (int i = 0; i < r; ++i) prep[i] = lift(unitary_with_first_column(filtered[i].state), big);
    Vector zero_big = Vector::Zero(big);
    zero_big(0) = 1.0;
    Vector zero_sys = Vector::Zero(d);
    zero_sys(0) = 1.0;
    const double taylor_t = xi;

    for (int i = 0; i < r; ++i) {
      for (int j = i; j < r; ++j) {
        std::mt19937_64 erng(derive_seed(derive_seed(params.seed, 2 + static_cast<std::uint64_t>(i)), j));
        const double li = entries[i].lambda_tilde, lj = entries[j].lambda_tilde;
        if (i == j) {
          const double s_ii = swap_test_estimate(filtered[i].state, sigma, xi, nu, erng);
          run.lambda_hat(i, i) = li * s_ii;
          const double n = swap_test_shots(xi, nu);
          shots += n;
          rho_cost += n * filtered[i].cost;
          sigma_cost += n;
        } else {
          cplx s_ij;
          const double per_use = filtered[i].cost + filtered[j].cost;
          if (params.route == OffDiagonalRoute::hadamard) {
            const Matrix w = prep[i].adjoint() * u_sigma.unitary * prep[j];
            s_ij = hadamard_test_estimate(zero_big, w, xi, nu, erng);
            const double n = 2.0 * hadamard_test_shots(xi, nu);
            shots += n;
            rho_cost += n * per_use;
            sigma_cost += n;
          } else {
            // sigma_ij = (-i/t)(<i|j> - <i|e^{-i sigma t}|j>) + O(t); each overlap to xi t / 2.
            const Matrix ui = unitary_with_first_column(filtered[i].state);
            const Matrix uj = unitary_with_first_column(filtered[j].state);
            const Matrix evolve = expm_hermitian(sigma.matrix(), taylor_t);
            const double xt = xi * taylor_t / 2.0;
            const cplx overlap = hadamard_test_estimate(zero_sys, ui.adjoint() * uj, xt, nu / 2.0, erng);
            const cplx evolved = hadamard_test_estimate(zero_sys, ui.adjoint() * evolve * uj, xt, nu / 2.0, erng);
            s_ij = cplx(0.0, -1.0 / taylor_t) * (overlap - evolved);
            const double n = 2.0 * hadamard_test_shots(xt, nu / 2.0);
            shots += 2.0 * n;
            rho_cost += 2.0 * n * per_use;
            const auto budget = dme::dme_unitary_budget(taylor_t, xt, qsvt::qubits_for(d));
            sigma_copies += n * static_cast<double>(budget.copies_of_state);
          }
          run.lambda_hat(i, j) = std::sqrt(li) * std::sqrt(lj) * s_ij;
          run.lambda_hat(j, i) = std::conj(run.lambda_hat(i, j));
        }
      }
    }

    for (int i = 0; i < r; ++i) {
      for (int j = 0; j < r; ++j) {
        const int a = filtered[i].index, b = filtered[j].index;
        const Vector pa = spec.eigenvectors.col(a), pb = spec.eigenvectors.col(b);
        run.lambda_oracle(i, j) =
            std::sqrt(spec.eigenvalues(a)) * std::sqrt(spec.eigenvalues(b)) * pa.dot(sigma.matrix() * pb);
      }
    }
    for (int i = 0; i < r; ++i) {
      for (int j = i; j < r; ++j) {
        ++run.entries_total;
        if (std::abs(run.lambda_hat(i, j) - run.lambda_oracle(i, j)) <= run.entry_bound) ++run.entries_within;
      }
    }
  }

  rep.estimate = r > 0 ? trace_sqrt_positive_part(states::psd_projection(run.lambda_hat)) : 0.0;
  rep.oracle_fidelity = states::fidelity_exact(rho, sigma);
  rep.oracle_truncated_fidelity =
      states::fidelity_exact(states::project_spectrum(rho, states::Interval::at_least(params.theta)), sigma);
  rep.queries["rho"] = saturating_count(rho_cost);
  rep.queries["sigma"] = saturating_count(sigma_cost);
  rep.samples = saturating_count(sigma_copies);
  rep.shots = saturating_count(shots);

  int above = 0;
  for (int i = 0; i < spec.rank(); ++i)
    if (spec.eigenvalues(i) > params.theta) ++above;
  const bool complete = collection_complete(run.collected, spec, params.theta);

  rep.error_budget = {{"gamma", derived.gamma},   {"xi", xi},
                      {"nu", nu},                 {"eps_filter", eps_filter},
                      {"entry_bound", run.entry_bound}};
  auto& dg = rep.diagnostics;
  dg["derived"] = to_json(derived);
  dg["r_theta"] = r;
  dg["rank_above_theta"] = above;
  dg["collection_complete"] = complete;
  dg["sampling_failures"] = run.collected.failures;
  dg["collected"] = nlohmann::json::array();
  for (const auto& e : entries) dg["collected"].push_back({{"lambda_tilde", e.lambda_tilde}, {"index", e.matched_index}});
  dg["entries_within_bound"] = run.entries_within;
  dg["entries_total"] = run.entries_total;
  dg["rho_query_cost"] = rho_cost;
  dg["sigma_query_cost"] = sigma_cost;
  if (!anomalies.empty()) dg["anomalies"] = anomalies;
  if (r > 0) {
    try {
      const ContinuityCheck c = continuity_gap(run.lambda_oracle, run.lambda_hat, r);
      dg["continuity"] = {{"gap", c.gap}, {"bound", c.bound}, {"distance", c.distance}};
    } catch (const PreconditionViolation&) {
      dg["continuity"] = "rank precondition not met";
    }
  }
  if (!complete) {
    rep.ok = false;
    rep.failure = "collection missed an eigenvalue above theta";
    dg["collection_failure"] = true;
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return run;
}

EstimationReport estimate_fidelity_spectral(const states::DensityMatrix& rho, const states::DensityMatrix& sigma,
                                            const SpectralAlgoParams& params) {
  return run_spectral(rho, sigma, params).report;
}

std::string to_string(EigenNoise n) { return n == EigenNoise::uniform ? "uniform" : "extreme"; }
std::string to_string(OffDiagonalRoute r) { return r == OffDiagonalRoute::hadamard ? "hadamard" : "taylor"; }

EigenNoise eigen_noise_from_string(const std::string& s) {
  if (s == "uniform") return EigenNoise::uniform;
  if (s == "extreme") return EigenNoise::extreme;
  throw std::invalid_argument("unknown eigenvalue noise model: " + s);
}

OffDiagonalRoute route_from_string(const std::string& s) {
  if (s == "hadamard") return OffDiagonalRoute::hadamard;
  if (s == "taylor") return OffDiagonalRoute::taylor;
  throw std::invalid_argument("unknown off-diagonal route: " + s);
}

nlohmann::json to_json(const SpectralAlgoParams& p) {
  nlohmann::json j = {{"epsilon", p.epsilon}, {"delta", p.delta},          {"theta", p.theta},
                      {"seed", p.seed},       {"noise", to_string(p.noise)}, {"route", to_string(p.route)},
                      {"k_const", p.k_const}};
  j["gap"] = p.gap ? nlohmann::json(*p.gap) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json to_json(const DerivedParams& d) {
  return {{"m", d.m},         {"harmonic", d.harmonic}, {"repetitions", d.repetitions},
          {"gamma", d.gamma}, {"ell", d.ell},           {"gap", d.gap}};
}

}  // namespace fidest::spectral
