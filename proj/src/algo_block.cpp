#include "fidest/algo_block.hpp"

#include "fidest/dme.hpp"
#include "fidest/linalg.hpp"
#include "fidest/truncation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <random>
#include <stdexcept>
#include <tuple>

namespace fidest::block {

namespace {

using poly::ApproxPolynomial;

struct GridPoint {
  double x;  // in state units
  double v;  // polynomial value at kappa x
};

// Lobatto grid of the polynomial's degree, restricted to x in [lo, hi].
std::vector<GridPoint> grid_values(const ApproxPolynomial& p, double kappa, double lo, double hi) {
  const int m = poly::default_grid_nodes(p.degree());
  const std::vector<double> v = poly::eval_on_lobatto(p.coeffs(), m);
  std::vector<GridPoint> out;
  for (int k = 0; k <= m; ++k) {
    const double x = std::cos(std::numbers::pi * k / m) / kappa;
    if (x >= lo && x <= hi) out.push_back({x, v[k]});
  }
  out.push_back({lo, p(kappa * lo)});
  out.push_back({hi, p(kappa * hi)});
  return out;
}

template <class F>
double grid_sup(const std::vector<GridPoint>& g, double lo, double hi, F f) {
  double best = 0.0;
  for (const auto& pt : g)
    if (pt.x >= lo && pt.x <= hi) best = std::max(best, f(pt.x, pt.v));
  return best;
}

double alpha_q(double kappa) { return kQNormalization / kappa; }

// 2 sqrt(2) / sqrt(theta): q(x) = q_scale * P_q(kappa x).
double q_scale(const BlockAlgoParams& params) { return 2.0 * std::numbers::sqrt2 / std::sqrt(params.theta); }

ErrorBudget analytic_terms(const PolySet& ps, const BlockAlgoParams& params) {
  const double kappa = ps.kappa;
  const double eps = params.epsilon;
  const double lo = (1.0 - params.delta_trunc) * params.theta;
  const double cs = 2.0 / std::sqrt(kappa);
  const double cq = q_scale(params);

  const auto gs = grid_values(ps.s, kappa, 0.0, 1.0);
  const double s_err = grid_sup(gs, 0.0, 1.0, [&](double x, double v) { return std::abs(std::sqrt(x) - cs * v); });
  const double s_sup = grid_sup(gs, 0.0, 1.0, [&](double, double v) { return std::abs(cs * v); });

  const auto gq = grid_values(ps.q, kappa, 0.0, 1.0);
  const double q_err = grid_sup(gq, lo, 1.0, [&](double x, double v) { return std::abs(1.0 / std::sqrt(x) - cq * v); });
  const double q_sup = grid_sup(gq, 0.0, 1.0, [&](double, double v) { return std::abs(cq * v); });
  const double xq_sup = grid_sup(gq, 0.0, 1.0, [&](double x, double v) { return std::abs(x * cq * v); });

  const double q_norm1 = 1.0 + 2.0 * eps / 5.0;  // ||Q||_1 after the first two stages
  const double aq = alpha_q(kappa);
  const double e_t = ps.rect_apx_error;

  ErrorBudget b;
  b.s_term = std::sqrt(static_cast<double>(ps.rk)) * s_err;
  b.q_term = q_err * s_sup;
  b.svt_term = q_norm1 * ps.p.apx_error() + 2.0 * ps.rk * ps.delta_p * aq;
  b.trunc_poly_term =
      e_t * q_sup * s_sup + q_norm1 * (2.0 * ps.p.degree() / aq) * e_t * xq_sup * s_sup;
  return b;
}

std::shared_ptr<const PolySet> construct(const BlockAlgoParams& params, int rk, double kappa) {
  using poly::Parity;
  using poly::PowerKind;
  auto ps = std::make_shared<PolySet>();
  const double eps = params.epsilon;
  const double theta = params.theta;
  const double delta = params.delta_trunc;
  const double kth = kappa * theta;
  ps->kappa = kappa;
  ps->rk = rk;

  ps->delta_s = kappa * eps * eps / (160.0 * rk);
  ps->eps_s = std::sqrt(kappa) * eps / (20.0 * std::sqrt(static_cast<double>(rk)));
  ps->s = poly::approx_power(0.5, PowerKind::positive, ps->delta_s, ps->eps_s, true, Parity::even);

  ps->delta_q = kth / 2.0;
  ps->eps_q = eps * std::sqrt(theta) / (20.0 * std::numbers::sqrt2);
  ps->q = poly::approx_power(0.5, PowerKind::negative, ps->delta_q, ps->eps_q, false, Parity::even);

  ps->delta_p = eps / (20.0 * rk * alpha_q(kappa));
  ps->eps_p = 5.0 * eps / 60.0;
  ps->p = poly::approx_sign(ps->delta_p, ps->eps_p);

  ps->eps_t = std::min(std::sqrt(theta) * eps / (20.0 * std::numbers::sqrt2), 5.0 * eps / (60.0 * ps->p.degree()));
  const ApproxPolynomial rect = poly::approx_rect((1.0 - delta / 2.0) * kth, delta * kth / 2.0, ps->eps_t);
  ps->rect_apx_error = rect.apx_error();
  ps->t_tilde = poly::affine(rect, 1.0, -1.0);

  ps->r = poly::multiply(poly::multiply(ps->t_tilde, poly::identity_polynomial()), ps->q, 1.0 / std::sqrt(2.0 * kth));
  ps->tq = poly::multiply(ps->t_tilde, ps->q);

  ps->analytic = analytic_terms(*ps, params);
  return ps;
}

std::int64_t amplitude_reps(double eta) {
  return static_cast<std::int64_t>(std::ceil(kAmplitudeRepsConstant / eta));
}

// Precision of the Hadamard-test probability that maps to eps/5 on the estimate.
double probability_precision(const BlockAlgoParams& params) {
  return params.epsilon * std::sqrt(params.theta) / (40.0 * std::numbers::sqrt2);
}

std::int64_t sampled_shots(const BlockAlgoParams& params) {
  if (params.shots) return *params.shots;
  const double kappa = access_kappa(AccessMode::sampled);
  return static_cast<std::int64_t>(
      std::ceil(kShotConstant / (kappa * params.epsilon * params.epsilon * params.theta)));
}

}  // namespace

void BlockAlgoParams::validate() const {
  if (!(theta > 0.0 && theta < 1.0)) throw std::invalid_argument("block: theta must lie in (0, 1)");
  if (!(delta_trunc > 0.0 && delta_trunc < 1.0)) throw std::invalid_argument("block: delta must lie in (0, 1)");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("block: epsilon must lie in (0, 1)");
  if (rank_bound && *rank_bound < 1) throw std::invalid_argument("block: rank bound must be positive");
  if (shots && *shots < 1) throw std::invalid_argument("block: shots must be positive");
}

int rank_bound_used(const BlockAlgoParams& params) {
  const double window = 1.0 / ((1.0 - params.delta_trunc) * params.theta);
  const int from_window = static_cast<int>(std::ceil(window - 1e-9));
  return params.rank_bound ? std::min(*params.rank_bound, from_window) : from_window;
}

double access_kappa(AccessMode mode) { return mode == AccessMode::purified ? 1.0 : std::numbers::pi / 4.0; }

std::shared_ptr<const PolySet> build_polynomials(const BlockAlgoParams& params) {
  params.validate();
  const int rk = rank_bound_used(params);
  const double kappa = access_kappa(params.mode);
  using Key = std::tuple<double, double, double, int, double>;
  static std::mutex mu;
  static std::map<Key, std::shared_ptr<const PolySet>> cache;
  const Key key{params.epsilon, params.theta, params.delta_trunc, rk, kappa};
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto ps = construct(params, rk, kappa);
  cache.emplace(key, ps);
  return ps;
}

double ideal_threshold(const PolySet& polys, const BlockAlgoParams& params, double x) {
  if (x < (1.0 - params.delta_trunc) * params.theta) return 0.0;
  if (x >= params.theta) return 1.0;
  return std::clamp(polys.t_tilde(polys.kappa * x), 0.0, 1.0);
}

std::int64_t closed_form_rho_uses(const PolySet& polys) {
  return static_cast<std::int64_t>(polys.tq.degree()) +
         static_cast<std::int64_t>(polys.p.degree()) * polys.r.degree();
}

std::int64_t closed_form_sigma_uses(const PolySet& polys) {
  return static_cast<std::int64_t>(polys.s.degree()) * (1 + static_cast<std::int64_t>(polys.p.degree()));
}

Pipeline build_pipeline(const states::DensityMatrix& rho, const states::DensityMatrix& sigma,
                        const BlockAlgoParams& params) {
  if (rho.dim() != sigma.dim()) throw std::invalid_argument("block: dimension mismatch");
  Pipeline pipe;
  pipe.polys = build_polynomials(params);
  const PolySet& ps = *pipe.polys;
  const double kappa = ps.kappa;

  qsvt::BlockEncoding u_rho, u_sigma;
  if (params.mode == AccessMode::purified) {
    u_rho = qsvt::block_encode_density(states::purify(rho), "rho");
    u_sigma = qsvt::block_encode_density(states::purify(sigma), "sigma");
  } else {
    // Every use is implemented to within eta / b so the whole circuit stays
    // within eta of the ideal one.
    const std::int64_t b = closed_form_rho_uses(ps) + closed_form_sigma_uses(ps);
    pipe.per_use_error = probability_precision(params) / static_cast<double>(b);
    auto er = dme::samples_to_block_encoding(rho, pipe.per_use_error, params.inject_noise, "rho");
    auto es = dme::samples_to_block_encoding(sigma, pipe.per_use_error, params.inject_noise, "sigma");
    u_rho = er.encoding;
    u_sigma = es.encoding;
    pipe.copies_rho_per_use = er.budget.copies_of_state;
    pipe.copies_sigma_per_use = es.budget.copies_of_state;
  }

  const double root_kappa = std::sqrt(kappa);
  const qsvt::BlockEncoding e_r = qsvt::rescale(qsvt::apply_svt(ps.r, u_rho), 4.0 / root_kappa);
  const qsvt::BlockEncoding e_s = qsvt::rescale(qsvt::apply_svt(ps.s, u_sigma), 2.0 / root_kappa);
  pipe.q_tilde = qsvt::block_product(e_r, e_s);
  pipe.sign_svt = qsvt::apply_svt(ps.p, qsvt::block_adjoint(pipe.q_tilde));
  const qsvt::BlockEncoding e_tq = qsvt::rescale(qsvt::apply_svt(ps.tq, u_rho), q_scale(params));
  pipe.hadamard = qsvt::block_product(qsvt::block_product(e_tq, e_s), pipe.sign_svt);

  pipe.budget = ps.analytic;
  const double alpha_b = pipe.hadamard.alpha;
  if (params.mode == AccessMode::purified) {
    pipe.budget.statistical_term = 2.0 * alpha_b * probability_precision(params);
  } else {
    pipe.budget.statistical_term = alpha_b / std::sqrt(static_cast<double>(sampled_shots(params)));
    const std::int64_t b = closed_form_rho_uses(ps) + closed_form_sigma_uses(ps);
    pipe.budget.encoding_term = 2.0 * alpha_b * static_cast<double>(b) * pipe.per_use_error;
  }
  return pipe;
}

double hadamard_expectation(const states::DensityMatrix& rho, const qsvt::BlockEncoding& a) {
  if (a.logical.rows() != rho.dim() || a.logical.cols() != rho.dim())
    throw std::invalid_argument("hadamard_expectation: dimension mismatch");
  const cplx tr = (rho.matrix() * a.block()).trace();
  return 0.5 * (rho.trace() + tr.real());
}

double hadamard_expectation_imag(const states::DensityMatrix& rho, const qsvt::BlockEncoding& a) {
  if (a.logical.rows() != rho.dim() || a.logical.cols() != rho.dim())
    throw std::invalid_argument("hadamard_expectation_imag: dimension mismatch");
  const cplx tr = (rho.matrix() * a.block()).trace();
  return 0.5 * (rho.trace() + tr.imag());
}

double oracle_target(const states::DensityMatrix& rho, const states::DensityMatrix& sigma, const PolySet& polys,
                     const BlockAlgoParams& params) {
  const Matrix t = spectral_apply(rho.matrix(), [&](double x) { return ideal_threshold(polys, params, x); });
  return trace_norm(t * sqrt_psd(rho.matrix()) * sqrt_psd(sigma.matrix()));
}

ErrorBudget::Measured measure_budget(const states::DensityMatrix& rho, const states::DensityMatrix& sigma,
                                     const Pipeline& pipe, const BlockAlgoParams& params) {
  const PolySet& ps = *pipe.polys;
  const double kappa = ps.kappa;
  const double cs = 2.0 / std::sqrt(kappa);
  const double cq = q_scale(params);
  const Matrix t = spectral_apply(rho.matrix(), [&](double x) { return ideal_threshold(ps, params, x); });
  const Matrix s = spectral_apply(sigma.matrix(), [&](double x) { return cs * ps.s(kappa * x); });
  const Matrix q = spectral_apply(rho.matrix(), [&](double x) { return cq * ps.q(kappa * x); });
  const Matrix t_root_rho = t * sqrt_psd(rho.matrix());

  const double a = trace_norm(t_root_rho * sqrt_psd(sigma.matrix()));
  const double b = trace_norm(t_root_rho * s);
  const Matrix big_q = t * rho.matrix() * q * s;
  const double c = trace_norm(big_q);
  const Matrix x_q = qsvt::svt_matrix(ps.p, big_q.adjoint() / alpha_q(kappa));
  const double d = (big_q * x_q).trace().real();
  const double e = (pipe.q_tilde.logical * pipe.sign_svt.logical).trace().real();

  ErrorBudget::Measured m;
  m.s_term = std::abs(a - b);
  m.q_term = std::abs(b - c);
  m.svt_term = std::abs(c - d);
  m.trunc_poly_term = std::abs(d - e);
  m.aggregate = std::abs(a - e);
  return m;
}

EstimationReport estimate_fidelity_block(const states::DensityMatrix& rho, const states::DensityMatrix& sigma,
                                         const BlockAlgoParams& params) {
  const auto start = std::chrono::steady_clock::now();
  params.validate();
  EstimationReport rep;
  rep.algorithm = "block";
  rep.seed = params.seed;
  BlockAlgoParams unseeded = params;
  unseeded.seed = 0;
  rep.config_hash = config_hash(to_json(unseeded));

  Pipeline pipe = build_pipeline(rho, sigma, params);
  const PolySet& ps = *pipe.polys;
  const double alpha_b = pipe.hadamard.alpha;
  const double p0 = hadamard_expectation(rho, pipe.hadamard);
  const std::int64_t b_rho = pipe.hadamard.cost.uses_of("rho");
  const std::int64_t b_sigma = pipe.hadamard.cost.uses_of("sigma");

  std::mt19937_64 rng(params.seed);
  double p_hat = p0;
  if (params.mode == AccessMode::purified) {
    const double eta = probability_precision(params);
    const std::int64_t reps = amplitude_reps(eta);
    if (params.amplitude_noise) p_hat += std::normal_distribution<double>(0.0, eta)(rng);
    rep.shots = reps;
    // One state preparation of rho per repetition besides the circuit's own uses.
    rep.queries["rho"] = saturating_mul(reps, b_rho + 1);
    rep.queries["sigma"] = saturating_mul(reps, b_sigma);
  } else {
    const std::int64_t n = sampled_shots(params);
    const double prob = std::clamp(p0, 0.0, 1.0);
    const std::int64_t k = std::binomial_distribution<std::int64_t>(n, prob)(rng);
    p_hat = static_cast<double>(k) / static_cast<double>(n);
    rep.shots = n;
    rep.queries["rho"] = saturating_mul(n, b_rho);
    rep.queries["sigma"] = saturating_mul(n, b_sigma);
    const std::int64_t per_shot =
        saturating_add(saturating_add(saturating_mul(b_rho, pipe.copies_rho_per_use), 1),
                       saturating_mul(b_sigma, pipe.copies_sigma_per_use));
    rep.samples = saturating_mul(n, per_shot);
  }
  rep.estimate = alpha_b * (2.0 * p_hat - 1.0);

  rep.oracle_fidelity = states::fidelity_exact(rho, sigma);
  rep.oracle_truncated_fidelity =
      states::fidelity_exact(states::project_spectrum(rho, states::Interval::at_least(params.theta)), sigma);
  pipe.budget.measured = measure_budget(rho, sigma, pipe, params);
  rep.error_budget = to_json(pipe.budget);

  const states::Spectrum spec = states::spectrum(rho);
  int rk_true = 0;
  for (int i = 0; i < spec.eigenvalues.size(); ++i)
    if (spec.eigenvalues[i] >= (1.0 - params.delta_trunc) * params.theta) ++rk_true;

  auto& dg = rep.diagnostics;
  dg["rank_bound_used"] = ps.rk;
  dg["rank_true"] = rk_true;
  dg["kappa"] = ps.kappa;
  dg["alpha_q"] = pipe.q_tilde.alpha;
  dg["alpha_b"] = alpha_b;
  dg["p0"] = p0;
  dg["exact_trace"] = (pipe.q_tilde.logical * pipe.sign_svt.logical).trace().real();
  dg["oracle_target"] = oracle_target(rho, sigma, ps, params);
  dg["truncation_term"] = truncation::truncation_error_term(rho, sigma, params.theta);
  dg["degrees"] = {{"s", ps.s.degree()},   {"q", ps.q.degree()}, {"t_tilde", ps.t_tilde.degree()},
                   {"p", ps.p.degree()},   {"r", ps.r.degree()}, {"tq", ps.tq.degree()}};
  dg["uses_per_circuit"] = {{"rho", b_rho}, {"sigma", b_sigma}};
  dg["encoding_eps"] = pipe.hadamard.eps;
  if (params.mode == AccessMode::sampled) {
    dg["per_use_error"] = pipe.per_use_error;
    dg["copies_per_use"] = {{"rho", pipe.copies_rho_per_use}, {"sigma", pipe.copies_sigma_per_use}};
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

CostModel query_cost_model(const BlockAlgoParams& params, double rk, double t_rho, double t_sigma) {
  if (!(rk > 0.0 && t_rho > 0.0 && t_sigma > 0.0)) throw std::invalid_argument("query_cost_model: inputs must be positive");
  const double e = params.epsilon, d = params.delta_trunc, th = params.theta;
  CostModel m;
  if (params.mode == AccessMode::purified) {
    m.rho_term = rk / (e * e * d * std::pow(th, 1.5)) * t_rho;
    m.sigma_term = rk * rk / (std::pow(e, 4) * std::sqrt(th)) * t_sigma;
  } else {
    m.rho_term = rk * rk / (std::pow(e, 5) * d * d * std::pow(th, 3.5)) * t_rho;
    m.sigma_term = std::pow(rk, 4) / (std::pow(e, 9) * std::pow(th, 1.5)) * t_sigma;
  }
  return m;
}

std::string to_string(AccessMode m) { return m == AccessMode::purified ? "purified" : "sampled"; }

AccessMode access_mode_from_string(const std::string& s) {
  if (s == "purified") return AccessMode::purified;
  if (s == "sampled") return AccessMode::sampled;
  throw std::invalid_argument("unknown access mode: " + s);
}

nlohmann::json to_json(const BlockAlgoParams& p) {
  nlohmann::json j = {{"theta", p.theta},
                      {"delta_trunc", p.delta_trunc},
                      {"epsilon", p.epsilon},
                      {"mode", to_string(p.mode)},
                      {"seed", p.seed},
                      {"amplitude_noise", p.amplitude_noise},
                      {"inject_noise", p.inject_noise}};
  j["rank_bound"] = p.rank_bound ? nlohmann::json(*p.rank_bound) : nlohmann::json(nullptr);
  j["shots"] = p.shots ? nlohmann::json(*p.shots) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json to_json(const ErrorBudget& b) {
  nlohmann::json j = {{"s_term", b.s_term},
                      {"q_term", b.q_term},
                      {"svt_term", b.svt_term},
                      {"trunc_poly_term", b.trunc_poly_term},
                      {"statistical_term", b.statistical_term},
                      {"encoding_term", b.encoding_term}};
  if (b.measured) {
    j["measured"] = {{"s_term", b.measured->s_term},
                     {"q_term", b.measured->q_term},
                     {"svt_term", b.measured->svt_term},
                     {"trunc_poly_term", b.measured->trunc_poly_term},
                     {"aggregate", b.measured->aggregate}};
  }
  return j;
}

}  // namespace fidest::block
