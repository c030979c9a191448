#include "fidest/harness.hpp"

#include "fidest/coupon.hpp"
#include "fidest/truncation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace fidest::harness {

namespace {

// Stream indices under a trial seed.
constexpr std::uint64_t kInstanceStream = 0;
constexpr std::uint64_t kBlockStream = 1;
constexpr std::uint64_t kSpectralStream = 2;

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::int64_t query_or_zero(const EstimationReport& r, const std::string& key) {
  const auto it = r.queries.find(key);
  return it == r.queries.end() ? 0 : it->second;
}

EstimationReport failed_report(const std::string& algorithm, const Instance& inst, const std::string& what) {
  EstimationReport r;
  r.algorithm = algorithm;
  r.ok = false;
  r.failure = what;
  r.oracle_fidelity = states::fidelity_exact(inst.rho, inst.sigma);
  return r;
}

EstimationReport run_one(const std::string& algorithm, const Instance& inst, const ExperimentConfig& cfg,
                         std::uint64_t seed) {
  try {
    if (algorithm == "block") {
      block::BlockAlgoParams p = cfg.block;
      p.seed = seed;
      return block::estimate_fidelity_block(inst.rho, inst.sigma, p);
    }
    spectral::SpectralAlgoParams p = cfg.spectral;
    p.seed = seed;
    return spectral::estimate_fidelity_spectral(inst.rho, inst.sigma, p);
  } catch (const std::exception& e) {
    EstimationReport r = failed_report(algorithm, inst, e.what());
    r.seed = seed;
    return r;
  }
}

std::vector<EstimationReport> run_trial(const ExperimentConfig& cfg, int t) {
  const std::uint64_t seed = trial_seed(cfg.master_seed, t);
  const Instance inst = generate_instance(cfg.instance, derive_seed(seed, kInstanceStream));
  std::vector<EstimationReport> out;
  if (cfg.algorithm != Algorithm::spectral) out.push_back(run_one("block", inst, cfg, derive_seed(seed, kBlockStream)));
  if (cfg.algorithm != Algorithm::block)
    out.push_back(run_one("spectral", inst, cfg, derive_seed(seed, kSpectralStream)));
  for (auto& r : out) r.trial = t;
  return out;
}

}  // namespace

void InstanceConfig::validate() const {
  if (dim < 1 || rank < 1 || rank > dim) throw std::invalid_argument("instance: need 1 <= rank <= dim");
  if (gap < 0.0) throw std::invalid_argument("instance: gap must be nonnegative");
  if (family == Family::split) {
    if (rank % 2 != 0) throw std::invalid_argument("instance: split needs an even rank");
    if (!(split_eps >= 0.0 && split_eps <= 1.0)) throw std::invalid_argument("instance: split_eps in [0, 1]");
  }
  if (family == Family::random || family == Family::diagonal) {
    const int levels = rank < dim ? rank : rank - 1;
    if (gap * levels * (levels + 1) / 2.0 >= 1.0) throw std::invalid_argument("instance: gap too large for rank");
  }
}

void ExperimentConfig::validate() const {
  if (trials < 1) throw std::invalid_argument("config: trials must be >= 1");
  if (workers < 1) throw std::invalid_argument("config: workers must be >= 1");
  instance.validate();
  if (algorithm != Algorithm::spectral) block.validate();
  if (algorithm != Algorithm::block) spectral.validate();
}

states::DensityMatrix gapped_random_density(int dim, int rank, double gap, std::mt19937_64& rng) {
  if (dim < 1 || rank < 1 || rank > dim) throw std::invalid_argument("gapped_random_density: need 1 <= rank <= dim");
  // Offsets gap * (levels - i) keep neighbours gap apart; the kernel counts as a level.
  const int base = rank < dim ? 1 : 0;
  std::vector<double> offsets(rank);
  for (int i = 0; i < rank; ++i) offsets[i] = gap * (rank - 1 - i + base);
  const double reserved = std::accumulate(offsets.begin(), offsets.end(), 0.0);
  if (reserved >= 1.0) throw std::invalid_argument("gapped_random_density: infeasible gap/rank combination");
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w(rank);
  for (auto& x : w) x = expo(rng);
  std::sort(w.begin(), w.end(), std::greater<>());
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  RealVector lam = RealVector::Zero(dim);
  for (int i = 0; i < rank; ++i) lam(i) = w[i] / total * (1.0 - reserved) + offsets[i];
  const Matrix u = states::haar_unitary(dim, rng);
  return states::DensityMatrix(hermitian_part(u * lam.cast<cplx>().asDiagonal() * u.adjoint()));
}

Instance split_spectrum_instance(int dim, int rank, double eps, std::mt19937_64& rng) {
  if (rank < 2 || rank % 2 != 0 || rank > dim) throw std::invalid_argument("split_spectrum_instance: even rank <= dim");
  RealVector lr = RealVector::Zero(dim), ls = RealVector::Zero(dim);
  for (int i = 0; i < rank; ++i) {
    lr(i) = (i < rank / 2 ? 1.0 + eps : 1.0 - eps) / rank;
    ls(i) = 1.0 / rank;
  }
  const Matrix u = states::haar_unitary(dim, rng);
  auto conj = [&u](const RealVector& l) {
    return states::DensityMatrix(hermitian_part(u * l.cast<cplx>().asDiagonal() * u.adjoint()));
  };
  return {conj(lr), conj(ls)};
}

double split_spectrum_fidelity(double eps) { return 0.5 * (std::sqrt(1.0 + eps) + std::sqrt(1.0 - eps)); }

Instance point_mass_instance(int r, int k) {
  if (r < 1 || k < 1 || k > r) throw std::invalid_argument("point_mass_instance: need 1 <= k <= r");
  RealVector lr = RealVector::Zero(r), ls = RealVector::Constant(r, 1.0 / r);
  for (int i = 0; i < k; ++i) lr(i) = 1.0 / k;
  return {states::diagonal_state(lr), states::diagonal_state(ls)};
}

Instance generate_instance(const InstanceConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  std::mt19937_64 rng(seed);
  Instance inst{states::DensityMatrix::zero(cfg.dim), states::DensityMatrix::zero(cfg.dim)};
  switch (cfg.family) {
    case Family::random:
      inst.rho = gapped_random_density(cfg.dim, cfg.rank, cfg.gap, rng);
      break;
    case Family::diagonal: {
      const states::Spectrum s = states::spectrum(gapped_random_density(cfg.dim, cfg.rank, cfg.gap, rng));
      inst.rho = states::diagonal_state(s.eigenvalues);
      break;
    }
    case Family::pure: {
      std::normal_distribution<double> n(0.0, 1.0);
      Vector psi(cfg.dim);
      for (int i = 0; i < cfg.dim; ++i) psi(i) = cplx(n(rng), n(rng));
      inst.rho = states::pure_state(psi.normalized());
      break;
    }
    case Family::split:
      return split_spectrum_instance(cfg.dim, cfg.rank, cfg.split_eps, rng);
  }
  if (cfg.sigma == SigmaKind::same) {
    inst.sigma = inst.rho;
  } else if (cfg.family == Family::diagonal) {
    const states::Spectrum s = states::spectrum(states::random_density(cfg.dim, cfg.dim, 0.0, rng));
    inst.sigma = states::diagonal_state(s.eigenvalues);
  } else {
    inst.sigma = states::random_density(cfg.dim, cfg.dim, 0.0, rng);
  }
  return inst;
}

std::uint64_t trial_seed(std::uint64_t master_seed, int trial) {
  return derive_seed(master_seed, static_cast<std::uint64_t>(trial));
}

std::vector<EstimationReport> run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<std::vector<EstimationReport>> per_trial(cfg.trials);
  const int workers = std::min(cfg.workers, cfg.trials);
  if (workers <= 1) {
    for (int t = 0; t < cfg.trials; ++t) per_trial[t] = run_trial(cfg, t);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (int t = next++; t < cfg.trials; t = next++) per_trial[t] = run_trial(cfg, t);
      });
    for (auto& th : pool) th.join();
  }
  std::vector<EstimationReport> out;
  for (auto& v : per_trial)
    for (auto& r : v) out.push_back(std::move(r));
  return out;
}

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols = {
      "trial",          "algorithm",       "seed",          "config_hash",
      "estimate",       "oracle_fidelity", "oracle_truncated_fidelity", "abs_error",
      "abs_error_truncated", "queries_rho", "queries_sigma", "samples",
      "shots",          "ok",              "failure"};
  return cols;
}

std::string csv_header() {
  std::string out;
  for (const auto& c : csv_columns()) out += (out.empty() ? "" : ",") + c;
  return out;
}

std::string csv_row(const EstimationReport& r) {
  const std::vector<std::string> fields = {std::to_string(r.trial),
                                           r.algorithm,
                                           std::to_string(r.seed),
                                           r.config_hash,
                                           format_double(r.estimate),
                                           format_double(r.oracle_fidelity),
                                           format_double(r.oracle_truncated_fidelity),
                                           format_double(std::abs(r.estimate - r.oracle_fidelity)),
                                           format_double(std::abs(r.estimate - r.oracle_truncated_fidelity)),
                                           std::to_string(query_or_zero(r, "rho")),
                                           std::to_string(query_or_zero(r, "sigma")),
                                           std::to_string(r.samples),
                                           std::to_string(r.shots),
                                           r.ok ? "1" : "0",
                                           csv_escape(r.failure)};
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) out += (i ? "," : "") + fields[i];
  return out;
}

std::string to_csv(const std::vector<EstimationReport>& reports) {
  std::string out = csv_header() + "\n";
  for (const auto& r : reports) out += csv_row(r) + "\n";
  return out;
}

void write_outputs(const ExperimentConfig& cfg, const std::vector<EstimationReport>& reports) {
  if (!cfg.json_dir.empty()) {
    std::filesystem::create_directories(cfg.json_dir);
    for (const auto& r : reports) {
      const auto path = std::filesystem::path(cfg.json_dir) / ("trial_" + std::to_string(r.trial) + "_" + r.algorithm + ".json");
      std::ofstream(path) << to_json(r).dump(2) << "\n";
    }
  }
  if (!cfg.csv_path.empty()) {
    const auto parent = std::filesystem::path(cfg.csv_path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    std::ofstream out(cfg.csv_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + cfg.csv_path);
    out << to_csv(reports);
  }
}

Regression scaling_regression(const std::vector<double>& xs, const std::vector<double>& ys, double predicted) {
  if (xs.size() != ys.size()) throw std::invalid_argument("scaling_regression: size mismatch");
  if (xs.size() < 4) throw std::invalid_argument("scaling_regression: need at least 4 points");
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0 && ys[i] > 0.0)) throw std::invalid_argument("scaling_regression: values must be positive");
    const double lx = std::log(xs[i]), ly = std::log(ys[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = n * sxx - sx * sx;
  if (!(denom > 0.0)) throw std::invalid_argument("scaling_regression: swept parameter is constant");
  Regression r;
  r.exponent = (n * sxy - sx * sy) / denom;
  r.intercept = (sy - r.exponent * sx) / n;
  r.predicted = predicted;
  r.points = static_cast<int>(xs.size());
  return r;
}

double report_metric(const EstimationReport& r, const std::string& metric) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (metric.rfind("queries.", 0) == 0) {
    const auto it = r.queries.find(metric.substr(8));
    return it == r.queries.end() ? nan : static_cast<double>(it->second);
  }
  if (metric == "samples") return static_cast<double>(r.samples);
  if (metric == "shots") return static_cast<double>(r.shots);
  if (metric == "repetitions") {
    const auto& d = r.diagnostics;
    return d.contains("derived") ? d["derived"]["repetitions"].get<double>() : nan;
  }
  if (metric == "rho_query_cost" || metric == "sigma_query_cost")
    return r.diagnostics.contains(metric) ? r.diagnostics[metric].get<double>() : nan;
  throw std::invalid_argument("unknown metric: " + metric);
}

SweepResult run_sweep(const ExperimentConfig& base, const SweepSpec& spec) {
  SweepResult out;
  for (double v : spec.values) {
    ExperimentConfig cfg = base;
    cfg.trials = 1;
    if (spec.parameter == "block.epsilon") {
      cfg.block.epsilon = v;
    } else if (spec.parameter == "block.theta") {
      cfg.block.theta = v;
    } else if (spec.parameter == "spectral.epsilon") {
      cfg.spectral.epsilon = v;
    } else if (spec.parameter == "spectral.theta") {
      cfg.spectral.theta = v;
    } else if (spec.parameter == "spectral.delta") {
      cfg.spectral.delta = v;
    } else {
      throw std::invalid_argument("unknown sweep parameter: " + spec.parameter);
    }
    for (auto& r : run_experiment(cfg)) {
      const double y = report_metric(r, spec.metric);
      if (r.ok && std::isfinite(y) && y > 0.0) {
        out.xs.push_back(v);
        out.ys.push_back(y);
      }
      out.reports.push_back(std::move(r));
    }
  }
  out.fit = scaling_regression(out.xs, out.ys, spec.predicted_exponent);
  return out;
}

std::vector<BoundCheck> verify_bounds(int instances, std::uint64_t seed, int max_dim) {
  if (instances < 1 || max_dim < 2) throw std::invalid_argument("verify_bounds: need instances >= 1, max_dim >= 2");
  std::vector<BoundCheck> checks = {{"fidelity_symmetry"},        {"fuchs_van_de_graaf"},
                                    {"lambda_trace_sqrt"},        {"hard_truncation"},
                                    {"soft_bounds_chain"},        {"fine_guard"},
                                    {"continuity"},               {"continuity_negative_part"},
                                    {"coupon_harmonic"},          {"coupon_coupling", 0, 0, 0.0, true},
                                    {"coupon_coupling_sound"},    {"diagonal_estimation"},
                                    {"offdiagonal_estimation", 0, 0, 0.0, true},
                                    {"offdiagonal_estimation_sound"}, {"inner_product"}};
  auto record = [&checks](std::size_t k, double observed, double bound) {
    auto& c = checks[k];
    ++c.instances;
    const double excess = observed - bound;
    if (c.instances == 1 || excess > c.worst_excess) c.worst_excess = excess;
    if (excess > truncation::kBoundSlack) ++c.violations;
  };
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dim_dist(2, max_dim);
  std::uniform_real_distribution<double> unit(0.0, 1.0), sym(-1.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int n = 0; n < instances; ++n) {
    const int d = dim_dist(rng);
    const int rank = std::uniform_int_distribution<int>(1, d)(rng);
    const auto rho = states::random_density(d, rank, 0.0, rng);
    const auto sigma = states::random_density(d, std::uniform_int_distribution<int>(1, d)(rng), 0.0, rng);
    const double f = states::fidelity_exact(rho, sigma);
    record(0, std::abs(f - states::fidelity_exact(sigma, rho)), 0.0);
    const double t = states::trace_distance(rho, sigma);
    record(1, std::max(1.0 - f - t, t - std::sqrt(std::max(0.0, 1.0 - f * f))), 0.0);
    const Matrix lam = states::lambda_matrix(rho, sigma);
    record(2, std::abs(trace_sqrt_psd(lam) - f), 0.0);

    const double theta = 0.5 * unit(rng);
    const auto hard = truncation::hard_truncation_gap(rho, sigma, states::Interval::at_least(theta));
    record(3, std::max(hard.gap - hard.bound, -hard.gap), 0.0);
    const double alpha = 0.4 * unit(rng), beta = alpha + 0.1 + 0.3 * unit(rng);
    const auto ramp = [alpha, beta](double x) { return std::clamp((x - alpha) / (beta - alpha), 0.0, 1.0); };
    record(4, truncation::soft_bounds_check(rho, sigma, ramp, alpha, beta).chain_holds() ? 0.0 : 1.0, 0.0);
    const auto guard = truncation::fine_guard_gap(rho, sigma, alpha, beta);
    record(5, std::max(guard.gap - guard.bound, -guard.gap), 0.0);

    const int lr = static_cast<int>(lam.rows());
    Matrix noise(lr, lr);
    for (int i = 0; i < lr; ++i)
      for (int j = 0; j < lr; ++j) noise(i, j) = cplx(normal(rng), normal(rng));
    noise = hermitian_part(noise);
    const Matrix hat = lam + std::pow(10.0, -4.0 * unit(rng)) * noise / trace_norm(noise);
    try {
      const auto c = spectral::continuity_gap(lam, hat, lr);
      record(6, c.gap, c.bound);
      record(7, c.negative_mass, c.distance);
    } catch (const spectral::PreconditionViolation&) {
      // rank-deficient Lambda with a full-rank perturbation; not covered by the statement
    }

    const int m = std::uniform_int_distribution<int>(2, 8)(rng);
    std::vector<double> probs(m);
    for (auto& p : probs) p = 0.05 + unit(rng);
    const double total = std::accumulate(probs.begin(), probs.end(), 0.0);
    for (auto& p : probs) p /= total;
    std::sort(probs.begin(), probs.end(), std::greater<>());
    const coupon::CouponDistribution dist(probs);
    const double exact = coupon::expected_time_exact(dist);
    record(8, exact, coupon::harmonic_mean_bound(dist));
    record(9, exact, coupon::coupling_bound(dist));
    record(10, exact, coupon::coupling_bound_sound(dist));

    const double gamma = 0.01, xi = 0.01;
    const double li = 0.1 + 0.8 * unit(rng), lj = 0.1 + 0.8 * unit(rng), s = unit(rng);
    const double lti = std::clamp(li + gamma * sym(rng), 1e-9, 1.0), ltj = std::clamp(lj + gamma * sym(rng), 1e-9, 1.0);
    const double st = std::clamp(s + xi * sym(rng), 1e-9, 1.0);
    if (std::abs(st - s) <= xi) {
      const auto diag = spectral::diagonal_error_check(li, lti, s, st, gamma, xi);
      record(11, diag.gap, diag.bound);
    }
    const cplx sij(0.3 * sym(rng), 0.3 * sym(rng));
    const cplx stij = sij + xi * std::polar(unit(rng), 3.0 * sym(rng));
    const double kappa = std::min(li, lj);
    const auto stated = spectral::offdiagonal_error_check(li, lj, lti, ltj, sij, stij, gamma, xi, kappa);
    record(12, stated.gap, stated.bound);
    const auto sound = spectral::offdiagonal_error_check_sound(li, lj, lti, ltj, sij, stij, gamma, xi, kappa);
    record(13, sound.gap, sound.bound);

    Vector psi(d), phi(d), dpsi(d), dphi(d);
    for (int i = 0; i < d; ++i) {
      psi(i) = cplx(normal(rng), normal(rng));
      phi(i) = cplx(normal(rng), normal(rng));
      dpsi(i) = cplx(normal(rng), normal(rng));
      dphi(i) = cplx(normal(rng), normal(rng));
    }
    psi.normalize();
    phi.normalize();
    const double eps = 0.2 * unit(rng);
    const auto ip = spectral::inner_product_check(psi, (psi + eps * dpsi.normalized()).normalized(), phi,
                                                  (phi + eps * dphi.normalized()).normalized(), sigma);
    record(14, ip.gap, ip.bound);
  }
  return checks;
}

nlohmann::json to_json(const BoundCheck& c) {
  return {{"name", c.name},
          {"instances", c.instances},
          {"violations", c.violations},
          {"worst_excess", c.worst_excess},
          {"erratum", c.erratum}};
}

block::BlockAlgoParams block_params_from_json(const nlohmann::json& j) {
  block::BlockAlgoParams p;
  p.theta = j.value("theta", p.theta);
  p.delta_trunc = j.value("delta_trunc", p.delta_trunc);
  p.epsilon = j.value("epsilon", p.epsilon);
  if (j.contains("mode")) p.mode = block::access_mode_from_string(j["mode"].get<std::string>());
  if (j.contains("rank_bound") && !j["rank_bound"].is_null()) p.rank_bound = j["rank_bound"].get<int>();
  if (j.contains("shots") && !j["shots"].is_null()) p.shots = j["shots"].get<std::int64_t>();
  p.seed = j.value("seed", p.seed);
  p.amplitude_noise = j.value("amplitude_noise", p.amplitude_noise);
  p.inject_noise = j.value("inject_noise", p.inject_noise);
  return p;
}

spectral::SpectralAlgoParams spectral_params_from_json(const nlohmann::json& j) {
  spectral::SpectralAlgoParams p;
  p.epsilon = j.value("epsilon", p.epsilon);
  p.delta = j.value("delta", p.delta);
  p.theta = j.value("theta", p.theta);
  p.seed = j.value("seed", p.seed);
  if (j.contains("gap") && !j["gap"].is_null()) p.gap = j["gap"].get<double>();
  if (j.contains("noise")) p.noise = spectral::eigen_noise_from_string(j["noise"].get<std::string>());
  if (j.contains("route")) p.route = spectral::route_from_string(j["route"].get<std::string>());
  p.k_const = j.value("k_const", p.k_const);
  return p;
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig c;
  c.master_seed = j.value("master_seed", c.master_seed);
  c.trials = j.value("trials", c.trials);
  c.workers = j.value("workers", c.workers);
  if (j.contains("algorithm")) c.algorithm = algorithm_from_string(j["algorithm"].get<std::string>());
  if (j.contains("instance")) {
    const auto& i = j["instance"];
    c.instance.dim = i.value("dim", c.instance.dim);
    c.instance.rank = i.value("rank", c.instance.rank);
    c.instance.gap = i.value("gap", c.instance.gap);
    c.instance.split_eps = i.value("split_eps", c.instance.split_eps);
    if (i.contains("family")) c.instance.family = family_from_string(i["family"].get<std::string>());
    if (i.contains("sigma")) c.instance.sigma = sigma_kind_from_string(i["sigma"].get<std::string>());
  }
  if (j.contains("block")) c.block = block_params_from_json(j["block"]);
  if (j.contains("spectral")) c.spectral = spectral_params_from_json(j["spectral"]);
  if (j.contains("output")) {
    c.json_dir = j["output"].value("json_dir", c.json_dir);
    c.csv_path = j["output"].value("csv", c.csv_path);
  }
  return c;
}

nlohmann::json to_json(const InstanceConfig& c) {
  return {{"dim", c.dim},   {"rank", c.rank},   {"gap", c.gap}, {"family", to_string(c.family)},
          {"sigma", to_string(c.sigma)}, {"split_eps", c.split_eps}};
}

nlohmann::json to_json(const ExperimentConfig& c) {
  return {{"master_seed", c.master_seed},
          {"trials", c.trials},
          {"workers", c.workers},
          {"algorithm", to_string(c.algorithm)},
          {"instance", to_json(c.instance)},
          {"block", block::to_json(c.block)},
          {"spectral", spectral::to_json(c.spectral)},
          {"output", {{"json_dir", c.json_dir}, {"csv", c.csv_path}}}};
}

std::string to_string(Family f) {
  switch (f) {
    case Family::random: return "random";
    case Family::diagonal: return "diagonal";
    case Family::pure: return "pure";
    case Family::split: return "split";
  }
  return "";
}

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::block: return "block";
    case Algorithm::spectral: return "spectral";
    case Algorithm::both: return "both";
  }
  return "";
}

std::string to_string(SigmaKind s) { return s == SigmaKind::same ? "same" : "random"; }

Family family_from_string(const std::string& s) {
  if (s == "random") return Family::random;
  if (s == "diagonal") return Family::diagonal;
  if (s == "pure") return Family::pure;
  if (s == "split") return Family::split;
  throw std::invalid_argument("unknown instance family: " + s);
}

Algorithm algorithm_from_string(const std::string& s) {
  if (s == "block") return Algorithm::block;
  if (s == "spectral") return Algorithm::spectral;
  if (s == "both") return Algorithm::both;
  throw std::invalid_argument("unknown algorithm: " + s);
}

SigmaKind sigma_kind_from_string(const std::string& s) {
  if (s == "random") return SigmaKind::random;
  if (s == "same") return SigmaKind::same;
  throw std::invalid_argument("unknown sigma kind: " + s);
}

}  // namespace fidest::harness
