// fidest: fidelity estimation experiments from the command line.
//
// Exit codes: 0 on completion, 2 on a configuration error, 3 when --strict is
// set and a trial failed in-band (or a non-erratum bound was violated).

#include "fidest/coupon.hpp"
#include "fidest/harness.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <stdexcept>

using namespace fidest;
using nlohmann::json;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitStrict = 3;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flags bound to locals; only the ones given on the command line override the
// JSON config.
struct ExperimentFlags {
  std::string config_path;
  std::uint64_t seed = 0;
  int trials = 1, workers = 1, dim = 4, rank = 2;
  double gap = 0.05, split_eps = 0.5;
  std::string family = "random", sigma = "random";
  std::string json_dir, csv;
  bool strict = false;
  std::vector<CLI::Option*> opts;

  void add(CLI::App* app) {
    app->add_option("--config", config_path, "JSON experiment config")->check(CLI::ExistingFile);
    opts = {app->add_option("--seed", seed, "master seed"),
            app->add_option("--trials", trials, "number of trials"),
            app->add_option("--workers", workers, "parallel trials"),
            app->add_option("--dim", dim, "Hilbert space dimension"),
            app->add_option("--rank", rank, "rank of rho"),
            app->add_option("--gap", gap, "minimum eigenvalue spacing of generated rho"),
            app->add_option("--family", family, "random | diagonal | pure | split"),
            app->add_option("--sigma", sigma, "random | same"),
            app->add_option("--split-eps", split_eps, "relative eigenvalue offset of the split family"),
            app->add_option("--json-dir", json_dir, "write one JSON report per trial here"),
            app->add_option("--csv", csv, "write the aggregate CSV here")};
    app->add_flag("--strict", strict, "exit 3 if any trial failed");
  }

  bool given(const std::string& name) const {
    for (auto* o : opts)
      if (o->get_name() == name) return o->count() > 0;
    return false;
  }

  harness::ExperimentConfig base() const {
    harness::ExperimentConfig c;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      c = harness::config_from_json(json::parse(in));
    }
    if (given("--seed")) c.master_seed = seed;
    if (given("--trials")) c.trials = trials;
    if (given("--workers")) c.workers = workers;
    if (given("--dim")) c.instance.dim = dim;
    if (given("--rank")) c.instance.rank = rank;
    if (given("--gap")) c.instance.gap = gap;
    if (given("--family")) c.instance.family = harness::family_from_string(family);
    if (given("--sigma")) c.instance.sigma = harness::sigma_kind_from_string(sigma);
    if (given("--split-eps")) c.instance.split_eps = split_eps;
    if (given("--json-dir")) c.json_dir = json_dir;
    if (given("--csv")) c.csv_path = csv;
    return c;
  }
};

struct BlockFlags {
  double eps = 0.1, theta = 0.5, delta = 0.5;
  std::string mode = "purified";
  int rank_bound = 0;
  std::int64_t shots = 0;
  bool inject = false;
  CLI::Option *o_eps, *o_theta, *o_delta, *o_mode, *o_rank, *o_shots;

  void add(CLI::App* app) {
    o_eps = app->add_option("--eps", eps, "target precision");
    o_theta = app->add_option("--theta", theta, "truncation threshold");
    o_delta = app->add_option("--delta-trunc", delta, "soft threshold width");
    o_mode = app->add_option("--mode", mode, "purified | sampled");
    o_rank = app->add_option("--rank-bound", rank_bound, "known bound on rank(rho)");
    o_shots = app->add_option("--shots", shots, "sampled mode shot override");
    app->add_flag("--inject-noise", inject, "depolarize sample-based encodings");
  }

  void apply(block::BlockAlgoParams& p) const {
    if (o_eps->count()) p.epsilon = eps;
    if (o_theta->count()) p.theta = theta;
    if (o_delta->count()) p.delta_trunc = delta;
    if (o_mode->count()) p.mode = block::access_mode_from_string(mode);
    if (o_rank->count()) p.rank_bound = rank_bound;
    if (o_shots->count()) p.shots = shots;
    if (inject) p.inject_noise = true;
  }
};

struct SpectralFlags {
  double eps = 0.1, delta = 0.1, theta = 0.05, gap = 0.0;
  std::string noise = "uniform", route = "hadamard";
  CLI::Option *o_eps, *o_delta, *o_theta, *o_gap, *o_noise, *o_route;

  void add(CLI::App* app) {
    o_eps = app->add_option("--eps", eps, "target precision");
    o_delta = app->add_option("--delta", delta, "failure probability");
    o_theta = app->add_option("--theta", theta, "eigenvalue threshold");
    o_gap = app->add_option("--gap-override", gap, "spectral gap used instead of the measured one");
    o_noise = app->add_option("--noise", noise, "uniform | extreme");
    o_route = app->add_option("--route", route, "hadamard | taylor");
  }

  void apply(spectral::SpectralAlgoParams& p) const {
    if (o_eps->count()) p.epsilon = eps;
    if (o_delta->count()) p.delta = delta;
    if (o_theta->count()) p.theta = theta;
    if (o_gap->count()) p.gap = gap;
    if (o_noise->count()) p.noise = spectral::eigen_noise_from_string(noise);
    if (o_route->count()) p.route = spectral::route_from_string(route);
  }
};

int emit_reports(const harness::ExperimentConfig& cfg, bool strict) {
  const auto reports = harness::run_experiment(cfg);
  harness::write_outputs(cfg, reports);
  json out = json::array();
  bool failed = false;
  for (const auto& r : reports) {
    out.push_back(to_json(r));
    failed = failed || !r.ok;
  }
  std::cout << out.dump(2) << "\n";
  if (cfg.csv_path.empty()) std::cerr << harness::to_csv(reports);
  return strict && failed ? kExitStrict : 0;
}

int run_coupon(const std::vector<double>& probs, int uniform_n, double theta, int simulate, std::uint64_t seed) {
  if (probs.empty() && uniform_n <= 0) throw ConfigError("coupon: give --probs or --uniform");
  std::vector<double> sorted = probs;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  const coupon::CouponDistribution dist = probs.empty() ? coupon::uniform(uniform_n) : coupon::CouponDistribution(sorted);
  json out = {{"n", dist.size()},
              {"expected_time_exact", coupon::expected_time_exact(dist)},
              {"harmonic_mean_bound", coupon::harmonic_mean_bound(dist)},
              {"coupling_m", coupon::coupling_m(dist)},
              {"coupling_bound", coupon::coupling_bound(dist)},
              {"coupling_bound_sound", coupon::coupling_bound_sound(dist)}};
  if (theta > 0.0) {
    out["thresholded_m"] = coupon::thresholded_m(theta);
    out["thresholded_bound"] = coupon::thresholded_bound(theta);
    out["thresholded_bound_sound"] = coupon::thresholded_bound_sound(theta);
  }
  if (simulate > 0) {
    std::mt19937_64 rng(seed);
    const auto sim = coupon::simulate_collection(dist, theta, simulate, rng);
    out["simulation"] = {{"trials", simulate}, {"mean", sim.mean}, {"stderr", sim.stderr_}};
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fidelity estimation simulator"};
  app.require_subcommand(1);

  auto* eb = app.add_subcommand("estimate-block", "block-encoding estimator");
  ExperimentFlags eb_exp;
  BlockFlags eb_par;
  eb_exp.add(eb);
  eb_par.add(eb);

  auto* es = app.add_subcommand("estimate-spectral", "spectral-sampling estimator");
  ExperimentFlags es_exp;
  SpectralFlags es_par;
  es_exp.add(es);
  es_par.add(es);

  auto* co = app.add_subcommand("coupon", "coupon-collector times and bounds");
  std::vector<double> probs;
  int uniform_n = 0, simulate = 0;
  double co_theta = 0.0;
  std::uint64_t co_seed = 0;
  co->add_option("--probs", probs, "probabilities (sorted internally)");
  co->add_option("--uniform", uniform_n, "uniform distribution over n coupons");
  co->add_option("--theta", co_theta, "collect only coupons with p >= theta");
  co->add_option("--simulate", simulate, "Monte Carlo trials");
  co->add_option("--seed", co_seed, "simulation seed");

  auto* sw = app.add_subcommand("sweep", "scaling regression of a counter against one parameter");
  ExperimentFlags sw_exp;
  sw_exp.add(sw);
  std::string sw_param, sw_metric = "queries.rho", sw_alg;
  std::vector<double> sw_values;
  double sw_predicted = 0.0, sw_tol = 0.5;
  sw->add_option("--parameter", sw_param, "block.epsilon | block.theta | spectral.epsilon | spectral.theta | spectral.delta")
      ->required();
  sw->add_option("--values", sw_values, "parameter values (at least 4)")->required();
  sw->add_option("--metric", sw_metric, "queries.<source> | samples | shots | repetitions | rho_query_cost");
  sw->add_option("--predicted", sw_predicted, "predicted exponent");
  sw->add_option("--tolerance", sw_tol, "allowed |fitted - predicted|");
  sw->add_option("--algorithm", sw_alg, "block | spectral (default: from the parameter)");

  auto* vb = app.add_subcommand("verify-bounds", "randomized replay of the bound statements");
  int vb_n = 1000, vb_dim = 8;
  std::uint64_t vb_seed = 0;
  bool vb_strict = false;
  vb->add_option("--instances", vb_n, "random instances");
  vb->add_option("--max-dim", vb_dim, "largest dimension");
  vb->add_option("--seed", vb_seed, "seed");
  vb->add_flag("--strict", vb_strict, "exit 3 on a violation of a bound not marked as erratum");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*eb) {
      auto cfg = eb_exp.base();
      cfg.algorithm = harness::Algorithm::block;
      eb_par.apply(cfg.block);
      cfg.validate();
      return emit_reports(cfg, eb_exp.strict);
    }
    if (*es) {
      auto cfg = es_exp.base();
      cfg.algorithm = harness::Algorithm::spectral;
      es_par.apply(cfg.spectral);
      cfg.validate();
      return emit_reports(cfg, es_exp.strict);
    }
    if (*co) return run_coupon(probs, uniform_n, co_theta, simulate, co_seed);
    if (*sw) {
      auto cfg = sw_exp.base();
      const std::string alg = sw_alg.empty() ? sw_param.substr(0, sw_param.find('.')) : sw_alg;
      cfg.algorithm = harness::algorithm_from_string(alg);
      if (cfg.algorithm == harness::Algorithm::both) throw ConfigError("sweep: pick block or spectral");
      cfg.validate();
      const auto res = harness::run_sweep(cfg, {sw_param, sw_values, sw_metric, sw_predicted});
      json points = json::array();
      for (std::size_t i = 0; i < res.xs.size(); ++i) points.push_back({{"x", res.xs[i]}, {"y", res.ys[i]}});
      std::cout << json{{"parameter", sw_param},
                        {"metric", sw_metric},
                        {"points", points},
                        {"exponent", res.fit.exponent},
                        {"intercept", res.fit.intercept},
                        {"predicted", res.fit.predicted},
                        {"within_tolerance", res.fit.within(sw_tol)}}
                       .dump(2)
                << "\n";
      harness::write_outputs(cfg, res.reports);
      return sw_exp.strict && !res.fit.within(sw_tol) ? kExitStrict : 0;
    }
    if (*vb) {
      const auto checks = harness::verify_bounds(vb_n, vb_seed, vb_dim);
      json out = json::array();
      bool violated = false;
      for (const auto& c : checks) {
        out.push_back(harness::to_json(c));
        violated = violated || (!c.erratum && c.violations > 0);
      }
      std::cout << out.dump(2) << "\n";
      return vb_strict && violated ? kExitStrict : 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
