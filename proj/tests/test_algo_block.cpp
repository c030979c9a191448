#include <gtest/gtest.h>

#include "fidest/algo_block.hpp"
#include "fidest/linalg.hpp"
#include "fidest/truncation.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <random>

using namespace fidest;
using namespace fidest::block;

namespace {

states::DensityMatrix ket0() {
  Vector psi(2);
  psi << 1.0, 0.0;
  return states::pure_state(psi);
}

qsvt::BlockEncoding plain(const Matrix& m) { return qsvt::oracle_encoding(m, 1.0, 1, "A"); }

BlockAlgoParams params(double eps, double theta, std::optional<int> rank = std::nullopt) {
  BlockAlgoParams p;
  p.epsilon = eps;
  p.theta = theta;
  p.rank_bound = rank;
  return p;
}

}  // namespace

TEST(HadamardExpectation, Examples) {
  const auto rho = ket0();
  EXPECT_NEAR(hadamard_expectation(rho, plain(Matrix::Identity(2, 2))), 1.0, 1e-15);
  EXPECT_NEAR(hadamard_expectation(rho, plain(-Matrix::Identity(2, 2))), 0.0, 1e-15);
  Vector plus(2);
  plus << 1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2;
  Matrix z = Matrix::Zero(2, 2);
  z(0, 0) = 1.0;
  z(1, 1) = -1.0;
  EXPECT_NEAR(hadamard_expectation(states::pure_state(plus), plain(z)), 0.5, 1e-15);
  EXPECT_NEAR(hadamard_expectation_imag(rho, plain(cplx(0.0, 1.0) * Matrix::Identity(2, 2))), 1.0, 1e-15);
  EXPECT_THROW(hadamard_expectation(rho, plain(Matrix::Identity(3, 3))), std::invalid_argument);
}

TEST(HadamardExpectation, UsesSubnormalization) {
  const auto rho = ket0();
  const auto enc = qsvt::oracle_encoding(Matrix::Identity(2, 2), 4.0, 1, "A");
  EXPECT_NEAR(hadamard_expectation(rho, enc), 0.5 * (1.0 + 0.25), 1e-15);
}

TEST(BlockParams, Validation) {
  EXPECT_THROW(params(0.0, 0.5).validate(), std::invalid_argument);
  EXPECT_THROW(params(0.1, 1.0).validate(), std::invalid_argument);
  auto p = params(0.1, 0.5);
  p.delta_trunc = 1.0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  EXPECT_THROW(params(0.1, 0.5, 0).validate(), std::invalid_argument);
  EXPECT_NO_THROW(params(0.1, 0.5).validate());
}

TEST(BlockParams, RankBound) {
  EXPECT_EQ(rank_bound_used(params(0.1, 0.5)), 4);
  EXPECT_EQ(rank_bound_used(params(0.1, 0.5, 2)), 2);
  EXPECT_EQ(rank_bound_used(params(0.1, 0.5, 9)), 4);
  EXPECT_EQ(rank_bound_used(params(0.1, 0.1)), 20);
}

TEST(BlockPipeline, PureStateTraceNormAndBudget) {
  const auto rho = ket0();
  const auto p = params(0.1, 0.1);
  const Pipeline pipe = build_pipeline(rho, rho, p);
  const double eps = p.epsilon;
  const double q_norm = trace_norm(pipe.q_tilde.logical);
  EXPECT_GE(q_norm, 1.0 - 2.0 * eps / 5.0);
  EXPECT_LE(q_norm, 1.0 + 2.0 * eps / 5.0);
  EXPECT_LE(pipe.budget.s_term, eps / 5.0 + 1e-12);
  EXPECT_LE(pipe.budget.q_term, eps / 5.0 + 1e-12);
  EXPECT_LE(pipe.budget.svt_term, eps / 5.0 + 1e-12);
  EXPECT_LE(pipe.budget.trunc_poly_term, eps / 5.0 + 1e-12);
  EXPECT_NEAR(pipe.budget.statistical_term, eps / 5.0, 1e-12);
}

TEST(BlockPipeline, AnalyticTermsAcrossParameters) {
  for (double eps : {0.2, 0.1}) {
    for (double theta : {0.5, 0.05}) {
      for (int rank : {1, 3}) {
        const auto ps = build_polynomials(params(eps, theta, rank));
        const auto& b = ps->analytic;
        SCOPED_TRACE(testing::Message() << eps << " " << theta << " " << rank);
        EXPECT_LE(b.s_term, eps / 5.0 + 1e-12);
        EXPECT_LE(b.q_term, eps / 5.0 + 1e-12);
        EXPECT_LE(b.svt_term, eps / 5.0 + 1e-12);
        EXPECT_LE(b.trunc_poly_term, eps / 5.0 + 1e-12);
      }
    }
  }
}

TEST(BlockPipeline, Subnormalizations) {
  std::mt19937_64 rng(3);
  const auto rho = states::random_density(4, 2, 0.0, rng);
  const auto sigma = states::random_density(4, 4, 0.0, rng);
  const auto p = params(0.1, 0.05, 2);
  const Pipeline pipe = build_pipeline(rho, sigma, p);
  EXPECT_LE(pipe.q_tilde.alpha, 8.0 + 1e-12);
  EXPECT_LE(op_norm(pipe.q_tilde.block()), 1.0 + 1e-12);
  EXPECT_NEAR(pipe.hadamard.alpha, 4.0 * std::numbers::sqrt2 / std::sqrt(p.theta), 1e-12);
  EXPECT_LE(op_norm(pipe.hadamard.block()), 1.0 + 1e-9);
  // Tr[rho B] equals Tr[Q~ X] since rho commutes with t~(rho) q(rho).
  const double via_rho = (rho.matrix() * pipe.hadamard.logical).trace().real();
  const double via_q = (pipe.q_tilde.logical * pipe.sign_svt.logical).trace().real();
  EXPECT_NEAR(via_rho, via_q, 1e-10);
}

TEST(BlockPipeline, SoftThresholdShape) {
  const auto p = params(0.1, 0.2, 2);
  const auto ps = build_polynomials(p);
  EXPECT_EQ(ideal_threshold(*ps, p, 0.0), 0.0);
  EXPECT_EQ(ideal_threshold(*ps, p, 0.0999), 0.0);
  EXPECT_EQ(ideal_threshold(*ps, p, 0.2), 1.0);
  EXPECT_EQ(ideal_threshold(*ps, p, 0.9), 1.0);
  for (double x = 0.0; x <= 1.0; x += 1e-3) {
    const double realized = ps->t_tilde(x);
    EXPECT_LE(std::abs(realized - ideal_threshold(*ps, p, x)), ps->eps_t) << x;
  }
}

TEST(BlockEstimator, PureEqualStatesSeededRuns) {
  const auto rho = ket0();
  int within = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto p = params(0.1, 0.5);
    p.seed = seed;
    const auto rep = estimate_fidelity_block(rho, rho, p);
    if (std::abs(rep.estimate - 1.0) <= 0.1) ++within;
  }
  EXPECT_GE(within, 95);
}

TEST(BlockEstimator, RankTwoEqualStates) {
  RealVector diag(3);
  diag << 0.6, 0.4, 0.0;
  const auto rho = states::diagonal_state(diag);
  const double eps = 0.1;
  const int r = 2;
  auto p = params(eps, eps * eps / r, r);
  p.seed = 11;
  const auto rep = estimate_fidelity_block(rho, rho, p);
  const double trunc = truncation::truncation_error_term(rho, rho, p.theta);
  EXPECT_NEAR(rep.oracle_fidelity, 1.0, 1e-12);
  EXPECT_LE(std::abs(rep.estimate - rep.oracle_fidelity), eps + trunc);
}

TEST(BlockEstimator, EndToEndBoundOnRandomInstances) {
  std::mt19937_64 rng(21);
  const double eps = 0.1;
  const auto p = params(eps, 0.05, 2);
  for (int trial = 0; trial < 20; ++trial) {
    const auto rho = states::random_density(4, 2, 0.0, rng);
    const auto sigma = states::random_density(4, 1 + trial % 4, 0.0, rng);
    const Pipeline pipe = build_pipeline(rho, sigma, p);
    const auto m = measure_budget(rho, sigma, pipe, p);
    SCOPED_TRACE(trial);
    EXPECT_LE(m.s_term, eps / 5.0);
    EXPECT_LE(m.q_term, eps / 5.0);
    EXPECT_LE(m.svt_term, eps / 5.0);
    EXPECT_LE(m.trunc_poly_term, eps / 5.0);
    EXPECT_LE(m.aggregate, 4.0 * eps / 5.0);
  }
}

TEST(BlockEstimator, Sandwich) {
  std::mt19937_64 rng(5);
  const double eps = 0.1;
  for (int trial = 0; trial < 10; ++trial) {
    const auto rho = states::random_density(3, 2, 0.0, rng);
    const auto sigma = states::random_density(3, 3, 0.0, rng);
    auto p = params(eps, 0.05, 2);
    p.seed = 100 + trial;
    const auto rep = estimate_fidelity_block(rho, sigma, p);
    const double trunc = truncation::truncation_error_term(rho, sigma, p.theta);
    EXPECT_LE(rep.oracle_truncated_fidelity - trunc, rep.estimate + eps) << trial;
    EXPECT_LE(rep.estimate - eps, rep.oracle_fidelity) << trial;
  }
}

TEST(BlockEstimator, QueryCounterIdentity) {
  std::mt19937_64 rng(8);
  const auto rho = states::random_density(4, 2, 0.0, rng);
  const auto sigma = states::random_density(4, 3, 0.0, rng);
  const auto p = params(0.1, 0.2, 2);
  const Pipeline pipe = build_pipeline(rho, sigma, p);
  const auto& ps = *pipe.polys;
  const std::int64_t b_rho = closed_form_rho_uses(ps);
  const std::int64_t b_sigma = closed_form_sigma_uses(ps);
  EXPECT_EQ(b_rho, static_cast<std::int64_t>(ps.tq.degree()) + static_cast<std::int64_t>(ps.p.degree()) * ps.r.degree());
  EXPECT_EQ(pipe.hadamard.cost.uses_of("rho"), b_rho);
  EXPECT_EQ(pipe.hadamard.cost.uses_of("sigma"), b_sigma);
  const auto rep = estimate_fidelity_block(rho, sigma, p);
  EXPECT_EQ(rep.queries.at("rho"), rep.shots * (b_rho + 1));
  EXPECT_EQ(rep.queries.at("sigma"), rep.shots * b_sigma);
  const double eta = p.epsilon * std::sqrt(p.theta) / (40.0 * std::numbers::sqrt2);
  EXPECT_EQ(rep.shots, static_cast<std::int64_t>(std::ceil(1.0 / eta)));
}

TEST(BlockEstimator, Deterministic) {
  std::mt19937_64 rng(9);
  const auto rho = states::random_density(3, 2, 0.0, rng);
  const auto sigma = states::random_density(3, 2, 0.0, rng);
  for (auto mode : {AccessMode::purified, AccessMode::sampled}) {
    auto p = params(0.1, 0.2, 2);
    p.mode = mode;
    p.seed = 77;
    const auto a = estimate_fidelity_block(rho, sigma, p);
    const auto b = estimate_fidelity_block(rho, sigma, p);
    EXPECT_EQ(std::bit_cast<std::uint64_t>(a.estimate), std::bit_cast<std::uint64_t>(b.estimate));
    EXPECT_EQ(a.error_budget.dump(), b.error_budget.dump());
    EXPECT_EQ(a.diagnostics.dump(), b.diagnostics.dump());
    EXPECT_EQ(a.queries, b.queries);
    EXPECT_EQ(a.samples, b.samples);
    EXPECT_EQ(a.config_hash, b.config_hash);
  }
}

TEST(BlockEstimator, SampledMode) {
  const auto rho = ket0();
  auto p = params(0.1, 0.5);
  p.mode = AccessMode::sampled;
  p.seed = 3;
  const auto rep = estimate_fidelity_block(rho, rho, p);
  EXPECT_LE(std::abs(rep.estimate - 1.0), p.epsilon);
  const double kappa = std::numbers::pi / 4.0;
  EXPECT_EQ(rep.shots, static_cast<std::int64_t>(std::ceil(kShotConstant / (kappa * 0.01 * 0.5))));
  EXPECT_GT(rep.samples, rep.queries.at("rho"));
  EXPECT_NEAR(rep.diagnostics.at("kappa").get<double>(), kappa, 1e-15);

  p.inject_noise = true;
  const auto noisy = estimate_fidelity_block(rho, rho, p);
  EXPECT_LE(std::abs(noisy.estimate - 1.0), p.epsilon);
  EXPECT_LE(noisy.error_budget.at("measured").at("aggregate").get<double>(), 4.0 * p.epsilon / 5.0);
}

TEST(BlockEstimator, ShotOverride) {
  const auto rho = ket0();
  auto p = params(0.2, 0.5);
  p.mode = AccessMode::sampled;
  p.shots = 1000;
  const auto rep = estimate_fidelity_block(rho, rho, p);
  EXPECT_EQ(rep.shots, 1000);
}

TEST(BlockCostModel, HalvingEpsilonQuadruplesRhoTerm) {
  auto p = params(0.1, 0.3);
  const auto a = query_cost_model(p, 3, 1.0, 1.0);
  p.epsilon = 0.05;
  const auto b = query_cost_model(p, 3, 1.0, 1.0);
  EXPECT_DOUBLE_EQ(b.rho_term, 4.0 * a.rho_term);
  EXPECT_DOUBLE_EQ(b.sigma_term, 16.0 * a.sigma_term);
}

TEST(BlockCostModel, CorollaryForm) {
  for (int r : {1, 2, 4}) {
    for (double eps : {0.1, 0.03}) {
      auto p = params(eps, eps * eps / r);
      p.delta_trunc = 0.5;
      const auto m = query_cost_model(p, r, 1.0, 1.0);
      const double lead = std::pow(r, 2.5) / std::pow(eps, 5);
      EXPECT_NEAR(m.rho_term / lead, 2.0, 1e-9);
      EXPECT_NEAR(m.sigma_term / lead, 1.0, 1e-9);
    }
  }
  EXPECT_THROW(query_cost_model(params(0.1, 0.3), 0.0, 1.0, 1.0), std::invalid_argument);
}

TEST(BlockCostModel, MeasuredCountersWithinRecordedConstant) {
  const auto rho = ket0();
  for (double eps : {0.2, 0.1}) {
    for (double theta : {0.5, 0.05}) {
      const auto p = params(eps, theta, 2);
      const auto rep = estimate_fidelity_block(rho, rho, p);
      const auto model = query_cost_model(p, rank_bound_used(p), 1.0, 1.0);
      const double envelope = kCostModelConstant * std::pow(std::log(1.0 / eps), 2);
      EXPECT_LE(static_cast<double>(rep.queries.at("rho")), envelope * model.rho_term);
      EXPECT_LE(static_cast<double>(rep.queries.at("sigma")), envelope * model.sigma_term);
    }
  }
}

TEST(BlockReport, JsonFields) {
  const auto rho = ket0();
  const auto rep = estimate_fidelity_block(rho, rho, params(0.2, 0.5));
  const auto j = to_json(rep);
  for (const char* key : {"estimate", "oracle_fidelity", "oracle_truncated_fidelity", "error_budget", "queries",
                          "samples", "shots", "config_hash"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j["algorithm"], "block");
  EXPECT_TRUE(j["error_budget"].contains("measured"));
}
