#include "fidest/coupon.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

using namespace fidest::coupon;

namespace {

// Inclusion-exclusion: E[T] = sum over non-empty subsets S of (-1)^{|S|+1} / p(S).
double inclusion_exclusion(const std::vector<double>& p) {
  const int n = static_cast<int>(p.size());
  double total = 0.0;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    double s = 0.0;
    int bits = 0;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) {
        s += p[i];
        ++bits;
      }
    total += (bits % 2 ? 1.0 : -1.0) / s;
  }
  return total;
}

std::vector<double> random_probs(int n, std::mt19937_64& rng) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> p(n);
  double s = 0.0;
  for (auto& x : p) s += (x = e(rng) + 0.02);
  for (auto& x : p) x /= s;
  return p;
}

}  // namespace

TEST(ExpectedTime, TwoUniformCoupons) { EXPECT_NEAR(expected_time_exact(uniform(2)), 3.0, 1e-9); }

TEST(ExpectedTime, HalfQuarterQuarter) {
  EXPECT_NEAR(expected_time_exact(CouponDistribution({0.5, 0.25, 0.25})), 19.0 / 3.0, 1e-9);
  EXPECT_NEAR(inclusion_exclusion({0.5, 0.25, 0.25}), 19.0 / 3.0, 1e-12);
}

TEST(ExpectedTime, SingleCoupon) { EXPECT_NEAR(expected_time_exact(CouponDistribution({1.0})), 1.0, 1e-9); }

TEST(ExpectedTime, UniformMatchesHarmonic) {
  for (int m : {3, 10, 33, 64}) EXPECT_NEAR(expected_time_exact(uniform(m)), m * harmonic_number(m), 1e-6);
}

TEST(ExpectedTime, MatchesInclusionExclusion) {
  std::mt19937_64 rng(4);
  for (int n = 1; n <= 10; ++n) {
    const auto p = random_probs(n, rng);
    const CouponDistribution dist(p);
    EXPECT_NEAR(expected_time_exact(dist), inclusion_exclusion(dist.probs()), 1e-6) << "n=" << n;
  }
}

TEST(ExpectedTime, RejectsBadTolerance) { EXPECT_THROW(expected_time_exact(uniform(2), 0.0), std::invalid_argument); }

TEST(HarmonicBound, Values) {
  EXPECT_NEAR(harmonic_mean_bound(uniform(7)), 49.0, 1e-12);
  EXPECT_NEAR(harmonic_mean_bound(CouponDistribution({0.5, 0.25, 0.25})), 10.0, 1e-12);
}

TEST(HarmonicBound, DominatesExact) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    const CouponDistribution p(random_probs(1 + trial % 12, rng));
    EXPECT_GE(harmonic_mean_bound(p) + 1e-9, expected_time_exact(p));
  }
}

TEST(CouplingBound, Arithmetic) {
  const CouponDistribution p({0.25, 0.25, 0.25, 0.25});
  EXPECT_EQ(coupling_m(p), 2);
  EXPECT_NEAR(coupling_bound(p), 3.0, 1e-12);
  EXPECT_EQ(coupling_m(uniform(7)), 4);
  EXPECT_NEAR(coupling_bound(uniform(7)), 4 * harmonic_number(4), 1e-12);
}

// m = ceil(1/(2 p_min)) gives a value below the exact expectation for the
// uniform distribution it is built from, so it cannot be an upper bound.
TEST(CouplingBound, StatedFormulaIsNotAnUpperBound) {
  const CouponDistribution p = uniform(4);
  EXPECT_LT(coupling_bound(p), expected_time_exact(p));
}

TEST(CouplingBound, SoundVariantDominatesExact) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 100; ++trial) {
    const CouponDistribution p(random_probs(1 + trial % 12, rng));
    EXPECT_GE(coupling_bound_sound(p) + 1e-9, expected_time_exact(p));
  }
}

TEST(ThresholdedBound, Values) {
  EXPECT_EQ(thresholded_m(0.25), 2);
  EXPECT_NEAR(thresholded_bound(0.25), 3.0, 1e-12);
  EXPECT_THROW(thresholded_bound(0.0), std::invalid_argument);
}

TEST(ThresholdedBound, SoundVariantDominatesSimulation) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    const CouponDistribution p(random_probs(2 + trial, rng));
    const double theta = 0.05 + 0.02 * trial;
    const auto sim = simulate_collection(p, theta, 10000, rng);
    EXPECT_LE(sim.mean - 3 * sim.stderr_, thresholded_bound_sound(theta));
  }
}

TEST(Simulation, UniformPair) {
  std::mt19937_64 rng(1);
  const auto r = simulate_collection(uniform(2), 0.0, 100000, rng);
  EXPECT_NEAR(r.mean, 3.0, 3 * r.stderr_);
}

TEST(Simulation, HalfQuarterQuarter) {
  std::mt19937_64 rng(2);
  const auto r = simulate_collection(CouponDistribution({0.5, 0.25, 0.25}), 0.0, 100000, rng);
  EXPECT_NEAR(r.mean, 19.0 / 3.0, 3 * r.stderr_);
}

TEST(Simulation, ThresholdAboveEveryCoupon) {
  std::mt19937_64 rng(3);
  const auto r = simulate_collection(CouponDistribution({0.5, 0.3, 0.2}), 0.6, 100, rng);
  EXPECT_EQ(r.mean, 0.0);
}

TEST(Simulation, DeterministicUnderSeed) {
  std::mt19937_64 a(5), b(5);
  const auto ra = simulate_collection(uniform(5), 0.0, 1000, a);
  const auto rb = simulate_collection(uniform(5), 0.0, 1000, b);
  EXPECT_EQ(ra.mean, rb.mean);
  EXPECT_EQ(ra.stderr_, rb.stderr_);
}

TEST(Coupling, SoundMDominatesPathwise) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 2000; ++trial) {
    const CouponDistribution p(random_probs(1 + trial % 8, rng));
    const auto run = coupled_collection(p, coupling_m_sound(p), rng);
    ASSERT_LE(run.steps_p, run.steps_uniform);
  }
}

TEST(Coupling, MarginalsMatch) {
  // The uniform leg of the coupling is itself a uniform-m collector.
  std::mt19937_64 rng(7);
  const CouponDistribution p({0.5, 0.3, 0.2});
  double sum = 0.0;
  const int n = 20000;
  for (int t = 0; t < n; ++t) sum += coupled_collection(p, 3, rng).steps_uniform;
  EXPECT_NEAR(sum / n, 3 * harmonic_number(3), 0.1);
}

TEST(Distribution, Validation) {
  EXPECT_THROW(CouponDistribution({0.5, 0.6}), std::invalid_argument);
  EXPECT_THROW(CouponDistribution({0.5, 0.0, 0.5}), std::invalid_argument);
  EXPECT_THROW(CouponDistribution({0.5, 0.2}), std::invalid_argument);
  EXPECT_NO_THROW(CouponDistribution({0.5, 0.2}, true));
  EXPECT_EQ(CouponDistribution({0.2, 0.8}).probs().front(), 0.8);
}
