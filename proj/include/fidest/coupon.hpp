#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace fidest::coupon {

// Positive probabilities in descending order.
class CouponDistribution {
 public:
  explicit CouponDistribution(std::vector<double> probs, bool allow_subnormalized = false);

  const std::vector<double>& probs() const { return probs_; }
  int size() const { return static_cast<int>(probs_.size()); }
  double p_min() const { return probs_.back(); }
  bool normalized() const;
  // Stable 64-bit FNV-1a hash of the probability bits, used as a row key.
  std::uint64_t hash() const;

 private:
  std::vector<double> probs_;
};

CouponDistribution uniform(int n);

double harmonic_number(int m);

// Expected number of draws to see every coupon, by quadrature of
// int_0^inf (1 - prod_i (1 - e^{-p_i t})) dt to absolute tolerance tol.
double expected_time_exact(const CouponDistribution& p, double tol = 1e-9);

// sum_i 1/p_i
double harmonic_mean_bound(const CouponDistribution& p);

// m * H_m with m = ceil(1 / (2 p_min)).
int coupling_m(const CouponDistribution& p);
double coupling_bound(const CouponDistribution& p);

// m * H_m with m = ceil(1 / (2 theta)).
int thresholded_m(double theta);
double thresholded_bound(double theta);

// m = ceil(2 / p_min): every bucket of p then contains a whole 1/m bucket of
// the uniform process, so m * H_m is a pathwise-dominating bound.
int coupling_m_sound(const CouponDistribution& p);
double coupling_bound_sound(const CouponDistribution& p);
double thresholded_bound_sound(double theta);

struct SimulationResult {
  double mean = 0.0;
  double stderr_ = 0.0;
};

// Monte Carlo of the collection process. With theta > 0 only coupons with
// p_i >= theta need to be seen.
SimulationResult simulate_collection(const CouponDistribution& p, double theta, int trials, std::mt19937_64& rng);

// Completion steps of the two processes driven by one uniform stream: x is
// bucketed by the partition of p and by ceil(x * m).
struct CoupledRun {
  long steps_p = 0;
  long steps_uniform = 0;
};
CoupledRun coupled_collection(const CouponDistribution& p, int m, std::mt19937_64& rng);

}  // namespace fidest::coupon
