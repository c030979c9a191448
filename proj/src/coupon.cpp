#include "fidest/coupon.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <numeric>
#include <stdexcept>

namespace fidest::coupon {

namespace {

constexpr int kGaussPoints = 64;
constexpr int kMaxPanels = 1 << 16;

struct GaussLegendre {
  std::array<double, kGaussPoints> nodes{};
  std::array<double, kGaussPoints> weights{};
};

// Nodes on [-1, 1] by Newton iteration on P_n.
GaussLegendre make_gauss_legendre() {
  GaussLegendre g;
  const int n = kGaussPoints;
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      const double p = std::legendre(n, x);
      const double pm = std::legendre(n - 1, x);
      dp = n * (x * p - pm) / (x * x - 1.0);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double p = std::legendre(n, x);
    const double pm = std::legendre(n - 1, x);
    dp = n * (x * p - pm) / (x * x - 1.0);
    g.nodes[i] = x;
    g.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return g;
}

const GaussLegendre& gauss() {
  static const GaussLegendre g = make_gauss_legendre();
  return g;
}

double integrand(const std::vector<double>& p, double t) {
  // 1 - prod(1 - e^{-p t}) computed as -expm1(sum log1p(-e^{-p t})).
  double s = 0.0;
  for (double pi : p) {
    const double e = std::exp(-pi * t);
    if (e >= 1.0) return 1.0;
    s += std::log1p(-e);
  }
  return -std::expm1(s);
}

double composite(const std::vector<double>& p, double upper, int panels) {
  const GaussLegendre& g = gauss();
  const double h = upper / panels;
  double total = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double a = k * h;
    double part = 0.0;
    for (int i = 0; i < kGaussPoints; ++i) part += g.weights[i] * integrand(p, a + 0.5 * h * (g.nodes[i] + 1.0));
    total += 0.5 * h * part;
  }
  return total;
}

int ceil_safe(double x) { return static_cast<int>(std::ceil(x - 1e-12)); }

}  // namespace

CouponDistribution::CouponDistribution(std::vector<double> probs, bool allow_subnormalized)
    : probs_(std::move(probs)) {
  if (probs_.empty()) throw std::invalid_argument("CouponDistribution: empty");
  for (double p : probs_)
    if (!(p > 0.0)) throw std::invalid_argument("CouponDistribution: probabilities must be positive");
  std::sort(probs_.begin(), probs_.end(), std::greater<>());
  const double total = std::accumulate(probs_.begin(), probs_.end(), 0.0);
  if (total > 1.0 + 1e-12) throw std::invalid_argument("CouponDistribution: probabilities sum above 1");
  if (!allow_subnormalized && total < 1.0 - 1e-12)
    throw std::invalid_argument("CouponDistribution: probabilities must sum to 1");
}

bool CouponDistribution::normalized() const {
  return std::abs(std::accumulate(probs_.begin(), probs_.end(), 0.0) - 1.0) <= 1e-12;
}

std::uint64_t CouponDistribution::hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  for (double p : probs_) {
    std::uint64_t bits = 0;
    std::memcpy(&bits, &p, sizeof bits);
    for (int b = 0; b < 8; ++b) {
      h ^= (bits >> (8 * b)) & 0xffU;
      h *= 1099511628211ULL;
    }
  }
  return h;
}

CouponDistribution uniform(int n) {
  if (n <= 0) throw std::invalid_argument("uniform: n must be positive");
  return CouponDistribution(std::vector<double>(n, 1.0 / n));
}

double harmonic_number(int m) {
  double h = 0.0;
  for (int k = m; k >= 1; --k) h += 1.0 / k;
  return h;
}

double expected_time_exact(const CouponDistribution& p, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("expected_time_exact: tol must be positive");
  if (!p.normalized()) throw std::invalid_argument("expected_time_exact: distribution must be normalized");
  // The tail past T is at most sum_i e^{-p_i T} / p_i <= n e^{-p_min T} / p_min,
  // so this T keeps it below tol/2.
  const double n = p.size();
  const double upper = (std::log(n) + std::log(2.0 / (tol * p.p_min()))) / p.p_min();
  int panels = 1;
  double prev = composite(p.probs(), upper, panels);
  while (panels < kMaxPanels) {
    panels *= 2;
    const double cur = composite(p.probs(), upper, panels);
    if (std::abs(cur - prev) < tol / 2) return cur;
    prev = cur;
  }
  throw std::runtime_error("expected_time_exact: tolerance not reached within the panel budget");
}

double harmonic_mean_bound(const CouponDistribution& p) {
  double s = 0.0;
  for (double x : p.probs()) s += 1.0 / x;
  return s;
}

int coupling_m(const CouponDistribution& p) { return ceil_safe(1.0 / (2.0 * p.p_min())); }

double coupling_bound(const CouponDistribution& p) {
  const int m = coupling_m(p);
  return m * harmonic_number(m);
}

int thresholded_m(double theta) {
  if (!(theta > 0.0 && theta < 1.0)) throw std::invalid_argument("thresholded_m: theta must lie in (0,1)");
  return ceil_safe(1.0 / (2.0 * theta));
}

double thresholded_bound(double theta) {
  const int m = thresholded_m(theta);
  return m * harmonic_number(m);
}

int coupling_m_sound(const CouponDistribution& p) { return ceil_safe(2.0 / p.p_min()); }

double coupling_bound_sound(const CouponDistribution& p) {
  const int m = coupling_m_sound(p);
  return m * harmonic_number(m);
}

double thresholded_bound_sound(double theta) {
  if (!(theta > 0.0 && theta < 1.0)) throw std::invalid_argument("thresholded_bound_sound: theta must lie in (0,1)");
  const int m = ceil_safe(2.0 / theta);
  return m * harmonic_number(m);
}

SimulationResult simulate_collection(const CouponDistribution& p, double theta, int trials, std::mt19937_64& rng) {
  if (trials < 1) throw std::invalid_argument("simulate_collection: trials must be >= 1");
  const auto& probs = p.probs();
  int needed = 0;
  for (double x : probs)
    if (x >= theta) ++needed;
  if (needed == 0) return {0.0, 0.0};
  std::discrete_distribution<int> draw(probs.begin(), probs.end());
  std::vector<char> seen(probs.size());
  double sum = 0.0, sum2 = 0.0;
  for (int t = 0; t < trials; ++t) {
    std::fill(seen.begin(), seen.end(), 0);
    int remaining = needed;
    long steps = 0;
    while (remaining > 0) {
      const int i = draw(rng);
      ++steps;
      if (!seen[i]) {
        seen[i] = 1;
        if (probs[i] >= theta) --remaining;
      }
    }
    sum += steps;
    sum2 += static_cast<double>(steps) * steps;
  }
  const double mean = sum / trials;
  const double var = trials > 1 ? (sum2 - trials * mean * mean) / (trials - 1) : 0.0;
  return {mean, std::sqrt(std::max(0.0, var) / trials)};
}

CoupledRun coupled_collection(const CouponDistribution& p, int m, std::mt19937_64& rng) {
  if (m < 1) throw std::invalid_argument("coupled_collection: m must be >= 1");
  const auto& probs = p.probs();
  std::vector<double> edges(probs.size());
  std::partial_sum(probs.begin(), probs.end(), edges.begin());
  edges.back() = 1.0;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<char> seen_p(probs.size()), seen_u(m);
  int left_p = p.size(), left_u = m;
  CoupledRun run;
  long step = 0;
  while (left_p > 0 || left_u > 0) {
    const double x = unif(rng);
    ++step;
    const auto g = static_cast<size_t>(std::upper_bound(edges.begin(), edges.end(), x) - edges.begin());
    const int gi = static_cast<int>(std::min(g, probs.size() - 1));
    if (!seen_p[gi]) {
      seen_p[gi] = 1;
      if (--left_p == 0) run.steps_p = step;
    }
    const int f = std::clamp(static_cast<int>(std::ceil(x * m)) - 1, 0, m - 1);
    if (!seen_u[f]) {
      seen_u[f] = 1;
      if (--left_u == 0) run.steps_uniform = step;
    }
  }
  return run;
}

}  // namespace fidest::coupon
