#include "fidest/polyapprox.hpp"

#include <boost/math/special_functions/erf.hpp>
#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace fidest::poly {

namespace {

constexpr int kMinSamples = 1024;
constexpr int kMaxSamples = 1 << 23;

std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

// In-place DCT-I: y_k = x_0 + (-1)^k x_{n-1} + 2 sum_{j=1}^{n-2} x_j cos(pi j k / (n-1)).
void dct1(std::vector<double>& data) {
  const int n = static_cast<int>(data.size());
  if (n < 2) return;
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    plan = fftw_plan_r2r_1d(n, data.data(), data.data(), FFTW_REDFT00, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::lock_guard<std::mutex> lock(fftw_planner_mutex());
  fftw_destroy_plan(plan);
}

double sgn(double x) { return (x > 0) - (x < 0); }

double erfc_inv(double y) { return boost::math::erfc_inv(y); }

bool parity_ok(int j, Parity p) {
  if (p == Parity::odd) return j % 2 == 1;
  if (p == Parity::even) return j % 2 == 0;
  return true;
}

}  // namespace

// ---------------------------------------------------------------- Target

double Target::value(double x) const {
  switch (kind) {
    case TargetKind::sign:
      return sgn(x);
    case TargetKind::rect:
      return std::abs(x) <= t - delta ? 1.0 : 0.0;
    case TargetKind::power_positive:
      return 0.5 * std::pow(std::abs(x), c);
    case TargetKind::power_negative:
      return 0.5 * std::pow(delta, c) * std::pow(std::abs(x), -c);
    case TargetKind::custom:
      break;
  }
  return 0.0;
}

std::vector<Target::Region> Target::regions() const {
  switch (kind) {
    case TargetKind::sign:
      return {{-1.0, -delta}, {delta, 1.0}};
    case TargetKind::rect: {
      std::vector<Region> out;
      if (t - delta >= 0.0) out.push_back({-(t - delta), t - delta});
      if (t + delta <= 1.0) {
        out.push_back({-1.0, -(t + delta)});
        out.push_back({t + delta, 1.0});
      }
      return out;
    }
    case TargetKind::power_positive:
    case TargetKind::power_negative:
      return {{delta, 1.0}};
    case TargetKind::custom:
      break;
  }
  return {};
}

std::string Target::describe() const {
  std::ostringstream os;
  switch (kind) {
    case TargetKind::sign:
      os << "sign(x) on |x|>=" << delta;
      break;
    case TargetKind::rect:
      os << "rect(|x|<=" << t << ") width " << delta;
      break;
    case TargetKind::power_positive:
      os << "x^" << c << "/2 on [" << delta << ",1]" << (majorated ? " majorated" : "");
      break;
    case TargetKind::power_negative:
      os << delta << "^" << c << "/2 x^-" << c << " on [" << delta << ",1]";
      break;
    case TargetKind::custom:
      os << "custom";
      break;
  }
  if (kind != TargetKind::custom) os << " eps " << epsilon;
  return os.str();
}

// ---------------------------------------------------------------- evaluation

double clenshaw(const std::vector<double>& c, double x) {
  if (c.empty()) return 0.0;
  double b1 = 0.0, b2 = 0.0;
  const double two_x = 2.0 * x;
  for (size_t j = c.size() - 1; j >= 1; --j) {
    const double b0 = c[j] + two_x * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return c[0] + x * b1 - b2;
}

double eval_poly(const ApproxPolynomial& p, double x) {
  if (!(std::abs(x) <= 1.0 + 1e-12)) throw std::domain_error("eval_poly: x outside [-1, 1]");
  x = std::clamp(x, -1.0, 1.0);
  // Odd and even series are evaluated on |x| and reflected so parity is exact.
  if (p.parity() == Parity::odd) return x < 0 ? -clenshaw(p.coeffs(), -x) : clenshaw(p.coeffs(), x);
  if (p.parity() == Parity::even) return clenshaw(p.coeffs(), std::abs(x));
  return clenshaw(p.coeffs(), x);
}

double ApproxPolynomial::operator()(double x) const { return eval_poly(*this, x); }

std::vector<double> eval_on_lobatto(const std::vector<double>& coeffs, int m) {
  if (m < 1) throw std::invalid_argument("eval_on_lobatto: need m >= 1");
  // T_j at cos(pi k/m) only depends on j mod 2m, reflected into [0, m].
  std::vector<double> b(m + 1, 0.0);
  const long period = 2L * m;
  for (size_t j = 0; j < coeffs.size(); ++j) {
    long r = static_cast<long>(j % period);
    if (r > m) r = period - r;
    b[r] += coeffs[j];
  }
  for (int j = 1; j < m; ++j) b[j] *= 0.5;
  dct1(b);
  if (m == 1) return {coeffs.empty() ? 0.0 : clenshaw(coeffs, 1.0), coeffs.empty() ? 0.0 : clenshaw(coeffs, -1.0)};
  return b;
}

std::vector<double> lobatto_coefficients(const std::vector<double>& samples) {
  const int n = static_cast<int>(samples.size()) - 1;
  if (n < 1) throw std::invalid_argument("lobatto_coefficients: need at least two samples");
  std::vector<double> c = samples;
  dct1(c);
  for (auto& v : c) v /= n;
  c.front() *= 0.5;
  c.back() *= 0.5;
  return c;
}

namespace {

std::vector<double> lobatto_nodes(int m) {
  std::vector<double> x(m + 1);
  for (int k = 0; k <= m; ++k) x[k] = std::cos(M_PI * k / m);
  return x;
}

}  // namespace

// ---------------------------------------------------------------- certification

int default_grid_nodes(int degree) { return std::max(kGridNodes, 4 * (degree + 1)); }

Certificate certify(const ApproxPolynomial& p, int grid_nodes) {
  if (grid_nodes <= 0) grid_nodes = default_grid_nodes(p.degree());
  const Target& tg = p.target();
  const std::vector<double> xs = lobatto_nodes(grid_nodes);
  std::vector<double> vs = eval_on_lobatto(p.coeffs(), grid_nodes);
  // Extra points: every region endpoint.
  std::vector<double> extra_x;
  for (const auto& r : tg.regions()) {
    extra_x.push_back(r.lo);
    extra_x.push_back(r.hi);
  }
  std::vector<double> all_x = xs;
  for (double x : extra_x) {
    all_x.push_back(x);
    vs.push_back(clenshaw(p.coeffs(), x));
  }

  Certificate cert;
  double vmin = 0.0, vmax = 0.0;
  for (size_t i = 0; i < all_x.size(); ++i) {
    const double x = all_x[i], v = vs[i];
    cert.sup = std::max(cert.sup, std::abs(v));
    vmin = std::min(vmin, v);
    vmax = std::max(vmax, v);
    for (const auto& r : tg.regions())
      if (x >= r.lo && x <= r.hi) cert.apx_error = std::max(cert.apx_error, std::abs(v - tg.value(x)));
    if (tg.majorated) {
      const double excess = std::abs(v) - 0.5 * std::pow(std::abs(x), tg.c) - tg.epsilon;
      cert.majorant_excess = std::max(cert.majorant_excess, excess);
    }
  }
  if (!tg.majorated) cert.majorant_excess = -tg.epsilon;
  if (tg.kind == TargetKind::rect) cert.range_violation = std::max({0.0, -vmin, vmax - 1.0});
  return cert;
}

bool passes(const Certificate& cert, const Target& target) {
  if (cert.sup > 1.0 + 1e-9) return false;
  if (target.kind == TargetKind::custom) return true;
  return cert.apx_error * kCertSlack <= target.epsilon && cert.majorant_excess <= 0.0 &&
         cert.range_violation <= 1e-12;
}

// ---------------------------------------------------------------- construction

struct Builder {
  enum class Post { normalize, affine_unit_range };

  // Divide by the max over a grid much finer than the oscillation scale, so
  // denser re-checks do not find a larger peak. Returns whether it rescaled.
  static bool normalize(ApproxPolynomial& p) {
    const int fine = std::max(2 * kGridNodes, 16 * static_cast<int>(p.coeffs_.size()));
    double sup = 0.0;
    for (double v : eval_on_lobatto(p.coeffs_, fine)) sup = std::max(sup, std::abs(v));
    if (sup <= 1.0) return false;
    for (auto& v : p.coeffs_) v /= sup * (1.0 + 1e-12);
    return true;
  }

  static std::vector<double> interpolate(const std::function<double(double)>& g, int n_samples, Parity parity) {
    std::vector<double> samples(n_samples + 1);
    for (int k = 0; k <= n_samples; ++k) samples[k] = g(std::cos(M_PI * k / n_samples));
    std::vector<double> c = lobatto_coefficients(samples);
    for (size_t j = 0; j < c.size(); ++j)
      if (!parity_ok(static_cast<int>(j), parity)) c[j] = 0.0;
    return c;
  }

  // For targets whose Chebyshev tail decays slowly: truncate an 8x oversampled
  // interpolant at increasing degree until the certificate passes, then bisect
  // down to within 1/16 of the smallest passing degree found.
  static ApproxPolynomial search(const Target& target, Parity parity, const std::function<double(double)>& g) {
    const int step = parity == Parity::none ? 1 : 2;
    auto fix_parity = [&](int n) { return parity == Parity::odd ? (n | 1) : parity == Parity::even ? (n & ~1) : n; };
    auto attempt = [&](const std::vector<double>& c, int n, ApproxPolynomial& out) {
      out = ApproxPolynomial();
      out.parity_ = parity;
      out.target_ = target;
      out.coeffs_.assign(c.begin(), c.begin() + std::min<size_t>(n + 1, c.size()));
      normalize(out);
      const Certificate cert = certify(out);
      out.sup_bound_ = cert.sup;
      out.apx_error_ = cert.apx_error;
      return passes(cert, target);
    };
    ApproxPolynomial best;
    int hi = fix_parity(256);
    std::vector<double> c;
    for (;;) {
      if (hi > kDegreeCap) throw std::runtime_error("polynomial construction: degree cap exceeded for " + target.describe());
      c = interpolate(g, std::max(kMinSamples, 8 * hi), parity);
      if (attempt(c, hi, best)) break;
      hi = fix_parity(2 * hi);
    }
    int lo = hi / 2;
    while (hi - lo > std::max(step, hi / 16)) {
      const int mid = fix_parity((lo + hi) / 2);
      if (mid <= lo || mid >= hi) break;
      ApproxPolynomial trial;
      if (attempt(c, mid, trial)) {
        hi = mid;
        best = std::move(trial);
      } else {
        lo = mid;
      }
    }
    return best;
  }

  static ApproxPolynomial build(const Target& target, Parity parity, const std::function<double(double)>& g,
                                double tail_budget, Post post) {
    // Resolve the surrogate: sample until the top quarter of the spectrum is negligible.
    std::vector<double> c;
    int n_samples = kMinSamples;
    for (;;) {
      std::vector<double> samples(n_samples + 1);
      for (int k = 0; k <= n_samples; ++k) samples[k] = g(std::cos(M_PI * k / n_samples));
      c = lobatto_coefficients(samples);
      double top = 0.0;
      for (int j = 3 * n_samples / 4; j <= n_samples; ++j) top += std::abs(c[j]);
      if (top <= 1e-3 * tail_budget) break;
      if (n_samples >= kMaxSamples)
        throw std::runtime_error("polynomial construction: surrogate not resolved within sample cap");
      n_samples *= 2;
    }
    for (size_t j = 0; j < c.size(); ++j)
      if (!parity_ok(static_cast<int>(j), parity)) c[j] = 0.0;

    // tail[j] = sum_{i >= j} |c_i|
    std::vector<double> tail(c.size() + 1, 0.0);
    for (size_t j = c.size(); j-- > 0;) tail[j] = tail[j + 1] + std::abs(c[j]);
    int n = parity == Parity::odd ? 1 : 0;
    while (n + 1 < static_cast<int>(c.size()) && tail[n + 1] > tail_budget) n += parity == Parity::none ? 1 : 2;

    for (;;) {
      if (n > kDegreeCap) throw std::runtime_error("polynomial construction: degree cap exceeded for " + target.describe());
      const int top = std::min<int>(n, static_cast<int>(c.size()) - 1);
      std::vector<double> coeffs(c.begin(), c.begin() + top + 1);
      const double dropped = tail[top + 1];
      ApproxPolynomial p;
      p.parity_ = parity;
      p.target_ = target;
      if (post == Post::affine_unit_range) {
        // p in [-e, 1+e] becomes e + (1-2e) p in [0, 1].
        const double e = dropped + 4e-16 * tail[0];
        for (auto& v : coeffs) v *= 1.0 - 2.0 * e;
        coeffs[0] += e;
      }
      p.coeffs_ = std::move(coeffs);
      Certificate cert = certify(p);
      if (post == Post::normalize && normalize(p)) cert = certify(p);
      p.sup_bound_ = cert.sup;
      p.apx_error_ = cert.apx_error;
      if (passes(cert, target)) return p;
      if (top + 1 >= static_cast<int>(c.size()))
        throw std::runtime_error("polynomial construction: certification failed for " + target.describe());
      n = 2 * n + (parity == Parity::odd ? 1 : 0);
    }
  }
};

ApproxPolynomial approx_sign(double delta, double epsilon) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("approx_sign: delta must lie in (0, 1)");
  if (!(epsilon > 0.0 && epsilon < 0.5)) throw std::invalid_argument("approx_sign: epsilon must lie in (0, 1/2)");
  Target tg;
  tg.kind = TargetKind::sign;
  tg.delta = delta;
  tg.epsilon = epsilon;
  // erfc(k delta) <= eps/2 on |x| >= delta.
  const double k = erfc_inv(epsilon / 2) / delta;
  return Builder::build(tg, Parity::odd, [k](double x) { return std::erf(k * x); }, 0.2 * epsilon,
                        Builder::Post::normalize);
}

ApproxPolynomial approx_rect(double t, double delta, double epsilon) {
  if (!(delta > 0.0 && delta < 0.5)) throw std::invalid_argument("approx_rect: delta must lie in (0, 1/2)");
  if (!(epsilon > 0.0 && epsilon < 0.5)) throw std::invalid_argument("approx_rect: epsilon must lie in (0, 1/2)");
  if (!(t >= -1.0 && t <= 1.0)) throw std::invalid_argument("approx_rect: t must lie in [-1, 1]");
  Target tg;
  tg.kind = TargetKind::rect;
  tg.t = std::abs(t);
  tg.delta = delta;
  tg.epsilon = epsilon;
  // Two shifted sign surrogates; each side is off by at most erfc(k delta)/2.
  const double k = erfc_inv(epsilon / 2) / delta;
  const double tt = tg.t;
  return Builder::build(
      tg, Parity::even, [k, tt](double x) { return 0.5 * (std::erf(k * (x + tt)) - std::erf(k * (x - tt))); },
      0.2 * epsilon, Builder::Post::affine_unit_range);
}

ApproxPolynomial approx_power(double c, PowerKind kind, double delta, double epsilon, bool majorated, Parity parity) {
  if (!(delta > 0.0 && delta <= 0.5)) throw std::invalid_argument("approx_power: delta must lie in (0, 1/2]");
  if (!(epsilon > 0.0 && epsilon <= 0.5)) throw std::invalid_argument("approx_power: epsilon must lie in (0, 1/2]");
  if (!(c > 0.0)) throw std::invalid_argument("approx_power: c must be positive");
  if (kind == PowerKind::positive && c > 1.0) throw std::invalid_argument("approx_power: positive kind needs c <= 1");
  if (majorated && kind != PowerKind::positive) throw std::invalid_argument("approx_power: majorated needs positive kind");
  if (parity == Parity::none) throw std::invalid_argument("approx_power: parity must be odd or even");

  Target tg;
  tg.kind = kind == PowerKind::positive ? TargetKind::power_positive : TargetKind::power_negative;
  tg.c = c;
  tg.delta = delta;
  tg.epsilon = epsilon;
  tg.majorated = majorated;

  const bool odd = parity == Parity::odd;
  if (kind == PowerKind::positive) {
    // x^c is continuous at 0, so the window only buys smoothness. Windowed
    // interpolation needs degree ~ 4k with k ~ 1/delta; plain truncation of
    // f(|x|) needs roughly 0.2/eps^2. Build whichever routes are affordable
    // and keep the lower degree.
    const double tw = 0.7 * delta;
    const double k = std::max(erfc_inv(epsilon) / (delta - tw), 6.0 / tw);
    const bool windowed_ok = 4.0 * k <= kDegreeCap / 2;
    const bool direct_ok = 0.2 / (epsilon * epsilon) <= kDegreeCap / 2 || !windowed_ok;
    std::optional<ApproxPolynomial> best;
    if (direct_ok) {
      auto g = [=](double x) {
        const double v = 0.5 * std::pow(std::abs(x), c);
        return odd && x < 0 ? -v : v;
      };
      best = Builder::search(tg, parity, g);
    }
    if (windowed_ok && (!best || best->degree() > 4.0 * k / 8)) {
      auto window = [=](double x) { return 1.0 - 0.5 * (std::erf(k * (x + tw)) - std::erf(k * (x - tw))); };
      auto g = [=](double x) {
        const double v = 0.5 * std::pow(std::abs(x), c) * window(x);
        return odd && x < 0 ? -v : v;
      };
      ApproxPolynomial w = Builder::build(tg, parity, g, 0.2 * epsilon, Builder::Post::normalize);
      if (!best || w.degree() < best->degree()) best = std::move(w);
    }
    return *best;
  }

  // f(|x|) times an even window W that is ~0 near the origin and ~1 on
  // |x| >= delta. The window center is pushed toward delta so that f stays
  // below ~0.6 where W is not yet negligible, and f is frozen below tw/2
  // where W is below erfc(4).
  const double tw = delta * std::max(0.5, std::pow(1.2, -1.0 / c));
  const double k = std::max(erfc_inv(epsilon) / (delta - tw), 8.0 / tw);
  const double floor_x = 0.5 * tw;
  auto window = [=](double x) { return 1.0 - 0.5 * (std::erf(k * (x + tw)) - std::erf(k * (x - tw))); };
  auto g = [=](double x) {
    const double v = 0.5 * std::pow(delta / std::max(std::abs(x), floor_x), c) * window(x);
    return odd && x < 0 ? -v : v;
  };
  return Builder::build(tg, parity, g, 0.2 * epsilon, Builder::Post::normalize);
}

ApproxPolynomial from_coefficients(std::vector<double> cheb_coeffs, Parity parity) {
  if (cheb_coeffs.empty()) throw std::invalid_argument("from_coefficients: empty coefficient list");
  for (size_t j = 0; j < cheb_coeffs.size(); ++j)
    if (!parity_ok(static_cast<int>(j), parity) && cheb_coeffs[j] != 0.0)
      throw std::invalid_argument("from_coefficients: coefficient of the wrong parity");
  while (cheb_coeffs.size() > 1 && cheb_coeffs.back() == 0.0) cheb_coeffs.pop_back();
  ApproxPolynomial p(std::move(cheb_coeffs), parity, Target{});
  return p;
}

ApproxPolynomial::ApproxPolynomial(std::vector<double> cheb_coeffs, Parity parity, Target target)
    : coeffs_(std::move(cheb_coeffs)), parity_(parity), target_(target) {
  if (coeffs_.empty()) throw std::invalid_argument("ApproxPolynomial: empty coefficient list");
  const Certificate cert = certify(*this);
  sup_bound_ = cert.sup;
  apx_error_ = cert.apx_error;
}

namespace {

Parity product_parity(Parity a, Parity b) {
  if (a == Parity::none || b == Parity::none) return Parity::none;
  return a == b ? Parity::even : Parity::odd;
}

}  // namespace

ApproxPolynomial multiply(const ApproxPolynomial& a, const ApproxPolynomial& b, double scale) {
  const int n = std::max(1, a.degree() + b.degree());
  // The product has degree <= n, so its values at n+1 Lobatto points determine it.
  const std::vector<double> va = eval_on_lobatto(a.coeffs(), n);
  const std::vector<double> vb = eval_on_lobatto(b.coeffs(), n);
  std::vector<double> v(n + 1);
  for (int k = 0; k <= n; ++k) v[k] = scale * va[k] * vb[k];
  std::vector<double> c = lobatto_coefficients(v);
  const Parity parity = product_parity(a.parity(), b.parity());
  for (size_t j = 0; j < c.size(); ++j)
    if (!parity_ok(static_cast<int>(j), parity)) c[j] = 0.0;
  return from_coefficients(std::move(c), parity);
}

ApproxPolynomial affine(const ApproxPolynomial& p, double shift, double scale) {
  if (shift != 0.0 && p.parity() == Parity::odd) throw std::invalid_argument("affine: shifting an odd polynomial");
  std::vector<double> c = p.coeffs();
  for (auto& v : c) v *= scale;
  c[0] += shift;
  return from_coefficients(std::move(c), p.parity());
}

ApproxPolynomial identity_polynomial() { return from_coefficients({0.0, 1.0}, Parity::odd); }

double degree_budget(const Target& tg) {
  const double log_term = std::log(1.0 / tg.epsilon);
  switch (tg.kind) {
    case TargetKind::sign:
      return kSignDegreeConstant * log_term / tg.delta;
    case TargetKind::rect:
      return kRectDegreeConstant * log_term / tg.delta;
    case TargetKind::power_positive:
    case TargetKind::power_negative:
      return kPowerDegreeConstant * std::max(1.0, tg.c) * log_term / tg.delta;
    case TargetKind::custom:
      break;
  }
  return 0.0;
}

std::string to_string(Parity p) {
  switch (p) {
    case Parity::odd:
      return "odd";
    case Parity::even:
      return "even";
    case Parity::none:
      break;
  }
  return "none";
}

nlohmann::json to_json(const ApproxPolynomial& p) {
  return {{"parity", to_string(p.parity())},
          {"degree", p.degree()},
          {"cheb_coeffs", p.coeffs()},
          {"sup_bound", p.sup_bound()},
          {"apx_error", p.apx_error()},
          {"target", p.target().describe()}};
}

}  // namespace fidest::poly
