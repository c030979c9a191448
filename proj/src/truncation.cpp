#include "fidest/truncation.hpp"

#include <cmath>
#include <stdexcept>

namespace fidest::truncation {

namespace {

double window_mass(const Matrix& proj, const Matrix& m) {
  return std::max(0.0, (proj * m * proj).trace().real());
}

double commutator_norm(const Matrix& a, const Matrix& b) { return op_norm(a * b - b * a); }

}  // namespace

double fidelity_psd(const Matrix& a, const Matrix& b) { return trace_norm(sqrt_psd(a) * sqrt_psd(b)); }

GapBound hard_truncation_gap(const states::DensityMatrix& rho, const states::DensityMatrix& sigma,
                             const states::Interval& window) {
  if (rho.dim() != sigma.dim()) throw std::invalid_argument("hard_truncation_gap: dimension mismatch");
  const Matrix p = states::spectral_projector(rho, window);
  const Matrix q = Matrix::Identity(rho.dim(), rho.dim()) - p;
  GapBound out;
  out.gap = fidelity_psd(rho.matrix(), sigma.matrix()) - fidelity_psd(p * rho.matrix() * p, sigma.matrix());
  out.bound = std::sqrt(window_mass(q, rho.matrix())) * std::sqrt(window_mass(q, sigma.matrix()));
  return out;
}

bool SoftBoundsReport::chain_holds() const {
  return hard_beta <= soft + kBoundSlack && soft <= hard_alpha + kBoundSlack && hard_alpha <= full + kBoundSlack &&
         closeness_gap <= closeness_bound + kBoundSlack;
}

SoftBoundsReport soft_bounds_check(const states::DensityMatrix& rho, const states::DensityMatrix& sigma,
                                   const std::function<double(double)>& f, double alpha, double beta) {
  if (rho.dim() != sigma.dim()) throw std::invalid_argument("soft_bounds_check: dimension mismatch");
  if (!(alpha >= 0.0 && alpha <= beta)) throw std::invalid_argument("soft_bounds_check: need 0 <= alpha <= beta");
  auto check = [&](double x) {
    const double v = f(x);
    const bool ok = v >= 0.0 && v <= 1.0 && (x >= alpha || v == 0.0) && (x < beta || v == 1.0);
    if (!ok) throw std::invalid_argument("soft_bounds_check: threshold function violates its contract");
  };
  const auto spec = states::spectrum(rho);
  for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i) check(spec.eigenvalues(i));
  for (int k = 0; k <= 1000; ++k) check(k / 1000.0);

  const int d = rho.dim();
  const Matrix& r = rho.matrix();
  const Matrix& s = sigma.matrix();
  const Matrix pb = states::spectral_projector(rho, states::Interval::at_least(beta));
  const Matrix pa = states::spectral_projector(rho, states::Interval::at_least(alpha));
  const Matrix low = Matrix::Identity(d, d) - pb;
  SoftBoundsReport rep;
  rep.hard_beta = fidelity_psd(pb * r * pb, s);
  rep.soft = fidelity_psd(spectral_apply(r, [&f](double x) { return f(std::max(x, 0.0)) * x; }), s);
  rep.hard_alpha = fidelity_psd(pa * r * pa, s);
  rep.full = fidelity_psd(r, s);
  rep.closeness_gap = rep.full - rep.soft;
  rep.closeness_bound = std::sqrt(window_mass(low, r)) * std::sqrt(window_mass(low, s));
  return rep;
}

GapBound fine_guard_gap(const states::DensityMatrix& rho, const states::DensityMatrix& sigma, double alpha,
                        double beta) {
  if (rho.dim() != sigma.dim()) throw std::invalid_argument("fine_guard_gap: dimension mismatch");
  if (alpha > beta) throw std::invalid_argument("fine_guard_gap: alpha exceeds beta");
  const Matrix& r = rho.matrix();
  const Matrix pa = states::spectral_projector(rho, states::Interval::at_least(alpha));
  const Matrix pb = states::spectral_projector(rho, states::Interval::at_least(beta));
  const Matrix mid = states::spectral_projector(rho, states::Interval::half_open(alpha, beta));
  GapBound out;
  out.gap = fidelity_psd(pa * r * pa, sigma.matrix()) - fidelity_psd(pb * r * pb, sigma.matrix());
  out.bound = std::sqrt(window_mass(mid, r)) * std::sqrt(window_mass(mid, sigma.matrix()));
  return out;
}

GapBound monotonicity_gap(const Matrix& a, const Matrix& b, const states::DensityMatrix& rho,
                          const states::DensityMatrix& sigma) {
  constexpr double tol = 1e-9;
  const Matrix& r = rho.matrix();
  if (commutator_norm(a, b) > tol || commutator_norm(a, r) > tol || commutator_norm(b, r) > tol)
    throw std::invalid_argument("monotonicity_gap: A, B and rho must commute");
  if (eig_hermitian(hermitian_part(a)).values.minCoeff() < -tol ||
      eig_hermitian(hermitian_part(b - a)).values.minCoeff() < -tol)
    throw std::invalid_argument("monotonicity_gap: need 0 <= A <= B");
  GapBound out;
  out.gap = fidelity_psd(b * r * b, sigma.matrix()) - fidelity_psd(a * r * a, sigma.matrix());
  out.bound = std::numeric_limits<double>::infinity();
  return out;
}

double truncation_error_term(const states::DensityMatrix& rho, const states::DensityMatrix& sigma, double theta) {
  const Matrix low = states::spectral_projector(rho, states::Interval::below(theta));
  return std::sqrt(window_mass(low, rho.matrix())) * std::sqrt(window_mass(low, sigma.matrix()));
}

}  // namespace fidest::truncation
